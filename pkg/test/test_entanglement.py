import unittest
import numpy as np
from model.entanglement.bipartition import build_bipartition
from model.entanglement.entropy import entanglement_entropy, reduced_density, vn_entropy
from model.hilbert.basis import enumerate_basis
from model.hilbert.named_states import state_vector
from util.errors import ToleranceError, UnsupportedGeometryError
from util.geometry import Geometry
from util.site import Site
from util.state_manager import BipartitionKind

class TestEntanglement(unittest.TestCase):
    """Test suite for the bipartitions and the von Neumann entropy."""

    def setUp(self):
        """Set up the test environment."""
        self.basis = enumerate_basis(Geometry(2, 4))
        self.parallel = build_bipartition(self.basis, BipartitionKind.PARALLEL)
        self.perpendicular = build_bipartition(self.basis, BipartitionKind.PERPENDICULAR)

    def tearDown(self):
        """Tear down the test environment."""
        self.basis = None

    def random_state(self, seed: int = 7) -> np.ndarray:
        rng = np.random.default_rng(seed)
        psi = rng.normal(size=self.basis.get_dimension()) + 1j * rng.normal(size=self.basis.get_dimension())
        return psi / np.linalg.norm(psi)

    def test_sites(self):
        """Test which sites each cut puts in A."""
        self.assertEqual(self.parallel.sites_a(), [Site(j, 1) for j in range(1, 5)], "A is the bottom leg")
        self.assertEqual(len(self.perpendicular.sites_a()), 4, "A is the first two rungs")
        self.assertTrue(all(site.get_j() <= 2 for site in self.perpendicular.sites_a()), "Rungs 1 and 2 only")

    def test_dimensions(self):
        """Test the number of constrained sub-configurations on each side."""
        self.assertEqual(self.parallel.dimension_a(), 7, "A periodic leg of four sites has 7 independent sets")
        self.assertEqual(self.perpendicular.dimension_a(), 7, "Two open rungs form a square with 7 independent sets")

    def test_product_states(self):
        """Test that Fock states carry no entanglement."""
        for name in ("Z2", "vac"):
            psi = state_vector(self.basis, name)
            self.assertAlmostEqual(entanglement_entropy(psi, self.parallel), 0.0, 12, f"{name} is a product state")
            self.assertAlmostEqual(entanglement_entropy(psi, self.perpendicular), 0.0, 12,
                                   f"{name} is a product state")

    def test_cat_state(self):
        """Test that the symmetric Z2 cat state has entropy log 2 across the legs."""
        psi = (state_vector(self.basis, "Z2") + state_vector(self.basis, "Z2bar")) / np.sqrt(2)
        self.assertAlmostEqual(entanglement_entropy(psi, self.parallel), np.log(2), 12, "Two Schmidt values 1/2")

    def test_reduced_density(self):
        """Test the reduced density matrices of a random state."""
        psi = self.random_state()
        rho_a = reduced_density(psi, self.parallel, "A")
        rho_b = reduced_density(psi, self.parallel, "B")
        self.assertAlmostEqual(float(np.trace(rho_a).real), 1.0, 12, "Unit trace")
        self.assertLess(np.abs(rho_a - rho_a.conj().T).max(), 1e-12, "Hermitian")
        self.assertAlmostEqual(vn_entropy(rho_a), vn_entropy(rho_b), 10, "Both sides share the entropy")
        self.assertAlmostEqual(vn_entropy(rho_a), entanglement_entropy(psi, self.parallel), 10,
                               "Density matrix and Schmidt routes agree")
        bound = np.log(min(self.parallel.dimension_a(), self.parallel.dimension_b()))
        self.assertLessEqual(entanglement_entropy(psi, self.parallel), bound + 1e-12, "Bounded by log of the dims")
        with self.assertRaises(ValueError):
            reduced_density(psi, self.parallel, "C")

    def test_bad_trace(self):
        """Test that an unnormalized density matrix is refused."""
        with self.assertRaises(ToleranceError):
            vn_entropy(np.diag([0.6, 0.6]))

    def test_chain(self):
        """Test that the chain supports only the perpendicular cut."""
        chain = enumerate_basis(Geometry(1, 6))
        with self.assertRaises(UnsupportedGeometryError):
            build_bipartition(chain, BipartitionKind.PARALLEL)
        cut = build_bipartition(chain, BipartitionKind.PERPENDICULAR)
        self.assertAlmostEqual(entanglement_entropy(state_vector(chain, "Z2"), cut), 0.0, 12, "Product state")

if __name__ == "__main__":
    unittest.main()
