import unittest
import numpy as np
from model.hilbert.basis import enumerate_basis
from model.hilbert.named_states import state_vector
from model.operators.hamiltonian import build_hamiltonian
from model.operators.imbalance import build_imbalance
from model.operators.model_params import ModelParams
from model.plaquette.plaquette_model import FOCK_SITES, INITIAL_STATES, PLAQUETTE_SITES, PlaquetteModel
from model.spectra.eigen_system import diagonalize
from util.errors import ConfigError
from util.geometry import Geometry
from util.site import Site
from util.state_manager import ImbalanceKind

class TestPlaquette(unittest.TestCase):
    """Test suite for the seven-state plaquette."""

    def setUp(self):
        """Set up the test environment."""
        self.model = PlaquetteModel(0.5)
        self.geometry = Geometry(2, 2)
        self.basis = enumerate_basis(self.geometry)

    def tearDown(self):
        """Tear down the test environment."""
        self.model = None

    def ladder_order(self) -> np.ndarray:
        """Index in the N = 4 ladder basis of every plaquette Fock state F0..F6."""
        masks = [sum(1 << self.geometry.bit(site) for site in occupied) for occupied in FOCK_SITES]
        return np.array([self.basis.index(mask) for mask in masks])

    def test_energies(self):
        """Test the closed-form spectrum against the numeric one."""
        expected = sorted([0.0, 0.0, 0.0, -np.sqrt(1.5), np.sqrt(1.5), -np.sqrt(2.5), np.sqrt(2.5)])
        numeric = np.linalg.eigvalsh(self.model.hamiltonian())
        self.assertLess(np.abs(numeric - expected).max(), 1e-12, "Spectrum 0,0,0, +-sqrt(1.5), +-sqrt(2.5)")
        self.assertLess(np.abs(np.sort(self.model.energies()) - expected).max(), 1e-12, "Closed form agrees")

    def test_eigensystem(self):
        """Test that the normalized closed-form eigenvectors diagonalize the plaquette."""
        energies, vectors = self.model.eigensystem()
        self.assertLess(np.abs(vectors.T @ vectors - np.eye(7)).max(), 1e-12, "Orthonormal eigenvectors")
        self.assertLess(np.abs(vectors @ np.diag(energies) @ vectors.T - self.model.hamiltonian()).max(), 1e-12,
                        "The eigenpairs rebuild the matrix")
        self.assertAlmostEqual(self.model.alpha() * self.model.beta(), 0.5, 12, "alpha beta = 1/2")

    def test_ladder_mapping(self):
        """Test that the N = 4 ladder Hamiltonian is -2 delta times the plaquette matrix."""
        for delta, w in ((1.0, 1.0), (0.7, 0.4)):
            order = self.ladder_order()
            self.assertTrue(np.all(order >= 0), "Every plaquette state is a ladder state")
            ladder = build_hamiltonian(self.basis, ModelParams(delta, w)).to_dense()[np.ix_(order, order)]
            plaquette = PlaquetteModel(w / (2 * delta)).hamiltonian()
            self.assertLess(np.abs(ladder + 2 * delta * plaquette).max(), 1e-12, f"H = -2 delta P at delta={delta}")

    def test_ladder_dynamics(self):
        """Test the plaquette evolution against the ladder one at tau = 2 delta t."""
        order = self.ladder_order()
        system = diagonalize(build_hamiltonian(self.basis, ModelParams(1.0)))
        psi_0 = state_vector(self.basis, "Z2")
        for t in (0.3, 1.7, 4.0):
            psi_t = system.get_eigenvectors() @ (np.exp(-1j * system.get_eigenvalues() * t)
                                                 * system.coefficients(psi_0))
            ladder = np.abs(psi_t[order]) ** 2
            plaquette = np.abs(self.model.z2_coefficients(2.0 * t)) ** 2
            self.assertLess(np.abs(ladder - plaquette).max(), 1e-10, f"Probabilities agree at t={t}")

    def test_expansion_matches_propagation(self):
        """Test the eigen-expansion against the numeric propagator."""
        times = [0.0, 0.8, 5.0]
        z2 = self.model.propagate(np.eye(7)[INITIAL_STATES["Z2"]], times)
        vac = self.model.propagate(np.eye(7)[INITIAL_STATES["vac"]], times)
        for row, t in enumerate(times):
            self.assertLess(np.abs(self.model.z2_coefficients(t) - z2[row]).max(), 1e-12, f"c(t) at {t}")
            self.assertLess(np.abs(self.model.vac_coefficients(t) - vac[row]).max(), 1e-12, f"d(t) at {t}")

    def test_printed_steady_imbalances(self):
        """Test the printed closed forms at r = 1/2."""
        steady = self.model.steady_imbalances()
        self.assertAlmostEqual(steady[ImbalanceKind.IZ_Z2], 1.2, 12, "Printed Iz_Z2")
        self.assertAlmostEqual(steady[ImbalanceKind.IX_Z2], 0.2844444444, 9, "Printed Ix_Z2")
        self.assertAlmostEqual(steady[ImbalanceKind.IX_VAC], 0.32, 12, "Printed Ix_vac")

    def test_long_time_imbalances(self):
        """Test the diagonal-ensemble values of the plaquette at r = 1/2."""
        numeric = self.model.long_time_imbalances()
        self.assertAlmostEqual(numeric[ImbalanceKind.IZ_Z2], 1.2, 10, "Iz_Z2 = 1.2")
        self.assertAlmostEqual(numeric[ImbalanceKind.IX_Z2], 8 / 15, 10, "Ix_Z2 = 8/15")
        self.assertAlmostEqual(numeric[ImbalanceKind.IX_VAC], 0.56, 10, "Ix_vac = 0.56")

    def test_ladder_imbalances(self):
        """Test the plaquette imbalances against the N = 4 ladder operators and its diagonal ensemble."""
        order = self.ladder_order()
        for kind in ImbalanceKind:
            ladder = build_imbalance(self.basis, kind).to_dense()[np.ix_(order, order)]
            self.assertLess(np.abs(ladder - self.model.imbalance_operator(kind)).max(), 1e-12,
                            f"{kind.value} matches the ladder operator")
        self.assertAlmostEqual(self.model.imbalance_operator(ImbalanceKind.IZ_Z2)[5, 5], 2.0, 12, "<Z2|Iz_Z2|Z2> = 2")

    def test_magnetizations(self):
        """Test the site magnetizations at t = 0 and their symmetry relations."""
        start = self.model.magnetizations(0.0, "Z2")
        self.assertAlmostEqual(start[Site(1, 1)][0], 1.0, 12, "(1,1) starts up")
        self.assertAlmostEqual(start[Site(1, 1)][1], 0.0, 12, "No transverse component in a Fock state")
        self.assertAlmostEqual(start[Site(2, 1)][0], -1.0, 12, "(2,1) starts down")
        later = self.model.magnetizations(1.3, "vac")
        values = [later[site][0] for site in PLAQUETTE_SITES]
        self.assertLess(max(values) - min(values), 1e-12, "From the vacuum all sites share Mz")
        self.assertAlmostEqual(later[Site(1, 1)][1], -later[Site(2, 1)][1], 12, "Mx flips sign between rungs")
        with self.assertRaises(ConfigError):
            self.model.magnetizations(0.0, "Z3")

    def test_claims(self):
        """Test the claim report at r = 1/2."""
        claims = {claim.get_name(): claim for claim in self.model.claim_report(np.linspace(0, 10, 51))}
        self.assertTrue(claims["steady Iz_Z2"].holds(), "The printed Iz_Z2 holds")
        self.assertFalse(claims["steady Ix_Z2"].holds(), "The printed Ix_Z2 fails")
        self.assertTrue(claims["alpha*beta = 1/2"].holds(), "alpha beta holds")
        self.assertEqual(set(claims["c0(t)"].to_dict()), {"name", "deviation", "holds"}, "Serialized fields")

    def test_invalid_coupling(self):
        """Test that r must be positive."""
        with self.assertRaises(ConfigError):
            PlaquetteModel(0.0)

if __name__ == "__main__":
    unittest.main()
