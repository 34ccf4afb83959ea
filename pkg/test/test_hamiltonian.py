import unittest
import numpy as np
import scipy.linalg
from model.hilbert.basis import enumerate_basis
from model.hilbert.named_states import state_vector
from model.operators.hamiltonian import build_hamiltonian, build_hx, build_hz, staggered_magnetization
from model.operators.model_params import ModelParams
from model.operators.sparse_operator import SparseOperator
from util.errors import ConfigError
from util.geometry import Geometry

class TestHamiltonian(unittest.TestCase):
    """Test suite for the Hamiltonian assembly."""

    def setUp(self):
        """Set up the test environment."""
        self.basis = enumerate_basis(Geometry(2, 4))

    def tearDown(self):
        """Tear down the test environment."""
        self.basis = None

    def test_n4_spectrum(self):
        """Test the N=4 spectrum at delta=1, w=1."""
        basis = enumerate_basis(Geometry(2, 2))
        energies = scipy.linalg.eigvalsh(build_hamiltonian(basis, ModelParams(1.0)).to_dense())
        expected = np.sort([0, 0, 0, -6 ** 0.5, 6 ** 0.5, -10 ** 0.5, 10 ** 0.5])
        self.assertLess(np.abs(energies - expected).max(), 1e-9, "N=4 spectrum should be {0,0,0,+-sqrt6,+-sqrt10}")

    def test_zero_energy_states(self):
        """Test that Z2 and the vacuum have zero energy."""
        for delta in (0.0, 0.5, 1.0):
            hamiltonian = build_hamiltonian(self.basis, ModelParams(delta))
            for name in ("Z2", "vac"):
                energy = hamiltonian.expectation(state_vector(self.basis, name))
                self.assertAlmostEqual(energy, 0.0, 12, f"<{name}|H|{name}> should vanish at delta={delta}")

    def test_symmetric(self):
        """Test that H, Hz and Hx are exactly symmetric and add up."""
        hz, hx = build_hz(self.basis, 0.7), build_hx(self.basis)
        hamiltonian = build_hamiltonian(self.basis, ModelParams(0.7))
        for operator in (hz, hx, hamiltonian):
            self.assertEqual(operator.max_asymmetry(), 0.0, f"{operator.get_name()} should be symmetric")
        self.assertEqual(abs(hamiltonian.get_matrix() - hz.get_matrix() - hx.get_matrix()).max(), 0.0,
                         "H should equal Hz + Hx entrywise")
        self.assertTrue(hz.is_diagonal(), "Hz should be diagonal")

    def test_hx_on_vacuum(self):
        """Test that Hx maps the vacuum onto minus the sum of single excitations."""
        result = build_hx(self.basis, 2.0).dot(state_vector(self.basis, "vac"))
        singles = self.basis.excitation_counts() == 1
        self.assertTrue(np.allclose(result[singles], -2.0), "Every single excitation should get -w")
        self.assertTrue(np.allclose(result[~singles], 0.0), "Nothing else should be reached")
        self.assertEqual(int(singles.sum()), 8, "N=8 has eight single excitations")

    def test_hz_values(self):
        """Test the staggered magnetization of the named states."""
        magnetization = staggered_magnetization(self.basis)
        self.assertEqual(magnetization[self.basis.index(0)], 0, "The vacuum has zero staggered magnetization")
        single = self.basis.index(1)
        self.assertEqual(magnetization[single], -2, "An excitation on rung 1 flips a -1 site")
        self.assertAlmostEqual(build_hz(self.basis, 0.5).diagonal()[single], 1.0, 12, "Hz = -delta * M")

    def test_params(self):
        """Test the coupling validation and the plaquette ratio."""
        with self.assertRaises(ConfigError):
            ModelParams(-0.1)
        with self.assertRaises(ConfigError):
            ModelParams(0.5, 0.0)
        self.assertAlmostEqual(ModelParams(1.0).plaquette_ratio(), 0.5, 12, "r = w / (2 delta)")

    def test_dump(self):
        """Test the coordinate dump of an operator."""
        lines = SparseOperator(np.array([[0.0, 1.5], [1.5, -2.0]]), name="A").dump_lines()
        self.assertEqual(lines, ["dim=2 sym=1", "0 1 1.5", "1 0 1.5", "1 1 -2"], "Dump should be sorted by row, col")

if __name__ == "__main__":
    unittest.main()
