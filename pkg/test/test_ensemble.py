import unittest
import numpy as np
import scipy.sparse as sparse
from controller.scheduler import Scheduler
from model.dynamics.quench_trace import QuenchTrace
from model.ensemble.diagonal_ensemble import diagonal_ensemble, time_average_check
from model.ensemble.sweep import SweepRow, imbalance_sweep, sweep_pairs
from model.ensemble.thermal import thermal_beta0
from model.hilbert.basis import enumerate_basis
from model.hilbert.named_states import state_vector
from model.operators.hamiltonian import build_hamiltonian
from model.operators.imbalance import build_imbalance
from model.operators.model_params import ModelParams
from model.operators.sparse_operator import SparseOperator
from model.spectra.eigen_system import cluster_levels, diagonalize
from util.errors import UnsupportedGeometryError
from util.geometry import Geometry
from util.state_manager import ImbalanceKind

def projected_average(system, psi: np.ndarray, matrix: np.ndarray) -> float:
    """sum over energy groups of <psi|P A P|psi>, independent of any basis choice inside a group."""
    vectors = system.get_eigenvectors()
    zero = system.zero_mode_indices()
    nonzero = system.nonzero_mode_indices()
    groups = ([zero] if len(zero) else []) + [nonzero[cluster] for cluster in
                                              cluster_levels(system.get_eigenvalues()[nonzero], 1e-9)]
    total = 0.0
    for group in groups:
        projected = vectors[:, group] @ (vectors[:, group].T @ psi)
        total += float(np.vdot(projected, matrix @ projected).real)
    return total

class TestDiagonalEnsemble(unittest.TestCase):
    """Test suite for the diagonal ensemble and the thermal reference."""

    def setUp(self):
        """Set up the test environment."""
        self.basis = enumerate_basis(Geometry(2, 4))
        self.system = diagonalize(build_hamiltonian(self.basis, ModelParams(0.5)))

    def tearDown(self):
        """Tear down the test environment."""
        self.system = None

    def test_projected_average(self):
        """Test every imbalance against the projector formula."""
        for kind in ImbalanceKind:
            operator = build_imbalance(self.basis, kind)
            psi = state_vector(self.basis, kind.default_initial_state())
            result = diagonal_ensemble(self.system, psi, operator)
            expected = projected_average(self.system, psi, operator.to_dense())
            self.assertAlmostEqual(result.get_total(), expected, 10, f"{kind.value} should match the projectors")
            self.assertAlmostEqual(result.weight_sum(), 1.0, 12, "Weights add up to one")
            self.assertAlmostEqual(result.get_total(), result.get_nonzero_part() + result.get_zero_part(), 12,
                                   "The split adds up")

    def test_identity(self):
        """Test that the identity has long-time value one from every state."""
        identity = SparseOperator(sparse.identity(self.basis.get_dimension(), format="csr"), name="1")
        for initial in ("Z2", "vac"):
            result = diagonal_ensemble(self.system, state_vector(self.basis, initial), identity)
            self.assertAlmostEqual(result.get_total(), 1.0, 10, f"<1> should be 1 from {initial}")

    def test_linearity(self):
        """Test that the long-time value is linear in the operator."""
        psi = state_vector(self.basis, "Z2")
        first = build_imbalance(self.basis, ImbalanceKind.IZ_Z2)
        second = build_imbalance(self.basis, ImbalanceKind.IX_Z2)
        alpha, beta = 0.7, -1.3
        combined = diagonal_ensemble(self.system, psi, first.scaled(alpha) + second.scaled(beta))
        expected = (alpha * diagonal_ensemble(self.system, psi, first).get_total()
                    + beta * diagonal_ensemble(self.system, psi, second).get_total())
        self.assertLess(abs(combined.get_total() - expected), 1e-10, "The diagonal ensemble should be linear")

    def test_vacuum_pairing(self):
        """Test that the vacuum weights at +E and -E agree."""
        result = diagonal_ensemble(self.system, state_vector(self.basis, "vac"),
                                   build_imbalance(self.basis, ImbalanceKind.IX_VAC))
        self.assertLess(result.pairing_defect(), 1e-10, "The chiral partner of the vacuum is the vacuum")
        self.assertGreater(len(result.get_cluster_pairs()), 0, "There are positive clusters")
        self.assertEqual(set(result.to_dict()), {"total", "nonzero_part", "zero_part", "weight_sum",
                                                 "pairing_defect"}, "Serialized fields")

    def test_mismatch(self):
        """Test that a state on another basis is refused."""
        with self.assertRaises(ValueError):
            diagonal_ensemble(self.system, np.ones(7) / np.sqrt(7), build_imbalance(self.basis, ImbalanceKind.IZ_Z2))

    def test_thermal(self):
        """Test the infinite temperature average."""
        operator = build_imbalance(self.basis, ImbalanceKind.IZ_Z2)
        self.assertAlmostEqual(thermal_beta0(operator, self.basis), 0.0, 12, "Iz_Z2 is traceless")
        with self.assertRaises(ValueError):
            thermal_beta0(operator, enumerate_basis(Geometry(2, 2)))

    def test_time_average(self):
        """Test the running mean over the second half of a trace."""
        psi = state_vector(self.basis, "Z2")
        result = diagonal_ensemble(self.system, psi, build_imbalance(self.basis, ImbalanceKind.IZ_Z2))
        trace = QuenchTrace()
        for t in np.linspace(0, 10, 101):
            trace.add_row(t, {"Iz_Z2": result.get_total() + (0.3 if t < 5 else 0.0)})
        report = time_average_check(trace, "Iz_Z2", result)
        self.assertAlmostEqual(report.get_deviation(), 0.0, 12, "The second half sits on the prediction")
        self.assertEqual(report.get_window(), (5.0, 10.0), "The window is [t_max/2, t_max]")
        self.assertEqual(report.get_samples(), 51, "Samples from t=5 to t=10")
        with self.assertRaises(ValueError):
            time_average_check(trace, np.zeros(3), result)

class TestSweep(unittest.TestCase):
    """Test suite for the imbalance sweep."""

    def test_pairs(self):
        """Test the default and explicit pairings of imbalances and states."""
        self.assertEqual(sweep_pairs([ImbalanceKind.IZ_Z2, ImbalanceKind.IX_VAC], None),
                         [(ImbalanceKind.IZ_Z2, "Z2"), (ImbalanceKind.IX_VAC, "vac")], "Tailored states")
        self.assertEqual(len(sweep_pairs(list(ImbalanceKind), ["Z2", "vac"])), 6, "Every imbalance with every state")

    def test_sweep(self):
        """Test the sweep rows against a direct evaluation."""
        geometry = Geometry(2, 4)
        rows = imbalance_sweep(geometry, [0.5, 1.0], [ImbalanceKind.IZ_Z2],
                               map_fn=Scheduler(2, progress=False).map)
        self.assertEqual([row.get_delta() for row in rows], [0.5, 1.0], "One row per detuning, in order")
        basis = enumerate_basis(geometry)
        system = diagonalize(build_hamiltonian(basis, ModelParams(1.0)))
        direct = diagonal_ensemble(system, state_vector(basis, "Z2"), build_imbalance(basis, ImbalanceKind.IZ_Z2))
        self.assertAlmostEqual(rows[1].get_total(), direct.get_total(), 10, "The sweep matches a direct evaluation")
        self.assertEqual(rows[0].to_list()[:4], [8, 0.5, "Iz_Z2", "Z2"], "Row layout")
        self.assertEqual(len(SweepRow.HEADER), len(rows[0].to_list()), "Header and rows line up")

    def test_chain_rejected(self):
        """Test that the sweep needs the ladder."""
        with self.assertRaises(UnsupportedGeometryError):
            imbalance_sweep(Geometry(1, 6), [0.5])

if __name__ == "__main__":
    unittest.main()
