import os
import unittest
import numpy as np
from model.dynamics.quench_runner import run_quench
from model.dynamics.quench_spec import QuenchSpec
from model.dynamics.quench_trace import QuenchTrace
from model.dynamics.revivals import (coincident_extrema, find_extrema, oscillation_frequency, overlap_spectrum,
                                     revival_period, revival_report, scar_tower_spacing)
from model.hilbert.basis import enumerate_basis
from model.hilbert.named_states import state_vector
from model.operators.hamiltonian import build_hamiltonian
from model.operators.model_params import ModelParams
from model.spectra.eigen_system import EigenSystem, diagonalize
from util.geometry import Geometry
from util.state_manager import Method

SLOW = os.environ.get("SCARLADDER_SLOW") == "1"

def synthetic_trace(period: float, t_max: float = 20.0, stride: float = 0.01) -> QuenchTrace:
    trace = QuenchTrace()
    for t in np.arange(int(round(t_max / stride)) + 1) * stride:
        fidelity = np.cos(np.pi * t / period) ** 2
        trace.add_row(t, {"fidelity": fidelity, "shannon": 1.0 - fidelity, "overlap_Z2bar": fidelity})
    return trace

class TestRevivals(unittest.TestCase):
    """Test suite for revival and scar tower detection."""

    def test_find_extrema(self):
        """Test interior maxima and minima with a prominence threshold."""
        times = np.linspace(0, 4 * np.pi, 2001)
        series = np.cos(times)
        maxima, values = find_extrema(times, series, "max", 0.5)
        self.assertEqual(len(maxima), 1, "Only the interior maximum at 2 pi qualifies")
        self.assertAlmostEqual(maxima[0], 2 * np.pi, 2, "The maximum sits at 2 pi")
        minima, _ = find_extrema(times, series, "min", 0.5)
        self.assertEqual(len(minima), 2, "Minima at pi and 3 pi")
        with self.assertRaises(ValueError):
            find_extrema(times, series, "saddle")

    def test_revival_period(self):
        """Test the period of a synthetic fidelity."""
        result = revival_period(synthetic_trace(3.0))
        self.assertTrue(result.is_detected(), "Peaks every 3 time units")
        self.assertAlmostEqual(result.get_t_star(), 3.0, 6, "t* = 3")
        self.assertAlmostEqual(oscillation_frequency(synthetic_trace(3.0), "fidelity"), 2 * np.pi / 3.0, 6,
                               "Omega = 2 pi / t*")

    def test_no_revival(self):
        """Test a decaying series without peaks."""
        trace = QuenchTrace()
        for t in np.linspace(0, 5, 101):
            trace.add_row(t, {"fidelity": np.exp(-t)})
        result = revival_period(trace)
        self.assertFalse(result.is_detected(), "A monotone decay has no revival")
        self.assertIsNone(result.get_t_star(), "No period without two peaks")
        with self.assertRaises(KeyError):
            revival_period(trace, "shannon")

    def test_report(self):
        """Test the coincidence of Shannon minima with partner maxima."""
        report = revival_report(synthetic_trace(3.0), partner="overlap_Z2bar", pronounced_threshold=0.9)
        self.assertGreater(len(report.get_coincidences()), 0, "Shannon minima and partner maxima coincide")
        self.assertTrue(report.is_pronounced(), "The synthetic first peak is 1")
        self.assertIsNone(revival_report(synthetic_trace(3.0)).is_pronounced(), "No threshold, no verdict")

    def test_coincident_extrema(self):
        """Test the pairing of nearby extrema."""
        pairs = coincident_extrema(np.array([1.0, 2.0, 5.0]), np.array([1.01, 4.0]), 0.05)
        self.assertEqual(pairs, [(1.0, 1.01)], "Only the first pair lies within tolerance")
        self.assertEqual(coincident_extrema(np.array([1.0]), np.zeros(0), 0.1), [], "No partner, no pair")

    def test_toy_tower(self):
        """Test the spacing of a two-level toy spectrum."""
        system = EigenSystem(np.array([-1.0, 1.0]), np.eye(2))
        tower = scar_tower_spacing(system, np.array([1.0, 1.0]) / np.sqrt(2))
        self.assertTrue(tower.is_found(), "Two levels form a tower")
        self.assertAlmostEqual(tower.get_delta_e(), 2.0, 12, "Spacing 2")
        self.assertAlmostEqual(tower.revival_estimate(), np.pi, 12, "2 pi / 2")

    def test_flat_profile(self):
        """Test that a state without positive-energy weight has no tower."""
        system = EigenSystem(np.array([-1.0, 0.0]), np.eye(2))
        self.assertFalse(scar_tower_spacing(system, np.array([0.0, 1.0])).is_found(), "No positive cluster")

    def test_overlap_spectrum(self):
        """Test the overlap table of Z2 on N=8."""
        basis = enumerate_basis(Geometry(2, 4))
        system = diagonalize(build_hamiltonian(basis, ModelParams(0.0)))
        table = overlap_spectrum(system, state_vector(basis, "Z2"))
        self.assertEqual(table.shape, (35, 2), "One (E, weight) row per eigenstate")
        self.assertAlmostEqual(table[:, 1].sum(), 1.0, 12, "Weights add up to one")

    @unittest.skipUnless(SLOW, "set SCARLADDER_SLOW=1")
    def test_z2_revival_period_n16(self):
        """Test that the Z2 revival period at N=16, delta=0 matches 2 pi over the tower spacing."""
        geometry = Geometry(2, 8)
        basis = enumerate_basis(geometry)
        system = diagonalize(build_hamiltonian(basis, ModelParams(0.0)), metadata={"L": 8, "legs": 2})
        spec = QuenchSpec(geometry, 0.0, "Z2", t_max=30.0, dt=0.005, output_stride=0.05, method=Method.EIGENBASIS)
        trace = run_quench(geometry, spec, basis, system)
        t_star = revival_period(trace).get_t_star()
        tower = scar_tower_spacing(system, state_vector(basis, "Z2"))
        self.assertIsNotNone(t_star, "Z2 revives at delta=0")
        self.assertTrue(tower.is_found(), "Z2 has a scar tower at delta=0")
        self.assertLess(abs(t_star - tower.revival_estimate()) / tower.revival_estimate(), 0.1,
                        "t* and 2 pi / dE should agree within ten percent")

if __name__ == "__main__":
    unittest.main()
