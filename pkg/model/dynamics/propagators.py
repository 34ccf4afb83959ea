from model.dynamics.quench_spec import QuenchSpec
from model.dynamics.quench_trace import QuenchTrace
from model.spectra.eigen_system import EigenSystem
from model.spectra.shannon import shannon_entropy
from model.operators.sparse_operator import SparseOperator
from util.errors import ToleranceError
from typing import Callable
import logging
import numpy as np

logger = logging.getLogger(__name__)

Sink = Callable[[float, np.ndarray], dict]

def _matrix(hamiltonian):
    return hamiltonian.get_matrix() if isinstance(hamiltonian, SparseOperator) else hamiltonian

def basic_sink(psi_0: np.ndarray) -> Sink:
    """
    Sink recording only the fidelity and the Shannon entropy.

    :rtype: Sink
    """
    def sink(t: float, psi_t: np.ndarray) -> dict:
        return {"fidelity": float(abs(np.vdot(psi_0, psi_t)) ** 2), "shannon": float(shannon_entropy(psi_t))}
    return sink

def rk4_step(matrix, psi: np.ndarray, dt: float) -> np.ndarray:
    """
    One classical Runge-Kutta step of d psi / dt = -i H psi.

    :rtype: np.ndarray
    """
    k1 = -1j * (matrix @ psi)
    k2 = -1j * (matrix @ (psi + 0.5 * dt * k1))
    k3 = -1j * (matrix @ (psi + 0.5 * dt * k2))
    k4 = -1j * (matrix @ (psi + dt * k3))
    return psi + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)

def rk4_to(matrix, psi: np.ndarray, dt: float, steps: int) -> np.ndarray:
    psi = np.asarray(psi, dtype=np.complex128)
    for _ in range(steps):
        psi = rk4_step(matrix, psi, dt)
    return psi

def _record(trace: QuenchTrace, sink: Sink, t: float, psi: np.ndarray, matrix, budget: float) -> None:
    norm = float(np.linalg.norm(psi))
    energy = float(np.vdot(psi, matrix @ psi).real)
    trace.add_row(t, sink(t, psi), norm, energy)
    if abs(norm - 1.0) > budget:
        raise ToleranceError(f"norm drift {abs(norm - 1.0):.3e} at t={t:g} exceeds {budget:g}; reduce dt")

def evolve_rk4(hamiltonian, psi_0: np.ndarray, spec: QuenchSpec, sink: Sink | None = None) -> QuenchTrace:
    """
    Fourth-order Runge-Kutta propagation without renormalization. The norm is checked at every output time.

    :param hamiltonian: SparseOperator or sparse matrix.
    :param psi_0: Normalized initial state.
    :type psi_0: np.ndarray
    :param spec: Time grid and drift budget.
    :type spec: QuenchSpec
    :param sink: Called at each output time with (t, psi), returns the row values.
    :type sink: Sink | None
    :raises ToleranceError: If the norm drifts beyond the budget.
    :rtype: QuenchTrace
    """
    matrix = _matrix(hamiltonian)
    sink = sink or basic_sink(psi_0)
    times = spec.output_times()
    psi = np.asarray(psi_0, dtype=np.complex128).copy()
    trace = QuenchTrace()
    _record(trace, sink, times[0], psi, matrix, spec.get_drift_budget())
    for t in times[1:]:
        psi = rk4_to(matrix, psi, spec.get_dt(), spec.get_stride_steps())
        _record(trace, sink, t, psi, matrix, spec.get_drift_budget())
    trace.set_diagnostic("method", "rk4")
    logger.info("rk4 to t=%g: max norm drift %.3e, energy drift %.3e", times[-1], trace.max_norm_drift(),
                trace.max_energy_drift())
    return trace

def convergence_probe(hamiltonian, psi_0: np.ndarray, t: float, dt: float) -> float:
    """
    Error estimate at time t from a run at dt and one at dt/2: max amplitude difference times 16/15.

    :rtype: float
    """
    matrix = _matrix(hamiltonian)
    steps = max(1, int(round(t / dt)))
    coarse = rk4_to(matrix, psi_0, dt, steps)
    fine = rk4_to(matrix, psi_0, dt / 2, 2 * steps)
    return float(np.abs(coarse - fine).max() * 16.0 / 15.0)

def evolve_eigenbasis(system: EigenSystem, psi_0: np.ndarray, times) -> np.ndarray:
    """
    psi(t) = sum_mu exp(-i E_mu t) <E_mu|psi_0> |E_mu>, one row per time.

    :rtype: np.ndarray
    """
    coefficients = system.coefficients(np.asarray(psi_0, dtype=np.complex128))
    phases = np.exp(-1j * np.outer(np.asarray(times, dtype=np.float64), system.get_eigenvalues()))
    return (phases * coefficients) @ system.get_eigenvectors().T

def propagate_eigenbasis(system: EigenSystem, psi_0: np.ndarray, spec: QuenchSpec,
                         sink: Sink | None = None) -> QuenchTrace:
    """
    Eigenbasis propagation streamed through a sink on the output grid of the spec.

    :rtype: QuenchTrace
    """
    sink = sink or basic_sink(psi_0)
    coefficients = system.coefficients(np.asarray(psi_0, dtype=np.complex128))
    vectors = system.get_eigenvectors()
    energies = system.get_eigenvalues()
    trace = QuenchTrace()
    for t in spec.output_times():
        evolved = np.exp(-1j * energies * t) * coefficients
        psi = vectors @ evolved
        trace.add_row(t, sink(t, psi), float(np.linalg.norm(psi)), float(np.abs(evolved) ** 2 @ energies))
    trace.set_diagnostic("method", "eigenbasis")
    return trace
