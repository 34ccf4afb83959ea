from model.dynamics.quench_trace import QuenchTrace
from model.operators.sparse_operator import SparseOperator
from model.spectra.eigen_system import EigenSystem, cluster_levels
from model.spectra.zero_modes import rotate_within
import logging
import numpy as np

logger = logging.getLogger(__name__)

DEFAULT_TOL_CLUSTER = 1e-9

class DiagonalEnsembleResult:
    """
    Long-time average of an operator after a quench, split into the part carried by the nonzero-energy
    eigenstates and the part carried by the zero modes.
    """

    def __init__(self, nonzero_part: float, zero_part: float, energies: np.ndarray, weights: np.ndarray,
                 values: np.ndarray, cluster_pairs: list[tuple[float, float, float]]):
        """
        :param nonzero_part: Sum over nonzero-energy modes of weight times diagonal element.
        :type nonzero_part: float
        :param zero_part: The same sum over the rotated zero modes.
        :type zero_part: float
        :param energies: Energy of every mode, in the order of the weights.
        :type energies: np.ndarray
        :param weights: |<psi_0|E_mu>|^2 in the rotated basis.
        :type weights: np.ndarray
        :param values: Diagonal elements A_mu,mu in the rotated basis.
        :type values: np.ndarray
        :param cluster_pairs: (E, weight at +E, weight at -E) for every positive cluster.
        :type cluster_pairs: list[tuple[float, float, float]]
        """
        self.__nonzero_part: float = nonzero_part
        self.__zero_part: float = zero_part
        self.__energies: np.ndarray = energies
        self.__weights: np.ndarray = weights
        self.__values: np.ndarray = values
        self.__cluster_pairs: list[tuple[float, float, float]] = cluster_pairs

    def get_total(self) -> float:
        return self.__nonzero_part + self.__zero_part

    def get_nonzero_part(self) -> float:
        return self.__nonzero_part

    def get_zero_part(self) -> float:
        return self.__zero_part

    def get_energies(self) -> np.ndarray:
        return self.__energies

    def get_weights(self) -> np.ndarray:
        return self.__weights

    def get_values(self) -> np.ndarray:
        return self.__values

    def get_cluster_pairs(self) -> list[tuple[float, float, float]]:
        return self.__cluster_pairs

    def weight_sum(self) -> float:
        return float(self.__weights.sum())

    def pairing_defect(self) -> float:
        """
        Largest difference between the total weights of the clusters at +E and -E.

        :rtype: float
        """
        return max((abs(plus - minus) for _, plus, minus in self.__cluster_pairs), default=0.0)

    def to_dict(self) -> dict:
        return {"total": self.get_total(), "nonzero_part": self.__nonzero_part, "zero_part": self.__zero_part,
                "weight_sum": self.weight_sum(), "pairing_defect": self.pairing_defect()}

    def __repr__(self) -> str:
        return (f"DiagonalEnsembleResult(total={self.get_total():.6g}, nonzero={self.__nonzero_part:.3e}, "
                f"zero={self.__zero_part:.6g})")

def _pairs(energies: np.ndarray, weights: np.ndarray, tolerance: float) -> list[tuple[float, float, float]]:
    pairs = []
    negative = np.flatnonzero(energies < 0)
    for index in np.flatnonzero(energies > 0):
        plus = float(weights[index])
        if len(negative) == 0:
            pairs.append((float(energies[index]), plus, 0.0))
            continue
        partner = negative[np.argmin(np.abs(energies[negative] + energies[index]))]
        minus = float(weights[partner]) if abs(energies[partner] + energies[index]) <= tolerance else 0.0
        pairs.append((float(energies[index]), plus, minus))
    return pairs

def diagonal_ensemble(system: EigenSystem, psi_0: np.ndarray, operator: SparseOperator,
                      tol_cluster: float = DEFAULT_TOL_CLUSTER) -> DiagonalEnsembleResult:
    """
    sum_mu |<psi_0|E_mu>|^2 A_mu,mu, with the operator diagonalized inside the zero-mode subspace and inside
    every degenerate cluster of nonzero energy before the weights are taken.

    :param system: Eigensystem of the Hamiltonian.
    :type system: EigenSystem
    :param psi_0: Normalized initial state over the same basis.
    :type psi_0: np.ndarray
    :param operator: Symmetric operator over the same basis.
    :type operator: SparseOperator
    :param tol_cluster: Degeneracy tolerance of the nonzero levels.
    :type tol_cluster: float
    :raises ValueError: If the state or the operator lives on another basis.
    :rtype: DiagonalEnsembleResult
    """
    dimension = system.get_dimension()
    if operator.get_dimension() != dimension or len(psi_0) != dimension:
        raise ValueError(f"state ({len(psi_0)}), operator ({operator.get_dimension()}) and eigensystem "
                         f"({dimension}) live on different bases")
    eigenvalues = system.get_eigenvalues()
    vectors = system.get_eigenvectors()
    zero = system.zero_mode_indices()
    nonzero = system.nonzero_mode_indices()
    groups = [zero] if len(zero) else []
    groups += [nonzero[cluster] for cluster in cluster_levels(eigenvalues[nonzero], tol_cluster)]
    energies, weights, values = [], [], []
    cluster_energies, cluster_weights = [], []
    zero_part, nonzero_part = 0.0, 0.0
    for group_index, group in enumerate(groups):
        rotated, diagonal = rotate_within(vectors[:, group], operator)
        overlap = np.abs(rotated.conj().T @ psi_0) ** 2
        contribution = float(overlap @ diagonal)
        if len(zero) and group_index == 0:
            zero_part += contribution
        else:
            nonzero_part += contribution
            cluster_energies.append(float(eigenvalues[group].mean()))
            cluster_weights.append(float(overlap.sum()))
        energies.append(eigenvalues[group])
        weights.append(overlap)
        values.append(diagonal)
    pairs = _pairs(np.array(cluster_energies), np.array(cluster_weights), max(10 * tol_cluster, 1e-7))
    result = DiagonalEnsembleResult(nonzero_part, zero_part, np.concatenate(energies), np.concatenate(weights),
                                    np.concatenate(values), pairs)
    logger.info("%s of %s, %d zero modes", result, operator.get_name() or "operator", len(zero))
    return result

class TimeAverageReport:
    """Running mean of a measured series over the second half of a trace against an ensemble prediction."""

    def __init__(self, running_mean: float, prediction: float, t_start: float, t_end: float, samples: int,
                 fluctuation: float):
        self.__running_mean: float = running_mean
        self.__prediction: float = prediction
        self.__t_start: float = t_start
        self.__t_end: float = t_end
        self.__samples: int = samples
        self.__fluctuation: float = fluctuation

    def get_running_mean(self) -> float:
        return self.__running_mean

    def get_prediction(self) -> float:
        return self.__prediction

    def get_deviation(self) -> float:
        return abs(self.__running_mean - self.__prediction)

    def get_window(self) -> tuple[float, float]:
        return self.__t_start, self.__t_end

    def get_samples(self) -> int:
        return self.__samples

    def get_fluctuation(self) -> float:
        return self.__fluctuation

    def to_dict(self) -> dict:
        return {"running_mean": self.__running_mean, "prediction": self.__prediction,
                "deviation": self.get_deviation(), "window": [self.__t_start, self.__t_end],
                "samples": self.__samples, "fluctuation": self.__fluctuation}

    def __repr__(self) -> str:
        return f"TimeAverageReport(mean={self.__running_mean:.6g}, predicted={self.__prediction:.6g})"

def time_average_check(trace: QuenchTrace, series, result: DiagonalEnsembleResult) -> TimeAverageReport:
    """
    Mean of <A>(t) over [t_max/2, t_max] compared with the diagonal-ensemble value.

    :param trace: The quench trace.
    :type trace: QuenchTrace
    :param series: Column name of the expectation series, or the series itself on the trace time grid.
    :param result: The ensemble prediction.
    :type result: DiagonalEnsembleResult
    :rtype: TimeAverageReport
    """
    times = trace.get_times()
    values = trace.get_series(series) if isinstance(series, str) else np.asarray(series, dtype=np.float64)
    if len(values) != len(times):
        raise ValueError(f"series has {len(values)} samples, trace has {len(times)}")
    window = times >= times[-1] / 2
    sampled = values[window]
    report = TimeAverageReport(float(sampled.mean()), result.get_total(), float(times[window][0]),
                               float(times[-1]), int(window.sum()), float(sampled.std()))
    logger.info("%s, deviation %.3e", report, report.get_deviation())
    return report
