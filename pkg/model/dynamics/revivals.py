from model.dynamics.quench_trace import QuenchTrace
from model.spectra.eigen_system import EigenSystem, cluster_levels
import logging
import numpy as np
import scipy.signal

logger = logging.getLogger(__name__)

DEFAULT_PROMINENCE = 0.05
DEFAULT_MIN_CONTRAST = 5.0

class RevivalResult:
    """Peaks of a time series and the period t* = t2 - t1 of its first two qualifying peaks."""

    def __init__(self, observable: str, peak_times: np.ndarray, peak_values: np.ndarray):
        self.__observable: str = observable
        self.__peak_times: np.ndarray = np.asarray(peak_times, dtype=np.float64)
        self.__peak_values: np.ndarray = np.asarray(peak_values, dtype=np.float64)

    def get_observable(self) -> str:
        return self.__observable

    def is_detected(self) -> bool:
        return len(self.__peak_times) >= 2

    def get_t_star(self) -> float | None:
        return float(self.__peak_times[1] - self.__peak_times[0]) if self.is_detected() else None

    def get_peak_times(self) -> np.ndarray:
        return self.__peak_times

    def get_peak_values(self) -> np.ndarray:
        return self.__peak_values

    def peaks(self) -> list[tuple[float, float]]:
        return list(zip(self.__peak_times.tolist(), self.__peak_values.tolist()))

    def to_dict(self) -> dict:
        return {"observable": self.__observable, "detected": self.is_detected(), "t_star": self.get_t_star(),
                "peaks": self.peaks()}

    def __repr__(self) -> str:
        if not self.is_detected():
            return f"RevivalResult({self.__observable}: no revival detected)"
        return f"RevivalResult({self.__observable}: t*={self.get_t_star():.6g}, {len(self.__peak_times)} peaks)"

class TowerResult:
    """Energies and weights of the selected scar tower and its median spacing."""

    def __init__(self, found: bool, delta_e: float | None, energies: np.ndarray, weights: np.ndarray,
                 contrast: float | None):
        self.__found: bool = found
        self.__delta_e: float | None = delta_e
        self.__energies: np.ndarray = np.asarray(energies, dtype=np.float64)
        self.__weights: np.ndarray = np.asarray(weights, dtype=np.float64)
        self.__contrast: float | None = contrast

    def is_found(self) -> bool:
        return self.__found

    def get_delta_e(self) -> float | None:
        return self.__delta_e

    def get_energies(self) -> np.ndarray:
        return self.__energies

    def get_weights(self) -> np.ndarray:
        return self.__weights

    def get_contrast(self) -> float | None:
        return self.__contrast

    def first_positive_energy(self) -> float | None:
        positive = self.__energies[self.__energies > 0]
        return float(positive.min()) if len(positive) else None

    def revival_estimate(self) -> float | None:
        """
        2 pi / delta E.

        :rtype: float | None
        """
        return 2 * np.pi / self.__delta_e if self.__delta_e else None

    def to_dict(self) -> dict:
        return {"found": self.__found, "delta_e": self.__delta_e, "members": self.__energies.tolist(),
                "weights": self.__weights.tolist(), "contrast": self.__contrast,
                "first_positive_energy": self.first_positive_energy()}

    def __repr__(self) -> str:
        if not self.__found:
            return "TowerResult(no tower)"
        return f"TowerResult(dE={self.__delta_e:.6g}, members={len(self.__energies)})"

def find_extrema(times: np.ndarray, series: np.ndarray, kind: str = "max",
                 prominence: float = DEFAULT_PROMINENCE) -> tuple[np.ndarray, np.ndarray]:
    """
    Interior local maxima (or minima) whose absolute prominence reaches the threshold.

    :param times: Sample times.
    :type times: np.ndarray
    :param series: Sampled values.
    :type series: np.ndarray
    :param kind: "max" or "min".
    :type kind: str
    :param prominence: Absolute prominence threshold.
    :type prominence: float
    :return: Times and values of the extrema.
    :rtype: tuple[np.ndarray, np.ndarray]
    """
    if kind not in ("max", "min"):
        raise ValueError(f"kind must be 'max' or 'min', got {kind!r}")
    series = np.asarray(series, dtype=np.float64)
    signal = series if kind == "max" else -series
    indices, _ = scipy.signal.find_peaks(signal, prominence=prominence)
    return np.asarray(times)[indices], series[indices]

def revival_period(trace: QuenchTrace, observable: str = "fidelity",
                   prominence: float = DEFAULT_PROMINENCE) -> RevivalResult:
    """
    Time between the first and the second qualifying peak of a recorded observable.

    :param trace: The quench trace.
    :type trace: QuenchTrace
    :param observable: Column name.
    :type observable: str
    :param prominence: Absolute prominence threshold.
    :type prominence: float
    :raises KeyError: If the observable was not recorded.
    :return: The result; fewer than two peaks means no revival detected.
    :rtype: RevivalResult
    """
    times, values = find_extrema(trace.get_times(), trace.get_series(observable), "max", prominence)
    result = RevivalResult(observable, times, values)
    logger.info("%s", result)
    return result

def oscillation_frequency(trace: QuenchTrace, observable: str = "mz_density",
                          prominence: float = DEFAULT_PROMINENCE) -> float | None:
    """
    Omega = 2 pi / (t2 - t1) from the first two maxima of a series, None without two maxima.

    :rtype: float | None
    """
    period = revival_period(trace, observable, prominence).get_t_star()
    return 2 * np.pi / period if period else None

def overlap_spectrum(system: EigenSystem, psi_0: np.ndarray) -> np.ndarray:
    """
    Rows (E, |<E|psi_0>|^2) for every eigenstate.

    :rtype: np.ndarray
    """
    return np.column_stack([system.get_eigenvalues(), system.overlaps(psi_0)])

def _select(energies: np.ndarray, weights: np.ndarray, spacing: float, half_count: int) -> np.ndarray:
    chosen = set()
    for m in range(-half_count, half_count + 1):
        inside = np.flatnonzero(np.abs(energies - m * spacing) <= spacing / 2)
        if len(inside):
            chosen.add(int(inside[np.argmax(weights[inside])]))
    return np.array(sorted(chosen, key=lambda index: energies[index]), dtype=np.int64)

def scar_tower_spacing(system: EigenSystem, psi_0: np.ndarray, members: int | None = None,
                       window: float | None = None, min_contrast: float = DEFAULT_MIN_CONTRAST,
                       tol_cluster: float = 1e-9) -> TowerResult:
    """
    Pick the heaviest cluster in each energy window m*dE +- dE/2 around the spectrum center and return the
    median spacing of the picks. Degenerate levels are merged into clusters first. The window is seeded
    by the heaviest positive-energy cluster, then refined once from the median spacing. The member count
    2*(L/2)+1 is a heuristic.

    :param system: Full eigensystem.
    :type system: EigenSystem
    :param psi_0: Initial state.
    :type psi_0: np.ndarray
    :param members: Number of windows, default 2*(L//2)+1 from the metadata, else 3.
    :type members: int | None
    :param window: Initial window width, default from the seed.
    :type window: float | None
    :param min_contrast: Smallest accepted ratio between the lightest member and the median cluster weight.
    :type min_contrast: float
    :param tol_cluster: Degeneracy tolerance.
    :type tol_cluster: float
    :return: The tower, or a result with found False for a flat overlap profile.
    :rtype: TowerResult
    """
    if members is None:
        L = system.get_metadata().get("L")
        members = 2 * (L // 2) + 1 if L else 3
    clusters = cluster_levels(system.get_eigenvalues(), tol_cluster)
    overlaps = system.overlaps(psi_0)
    energies = np.array([system.get_eigenvalues()[cluster].mean() for cluster in clusters])
    weights = np.array([overlaps[cluster].sum() for cluster in clusters])
    positive = np.flatnonzero(energies > system.get_tol_zero())
    spacing = window
    if spacing is None:
        if len(positive) == 0:
            return TowerResult(False, None, np.zeros(0), np.zeros(0), None)
        spacing = float(energies[positive[np.argmax(weights[positive])]])
    half_count = members // 2
    chosen = _select(energies, weights, spacing, half_count)
    if len(chosen) >= 2:
        chosen = _select(energies, weights, float(np.median(np.diff(energies[chosen]))), half_count)
    if len(chosen) < 2:
        return TowerResult(False, None, energies[chosen], weights[chosen], None)
    delta_e = float(np.median(np.diff(energies[chosen])))
    contrast = None
    found = True
    if len(clusters) > members:
        median = float(np.median(weights))
        contrast = float(weights[chosen].min() / median) if median > 0 else float("inf")
        found = contrast >= min_contrast
    result = TowerResult(found, delta_e if found else None, energies[chosen], weights[chosen], contrast)
    logger.info("%s (contrast %s)", result, contrast)
    return result

def coincident_extrema(first: np.ndarray, second: np.ndarray, tolerance: float) -> list[tuple[float, float]]:
    """
    Pairs (a, b) with a from the first list and b the nearest entry of the second, kept when |a - b| <= tolerance.

    :rtype: list[tuple[float, float]]
    """
    second = np.asarray(second, dtype=np.float64)
    pairs = []
    if len(second) == 0:
        return pairs
    for a in np.asarray(first, dtype=np.float64):
        b = second[np.argmin(np.abs(second - a))]
        if abs(a - b) <= tolerance:
            pairs.append((float(a), float(b)))
    return pairs

class RevivalReport:
    """Peak amplitudes and extremum coincidences of one trace, for regime classification by the caller."""

    def __init__(self, fidelity: RevivalResult, shannon_minima: np.ndarray, partner_maxima: np.ndarray,
                 coincidences: list[tuple[float, float]], pronounced: bool | None):
        self.__fidelity: RevivalResult = fidelity
        self.__shannon_minima: np.ndarray = shannon_minima
        self.__partner_maxima: np.ndarray = partner_maxima
        self.__coincidences: list[tuple[float, float]] = coincidences
        self.__pronounced: bool | None = pronounced

    def get_fidelity(self) -> RevivalResult:
        return self.__fidelity

    def first_peak_amplitude(self) -> float | None:
        values = self.__fidelity.get_peak_values()
        return float(values[0]) if len(values) else None

    def get_shannon_minima(self) -> np.ndarray:
        return self.__shannon_minima

    def get_partner_maxima(self) -> np.ndarray:
        return self.__partner_maxima

    def get_coincidences(self) -> list[tuple[float, float]]:
        return self.__coincidences

    def is_pronounced(self) -> bool | None:
        return self.__pronounced

    def to_dict(self) -> dict:
        return {"fidelity": self.__fidelity.to_dict(), "first_peak_amplitude": self.first_peak_amplitude(),
                "shannon_minima": self.__shannon_minima.tolist(), "partner_maxima": self.__partner_maxima.tolist(),
                "coincidences": self.__coincidences, "pronounced": self.__pronounced}

def revival_report(trace: QuenchTrace, prominence: float = DEFAULT_PROMINENCE, partner: str | None = None,
                   pronounced_threshold: float | None = None) -> RevivalReport:
    """
    Fidelity peaks, Shannon minima and the maxima of an overlap column, with the Shannon minima that fall
    within one output stride of a partner maximum.

    :param trace: A trace with fidelity and shannon columns.
    :type trace: QuenchTrace
    :param prominence: Absolute prominence threshold.
    :type prominence: float
    :param partner: Overlap column to compare with, e.g. "overlap_Z2bar"; skipped when absent.
    :type partner: str | None
    :param pronounced_threshold: First fidelity peak at or above this counts as pronounced; None leaves it open.
    :type pronounced_threshold: float | None
    :rtype: RevivalReport
    """
    fidelity = revival_period(trace, "fidelity", prominence)
    times = trace.get_times()
    minima = find_extrema(times, trace.get_series("shannon"), "min", prominence)[0] \
        if trace.has("shannon") else np.zeros(0)
    maxima = find_extrema(times, trace.get_series(partner), "max", prominence)[0] \
        if partner and trace.has(partner) else np.zeros(0)
    stride = float(times[1] - times[0]) if len(times) > 1 else 0.0
    coincidences = coincident_extrema(minima, maxima, stride)
    pronounced = None
    if pronounced_threshold is not None:
        values = fidelity.get_peak_values()
        pronounced = bool(len(values)) and bool(values[0] >= pronounced_threshold)
    return RevivalReport(fidelity, minima, maxima, coincidences, pronounced)
