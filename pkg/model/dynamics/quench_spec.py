from util.errors import ConfigError
from util.geometry import Geometry
from util.state_manager import ImbalanceKind, Method, Observable
import numpy as np

class QuenchSpec:
    """Everything that defines one quench: geometry, couplings, initial state, time grid and what to record."""

    def __init__(self, geometry: Geometry, delta: float, initial: str, t_max: float = 100.0, dt: float = 0.005,
                 output_stride: float = 0.05, method: Method = Method.RK4, w: float = 1.0,
                 observables: list[Observable] | None = None, overlaps: list[str] | None = None,
                 sector_k: int | None = None, drift_budget: float = 1e-6, entanglement: bool = False,
                 imbalances: list[ImbalanceKind] | None = None):
        """
        :param geometry: The lattice.
        :type geometry: Geometry
        :param delta: Staggered detuning.
        :type delta: float
        :param initial: Name (or bitstring) of the initial product state.
        :type initial: str
        :param t_max: Final time, units of 1/w.
        :type t_max: float
        :param dt: Integrator step.
        :type dt: float
        :param output_stride: Time between recorded samples, a multiple of dt.
        :type output_stride: float
        :param method: Propagator.
        :type method: Method
        :param w: Coupling.
        :type w: float
        :param observables: Recorded observables, all by default.
        :type observables: list[Observable] | None
        :param overlaps: Named states whose overlap with the evolved state is recorded.
        :type overlaps: list[str] | None
        :param sector_k: Evolve inside this momentum sector of the two-rung translation, None for the full basis.
        :type sector_k: int | None
        :param drift_budget: Largest accepted norm deviation.
        :type drift_budget: float
        :param entanglement: Record bipartite entanglement entropies.
        :type entanglement: bool
        :param imbalances: Imbalance operators whose expectation is recorded (ladder only).
        :type imbalances: list[ImbalanceKind] | None
        :raises ConfigError: On a non-positive step, a negative final time or a stride that is not a multiple of dt.
        """
        if dt <= 0:
            raise ConfigError(f"dt must be positive, got {dt}")
        if t_max < 0:
            raise ConfigError(f"t_max must be non-negative, got {t_max}")
        stride_steps = int(round(output_stride / dt))
        if stride_steps < 1 or abs(stride_steps * dt - output_stride) > 1e-9 * max(1.0, output_stride):
            raise ConfigError(f"output stride {output_stride} is not a multiple of dt {dt}")
        self.__geometry: Geometry = geometry
        self.__delta: float = float(delta)
        self.__w: float = float(w)
        self.__initial: str = initial
        self.__t_max: float = float(t_max)
        self.__dt: float = float(dt)
        self.__output_stride: float = float(output_stride)
        self.__stride_steps: int = stride_steps
        self.__method: Method = method
        self.__observables: list[Observable] = list(observables) if observables is not None else list(Observable)
        self.__overlaps: list[str] = list(overlaps or [])
        self.__sector_k: int | None = sector_k
        self.__drift_budget: float = drift_budget
        self.__entanglement: bool = entanglement
        self.__imbalances: list[ImbalanceKind] = list(imbalances or [])

    def get_geometry(self) -> Geometry:
        return self.__geometry

    def get_delta(self) -> float:
        return self.__delta

    def get_w(self) -> float:
        return self.__w

    def get_initial(self) -> str:
        return self.__initial

    def get_t_max(self) -> float:
        return self.__t_max

    def get_dt(self) -> float:
        return self.__dt

    def get_output_stride(self) -> float:
        return self.__output_stride

    def get_stride_steps(self) -> int:
        return self.__stride_steps

    def get_method(self) -> Method:
        return self.__method

    def get_observables(self) -> list[Observable]:
        return self.__observables

    def get_overlaps(self) -> list[str]:
        return self.__overlaps

    def get_sector_k(self) -> int | None:
        return self.__sector_k

    def get_drift_budget(self) -> float:
        return self.__drift_budget

    def wants_entanglement(self) -> bool:
        return self.__entanglement

    def get_imbalances(self) -> list[ImbalanceKind]:
        return self.__imbalances

    def row_count(self) -> int:
        """
        floor(t_max / output_stride) + 1.

        :rtype: int
        """
        return int(np.floor(self.__t_max / self.__output_stride + 1e-9)) + 1

    def output_times(self) -> np.ndarray:
        return np.round(np.arange(self.row_count()) * self.__output_stride, 12)

    def to_dict(self) -> dict:
        return {
            "geometry": self.__geometry.to_dict(),
            "delta": self.__delta,
            "w": self.__w,
            "initial": self.__initial,
            "t_max": self.__t_max,
            "dt": self.__dt,
            "output_stride": self.__output_stride,
            "method": self.__method.value,
            "observables": [observable.value for observable in self.__observables],
            "overlaps": self.__overlaps,
            "sector_k": self.__sector_k,
            "drift_budget": self.__drift_budget,
            "entanglement": self.__entanglement,
            "imbalances": [kind.value for kind in self.__imbalances],
        }

    def __repr__(self) -> str:
        return f"QuenchSpec({self.__initial}, delta={self.__delta}, t_max={self.__t_max}, {self.__method.value})"
