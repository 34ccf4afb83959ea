from util.errors import ConfigError

class ModelParams:
    """Couplings of the ladder Hamiltonian: staggered detuning delta and Rabi coupling w (time in units of 1/w)."""

    def __init__(self, delta: float, w: float = 1.0):
        """
        :param delta: Staggered detuning, non-negative.
        :type delta: float
        :param w: Coupling, positive.
        :type w: float
        :raises ConfigError: If delta < 0 or w <= 0.
        """
        if delta < 0:
            raise ConfigError(f"detuning must be non-negative, got {delta}")
        if w <= 0:
            raise ConfigError(f"coupling must be positive, got {w}")
        self.__delta: float = float(delta)
        self.__w: float = float(w)

    def get_delta(self) -> float:
        return self.__delta

    def get_w(self) -> float:
        return self.__w

    def plaquette_ratio(self) -> float:
        """
        r = w / (2 delta), the single-plaquette coupling.

        :raises ConfigError: At zero detuning.
        :rtype: float
        """
        if self.__delta == 0:
            raise ConfigError("the plaquette ratio needs a nonzero detuning")
        return self.__w / (2 * self.__delta)

    def to_dict(self) -> dict:
        return {"delta": self.__delta, "w": self.__w}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModelParams):
            return False
        return self.__delta == other.get_delta() and self.__w == other.get_w()

    def __hash__(self) -> int:
        return hash((self.__delta, self.__w))

    def __repr__(self) -> str:
        return f"ModelParams(delta={self.__delta}, w={self.__w})"
