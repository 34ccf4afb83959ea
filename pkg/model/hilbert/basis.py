from model.hilbert.fock_state import FockState
from util.geometry import Geometry
import logging, math
import numpy as np

logger = logging.getLogger(__name__)

def is_valid(state, geometry: Geometry) -> bool:
    """
    True iff no pair of nearest-neighbour sites is doubly occupied.

    :param state: Occupation mask or FockState.
    :type state: int | FockState
    :param geometry: The geometry.
    :type geometry: Geometry
    :rtype: bool
    """
    mask = int(state)
    for bit in range(geometry.get_size()):
        if mask >> bit & 1 and mask & geometry.neighbor_mask(bit):
            return False
    return True

def dimension_formula(L: int) -> int:
    """
    Closed-form dimension of the constrained ladder space, (1+sqrt2)^L + (1-sqrt2)^L + (-1)^L, rounded.

    :param L: Number of rungs, at least 1.
    :type L: int
    :rtype: int
    """
    if L < 1:
        raise ValueError(f"L must be at least 1, got {L}")
    root = math.sqrt(2.0)
    return int(round((1 + root) ** L + (1 - root) ** L + (-1) ** L))

def chain_dimension_formula(L: int) -> int:
    """
    Dimension of the periodic constrained chain (Lucas numbers).

    :param L: Number of sites, at least 1.
    :type L: int
    :rtype: int
    """
    if L < 1:
        raise ValueError(f"L must be at least 1, got {L}")
    golden = (1 + math.sqrt(5.0)) / 2
    return int(round(golden ** L + (-1 / golden) ** L))

def transfer_matrix_trace(L: int, legs: int = 2) -> int:
    """
    Exact trace of the L-th power of the rung transfer matrix, in integer arithmetic.

    :param L: Number of rungs.
    :type L: int
    :param legs: 2 for the ladder (rung states empty, bottom, top), 1 for the chain.
    :type legs: int
    :rtype: int
    """
    if legs == 2:
        transfer = np.array([[1, 1, 1], [1, 0, 1], [1, 1, 0]], dtype=object)
    else:
        transfer = np.array([[1, 1], [1, 0]], dtype=object)
    # object dtype keeps exact Python integers
    return int(np.trace(np.linalg.matrix_power(transfer, L)))

class Basis:
    """The ascending list of blockade-valid occupation masks of a geometry."""

    def __init__(self, geometry: Geometry, states: np.ndarray):
        """
        :param geometry: The geometry.
        :type geometry: Geometry
        :param states: Ascending, duplicate-free valid masks.
        :type states: np.ndarray
        """
        self.__geometry: Geometry = geometry
        self.__states: np.ndarray = np.asarray(states, dtype=np.int64)
        self.__states.setflags(write=False)
        self.__occupations: np.ndarray = None

    def get_geometry(self) -> Geometry:
        return self.__geometry

    def get_states(self) -> np.ndarray:
        return self.__states

    def get_dimension(self) -> int:
        return len(self.__states)

    def __len__(self) -> int:
        return len(self.__states)

    def get_state(self, index: int) -> FockState:
        return FockState(int(self.__states[index]), self.__geometry)

    def indices(self, masks: np.ndarray) -> np.ndarray:
        """
        Binary-search lookup of many masks; missing masks give -1.

        :param masks: Occupation masks.
        :type masks: np.ndarray
        :rtype: np.ndarray
        """
        masks = np.asarray(masks, dtype=np.int64)
        positions = np.searchsorted(self.__states, masks)
        positions = np.minimum(positions, len(self.__states) - 1)
        return np.where(self.__states[positions] == masks, positions, -1)

    def index(self, state) -> int:
        """
        Position of a state in the basis, -1 if it is not a basis state.

        :param state: Occupation mask or FockState.
        :type state: int | FockState
        :rtype: int
        """
        return int(self.indices(np.array([int(state)]))[0])

    def __contains__(self, state) -> bool:
        return self.index(state) >= 0

    def occupations(self) -> np.ndarray:
        """
        Boolean matrix (dimension x N) of occupied sites, column = bit index.

        :rtype: np.ndarray
        """
        if self.__occupations is None:
            bits = np.arange(self.__geometry.get_size(), dtype=np.int64)
            occupations = (self.__states[:, None] >> bits[None, :]) & 1
            self.__occupations = occupations.astype(bool)
            self.__occupations.setflags(write=False)
        return self.__occupations

    def excitation_counts(self) -> np.ndarray:
        return self.occupations().sum(axis=1)

    def fock_vector(self, state, dtype=np.float64) -> np.ndarray:
        """
        Normalized basis vector of a Fock state.

        :param state: Occupation mask or FockState.
        :type state: int | FockState
        :raises ValueError: If the state is not a basis state.
        :rtype: np.ndarray
        """
        index = self.index(state)
        if index < 0:
            raise ValueError(f"state {int(state)} is not in the constrained basis")
        vector = np.zeros(self.get_dimension(), dtype=dtype)
        vector[index] = 1.0
        return vector

    def export_lines(self) -> list[str]:
        """
        Header ``N=<n> dim=<d>`` followed by one {".","x"} string per state.

        :rtype: list[str]
        """
        lines = [f"N={self.__geometry.get_size()} dim={self.get_dimension()}"]
        lines.extend(self.get_state(i).to_string() for i in range(self.get_dimension()))
        return lines

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Basis):
            return False
        return self.__geometry == other.get_geometry() and np.array_equal(self.__states, other.get_states())

    def __hash__(self) -> int:
        return hash((self.__geometry, self.get_dimension()))

    def __repr__(self) -> str:
        return f"Basis({self.__geometry!r}, dim={self.get_dimension()})"

def enumerate_basis(geometry: Geometry) -> Basis:
    """
    Build the constrained basis cell by cell: every rung (or chain site) takes a value compatible
    with the previous one, then the periodic closure is checked. States come out ascending.

    :param geometry: The geometry.
    :type geometry: Geometry
    :rtype: Basis
    """
    legs = geometry.get_legs()
    values = np.array([0, 1, 2] if legs == 2 else [0, 1], dtype=np.int64)
    states = values.copy()
    first = values.copy()
    last = values.copy()
    for j in range(1, geometry.get_L()):
        grown, firsts, lasts = [], [], []
        for value in values:
            keep = (last & value) == 0
            grown.append(states[keep] | (value << (legs * j)))
            firsts.append(first[keep])
            lasts.append(np.full(int(keep.sum()), value, dtype=np.int64))
        states = np.concatenate(grown)
        first = np.concatenate(firsts)
        last = np.concatenate(lasts)
    states = np.sort(states[(last & first) == 0])
    logger.info("enumerated %s: dimension %d", geometry, len(states))
    return Basis(geometry, states)
