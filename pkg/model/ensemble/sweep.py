from model.dynamics.quench_runner import Eigensolver, default_eigensolver
from model.ensemble.diagonal_ensemble import diagonal_ensemble
from model.hilbert.basis import Basis, enumerate_basis
from model.hilbert.named_states import state_vector
from model.operators.hamiltonian import build_hamiltonian
from model.operators.imbalance import build_imbalance
from model.operators.model_params import ModelParams
from util.geometry import Geometry
from util.state_manager import ImbalanceKind
from typing import Callable, Iterable
import logging

logger = logging.getLogger(__name__)

class SweepRow:
    """One line of the imbalance sweep table."""
    HEADER = ["N", "delta", "operator", "initial_state", "total", "nonzero_part", "zero_part"]

    def __init__(self, N: int, delta: float, operator: ImbalanceKind, initial_state: str, total: float,
                 nonzero_part: float, zero_part: float):
        self.__N: int = N
        self.__delta: float = delta
        self.__operator: ImbalanceKind = operator
        self.__initial_state: str = initial_state
        self.__total: float = total
        self.__nonzero_part: float = nonzero_part
        self.__zero_part: float = zero_part

    def get_N(self) -> int:
        return self.__N

    def get_delta(self) -> float:
        return self.__delta

    def get_operator(self) -> ImbalanceKind:
        return self.__operator

    def get_initial_state(self) -> str:
        return self.__initial_state

    def get_total(self) -> float:
        return self.__total

    def get_nonzero_part(self) -> float:
        return self.__nonzero_part

    def get_zero_part(self) -> float:
        return self.__zero_part

    def to_list(self) -> list:
        return [self.__N, self.__delta, self.__operator.value, self.__initial_state, self.__total,
                self.__nonzero_part, self.__zero_part]

    def __repr__(self) -> str:
        return (f"SweepRow(N={self.__N}, delta={self.__delta}, {self.__operator.value}, {self.__initial_state}, "
                f"total={self.__total:.6g})")

def sweep_pairs(kinds: list[ImbalanceKind], initial_states: list[str] | None) -> list[tuple[ImbalanceKind, str]]:
    """
    Every imbalance with every given initial state, or each imbalance with the state it is tailored to.

    :rtype: list[tuple[ImbalanceKind, str]]
    """
    if initial_states is None:
        return [(kind, kind.default_initial_state()) for kind in kinds]
    return [(kind, state) for kind in kinds for state in initial_states]

def sweep_cell(basis: Basis, delta: float, pairs: list[tuple[ImbalanceKind, str]],
               eigensolver: Eigensolver | None = None, w: float = 1.0) -> list[SweepRow]:
    """
    Diagonalize at one detuning and evaluate the diagonal ensemble of every (imbalance, initial state) pair.

    :rtype: list[SweepRow]
    """
    geometry = basis.get_geometry()
    params = ModelParams(delta, w)
    system = (eigensolver or default_eigensolver)(build_hamiltonian(basis, params),
                                                  {"L": geometry.get_L(), "legs": geometry.get_legs(),
                                                   **params.to_dict()})
    operators = {kind: build_imbalance(basis, kind) for kind in {kind for kind, _ in pairs}}
    rows = []
    for kind, state in pairs:
        result = diagonal_ensemble(system, state_vector(basis, state), operators[kind])
        rows.append(SweepRow(geometry.get_size(), delta, kind, state, result.get_total(), result.get_nonzero_part(),
                             result.get_zero_part()))
    return rows

def imbalance_sweep(geometry: Geometry, deltas: Iterable[float], kinds: list[ImbalanceKind] | None = None,
                    initial_states: list[str] | None = None, map_fn: Callable = map,
                    eigensolver: Eigensolver | None = None, w: float = 1.0) -> list[SweepRow]:
    """
    Long-time imbalance averages and their zero/nonzero split over a detuning grid.

    :param geometry: Ladder geometry.
    :type geometry: Geometry
    :param deltas: Detuning grid.
    :type deltas: Iterable[float]
    :param kinds: Imbalances, all three by default.
    :type kinds: list[ImbalanceKind] | None
    :param initial_states: Initial states, default pairs each imbalance with its tailored state.
    :type initial_states: list[str] | None
    :param map_fn: Map over the detuning cells, e.g. the map of a thread pool.
    :type map_fn: Callable
    :param eigensolver: Diagonalizer, e.g. a cached one.
    :type eigensolver: Eigensolver | None
    :param w: Coupling.
    :type w: float
    :raises UnsupportedGeometryError: On the chain.
    :raises CapacityError: If the basis exceeds the diagonalization cap.
    :rtype: list[SweepRow]
    """
    geometry.require_ladder("imbalance sweep")
    basis = enumerate_basis(geometry)
    pairs = sweep_pairs(list(kinds or ImbalanceKind), initial_states)
    cells = map_fn(lambda delta: sweep_cell(basis, delta, pairs, eigensolver, w), list(deltas))
    rows = [row for cell in cells for row in cell]
    logger.info("sweep over %d detunings on %r: %d rows", len(rows) // max(len(pairs), 1), geometry, len(rows))
    return rows
