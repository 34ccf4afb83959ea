from model.hilbert.basis import Basis
from util.errors import UnsupportedGeometryError
from util.state_manager import BipartitionKind
import logging
import numpy as np

logger = logging.getLogger(__name__)

class Bipartition:
    """
    A cut of the sites into A and B, with the sub-configurations of A and of B that occur in the basis.
    Every basis state is the pair (a_index[i], b_index[i]).
    """

    def __init__(self, kind: BipartitionKind, basis: Basis, mask_a: int):
        """
        :param kind: The cut.
        :type kind: BipartitionKind
        :param basis: The constrained basis to scan.
        :type basis: Basis
        :param mask_a: Occupation mask of the sites of A.
        :type mask_a: int
        """
        self.__kind: BipartitionKind = kind
        self.__basis: Basis = basis
        self.__mask_a: int = mask_a
        self.__mask_b: int = basis.get_geometry().full_mask() ^ mask_a
        states = basis.get_states()
        self.__configs_a, self.__index_a = np.unique(states & self.__mask_a, return_inverse=True)
        self.__configs_b, self.__index_b = np.unique(states & self.__mask_b, return_inverse=True)
        self.__index_a = self.__index_a.reshape(-1)
        self.__index_b = self.__index_b.reshape(-1)

    def get_kind(self) -> BipartitionKind:
        return self.__kind

    def get_basis(self) -> Basis:
        return self.__basis

    def get_mask_a(self) -> int:
        return self.__mask_a

    def get_mask_b(self) -> int:
        return self.__mask_b

    def sites_a(self) -> list:
        geometry = self.__basis.get_geometry()
        return [site for site in geometry.sites() if self.__mask_a >> geometry.bit(site) & 1]

    def sites_b(self) -> list:
        geometry = self.__basis.get_geometry()
        return [site for site in geometry.sites() if self.__mask_b >> geometry.bit(site) & 1]

    def get_configs_a(self) -> np.ndarray:
        return self.__configs_a

    def get_configs_b(self) -> np.ndarray:
        return self.__configs_b

    def get_index_a(self) -> np.ndarray:
        return self.__index_a

    def get_index_b(self) -> np.ndarray:
        return self.__index_b

    def dimension_a(self) -> int:
        return len(self.__configs_a)

    def dimension_b(self) -> int:
        return len(self.__configs_b)

    def amplitude_matrix(self, psi: np.ndarray) -> np.ndarray:
        """
        The (A-config x B-config) matrix of the amplitudes of a state.

        :rtype: np.ndarray
        """
        matrix = np.zeros((self.dimension_a(), self.dimension_b()), dtype=np.result_type(psi, np.float64))
        matrix[self.__index_a, self.__index_b] = psi
        return matrix

    def __repr__(self) -> str:
        return f"Bipartition({self.__kind.value}, dA={self.dimension_a()}, dB={self.dimension_b()})"

def build_bipartition(basis: Basis, kind: BipartitionKind) -> Bipartition:
    """
    Parallel: A is the bottom leg. Perpendicular: A is the rungs 1..L/2.

    :param basis: The constrained basis.
    :type basis: Basis
    :param kind: The cut.
    :type kind: BipartitionKind
    :raises UnsupportedGeometryError: For the parallel cut of a chain.
    :rtype: Bipartition
    """
    geometry = basis.get_geometry()
    if kind == BipartitionKind.PARALLEL:
        if not geometry.is_ladder():
            raise UnsupportedGeometryError("the chain supports only the perpendicular cut")
        mask_a = geometry.leg_mask(1)
    else:
        mask_a = geometry.rung_mask(1, geometry.get_L() // 2)
    bipartition = Bipartition(kind, basis, mask_a)
    logger.info("%s cut of %s: %d x %d sub-configurations", kind.value, geometry,
                bipartition.dimension_a(), bipartition.dimension_b())
    return bipartition
