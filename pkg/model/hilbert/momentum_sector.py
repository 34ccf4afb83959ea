from model.hilbert.basis import Basis
from util.errors import ToleranceError, UnsupportedGeometryError
import logging
import numpy as np
import scipy.sparse as sparse

logger = logging.getLogger(__name__)

def translate_masks(masks: np.ndarray, rungs: int, legs: int, n_sites: int) -> np.ndarray:
    """
    Vectorised periodic shift of occupation masks by a number of rungs.

    :rtype: np.ndarray
    """
    shift = rungs * legs % n_sites
    if shift == 0:
        return masks.copy()
    full = (1 << n_sites) - 1
    return ((masks << shift) | (masks >> (n_sites - shift))) & full

class MomentumSector:
    """
    Momentum states under translation by two rungs:
    |r,k> = p^(-1/2) sum_{n<p} exp(-2 pi i k n / M) T_x^(2n) |r>, with M = L/2 and p the orbit size of r.
    """

    def __init__(self, basis: Basis, k: int, representatives: np.ndarray, periods: np.ndarray):
        self.__basis: Basis = basis
        self.__k: int = k
        self.__representatives: np.ndarray = representatives
        self.__periods: np.ndarray = periods
        self.__projector = None

    def get_basis(self) -> Basis:
        return self.__basis

    def get_k(self) -> int:
        return self.__k

    def get_representatives(self) -> np.ndarray:
        return self.__representatives

    def get_periods(self) -> np.ndarray:
        return self.__periods

    def get_translations(self) -> int:
        return self.__basis.get_geometry().get_L() // 2

    def get_normalizations(self) -> np.ndarray:
        return 1.0 / np.sqrt(self.__periods)

    def dimension(self) -> int:
        return len(self.__representatives)

    def is_real(self) -> bool:
        return self.__k == 0

    def projector(self) -> sparse.csc_matrix:
        """
        The isometry B (full dimension x sector dimension) whose columns are the momentum states.

        :rtype: scipy.sparse.csc_matrix
        """
        if self.__projector is None:
            geometry = self.__basis.get_geometry()
            translations = self.get_translations()
            rows, columns, values = [], [], []
            for column, (representative, period) in enumerate(zip(self.__representatives, self.__periods)):
                images = np.array([geometry.translate_mask(int(representative), 2 * n) for n in range(period)],
                                  dtype=np.int64)
                rows.extend(self.__basis.indices(images).tolist())
                columns.extend([column] * period)
                phases = np.exp(-2j * np.pi * self.__k * np.arange(period) / translations) / np.sqrt(period)
                values.extend(phases.tolist())
            dtype = np.float64 if self.is_real() else np.complex128
            values = np.array(values)
            if self.is_real():
                values = values.real
            self.__projector = sparse.csc_matrix((values.astype(dtype), (rows, columns)),
                                                 shape=(self.__basis.get_dimension(), self.dimension()))
        return self.__projector

    def restrict(self, matrix) -> sparse.csr_matrix:
        """
        B^H A B for an operator commuting with the two-rung translation.

        :param matrix: Sparse matrix over the full basis.
        :rtype: scipy.sparse.csr_matrix
        """
        projector = self.projector()
        return sparse.csr_matrix(projector.conj().T @ (matrix @ projector))

    def project(self, vector: np.ndarray, tolerance: float = 1e-10) -> np.ndarray:
        """
        Sector amplitudes of a full-basis vector that lies inside the sector.

        :raises ToleranceError: If the vector has weight outside the sector.
        """
        amplitudes = self.projector().conj().T @ vector
        lost = abs(np.vdot(vector, vector).real - np.vdot(amplitudes, amplitudes).real)
        if lost > tolerance:
            raise ToleranceError(f"state has weight {lost:.3e} outside momentum sector k={self.__k}")
        return amplitudes

    def embed(self, amplitudes: np.ndarray) -> np.ndarray:
        return self.projector() @ amplitudes

    def __repr__(self) -> str:
        return f"MomentumSector(k={self.__k}, dim={self.dimension()})"

def build_sector(basis: Basis, k: int) -> MomentumSector:
    """
    Orbit representatives (smallest mask of each orbit) under T_x^2 compatible with momentum k.

    :param basis: The full basis.
    :type basis: Basis
    :param k: Momentum index in 0..L/2-1.
    :type k: int
    :raises UnsupportedGeometryError: If L is odd.
    :raises ValueError: If k is out of range.
    :rtype: MomentumSector
    """
    geometry = basis.get_geometry()
    if geometry.get_L() % 2:
        raise UnsupportedGeometryError("momentum sectors need an even number of rungs")
    translations = geometry.get_L() // 2
    if not 0 <= k < translations:
        raise ValueError(f"k must lie in 0..{translations - 1}, got {k}")
    states = basis.get_states()
    legs, n_sites = geometry.get_legs(), geometry.get_size()
    representative = states.copy()
    period = np.full(len(states), translations, dtype=np.int64)
    for n in range(1, translations):
        image = translate_masks(states, 2 * n, legs, n_sites)
        representative = np.minimum(representative, image)
        returned = (image == states) & (period == translations)
        period[returned] = n
    own = representative == states
    allowed = own & ((k * period) % translations == 0)
    sector = MomentumSector(basis, k, states[allowed], period[allowed])
    logger.info("momentum sector k=%d of %s: dimension %d", k, geometry, sector.dimension())
    return sector
