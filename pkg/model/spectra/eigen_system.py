from model.operators.sparse_operator import SparseOperator
from util.errors import CapacityError
import logging
import numpy as np
import scipy.linalg

logger = logging.getLogger(__name__)

DEFAULT_CAP = 40000
DEFAULT_TOL_ZERO = 1e-8

class EigenSystem:
    """Ascending eigenvalues and orthonormal real eigenvectors (columns) of a Hamiltonian."""

    def __init__(self, eigenvalues: np.ndarray, eigenvectors: np.ndarray, tol_zero: float = DEFAULT_TOL_ZERO,
                 metadata: dict | None = None):
        """
        :param eigenvalues: Ascending eigenvalues.
        :type eigenvalues: np.ndarray
        :param eigenvectors: Matching eigenvectors as columns.
        :type eigenvectors: np.ndarray
        :param tol_zero: Absolute threshold for zero modes.
        :type tol_zero: float
        :param metadata: Parameters the spectrum was computed for (N, delta, w, ...).
        :type metadata: dict | None
        """
        self.__eigenvalues: np.ndarray = np.asarray(eigenvalues, dtype=np.float64)
        self.__eigenvectors: np.ndarray = np.asarray(eigenvectors)
        self.__tol_zero: float = tol_zero
        self.__metadata: dict = dict(metadata or {})

    def get_eigenvalues(self) -> np.ndarray:
        return self.__eigenvalues

    def get_eigenvectors(self) -> np.ndarray:
        return self.__eigenvectors

    def get_tol_zero(self) -> float:
        return self.__tol_zero

    def get_metadata(self) -> dict:
        return self.__metadata

    def get_dimension(self) -> int:
        return len(self.__eigenvalues)

    def zero_mode_indices(self) -> np.ndarray:
        return np.flatnonzero(np.abs(self.__eigenvalues) < self.__tol_zero)

    def nonzero_mode_indices(self) -> np.ndarray:
        return np.flatnonzero(np.abs(self.__eigenvalues) >= self.__tol_zero)

    def smallest_nonzero(self) -> float:
        """
        Smallest |E| above the zero-mode threshold, to audit the threshold against the spectral gap.

        :rtype: float
        """
        magnitudes = np.abs(self.__eigenvalues)
        above = magnitudes[magnitudes >= self.__tol_zero]
        return float(above.min()) if len(above) else float("inf")

    def largest_zero(self) -> float:
        magnitudes = np.abs(self.__eigenvalues)
        below = magnitudes[magnitudes < self.__tol_zero]
        return float(below.max()) if len(below) else 0.0

    def overlaps(self, vector: np.ndarray) -> np.ndarray:
        """
        |<E_mu|psi>|^2 for every eigenvector.

        :rtype: np.ndarray
        """
        return np.abs(self.__eigenvectors.conj().T @ vector) ** 2

    def coefficients(self, vector: np.ndarray) -> np.ndarray:
        return self.__eigenvectors.conj().T @ vector

    def residual(self, hamiltonian: SparseOperator) -> float:
        """
        max over eigenpairs of ||H v - E v||_2.

        :rtype: float
        """
        difference = hamiltonian.get_matrix() @ self.__eigenvectors - self.__eigenvectors * self.__eigenvalues
        return float(np.linalg.norm(difference, axis=0).max()) if self.get_dimension() else 0.0

    def pairing_defect(self) -> float:
        """
        max_i |E_i + E_(dim-1-i)| of the sorted spectrum.

        :rtype: float
        """
        return float(np.abs(self.__eigenvalues + self.__eigenvalues[::-1]).max()) if self.get_dimension() else 0.0

    def orthonormality_defect(self) -> float:
        gram = self.__eigenvectors.conj().T @ self.__eigenvectors
        return float(np.abs(gram - np.eye(self.get_dimension())).max())

    def __repr__(self) -> str:
        return f"EigenSystem(dim={self.get_dimension()}, zero modes={len(self.zero_mode_indices())})"

def diagonalize(hamiltonian: SparseOperator, cap: int = DEFAULT_CAP, tol_zero: float = DEFAULT_TOL_ZERO,
                metadata: dict | None = None) -> EigenSystem:
    """
    Full dense symmetric eigendecomposition.

    :param hamiltonian: The symmetric operator.
    :type hamiltonian: SparseOperator
    :param cap: Largest dimension accepted.
    :type cap: int
    :param tol_zero: Zero-mode threshold.
    :type tol_zero: float
    :param metadata: Stored with the result.
    :type metadata: dict | None
    :raises CapacityError: If the dimension exceeds the cap.
    :rtype: EigenSystem
    """
    dimension = hamiltonian.get_dimension()
    if dimension > cap:
        raise CapacityError(f"dimension {dimension} exceeds the diagonalization cap {cap}; use smaller N or a sector")
    eigenvalues, eigenvectors = scipy.linalg.eigh(hamiltonian.to_dense())
    system = EigenSystem(eigenvalues, eigenvectors, tol_zero, metadata)
    logger.info("diagonalized dim %d: %d zero modes, smallest |E| above threshold %.3e",
                dimension, len(system.zero_mode_indices()), system.smallest_nonzero())
    return system

def cluster_levels(eigenvalues: np.ndarray, tolerance: float = 1e-9) -> list[np.ndarray]:
    """
    Group ascending eigenvalues into degenerate clusters: consecutive levels closer than the tolerance
    share a cluster.

    :param eigenvalues: Ascending eigenvalues.
    :type eigenvalues: np.ndarray
    :param tolerance: Largest gap inside a cluster.
    :type tolerance: float
    :return: Index arrays, one per cluster, in ascending energy.
    :rtype: list[np.ndarray]
    """
    if len(eigenvalues) == 0:
        return []
    breaks = np.flatnonzero(np.diff(eigenvalues) > tolerance) + 1
    return np.split(np.arange(len(eigenvalues)), breaks)
