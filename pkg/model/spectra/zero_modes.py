from model.operators.sparse_operator import SparseOperator
from model.spectra.eigen_system import EigenSystem
import logging
import numpy as np
import scipy.linalg

logger = logging.getLogger(__name__)

NULL_SPACE_RCOND = 1e-10

class ZeroModeBasis:
    """Orthonormal vectors spanning a zero-energy subspace, optionally with the diagonal of an operator in them."""

    def __init__(self, vectors: np.ndarray, diagonal: np.ndarray | None = None):
        """
        :param vectors: Orthonormal columns.
        :type vectors: np.ndarray
        :param diagonal: <v|A|v> per column, if the basis diagonalizes an operator A.
        :type diagonal: np.ndarray | None
        """
        self.__vectors: np.ndarray = vectors
        self.__diagonal: np.ndarray | None = diagonal

    def get_vectors(self) -> np.ndarray:
        return self.__vectors

    def get_diagonal(self) -> np.ndarray | None:
        return self.__diagonal

    def get_count(self) -> int:
        return self.__vectors.shape[1]

    def projector(self) -> np.ndarray:
        return self.__vectors @ self.__vectors.conj().T

    def __len__(self) -> int:
        return self.get_count()

    def __repr__(self) -> str:
        return f"ZeroModeBasis(count={self.get_count()})"

def zero_subspace(system: EigenSystem, tol_zero: float | None = None) -> ZeroModeBasis:
    """
    Eigenvectors with |E| below the threshold.

    :param system: The eigensystem.
    :type system: EigenSystem
    :param tol_zero: Threshold, defaults to the one of the eigensystem.
    :type tol_zero: float | None
    :rtype: ZeroModeBasis
    """
    tol = system.get_tol_zero() if tol_zero is None else tol_zero
    indices = np.flatnonzero(np.abs(system.get_eigenvalues()) < tol)
    return ZeroModeBasis(system.get_eigenvectors()[:, indices])

def rotate_within(vectors: np.ndarray, operator: SparseOperator) -> tuple[np.ndarray, np.ndarray]:
    """
    Rotate orthonormal columns so the symmetric operator is diagonal in their span.

    :return: Rotated columns and the diagonal values.
    :rtype: tuple[np.ndarray, np.ndarray]
    """
    if vectors.shape[1] == 0:
        return vectors, np.zeros(0)
    restricted = vectors.conj().T @ (operator.get_matrix() @ vectors)
    restricted = 0.5 * (restricted + restricted.conj().T)
    values, rotation = scipy.linalg.eigh(restricted)
    return vectors @ rotation, values

def rotate_zero_modes(zero_basis: ZeroModeBasis, operator: SparseOperator) -> ZeroModeBasis:
    """
    Basis of the same subspace that diagonalizes an operator restricted to it.

    :param zero_basis: The subspace.
    :type zero_basis: ZeroModeBasis
    :param operator: Symmetric operator over the same basis.
    :type operator: SparseOperator
    :rtype: ZeroModeBasis
    """
    if operator.get_dimension() != zero_basis.get_vectors().shape[0]:
        raise ValueError("operator and zero modes live on different bases")
    vectors, values = rotate_within(zero_basis.get_vectors(), operator)
    return ZeroModeBasis(vectors, values)

def simultaneous_zero_modes(hz: SparseOperator, hx: SparseOperator) -> ZeroModeBasis:
    """
    Vectors annihilated by both terms. The kernel of the diagonal Hz is spanned by the Fock states with zero
    diagonal entry; the result is the null space of the Hx columns on those states, cut at
    1e-10 times the largest singular value.

    :param hz: Diagonal term, built at any nonzero detuning.
    :type hz: SparseOperator
    :param hx: Flip term.
    :type hx: SparseOperator
    :raises ValueError: If hz is identically zero or not diagonal.
    :return: The simultaneous zero modes; their count is :meth:`ZeroModeBasis.get_count`.
    :rtype: ZeroModeBasis
    """
    if not hz.is_diagonal():
        raise ValueError("Hz must be diagonal")
    diagonal = hz.diagonal()
    if not np.any(diagonal != 0):
        raise ValueError("Hz must be built with a nonzero detuning")
    support = np.flatnonzero(diagonal == 0)
    dimension = hz.get_dimension()
    if len(support) == 0:
        return ZeroModeBasis(np.zeros((dimension, 0)))
    columns = hx.get_matrix()[:, support]
    rows = np.unique(columns.nonzero()[0])
    if len(rows) == 0:
        kernel = np.eye(len(support))
    else:
        kernel = scipy.linalg.null_space(columns[rows, :].toarray(), rcond=NULL_SPACE_RCOND)
    vectors = np.zeros((dimension, kernel.shape[1]))
    vectors[support, :] = kernel
    logger.info("simultaneous zero modes: %d from %d zero-field Fock states", kernel.shape[1], len(support))
    return ZeroModeBasis(vectors)
