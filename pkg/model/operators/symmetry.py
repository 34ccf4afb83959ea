from model.hilbert.basis import Basis
from model.hilbert.momentum_sector import translate_masks
from model.operators.sparse_operator import SparseOperator
from util.state_manager import SymmetryKind
import numpy as np
import scipy.sparse as sparse

class SymmetryMap:
    """
    A signed permutation S|i> = sign[i] |perm[i]> of the basis.
    """

    def __init__(self, permutation: np.ndarray, signs: np.ndarray, kind: str = ""):
        """
        :param permutation: Image index of every basis index.
        :type permutation: np.ndarray
        :param signs: +1 or -1 per basis index.
        :type signs: np.ndarray
        :param kind: Label.
        :type kind: str
        :raises ValueError: If the permutation is not a bijection.
        """
        permutation = np.asarray(permutation, dtype=np.int64)
        if len(np.unique(permutation)) != len(permutation) or (len(permutation) and permutation.min() < 0):
            raise ValueError(f"{kind or 'map'} is not a permutation of the basis")
        self.__permutation: np.ndarray = permutation
        self.__signs: np.ndarray = np.asarray(signs, dtype=np.int64)
        self.__kind: str = kind

    def get_permutation(self) -> np.ndarray:
        return self.__permutation

    def get_signs(self) -> np.ndarray:
        return self.__signs

    def get_kind(self) -> str:
        return self.__kind

    def get_dimension(self) -> int:
        return len(self.__permutation)

    def apply(self, vector: np.ndarray) -> np.ndarray:
        """
        S v for one vector or for the columns of a matrix.

        :rtype: np.ndarray
        """
        result = np.zeros_like(vector)
        if vector.ndim == 1:
            result[self.__permutation] = self.__signs * vector
        else:
            result[self.__permutation] = self.__signs[:, None] * vector
        return result

    def compose(self, other: 'SymmetryMap') -> 'SymmetryMap':
        """
        The map self after other.

        :param other: Applied first.
        :type other: SymmetryMap
        :rtype: SymmetryMap
        """
        permutation = self.__permutation[other.get_permutation()]
        signs = other.get_signs() * self.__signs[other.get_permutation()]
        return SymmetryMap(permutation, signs, f"{self.__kind}{other.get_kind()}")

    def inverse(self) -> 'SymmetryMap':
        permutation = np.empty_like(self.__permutation)
        permutation[self.__permutation] = np.arange(len(self.__permutation))
        signs = np.empty_like(self.__signs)
        signs[self.__permutation] = self.__signs
        return SymmetryMap(permutation, signs, f"{self.__kind}^-1")

    def as_sparse(self) -> sparse.csr_matrix:
        dimension = self.get_dimension()
        return sparse.csr_matrix((self.__signs.astype(np.float64), (self.__permutation, np.arange(dimension))),
                                 shape=(dimension, dimension))

    def equals(self, other: 'SymmetryMap') -> bool:
        return np.array_equal(self.__permutation, other.get_permutation()) and np.array_equal(self.__signs, other.get_signs())

    def is_identity(self) -> bool:
        return bool(np.all(self.__permutation == np.arange(self.get_dimension())) and np.all(self.__signs == 1))

    def __repr__(self) -> str:
        return f"SymmetryMap({self.__kind}, dim={self.get_dimension()})"

def _permutation(basis: Basis, images: np.ndarray, kind: str) -> SymmetryMap:
    indices = basis.indices(images)
    if np.any(indices < 0):
        raise ValueError(f"{kind} leaves the constrained space")
    return SymmetryMap(indices, np.ones(len(indices), dtype=np.int64), kind)

def leg_swap_masks(basis: Basis) -> np.ndarray:
    states = basis.get_states()
    bottom = basis.get_geometry().leg_mask(1)
    return ((states & bottom) << 1) | ((states >> 1) & bottom)

def build_symmetry(basis: Basis, kind: SymmetryKind) -> SymmetryMap:
    """
    Signed permutation of a symmetry. T_x shifts patterns by one rung, T_y and R_x exchange the two sites of
    every rung (the same permutation on a two-leg ladder), C carries the sign prod sigma-z =
    (-1)^(number of down spins), C1 = T_x C and C2 = T_x T_y C.

    :param basis: The basis.
    :type basis: Basis
    :param kind: The symmetry.
    :type kind: SymmetryKind
    :raises UnsupportedGeometryError: For T_y, R_x and C2 on the chain.
    :rtype: SymmetryMap
    """
    geometry = basis.get_geometry()
    states = basis.get_states()
    legs, n_sites = geometry.get_legs(), geometry.get_size()
    if kind == SymmetryKind.T_X:
        return _permutation(basis, translate_masks(states, 1, legs, n_sites), kind.value)
    if kind == SymmetryKind.T_X2:
        return _permutation(basis, translate_masks(states, 2, legs, n_sites), kind.value)
    if kind in (SymmetryKind.T_Y, SymmetryKind.R_X):
        geometry.require_ladder(kind.value)
        return _permutation(basis, leg_swap_masks(basis), kind.value)
    if kind == SymmetryKind.C:
        down = n_sites - basis.excitation_counts()
        return SymmetryMap(np.arange(len(states)), np.where(down % 2 == 0, 1, -1), kind.value)
    chirality = build_symmetry(basis, SymmetryKind.C)
    translation = build_symmetry(basis, SymmetryKind.T_X)
    if kind == SymmetryKind.C1:
        result = translation.compose(chirality)
    else:
        result = translation.compose(build_symmetry(basis, SymmetryKind.T_Y).compose(chirality))
    return SymmetryMap(result.get_permutation(), result.get_signs(), kind.value)

def anticommutator_max(operator: SparseOperator, symmetry: SymmetryMap) -> float:
    """
    max |(A S + S A)_ij|.

    :rtype: float
    """
    matrix = symmetry.as_sparse()
    result = operator.get_matrix() @ matrix + matrix @ operator.get_matrix()
    return float(abs(result).max()) if result.nnz else 0.0

def commutator_max(operator: SparseOperator, symmetry: SymmetryMap) -> float:
    """
    max |(A S - S A)_ij|.

    :rtype: float
    """
    matrix = symmetry.as_sparse()
    result = operator.get_matrix() @ matrix - matrix @ operator.get_matrix()
    return float(abs(result).max()) if result.nnz else 0.0
