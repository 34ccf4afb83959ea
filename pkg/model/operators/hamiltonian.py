from model.hilbert.basis import Basis
from model.operators.local import flip_pairs
from model.operators.model_params import ModelParams
from model.operators.sparse_operator import SparseOperator
import logging
import numpy as np
import scipy.sparse as sparse

logger = logging.getLogger(__name__)

def stagger_signs(basis: Basis) -> np.ndarray:
    """
    (-1)^j for every bit index, rungs counted from 1.

    :rtype: np.ndarray
    """
    return np.array([site.stagger() for site in basis.get_geometry().sites()], dtype=np.int64)

def staggered_magnetization(basis: Basis) -> np.ndarray:
    """
    Integer sum over sites of (-1)^j sigma-z for every basis state.

    :rtype: np.ndarray
    """
    signs = stagger_signs(basis)
    return 2 * (basis.occupations().astype(np.int64) @ signs) - int(signs.sum())

def build_hz(basis: Basis, delta: float) -> SparseOperator:
    """
    The detuning term -delta sum_j,a (-1)^j sigma-z_j,a, diagonal in the Fock basis.

    :param basis: The basis.
    :type basis: Basis
    :param delta: Staggered detuning.
    :type delta: float
    :rtype: SparseOperator
    """
    return SparseOperator(sparse.diags(-float(delta) * staggered_magnetization(basis).astype(np.float64)), name="Hz")

def build_hx(basis: Basis, w: float = 1.0) -> SparseOperator:
    """
    The constrained flip term -w sum_j,a projected sigma-x_j,a.

    :param basis: The basis.
    :type basis: Basis
    :param w: Coupling.
    :type w: float
    :rtype: SparseOperator
    """
    rows, columns = [], []
    for bit in range(basis.get_geometry().get_size()):
        sources, targets = flip_pairs(basis, bit)
        rows.append(targets)
        columns.append(sources)
    rows = np.concatenate(rows)
    columns = np.concatenate(columns)
    dimension = basis.get_dimension()
    matrix = sparse.csr_matrix((np.full(len(rows), -float(w)), (rows, columns)), shape=(dimension, dimension))
    return SparseOperator(matrix, name="Hx")

def build_hamiltonian(basis: Basis, params: ModelParams) -> SparseOperator:
    """
    H = Hz + Hx over the constrained basis.

    :param basis: The basis.
    :type basis: Basis
    :param params: Detuning and coupling.
    :type params: ModelParams
    :rtype: SparseOperator
    """
    hamiltonian = build_hz(basis, params.get_delta()) + build_hx(basis, params.get_w())
    logger.debug("assembled H on %r: nnz %d at %r", basis, hamiltonian.nnz(), params)
    return SparseOperator(hamiltonian.get_matrix(), name="H")
