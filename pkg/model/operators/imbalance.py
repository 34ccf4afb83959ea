from model.hilbert.basis import Basis
from model.operators.local import flip_pairs
from model.operators.sparse_operator import SparseOperator
from util.state_manager import ImbalanceKind
from fractions import Fraction
import numpy as np
import scipy.sparse as sparse

# Two-rung cell (j, a) -> sign; the operator sums the cell over all translations by two rungs and divides by L.
CELL_SIGNS: dict[ImbalanceKind, dict[tuple[int, int], int]] = {
    ImbalanceKind.IZ_Z2: {(1, 1): 1, (2, 1): -1, (1, 2): -1, (2, 2): 1},
    ImbalanceKind.IX_Z2: {(1, 1): -1, (2, 1): -1, (1, 2): 1, (2, 2): 1},
    ImbalanceKind.IX_VAC: {(1, 1): 1, (1, 2): 1, (2, 1): -1, (2, 2): -1},
}

# Sign pictograms as printed, first printed row first, four rungs each.
PRINTED_SIGN_ROWS: dict[ImbalanceKind, tuple[str, str]] = {
    ImbalanceKind.IZ_Z2: ("+-+-", "-+-+"),
    ImbalanceKind.IX_Z2: ("----", "++++"),
    ImbalanceKind.IX_VAC: ("+-+-", "+-+-"),
}

def is_longitudinal(kind: ImbalanceKind) -> bool:
    return kind == ImbalanceKind.IZ_Z2

def site_signs(basis: Basis, kind: ImbalanceKind) -> np.ndarray:
    """
    Sign of every bit index in the imbalance, from the two-rung cell.

    :rtype: np.ndarray
    """
    cell = CELL_SIGNS[kind]
    return np.array([cell[((site.get_j() - 1) % 2 + 1, site.get_a())] for site in basis.get_geometry().sites()],
                    dtype=np.int64)

def sign_matrix(kind: ImbalanceKind, L: int, first_row_leg: int = 1) -> np.ndarray:
    """
    The printed sign pictogram repeated over L rungs, as a (2, L) array indexed [a-1, j-1].

    :param kind: The imbalance.
    :type kind: ImbalanceKind
    :param L: Number of rungs (even).
    :type L: int
    :param first_row_leg: Leg the first printed row is assigned to.
    :type first_row_leg: int
    :rtype: np.ndarray
    """
    rows = [[1 if char == "+" else -1 for char in row] for row in PRINTED_SIGN_ROWS[kind]]
    if first_row_leg == 2:
        rows = rows[::-1]
    return np.array([[row[j % 4] for j in range(L)] for row in rows], dtype=np.int64)

def _assemble(basis: Basis, kind: ImbalanceKind, signs: np.ndarray) -> SparseOperator:
    geometry = basis.get_geometry()
    dimension = basis.get_dimension()
    scale = 1.0 / geometry.get_L()
    if is_longitudinal(kind):
        sigma_z = np.where(basis.occupations(), 1.0, -1.0)
        return SparseOperator(sparse.diags(scale * (sigma_z @ signs.astype(np.float64))), name=kind.value)
    rows, columns, values = [], [], []
    for bit in range(geometry.get_size()):
        sources, targets = flip_pairs(basis, bit)
        rows.append(targets)
        columns.append(sources)
        values.append(np.full(len(sources), scale * signs[bit]))
    matrix = sparse.csr_matrix((np.concatenate(values), (np.concatenate(rows), np.concatenate(columns))),
                               shape=(dimension, dimension))
    return SparseOperator(matrix, name=kind.value)

def build_imbalance(basis: Basis, kind: ImbalanceKind) -> SparseOperator:
    """
    Imbalance operator (1/L) sum_r T_x^(2r) (cell), the cell given by :data:`CELL_SIGNS`.

    :param basis: Ladder basis.
    :type basis: Basis
    :param kind: Which imbalance.
    :type kind: ImbalanceKind
    :raises UnsupportedGeometryError: On the chain.
    :rtype: SparseOperator
    """
    basis.get_geometry().require_ladder("imbalance operator")
    return _assemble(basis, kind, site_signs(basis, kind))

def imbalance_from_signs(basis: Basis, kind: ImbalanceKind, first_row_leg: int = 1) -> SparseOperator:
    """
    The same imbalance built from the printed pictogram under a row convention.

    :rtype: SparseOperator
    """
    geometry = basis.get_geometry()
    geometry.require_ladder("imbalance operator")
    matrix = sign_matrix(kind, geometry.get_L(), first_row_leg)
    signs = np.array([matrix[site.get_a() - 1, site.get_j() - 1] for site in geometry.sites()], dtype=np.int64)
    return _assemble(basis, kind, signs)

def imbalance_trace(basis: Basis, kind: ImbalanceKind) -> Fraction:
    """
    Exact trace over the constrained basis, from occupation counts.

    :rtype: Fraction
    """
    basis.get_geometry().require_ladder("imbalance operator")
    if not is_longitudinal(kind):
        return Fraction(0)
    dimension = basis.get_dimension()
    counts = basis.occupations().sum(axis=0)
    signs = site_signs(basis, kind)
    numerator = sum(int(sign) * (2 * int(count) - dimension) for sign, count in zip(signs, counts))
    return Fraction(numerator, basis.get_geometry().get_L())
