from model.hilbert.basis import Basis
from model.operators.sparse_operator import SparseOperator
from util.site import Site
import numpy as np
import scipy.sparse as sparse

def flip_pairs(basis: Basis, bit: int) -> tuple[np.ndarray, np.ndarray]:
    """
    All (source, target) index pairs connected by flipping one site whose neighbours are all down.
    Both directions are listed.

    :param basis: The basis.
    :type basis: Basis
    :param bit: Bit index of the site.
    :type bit: int
    :return: Source and target indices.
    :rtype: tuple[np.ndarray, np.ndarray]
    """
    states = basis.get_states()
    allowed = (states & basis.get_geometry().neighbor_mask(bit)) == 0
    sources = np.flatnonzero(allowed)
    targets = basis.indices(states[sources] ^ (1 << bit))
    return sources, targets

def sigma_z_diagonal(basis: Basis, bit: int) -> np.ndarray:
    return np.where(basis.occupations()[:, bit], 1.0, -1.0)

def local_sigma_z(basis: Basis, site: Site) -> SparseOperator:
    """
    Diagonal sigma-z of one site, +1 on occupied configurations and -1 otherwise.

    :param basis: The basis.
    :type basis: Basis
    :param site: The site.
    :type site: Site
    :raises ValueError: If the site is outside the geometry.
    :rtype: SparseOperator
    """
    bit = basis.get_geometry().bit(site)
    return SparseOperator(sparse.diags(sigma_z_diagonal(basis, bit)), name=f"sz{site}")

def local_sigma_x_tilde(basis: Basis, site: Site) -> SparseOperator:
    """
    Projected sigma-x of one site: connects configurations differing by that site when its neighbours
    are all down, with matrix element 1.

    :param basis: The basis.
    :type basis: Basis
    :param site: The site.
    :type site: Site
    :raises ValueError: If the site is outside the geometry.
    :rtype: SparseOperator
    """
    bit = basis.get_geometry().bit(site)
    sources, targets = flip_pairs(basis, bit)
    dimension = basis.get_dimension()
    matrix = sparse.csr_matrix((np.ones(len(sources)), (targets, sources)), shape=(dimension, dimension))
    return SparseOperator(matrix, name=f"sx{site}")
