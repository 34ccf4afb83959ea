from model.operators.sparse_operator import SparseOperator
from model.operators.symmetry import SymmetryMap
from model.spectra.eigen_system import EigenSystem
import numpy as np
import scipy.special

def shannon_entropy(vectors: np.ndarray) -> np.ndarray:
    """
    S1 = -sum |v|^2 log |v|^2 per column (natural log, 0 log 0 = 0). A 1-d input gives a scalar array.

    :rtype: np.ndarray
    """
    return scipy.special.entr(np.abs(vectors) ** 2).sum(axis=0)

def shannon_per_eigenstate(system: EigenSystem) -> np.ndarray:
    return shannon_entropy(system.get_eigenvectors())

def chirality_residual(system: EigenSystem, hamiltonian: SparseOperator, chirality: SymmetryMap) -> float:
    """
    max over E > tol of ||H (C v) + E (C v)||: the chiral partner of every eigenvector sits at -E.

    :rtype: float
    """
    indices = np.flatnonzero(system.get_eigenvalues() > system.get_tol_zero())
    if len(indices) == 0:
        return 0.0
    partners = chirality.apply(system.get_eigenvectors()[:, indices])
    energies = system.get_eigenvalues()[indices]
    residual = hamiltonian.get_matrix() @ partners + partners * energies
    return float(np.linalg.norm(residual, axis=0).max())
