from model.entanglement.bipartition import Bipartition
from util.errors import ToleranceError
import numpy as np
import scipy.linalg
import scipy.special

TRACE_TOLERANCE = 1e-8
NEGATIVE_TOLERANCE = 1e-10

def reduced_density(psi: np.ndarray, bipartition: Bipartition, side: str = "A") -> np.ndarray:
    """
    rho_A = M M^dagger (or rho_B = M^T M^*) for the amplitude matrix M of the state.

    :param psi: Normalized state over the full basis.
    :type psi: np.ndarray
    :param bipartition: The cut.
    :type bipartition: Bipartition
    :param side: "A" or "B".
    :type side: str
    :rtype: np.ndarray
    """
    matrix = bipartition.amplitude_matrix(psi)
    if side == "A":
        return matrix @ matrix.conj().T
    if side == "B":
        return matrix.T @ matrix.conj()
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")

def vn_entropy(rho: np.ndarray) -> float:
    """
    -Tr rho log rho, natural log, with eigenvalues above -1e-10 clipped at zero.

    :param rho: Hermitian density matrix.
    :type rho: np.ndarray
    :raises ToleranceError: If the trace is off by more than 1e-8 or an eigenvalue is clearly negative.
    :rtype: float
    """
    trace = float(np.trace(rho).real)
    if abs(trace - 1.0) > TRACE_TOLERANCE:
        raise ToleranceError(f"density matrix trace {trace:.12g} deviates from 1")
    eigenvalues = scipy.linalg.eigvalsh(rho)
    if eigenvalues.min() < -NEGATIVE_TOLERANCE:
        raise ToleranceError(f"density matrix has eigenvalue {eigenvalues.min():.3e}")
    return float(scipy.special.entr(np.clip(eigenvalues, 0.0, None)).sum())

def entanglement_entropy(psi: np.ndarray, bipartition: Bipartition) -> float:
    """
    Entropy of the cut from the Schmidt values of the amplitude matrix.

    :rtype: float
    """
    singular = scipy.linalg.svdvals(bipartition.amplitude_matrix(psi))
    return float(scipy.special.entr(singular ** 2).sum())
