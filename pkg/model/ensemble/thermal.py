from model.hilbert.basis import Basis
from model.operators.sparse_operator import SparseOperator

def thermal_beta0(operator: SparseOperator, basis: Basis) -> float:
    """
    Infinite-temperature average Tr(A) / D over the constrained basis.

    :param operator: The operator.
    :type operator: SparseOperator
    :param basis: The basis it acts on.
    :type basis: Basis
    :raises ValueError: If the operator acts on another basis.
    :rtype: float
    """
    if operator.get_dimension() != basis.get_dimension():
        raise ValueError(f"operator of dimension {operator.get_dimension()} does not act on {basis!r}")
    return operator.trace() / basis.get_dimension()
