import numpy as np
import scipy.sparse as sparse

class SparseOperator:
    """A real operator over a constrained basis, stored row-compressed."""

    def __init__(self, matrix, symmetric: bool = True, name: str = ""):
        """
        :param matrix: Any scipy sparse matrix or dense array; stored as CSR with float64 entries.
        :param symmetric: Whether the operator is declared symmetric.
        :type symmetric: bool
        :param name: Label used in logs and dumps.
        :type name: str
        :raises ValueError: If the matrix is not square.
        """
        matrix = sparse.csr_matrix(matrix, dtype=np.float64)
        if matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"operator must be square, got shape {matrix.shape}")
        matrix.sort_indices()
        self.__matrix: sparse.csr_matrix = matrix
        self.__symmetric: bool = symmetric
        self.__name: str = name

    def get_matrix(self) -> sparse.csr_matrix:
        return self.__matrix

    def get_dimension(self) -> int:
        return self.__matrix.shape[0]

    def get_name(self) -> str:
        return self.__name

    def is_symmetric(self) -> bool:
        return self.__symmetric

    def nnz(self) -> int:
        return self.__matrix.nnz

    def dot(self, vector: np.ndarray) -> np.ndarray:
        return self.__matrix @ vector

    def expectation(self, vector: np.ndarray) -> float:
        """
        Real part of <v|A|v> for a normalized vector.

        :rtype: float
        """
        return float(np.vdot(vector, self.__matrix @ vector).real)

    def diagonal(self) -> np.ndarray:
        return self.__matrix.diagonal()

    def is_diagonal(self) -> bool:
        coo = self.__matrix.tocoo()
        return bool(np.all(coo.row[coo.data != 0] == coo.col[coo.data != 0]))

    def to_dense(self) -> np.ndarray:
        return self.__matrix.toarray()

    def max_asymmetry(self) -> float:
        """
        Largest |A_ij - A_ji|.

        :rtype: float
        """
        difference = self.__matrix - self.__matrix.T
        return float(abs(difference).max()) if difference.nnz else 0.0

    def max_abs(self) -> float:
        return float(abs(self.__matrix).max()) if self.__matrix.nnz else 0.0

    def trace(self) -> float:
        return float(self.__matrix.diagonal().sum())

    def scaled(self, factor: float, name: str = "") -> 'SparseOperator':
        return SparseOperator(self.__matrix * factor, self.__symmetric, name or self.__name)

    def __add__(self, other: 'SparseOperator') -> 'SparseOperator':
        if self.get_dimension() != other.get_dimension():
            raise ValueError("operators act on different bases")
        return SparseOperator(self.__matrix + other.get_matrix(), self.__symmetric and other.is_symmetric(),
                              f"{self.__name}+{other.get_name()}")

    def dump_lines(self) -> list[str]:
        """
        Coordinate-format text: header ``dim=<d> sym=<0|1>`` then ``row col value`` sorted by row and column.

        :rtype: list[str]
        """
        coo = self.__matrix.tocoo()
        order = np.lexsort((coo.col, coo.row))
        lines = [f"dim={self.get_dimension()} sym={int(self.__symmetric)}"]
        lines.extend(f"{coo.row[i]} {coo.col[i]} {coo.data[i]:.12g}" for i in order)
        return lines

    def __repr__(self) -> str:
        return f"SparseOperator({self.__name or 'A'}, dim={self.get_dimension()}, nnz={self.nnz()})"
