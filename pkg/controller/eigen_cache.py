from model.operators.sparse_operator import SparseOperator
from model.spectra.eigen_system import DEFAULT_CAP, DEFAULT_TOL_ZERO, EigenSystem, diagonalize
import hashlib, json, logging, os, threading
import numpy as np

logger = logging.getLogger(__name__)

MAGIC = b"SCARLADDER-EIGEN 1\n"

class EigenCache:
    """
    Full eigensystems stored on disk, keyed by geometry and couplings. Usable wherever an eigensolver is expected.

    A cache file holds a magic line, one JSON header line, the eigenvalues as little-endian float64 and the
    eigenvectors in column-major order.
    """

    def __init__(self, root: str | None, cap: int = DEFAULT_CAP, tol_zero: float = DEFAULT_TOL_ZERO) -> None:
        """
        :param root: Cache directory; None disables storage.
        :type root: str | None
        :param cap: Diagonalization cap.
        :type cap: int
        :param tol_zero: Zero-mode threshold.
        :type tol_zero: float
        """
        self.__root: str | None = root
        self.__cap: int = cap
        self.__tol_zero: float = tol_zero
        self.__locks: dict[str, threading.Lock] = {}
        self.__guard = threading.Lock()
        self.__hits: int = 0
        self.__misses: int = 0

    def get_root(self) -> str | None:
        return self.__root

    def get_hits(self) -> int:
        return self.__hits

    def get_misses(self) -> int:
        return self.__misses

    def header(self, hamiltonian: SparseOperator, metadata: dict) -> dict:
        """
        The identity of one eigensystem.

        :rtype: dict
        """
        legs, L = int(metadata.get("legs", 2)), int(metadata.get("L", 0))
        header = {"N": legs * L, "legs": legs, "L": L, "delta": float(metadata.get("delta", 0.0)),
                  "w": float(metadata.get("w", 1.0)), "dim": hamiltonian.get_dimension(), "tol_zero": self.__tol_zero}
        if metadata.get("k") is not None:
            header["k"] = int(metadata["k"])
        return header

    @staticmethod
    def key(header: dict) -> str:
        canonical = json.dumps(header, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    def path(self, header: dict) -> str:
        return os.path.join(self.__root, f"{EigenCache.key(header)}.eig")

    def __lock(self, key: str) -> threading.Lock:
        with self.__guard:
            return self.__locks.setdefault(key, threading.Lock())

    def __call__(self, hamiltonian: SparseOperator, metadata: dict) -> EigenSystem:
        """
        Load the eigensystem of the Hamiltonian, or diagonalize and store it.

        :param hamiltonian: The Hamiltonian.
        :type hamiltonian: SparseOperator
        :param metadata: Geometry and couplings (L, legs, delta, w).
        :type metadata: dict
        :raises CapacityError: If a diagonalization is needed and the dimension exceeds the cap.
        :rtype: EigenSystem
        """
        if self.__root is None:
            return diagonalize(hamiltonian, self.__cap, self.__tol_zero, metadata)
        header = self.header(hamiltonian, metadata)
        path = self.path(header)
        with self.__lock(EigenCache.key(header)):
            system = self.load(path, header, metadata)
            if system is not None:
                self.__hits += 1
                logger.info("eigen-cache hit %s", os.path.basename(path))
                return system
            self.__misses += 1
            system = diagonalize(hamiltonian, self.__cap, self.__tol_zero, metadata)
            self.store(path, header, system)
            return system

    def load(self, path: str, header: dict, metadata: dict | None = None) -> EigenSystem | None:
        """
        Read a cache file, None if it is absent or does not match the header.

        :rtype: EigenSystem | None
        """
        if not os.path.exists(path):
            return None
        with open(path, "rb") as handle:
            if handle.readline() != MAGIC:
                logger.warning("ignoring cache file %s with a foreign format", path)
                return None
            stored = json.loads(handle.readline().decode("utf-8"))
            if stored != header:
                logger.warning("ignoring cache file %s with header %s", path, stored)
                return None
            dimension = header["dim"]
            eigenvalues = np.frombuffer(handle.read(8 * dimension), dtype="<f8")
            flat = np.frombuffer(handle.read(8 * dimension * dimension), dtype="<f8")
        if len(eigenvalues) != dimension or len(flat) != dimension * dimension:
            logger.warning("ignoring truncated cache file %s", path)
            return None
        eigenvectors = flat.reshape((dimension, dimension), order="F")
        return EigenSystem(eigenvalues.copy(), eigenvectors.copy(), self.__tol_zero, metadata)

    def store(self, path: str, header: dict, system: EigenSystem) -> None:
        os.makedirs(self.__root, exist_ok=True)
        partial = f"{path}.part"
        with open(partial, "wb") as handle:
            handle.write(MAGIC)
            handle.write(json.dumps(header, sort_keys=True).encode("utf-8") + b"\n")
            handle.write(np.asarray(system.get_eigenvalues(), dtype="<f8").tobytes())
            handle.write(np.asarray(system.get_eigenvectors().real, dtype="<f8").tobytes(order="F"))
        os.replace(partial, path)
        logger.info("stored eigensystem dim %d in %s", header["dim"], os.path.basename(path))

    def __repr__(self) -> str:
        return f"EigenCache({self.__root}, hits={self.__hits}, misses={self.__misses})"
