import os
import tempfile
import threading
import unittest
import numpy as np
from controller.eigen_cache import MAGIC, EigenCache
from controller.scheduler import Scheduler
from model.hilbert.basis import enumerate_basis
from model.operators.hamiltonian import build_hamiltonian
from model.operators.model_params import ModelParams
from util.errors import CapacityError
from util.geometry import Geometry

class TestEigenCache(unittest.TestCase):
    """Test suite for the on-disk eigensystem cache."""

    def setUp(self):
        """Set up the test environment."""
        self.directory = tempfile.TemporaryDirectory()
        self.basis = enumerate_basis(Geometry(2, 4))
        self.metadata = {"L": 4, "legs": 2, "delta": 0.5, "w": 1.0}
        self.hamiltonian = build_hamiltonian(self.basis, ModelParams(0.5))

    def tearDown(self):
        """Tear down the test environment."""
        self.directory.cleanup()

    def test_round_trip(self):
        """Test that a stored eigensystem is loaded back by a fresh cache."""
        first = EigenCache(self.directory.name)(self.hamiltonian, self.metadata)
        files = os.listdir(self.directory.name)
        self.assertEqual(len(files), 1, "One file per eigensystem")
        self.assertTrue(files[0].endswith(".eig"), "Cache files end in .eig")
        cache = EigenCache(self.directory.name)
        second = cache(self.hamiltonian, self.metadata)
        self.assertEqual((cache.get_hits(), cache.get_misses()), (1, 0), "The second lookup is a hit")
        self.assertTrue(np.array_equal(first.get_eigenvalues(), second.get_eigenvalues()), "Same eigenvalues")
        self.assertTrue(np.array_equal(first.get_eigenvectors(), second.get_eigenvectors()), "Same eigenvectors")
        self.assertEqual(second.get_metadata()["delta"], 0.5, "The metadata is attached")

    def test_file_format(self):
        """Test the magic line of a cache file."""
        cache = EigenCache(self.directory.name)
        cache(self.hamiltonian, self.metadata)
        path = cache.path(cache.header(self.hamiltonian, self.metadata))
        with open(path, "rb") as handle:
            self.assertEqual(handle.readline(), MAGIC, "The file starts with the magic line")
            self.assertIn(b'"dim": 35', handle.readline(), "The header records the dimension")
            payload = handle.read()
        self.assertEqual(len(payload), 8 * 35 + 8 * 35 * 35, "Eigenvalues and eigenvectors as float64")

    def test_keys(self):
        """Test that the key follows the couplings."""
        cache = EigenCache(self.directory.name)
        key = EigenCache.key(cache.header(self.hamiltonian, self.metadata))
        other = EigenCache.key(cache.header(self.hamiltonian, {**self.metadata, "delta": 0.6}))
        sector = EigenCache.key(cache.header(self.hamiltonian, {**self.metadata, "k": 0}))
        self.assertEqual(len({key, other, sector}), 3, "Detuning and sector change the key")

    def test_foreign_file(self):
        """Test that a file with a foreign format is ignored and replaced."""
        cache = EigenCache(self.directory.name)
        path = cache.path(cache.header(self.hamiltonian, self.metadata))
        with open(path, "wb") as handle:
            handle.write(b"something else\n")
        with self.assertLogs("controller.eigen_cache", level="WARNING"):
            cache(self.hamiltonian, self.metadata)
        self.assertEqual(cache.get_misses(), 1, "A foreign file is a miss")
        self.assertIsNotNone(cache.load(path, cache.header(self.hamiltonian, self.metadata)), "It was rewritten")

    def test_disabled(self):
        """Test the cache without a root."""
        cache = EigenCache(None)
        system = cache(self.hamiltonian, self.metadata)
        self.assertEqual(system.get_dimension(), 35, "It still diagonalizes")
        self.assertEqual(cache.get_misses() + cache.get_hits(), 0, "Nothing is counted")

    def test_cap(self):
        """Test that a miss over the cap raises."""
        with self.assertRaises(CapacityError):
            EigenCache(self.directory.name, cap=10)(self.hamiltonian, self.metadata)

class TestScheduler(unittest.TestCase):
    """Test suite for the cell scheduler."""

    def test_order(self):
        """Test that results come back in the order of the items."""
        self.assertEqual(Scheduler(3, progress=False).map(lambda x: x * x, range(10)),
                         [x * x for x in range(10)], "Order is kept")
        self.assertEqual(Scheduler(1, progress=False).map(str, [1, 2]), ["1", "2"], "Serial map")

    def test_threads(self):
        """Test that several threads are used."""
        names = Scheduler(4, progress=False).map(lambda _: threading.current_thread().name, range(8))
        self.assertEqual(len(names), 8, "Every item is processed")
        with self.assertRaises(ValueError):
            Scheduler(0)

if __name__ == "__main__":
    unittest.main()
