import json
import os
import tempfile
import unittest
from unittest import mock
from util.errors import ConfigError
from util.settings import CACHE_ENV, Settings, parse_delta_grid
from util.state_manager import Command, ImbalanceKind, Method

class TestSettings(unittest.TestCase):
    """Test suite for the Settings class and the grid syntax."""

    def setUp(self):
        """Set up the test environment."""
        self.directory = tempfile.TemporaryDirectory()

    def tearDown(self):
        """Tear down the test environment."""
        self.directory.cleanup()

    def write_config(self, values) -> str:
        path = os.path.join(self.directory.name, "config.json")
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(values, handle)
        return path

    def test_defaults(self):
        """Test the default values."""
        settings = Settings()
        self.assertEqual(settings.command, Command.DIMS, "dims is the default command")
        self.assertEqual((settings.legs, settings.L), (2, 4), "The default geometry is the N=8 ladder")
        self.assertEqual(settings.method, Method.RK4, "RK4 is the default propagator")
        self.assertEqual(settings.imbalances, list(ImbalanceKind), "All imbalances by default")
        self.assertEqual(settings.deltas(), [1.0], "A single detuning by default")

    def test_grid(self):
        """Test the start:stop:step grid syntax."""
        self.assertEqual(parse_delta_grid("0:1:0.25"), [0.0, 0.25, 0.5, 0.75, 1.0], "Stop is included")
        self.assertEqual(parse_delta_grid("0:0.3:0.1"), [0.0, 0.1, 0.2, 0.3], "Values are rounded")
        self.assertEqual(parse_delta_grid("0.5"), [0.5], "A number is a one-point grid")
        for text in ("0:1", "a:b:c", "0:1:0", "1:0:0.1"):
            with self.assertRaises(ConfigError):
                parse_delta_grid(text)

    def test_precedence(self):
        """Test flags over the config file over the defaults."""
        path = self.write_config({"L": 6, "t_max": 5.0, "init": "Z2,vac", "method": "eigenbasis"})
        settings = Settings.resolve({"L": 8, "t_max": None}, path)
        self.assertEqual(settings.L, 8, "A given flag wins over the config file")
        self.assertEqual(settings.t_max, 5.0, "The config file wins over the default")
        self.assertEqual(settings.init, ["Z2", "vac"], "Comma separated names are split")
        self.assertEqual(settings.method, Method.EIGENBASIS, "Enum values are converted")

    def test_bad_config(self):
        """Test unreadable and invalid config files."""
        with self.assertRaises(ConfigError):
            Settings.resolve({}, os.path.join(self.directory.name, "missing.json"))
        with self.assertRaises(ConfigError):
            Settings.resolve({}, self.write_config([1, 2]))
        with self.assertRaises(ConfigError):
            Settings.resolve({}, self.write_config({"colour": "red"}))
        with self.assertRaises(ConfigError):
            Settings.resolve({"method": "euler"})

    def test_validation(self):
        """Test the checks on numeric values."""
        for flags in ({"dt": -0.1}, {"threads": 0}, {"k": 5}, {"delta": "-1"}, {"stride": 0.001},
                      {"legs": 3}, {"init": ""}):
            with self.assertRaises(ConfigError, msg=f"{flags} should be rejected"):
                Settings.resolve(flags)

    def test_hash(self):
        """Test that the config hash ignores the output location and follows the physics."""
        first = Settings.resolve({"out": "a"})
        second = Settings.resolve({"out": "b"})
        third = Settings.resolve({"L": 6})
        self.assertEqual(first.config_hash(), second.config_hash(), "The output directory is not hashed")
        self.assertNotEqual(first.config_hash(), third.config_hash(), "The geometry is hashed")
        self.assertNotIn("out", first.to_dict(), "The output directory is not in the canonical form")
        self.assertEqual(first.to_dict()["method"], "rk4", "Enums are serialized by value")

    def test_cache_environment(self):
        """Test that the cache root comes from the environment."""
        with mock.patch.dict(os.environ, {CACHE_ENV: "/tmp/eigen"}):
            self.assertEqual(Settings().cache, "/tmp/eigen", "The environment gives the cache root")
            self.assertEqual(Settings.resolve({"cache": "here"}).cache, "here", "The flag wins")

if __name__ == "__main__":
    unittest.main()
