import unittest
from util.site import Site

class TestSite(unittest.TestCase):
    """Test suite for the Site class."""

    def setUp(self):
        """Set up the test environment."""
        self.site = Site(3, 2)

    def tearDown(self):
        """Tear down the test environment."""
        self.site = None

    def test_bit_index(self):
        """Test the rung-major bit layout."""
        self.assertEqual(self.site.bit_index(2), 5, "Site (3,2) should sit at bit 2*(3-1)+(2-1) = 5 on the ladder")
        self.assertEqual(Site(3).bit_index(1), 2, "Site (3,1) should sit at bit 2 on the chain")

    def test_from_bit(self):
        """Test that from_bit inverts bit_index."""
        for bit in range(8):
            self.assertEqual(Site.from_bit(bit, 2).bit_index(2), bit, f"Bit {bit} should map back to itself")

    def test_invalid(self):
        """Test the rejection of out-of-range indices."""
        with self.assertRaises(ValueError):
            Site(0, 1)
        with self.assertRaises(ValueError):
            Site(1, 3)

    def test_shifted(self):
        """Test the periodic shift along the leg."""
        self.assertEqual(self.site.shifted(1, 4), Site(4, 2), "Shifting (3,2) by one rung should give (4,2)")
        self.assertEqual(self.site.shifted(2, 4), Site(1, 2), "Shifting (3,2) by two rungs on L=4 should wrap to (1,2)")
        self.assertEqual(Site(1, 1).shifted(-1, 4), Site(4, 1), "Shifting (1,1) backwards should wrap to (4,1)")

    def test_partner(self):
        """Test the rung partner."""
        self.assertEqual(self.site.partner(), Site(3, 1), "The partner of (3,2) should be (3,1)")

    def test_stagger(self):
        """Test the staggered sign with rungs counted from 1."""
        self.assertEqual(Site(1, 1).stagger(), -1, "Odd rungs should carry -1")
        self.assertEqual(Site(2, 2).stagger(), 1, "Even rungs should carry +1")

    def test_hash_and_order(self):
        """Test equality, hashing and rung-major order."""
        self.assertEqual(len({Site(1, 1), Site(1, 1), Site(1, 2)}), 2, "Equal sites should hash together")
        self.assertLess(Site(1, 2), Site(2, 1), "Order should be rung-major")
        self.assertEqual(self.site.label(), "3_2", "The label should be j_a")

if __name__ == "__main__":
    unittest.main()
