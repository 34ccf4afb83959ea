from util.errors import UnsupportedGeometryError
from util.site import Site

"""
This file contains the Geometry class: the lattice the constrained basis lives on.
Sites are periodic along the legs and open along the rungs.
"""
class Geometry:
    LEG_DIRECTIONS = [-1, 1]
    """
    A chain (one leg) or a two-leg ladder of L rungs.
    """

    def __init__(self, legs: int, L: int):
        """
        Create a geometry.

        :param legs: 1 for the chain, 2 for the ladder.
        :type legs: int
        :param L: Number of rungs.
        :type L: int
        :raises UnsupportedGeometryError: If legs is not 1 or 2, L < 2, or L is odd on the ladder.
        """
        if legs not in (1, 2):
            raise UnsupportedGeometryError(f"legs must be 1 or 2, got {legs}")
        if L < 2:
            raise UnsupportedGeometryError(f"L must be at least 2, got {L}")
        if legs == 2 and L % 2:
            raise UnsupportedGeometryError(f"unsupported geometry: ladder needs an even number of rungs, got L={L}")
        self.__legs: int = legs
        self.__L: int = L

    def get_legs(self) -> int:
        return self.__legs

    def get_L(self) -> int:
        return self.__L

    def get_size(self) -> int:
        """
        Get the number of sites N = legs * L.

        :return: The number of sites.
        :rtype: int
        """
        return self.__legs * self.__L

    def is_ladder(self) -> bool:
        return self.__legs == 2

    def require_ladder(self, what: str) -> None:
        """
        Raise unless the geometry is a ladder.

        :param what: Name of the operation, for the message.
        :type what: str
        :raises UnsupportedGeometryError: On a chain.
        """
        if not self.is_ladder():
            raise UnsupportedGeometryError(f"{what} is only defined on the ladder")

    def sites(self) -> list[Site]:
        """
        All sites in bit order.

        :rtype: list[Site]
        """
        return [Site.from_bit(bit, self.__legs) for bit in range(self.get_size())]

    def contains(self, site: Site) -> bool:
        return site.get_j() <= self.__L and site.get_a() <= self.__legs

    def check_site(self, site: Site) -> None:
        """
        :raises ValueError: If the site lies outside the geometry.
        """
        if not self.contains(site):
            raise ValueError(f"site {site} is not part of {self}")

    def bit(self, site: Site) -> int:
        self.check_site(site)
        return site.bit_index(self.__legs)

    def neighbors(self, site: Site) -> list[Site]:
        """
        The nearest neighbours of a site: the rung partner and the two leg neighbours.
        For L = 2 both leg directions reach the same site, which is listed once.

        :param site: The site.
        :type site: Site
        :return: The distinct neighbours.
        :rtype: list[Site]
        """
        self.check_site(site)
        result = [site.shifted(d, self.__L) for d in Geometry.LEG_DIRECTIONS]
        if self.is_ladder():
            result.append(site.partner())
        unique = []
        for neighbor in result:
            if neighbor != site and neighbor not in unique:
                unique.append(neighbor)
        return unique

    def neighbor_mask(self, bit: int) -> int:
        """
        Occupation mask of the neighbours of the site at a bit index.

        :param bit: The bit index.
        :type bit: int
        :rtype: int
        """
        mask = 0
        for neighbor in self.neighbors(Site.from_bit(bit, self.__legs)):
            mask |= 1 << neighbor.bit_index(self.__legs)
        return mask

    def full_mask(self) -> int:
        return (1 << self.get_size()) - 1

    def leg_mask(self, a: int) -> int:
        """
        Occupation mask of all sites of leg a.

        :rtype: int
        """
        return sum(1 << Site(j, a).bit_index(self.__legs) for j in range(1, self.__L + 1))

    def rung_mask(self, first: int, last: int) -> int:
        """
        Occupation mask of the rungs first..last, inclusive.

        :rtype: int
        """
        mask = 0
        for j in range(first, last + 1):
            for a in range(1, self.__legs + 1):
                mask |= 1 << Site(j, a).bit_index(self.__legs)
        return mask

    def translate_mask(self, mask: int, d: int) -> int:
        """
        Shift an occupation pattern by d rungs along the legs, periodically.

        :param mask: The occupation mask.
        :type mask: int
        :param d: Number of rungs.
        :type d: int
        :return: The translated mask.
        :rtype: int
        """
        n = self.get_size()
        shift = (d % self.__L) * self.__legs
        return ((mask << shift) | (mask >> (n - shift))) & self.full_mask()

    def to_dict(self) -> dict:
        return {"legs": self.__legs, "L": self.__L, "N": self.get_size()}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Geometry):
            return False
        return self.__legs == other.get_legs() and self.__L == other.get_L()

    def __hash__(self) -> int:
        return hash((self.__legs, self.__L))

    def __repr__(self) -> str:
        kind = "ladder" if self.is_ladder() else "chain"
        return f"Geometry({kind}, L={self.__L}, N={self.get_size()})"
