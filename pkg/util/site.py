class Site:
    """Used to represent a lattice site (j, a): rung j starting at 1, leg a in {1, 2}."""

    def __init__(self, j: int, a: int = 1):
        """
        Initialize a Site object.

        :param j: The rung index, starting at 1.
        :type j: int
        :param a: The leg index, 1 for the bottom leg and 2 for the top leg.
        :type a: int
        :raises ValueError: If j < 1 or a is not 1 or 2.
        """
        if j < 1:
            raise ValueError(f"rung index must start at 1, got {j}")
        if a not in (1, 2):
            raise ValueError(f"leg index must be 1 or 2, got {a}")
        self.__j = j
        self.__a = a

    def get_j(self) -> int:
        """
        Getter method for the rung index.

        :return: The rung index.
        :rtype: int
        """
        return self.__j

    def get_a(self) -> int:
        """
        Getter method for the leg index.

        :return: The leg index.
        :rtype: int
        """
        return self.__a

    def bit_index(self, legs: int) -> int:
        """
        Position of the site in the occupation mask: 2(j-1)+(a-1) on the ladder, j-1 on the chain.

        :param legs: Number of legs of the geometry.
        :type legs: int
        :return: The bit index.
        :rtype: int
        """
        return legs * (self.__j - 1) + (self.__a - 1)

    @staticmethod
    def from_bit(bit: int, legs: int) -> 'Site':
        """
        Inverse of :meth:`bit_index`.

        :param bit: The bit index.
        :type bit: int
        :param legs: Number of legs of the geometry.
        :type legs: int
        :return: The site.
        :rtype: Site
        """
        return Site(bit // legs + 1, bit % legs + 1)

    def shifted(self, d: int, L: int) -> 'Site':
        """
        The site d rungs further along the leg, periodic in L.

        :param d: Number of rungs, may be negative.
        :type d: int
        :param L: Number of rungs.
        :type L: int
        :return: The shifted site.
        :rtype: Site
        """
        return Site((self.__j - 1 + d) % L + 1, self.__a)

    def partner(self) -> 'Site':
        """
        The other site of the same rung.

        :return: The rung partner.
        :rtype: Site
        """
        return Site(self.__j, 3 - self.__a)

    def stagger(self) -> int:
        """
        The staggered sign (-1)^j.

        :rtype: int
        """
        return -1 if self.__j % 2 else 1

    def label(self) -> str:
        return f"{self.__j}_{self.__a}"

    def __hash__(self) -> int:
        return hash((self.__j, self.__a))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Site):
            return False
        return self.__j == other.get_j() and self.__a == other.get_a()

    def __lt__(self, other: 'Site') -> bool:
        """
        Rung-major order, the order of the bit indices.
        """
        return (self.__j, self.__a) < (other.get_j(), other.get_a())

    def __repr__(self) -> str:
        return f"Site({self.__j}, {self.__a})"

    def __str__(self) -> str:
        return f"({self.__j},{self.__a})"
