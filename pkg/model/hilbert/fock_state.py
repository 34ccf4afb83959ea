from util.geometry import Geometry
from util.site import Site

class FockState:
    """An occupation pattern over the sites of a geometry; bit 1 means sigma-z = +1 (a Rydberg excitation)."""

    def __init__(self, mask: int, geometry: Geometry):
        """
        Initialize a FockState.

        :param mask: The occupation mask, bit index as given by :meth:`Site.bit_index`.
        :type mask: int
        :param geometry: The geometry.
        :type geometry: Geometry
        :raises ValueError: If the mask has bits beyond the N sites.
        """
        mask = int(mask)
        if mask < 0 or mask > geometry.full_mask():
            raise ValueError(f"mask {mask} does not fit {geometry}")
        self.__mask: int = mask
        self.__geometry: Geometry = geometry

    def get_mask(self) -> int:
        return self.__mask

    def get_geometry(self) -> Geometry:
        return self.__geometry

    def is_occupied(self, site: Site) -> bool:
        return bool(self.__mask >> self.__geometry.bit(site) & 1)

    def excitations(self) -> int:
        return bin(self.__mask).count("1")

    def occupied_sites(self) -> list[Site]:
        return [site for site in self.__geometry.sites() if self.is_occupied(site)]

    def flipped(self, site: Site) -> 'FockState':
        """
        The state with the occupation of one site reversed (no validity check).

        :param site: The site to flip.
        :type site: Site
        :rtype: FockState
        """
        return FockState(self.__mask ^ (1 << self.__geometry.bit(site)), self.__geometry)

    def translated(self, d: int) -> 'FockState':
        """
        The pattern shifted by d rungs.

        :rtype: FockState
        """
        return FockState(self.__geometry.translate_mask(self.__mask, d), self.__geometry)

    def complement(self) -> 'FockState':
        return FockState(self.__mask ^ self.__geometry.full_mask(), self.__geometry)

    def to_string(self) -> str:
        """
        The N-character form over {".", "x"} in site-index order.

        :rtype: str
        """
        return "".join("x" if self.__mask >> bit & 1 else "." for bit in range(self.__geometry.get_size()))

    def __int__(self) -> int:
        return self.__mask

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FockState):
            return False
        return self.__mask == other.get_mask() and self.__geometry == other.get_geometry()

    def __hash__(self) -> int:
        return hash((self.__mask, self.__geometry))

    def __repr__(self) -> str:
        return f"FockState({self.to_string()})"
