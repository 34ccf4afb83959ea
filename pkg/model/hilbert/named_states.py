from model.hilbert.basis import Basis, is_valid
from model.hilbert.fock_state import FockState
from util.errors import ConfigError, UnsupportedGeometryError
from util.geometry import Geometry
import numpy as np

NAMED_STATES = ("Z2", "Z2bar", "Z3", "Z3_1", "Z3_2", "Z4", "vac")

def _pattern(geometry: Geometry, occupied) -> FockState:
    mask = 0
    for site in geometry.sites():
        if occupied(site.get_j(), site.get_a()):
            mask |= 1 << geometry.bit(site)
    return FockState(mask, geometry)

def _require_period(geometry: Geometry, name: str, period: int) -> None:
    if geometry.get_L() % period:
        raise UnsupportedGeometryError(f"{name} needs L divisible by {period}, got L={geometry.get_L()}")

def _custom(text: str, geometry: Geometry) -> FockState:
    n_sites = geometry.get_size()
    if len(text) != n_sites:
        raise ConfigError(f"bitstring {text!r} has {len(text)} characters, geometry has {n_sites} sites")
    if set(text) <= {".", "x"}:
        bits = [char == "x" for char in text]
    elif set(text) <= {"0", "1"}:
        bits = [char == "1" for char in text]
    else:
        raise ConfigError(f"bitstring {text!r} must use only '.'/'x' or '0'/'1'")
    return FockState(sum(1 << bit for bit, set_ in enumerate(bits) if set_), geometry)

def named_state(name: str, geometry: Geometry) -> FockState:
    """
    Build a named product state.

    On the ladder, Z2 has the bottom leg excited on odd rungs and the top leg on even rungs, Z2bar is its
    complement, Z3 excites (j = 0 mod 3, bottom) and (j = 1 mod 3, top), Z3_1 and Z3_2 are its translates
    by one and two rungs, Z4 excites (j = 3 mod 4, bottom) and (j = 0 mod 4, top), vac is empty.
    On the chain Zn excites every n-th site starting from site 1. Any other name is read as a bitstring
    over {".", "x"} or {"0", "1"} in site-index order.

    :param name: The state name or bitstring.
    :type name: str
    :param geometry: The geometry.
    :type geometry: Geometry
    :return: The blockade-valid state.
    :rtype: FockState
    :raises UnsupportedGeometryError: If L does not fit the pattern.
    :raises ConfigError: If a bitstring is malformed or violates the blockade.
    """
    ladder = geometry.is_ladder()
    if name == "vac":
        state = FockState(0, geometry)
    elif name in ("Z2", "Z2bar"):
        _require_period(geometry, name, 2)
        if ladder:
            state = _pattern(geometry, lambda j, a: (j % 2 == 1) == (a == 1))
        else:
            state = _pattern(geometry, lambda j, a: j % 2 == 1)
        if name == "Z2bar":
            state = state.complement()
    elif name in ("Z3", "Z3_1", "Z3_2"):
        _require_period(geometry, name, 3)
        if ladder:
            state = _pattern(geometry, lambda j, a: (a == 1 and j % 3 == 0) or (a == 2 and j % 3 == 1))
        else:
            state = _pattern(geometry, lambda j, a: j % 3 == 1)
        state = state.translated(0 if name == "Z3" else int(name[-1]))
    elif name == "Z4":
        _require_period(geometry, name, 4)
        if ladder:
            state = _pattern(geometry, lambda j, a: (a == 1 and j % 4 == 3) or (a == 2 and j % 4 == 0))
        else:
            state = _pattern(geometry, lambda j, a: j % 4 == 1)
    else:
        state = _custom(name, geometry)
    if not is_valid(state, geometry):
        raise ConfigError(f"state {name!r} violates the blockade on {geometry}")
    return state

def state_vector(basis: Basis, state) -> np.ndarray:
    """
    Normalized complex vector of a Fock state or of a state name.

    :param basis: The basis.
    :type basis: Basis
    :param state: A FockState, a mask or a name accepted by :func:`named_state`.
    :rtype: np.ndarray
    """
    if isinstance(state, str):
        state = named_state(state, basis.get_geometry())
    return basis.fock_vector(state, dtype=np.complex128)
