"""Square lattice primitives: positions, the four sides, and doubled coordinates.

Positions are ``(x, y)`` with x growing east and y growing north. Geometry on
glues and curves uses doubled coordinates so that tile centres are even pairs
and glue midpoints have exactly one odd coordinate.
"""
from enum import Enum
from typing import Iterator, Optional, Tuple

Pos = Tuple[int, int]
Vec = Tuple[int, int]


class Side(str, Enum):
    NORTH = "north"
    EAST = "east"
    SOUTH = "south"
    WEST = "west"

    @property
    def vector(self) -> Vec:
        return _VECTORS[self]

    @property
    def opposite(self) -> "Side":
        return _OPPOSITE[self]


_VECTORS = {
    Side.NORTH: (0, 1),
    Side.EAST: (1, 0),
    Side.SOUTH: (0, -1),
    Side.WEST: (-1, 0),
}
_OPPOSITE = {
    Side.NORTH: Side.SOUTH,
    Side.SOUTH: Side.NORTH,
    Side.EAST: Side.WEST,
    Side.WEST: Side.EAST,
}
_BY_VECTOR = {v: s for s, v in _VECTORS.items()}

# Scan order used wherever a deterministic neighbour order is needed
SIDES: Tuple[Side, ...] = (Side.NORTH, Side.EAST, Side.SOUTH, Side.WEST)


def add(p: Pos, v: Vec) -> Pos:
    return (p[0] + v[0], p[1] + v[1])


def sub(p: Pos, q: Pos) -> Vec:
    return (p[0] - q[0], p[1] - q[1])


def neighbors(p: Pos) -> Iterator[Tuple[Side, Pos]]:
    for side in SIDES:
        yield side, add(p, side.vector)


def side_towards(p: Pos, q: Pos) -> Optional[Side]:
    """Side of ``p`` facing ``q`` when the two positions are adjacent."""
    return _BY_VECTOR.get(sub(q, p))


def adjacent(p: Pos, q: Pos) -> bool:
    return side_towards(p, q) is not None


def rotate_clockwise(v: Vec) -> Vec:
    # (x, y) -> (y, -x)
    return (v[1], -v[0])


def clockwise_frame(incoming: Vec) -> Tuple[Vec, Vec, Vec]:
    """The three unit vectors other than ``incoming`` in clockwise order.

    ``incoming`` points from the current tile back to the previous one; a later
    entry in the frame is further to the right.
    """
    first = rotate_clockwise(incoming)
    second = rotate_clockwise(first)
    third = rotate_clockwise(second)
    return first, second, third


def doubled(p: Pos) -> Pos:
    return (2 * p[0], 2 * p[1])


def midpoint2(p: Pos, q: Pos) -> Pos:
    """Doubled-coordinate midpoint of two adjacent tile positions."""
    return (p[0] + q[0], p[1] + q[1])
