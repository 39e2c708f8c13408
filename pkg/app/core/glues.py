"""Glues of a path: columns, pointing directions, visibility and widths.

Glue ``i`` binds P_i to P_{i+1}. A horizontal glue sits on the column of its
western tile and points east when the path moves east through it. Adjacent
seed tiles on a column count as glues there even when their labels differ.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from app.core.assembly import Assembly
from app.core.exceptions import BadIndex, ColumnOutOfRange, NoGlueOnColumn, NoVisibleGlue, TooShort
from app.core.lattice import Pos, midpoint2
from app.core.models import Direction, Orientation, Pointing, VerticalSide
from app.core.paths import Path

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GlueRecord:
    index: int
    orientation: Orientation
    column: Optional[int]
    points: Optional[Pointing]
    label: str
    position2: Pos  # doubled coordinates

    @property
    def horizontal(self) -> bool:
        return self.orientation is Orientation.HORIZONTAL

    @property
    def y(self) -> int:
        return self.position2[1] // 2

    @property
    def east(self) -> bool:
        return self.points is Pointing.EAST

    def on_column(self, c: int) -> bool:
        return self.horizontal and self.column == c

    def to_dict(self) -> Dict[str, object]:
        return {
            "index": self.index,
            "orientation": self.orientation.value,
            "column": self.column,
            "points": self.points.value if self.points else None,
            "label": self.label,
            "position": [self.position2[0] / 2, self.position2[1] / 2],
        }


def glues(p: Path) -> List[GlueRecord]:
    if len(p) < 2:
        raise TooShort("a path of one tile has no glue")
    return list(_glue_records(p))


@lru_cache(maxsize=4096)
def _glue_records(p: Path) -> Tuple[GlueRecord, ...]:
    return tuple(_record(p, i) for i in range(len(p) - 1))


def _record(p: Path, i: int) -> GlueRecord:
    a, b = p[i], p[i + 1]
    pos2 = midpoint2(a.pos, b.pos)
    if a.y == b.y:
        side = "east" if a.x < b.x else "west"
        return GlueRecord(
            index=i,
            orientation=Orientation.HORIZONTAL,
            column=min(a.x, b.x),
            points=Pointing.EAST if a.x < b.x else Pointing.WEST,
            label=getattr(a.tile, side).label,
            position2=pos2,
        )
    side = "north" if a.y < b.y else "south"
    return GlueRecord(i, Orientation.VERTICAL, None, None, getattr(a.tile, side).label, pos2)


def glues_on_column(p: Path, c: int) -> List[GlueRecord]:
    if len(p) < 2:
        return []
    return [g for g in glues(p) if g.on_column(c)]


def seed_glue_ys(seed: Optional[Assembly], c: int) -> List[int]:
    """Rows of the implicit seed glues on column ``c``."""
    if seed is None:
        return []
    return sorted(pos[1] for pos in seed if pos[0] == c and (c + 1, pos[1]) in seed)


def visible_glue(p: Path, seed: Optional[Assembly], c: int, side: VerticalSide) -> Optional[int]:
    """Index of the glue of ``p`` on ``c`` visible from ``side``, if any."""
    ext = p.extents
    if not ext.west <= c < ext.east:
        raise ColumnOutOfRange(f"column {c} outside [{ext.west}, {ext.east})", column=c)
    candidates = glues_on_column(p, c)
    if not candidates:
        return None
    blockers = seed_glue_ys(seed, c)
    if side is VerticalSide.NORTH:
        best = max(candidates, key=lambda g: g.y)
        if any(y > best.y for y in blockers):
            return None
    else:
        best = min(candidates, key=lambda g: g.y)
        if any(y < best.y for y in blockers):
            return None
    return best.index


def is_visible(p: Path, seed: Optional[Assembly], i: int, side: VerticalSide) -> bool:
    g = glues(p)[i]
    return g.horizontal and visible_glue(p, seed, g.column, side) == i


def anchor_rows(p: Path, seed: Optional[Assembly], c: int) -> List[int]:
    """Rows where P_0 abuts a seed tile across column ``c``.

    These bonds are not glues of the path, so visibility ignores them, but a
    ray through one still meets the seed.
    """
    if seed is None:
        return []
    x, y = p[0].pos
    return [y for a, b in ((x, x + 1), (x - 1, x)) if a == c and ((a, y) in seed or (b, y) in seed)]


def ray_clear(p: Path, seed: Optional[Assembly], i: int, side: VerticalSide) -> bool:
    """Whether the ray from glue ``i`` towards ``side`` misses every anchor bond."""
    g = glues(p)[i]
    rows = anchor_rows(p, seed, g.column)
    if side is VerticalSide.NORTH:
        return not any(y > g.y for y in rows)
    return not any(y < g.y for y in rows)


def is_pseudo_visible(p: Path, i: int, side: VerticalSide, seed: Optional[Assembly]) -> bool:
    """Whether glue ``i`` is visible in the suffix P_{i..}."""
    if not 0 <= i < len(p) - 1:
        raise BadIndex(f"no glue {i} on a path of length {len(p)}", index=i)
    g = glues(p)[i]
    if not g.horizontal:
        return False
    return visible_glue(p.suffix(i), seed, g.column, side) == 0


def width_on_column(p: Path, seed: Optional[Assembly], c: int) -> int:
    if not glues_on_column(p, c):
        raise NoGlueOnColumn(f"no glue on column {c}", column=c)
    records = glues(p)
    north = visible_glue(p, seed, c, VerticalSide.NORTH)
    south = visible_glue(p, seed, c, VerticalSide.SOUTH)
    if north is None or south is None:
        raise NoVisibleGlue(f"seed blocks the glues of column {c}", column=c)
    return records[north].y - records[south].y


def last_glue_index(p: Path, c: int) -> int:
    on_c = glues_on_column(p, c)
    if not on_c:
        raise NoGlueOnColumn(f"no glue on column {c}", column=c)
    return on_c[-1].index


def first_glue_index(p: Path, c: int) -> int:
    on_c = glues_on_column(p, c)
    if not on_c:
        raise NoGlueOnColumn(f"no glue on column {c}", column=c)
    return on_c[0].index


@dataclass(frozen=True)
class ColumnVisibility:
    column: int
    visible_from_north: Optional[int]
    visible_from_south: Optional[int]
    width: Optional[int]


def visibility_report(p: Path, seed: Optional[Assembly]) -> List[ColumnVisibility]:
    if len(p) < 2:
        return []
    report = []
    records = glues(p)
    for c in range(p.extents.west, p.extents.east):
        north = visible_glue(p, seed, c, VerticalSide.NORTH)
        south = visible_glue(p, seed, c, VerticalSide.SOUTH)
        width = records[north].y - records[south].y if north is not None and south is not None else None
        report.append(ColumnVisibility(c, north, south, width))
    return report


def cut_directions(p: Path, seed: Optional[Assembly], i: int, j: int) -> List[Direction]:
    """Directions in which (i, j) is a cut of ``p``; upward first."""
    if not 0 <= i <= j < len(p) - 1:
        return []
    records = glues(p)
    gi, gj = records[i], records[j]
    if not (gi.horizontal and gj.horizontal and gi.east) or gi.column > gj.column:
        return []
    suffix = p.suffix(i)
    found = []
    for direction, first_side in ((Direction.UPWARD, VerticalSide.SOUTH), (Direction.DOWNWARD, VerticalSide.NORTH)):
        if not is_pseudo_visible(p, i, first_side, seed):
            continue
        if visible_glue(suffix, seed, gj.column, first_side.opposite) == j - i:
            found.append(direction)
    return found
