"""Arcs on a column, dominance, dominant-arc decompositions and shields.

An arc P_{i..j} leaves column c through glue i and comes back through glue
j-1 without touching the column in between. It is positive when it bulges
east of the column; the arcs of a path are its positive arcs. Tile indices
are used throughout: glue i and glue j-1 are the end glues.
"""
import logging
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from app.core.assembly import TileSystem
from app.core.exceptions import (
    BadWindow, ColumnOutOfWindow, CorkCrossed, Intersection, NoBond, NoGlueOnColumn, NotACut, NotAShield,
    NotClosed, PreconditionViolated,
)
from app.core.glues import first_glue_index, glues, glues_on_column, last_glue_index, visible_glue
from app.core.lattice import Pos, doubled
from app.core.models import ArcSign, Direction, ShieldKind, VerticalSide
from app.core.paths import Path, concat, is_path_of_gamma
from app.core.regions import (
    Box, Hole, Polygon, Region, polyline_points, analysis_box, cut_workspace, make_hole, min_interior_path,
    region_contains_path,
)
from app.core.search import SearchBudget, budget_of
from app.core.spans import Span

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Arc:
    i: int
    j: int
    column: int
    sign: ArcSign
    direction: Direction

    @property
    def positive(self) -> bool:
        return self.sign is ArcSign.POSITIVE

    @property
    def upward(self) -> bool:
        return self.direction is Direction.UPWARD

    def to_dict(self) -> Dict[str, Any]:
        return {"i": self.i, "j": self.j, "column": self.column, "sign": self.sign.value,
                "direction": self.direction.value}


def _arc(p: Path, i: int, j: int, c: int) -> Arc:
    sign = ArcSign.POSITIVE if p[i + 1].x >= c + 1 else ArcSign.NEGATIVE
    direction = Direction.UPWARD if p[i].y < p[j].y else Direction.DOWNWARD
    return Arc(i, j, c, sign, direction)


def find_arcs(p: Path, c: int) -> List[Arc]:
    """Every arc between consecutive glues of ``p`` on column ``c``, positive or not."""
    on_c = glues_on_column(p, c)
    return [_arc(p, a.index, b.index + 1, c) for a, b in zip(on_c, on_c[1:])]


def arcs_of(p: Path, c: int) -> List[Arc]:
    return [a for a in find_arcs(p, c) if a.positive]


def next_glue_index(p: Path, arc: Arc) -> Optional[int]:
    """Nearest glue on the arc's column strictly beyond its closing glue, in the arc's direction."""
    closing = glues(p)[arc.j - 1]
    on_c = glues_on_column(p, arc.column)
    if arc.upward:
        beyond = [g for g in on_c if g.y > closing.y]
        best = min(beyond, key=lambda g: g.y, default=None)
    else:
        beyond = [g for g in on_c if g.y < closing.y]
        best = max(beyond, key=lambda g: g.y, default=None)
    return best.index if best is not None else None


def _span_of(p: Path, arc: Arc) -> Tuple[int, int]:
    a, b = p[arc.i].y, p[arc.j].y
    return min(a, b), max(a, b)


def dominates(p: Path, a1: Arc, a2: Arc) -> bool:
    lo1, hi1 = _span_of(p, a1)
    lo2, hi2 = _span_of(p, a2)
    return lo1 < lo2 < hi2 < hi1


def is_north_of(p: Path, a1: Arc, a2: Arc) -> bool:
    return _span_of(p, a2)[1] < _span_of(p, a1)[0]


def is_dominant(p: Path, arc: Arc) -> bool:
    if not arc.positive:
        return False
    return not any(dominates(p, other, arc) for other in arcs_of(p, arc.column) if other != arc)


def dominant_arcs(p: Path, c: int) -> List[Arc]:
    return [a for a in arcs_of(p, c) if is_dominant(p, a)]


def is_weakly_dominant(system: TileSystem, p: Path, c: int, span: Span, arc: Arc) -> bool:
    """No arc inside the span window dominates ``arc``."""
    lo, hi = span.cut.i, span.cut.j
    if not lo <= arc.i < arc.j < hi:
        raise BadWindow(f"arc ({arc.i}, {arc.j}) is not inside span ({lo}, {hi})", i=arc.i, j=arc.j)
    rivals = [a for a in arcs_of(p, c) if lo <= a.i < a.j < hi and a != arc]
    return not any(dominates(p, other, arc) for other in rivals)


@dataclass(frozen=True)
class Border:
    index: int
    start: Pos  # doubled coordinates
    end: Pos
    kind: str

    def points(self) -> Set[Pos]:
        return polyline_points([self.start, self.end])

    def contains(self, pt2: Pos) -> bool:
        (ax, ay), (bx, by) = self.start, self.end
        return pt2[0] == ax == bx and min(ay, by) <= pt2[1] <= max(ay, by)

    def to_dict(self) -> Dict[str, Any]:
        return {"index": self.index, "kind": self.kind, "start": list(self.start), "end": list(self.end)}


@dataclass(frozen=True)
class ArcDecomposition:
    side: VerticalSide
    column: int
    mains: Tuple[int, ...]
    backups: Tuple[int, ...]
    borders: Tuple[Border, ...]
    interiors: Tuple[Hole, ...] = field(compare=False)
    east_side: Region = field(compare=False)
    box: Box = field(compare=False)

    @property
    def t(self) -> int:
        return len(self.mains) - 1

    def arcs(self, p: Path) -> List[Arc]:
        return [_arc(p, m, b, self.column) for m, b in zip(self.mains, self.backups)]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "side": self.side.value,
            "column": self.column,
            "mains": list(self.mains),
            "backups": list(self.backups),
            "borders": [b.to_dict() for b in self.borders],
            "interiors": [sorted(h.interior) for h in self.interiors],
        }


def dominant_arc_decomposition(system: TileSystem, p: Path, c: int,
                               side: VerticalSide = VerticalSide.SOUTH) -> ArcDecomposition:
    """Main and backup glues of ``p`` on ``c``, with the borders, interiors and east side they cut out."""
    ext = p.extents
    if not ext.west <= c < ext.east:
        raise PreconditionViolated(f"column {c} is not crossed by the path", column=c)
    records = glues(p)
    if not records[-1].horizontal or not records[-1].east:
        raise PreconditionViolated("the path must leave through an east-pointing glue")
    m0 = visible_glue(p, system.seed, c, side)
    if m0 is None:
        raise PreconditionViolated(f"no glue visible from the {side.value} on column {c}", column=c)
    if not records[m0].east:
        raise PreconditionViolated(f"the glue visible from the {side.value} points west", index=m0)
    direction = Direction.UPWARD if side is VerticalSide.SOUTH else Direction.DOWNWARD
    ell = last_glue_index(p, c)
    on_c = glues_on_column(p, c)

    mains, backups = [m0], []
    while mains[-1] != ell:
        m = mains[-1]
        closing = next(g for g in on_c if g.index > m)
        arc = _arc(p, m, closing.index + 1, c)
        if not arc.positive or arc.direction is not direction:
            raise PreconditionViolated(f"arc ({arc.i}, {arc.j}) breaks the {direction.value} chain", i=arc.i, j=arc.j)
        nxt = next_glue_index(p, arc)
        if nxt is None or nxt <= m:
            raise PreconditionViolated(f"no next glue after arc ({arc.i}, {arc.j})", i=arc.i, j=arc.j)
        backups.append(arc.j)
        mains.append(nxt)
    logger.debug(f"{side.value} decomposition on column {c}: mains {mains}, backups {backups}")

    box = analysis_box(system, p)
    borders = _borders(p, mains, backups, direction, box)
    interiors = tuple(_interior(p, b, m, c) for b, m in zip(backups, mains[1:]))
    east = _east_side(p, mains, backups, direction, box)
    return ArcDecomposition(side, c, tuple(mains), tuple(backups), borders, interiors, east, box)


def _interior(p: Path, b: int, m: int, c: int) -> Hole:
    try:
        return make_hole(p.segment(b - 1, m + 1), c)
    except (NotClosed, CorkCrossed) as e:
        raise PreconditionViolated(f"backup {b} and main {m} do not close a hole: {e.message}", backup=b, main=m)


def _ray_ends(direction: Direction, box: Box) -> Tuple[int, int]:
    south, north = box.y2
    return (south, north) if direction is Direction.UPWARD else (north, south)


def _borders(p: Path, mains: Sequence[int], backups: Sequence[int], direction: Direction,
             box: Box) -> Tuple[Border, ...]:
    records = glues(p)
    start_y, end_y = _ray_ends(direction, box)
    first = records[mains[0]].position2
    last = records[-1].position2
    out = [Border(0, first, (first[0], start_y), "ray")]
    for k, (b, m) in enumerate(zip(backups, mains[1:]), start=1):
        out.append(Border(k, records[b - 1].position2, records[m].position2, "segment"))
    out.append(Border(len(mains), last, (last[0], end_y), "ray"))
    return tuple(out)


def _east_side(p: Path, mains: Sequence[int], backups: Sequence[int], direction: Direction, box: Box) -> Region:
    records = glues(p)
    start_y, end_y = _ray_ends(direction, box)
    x_east = box.x2[1]

    def piece(a: int, b: int) -> List[Pos]:
        """Glue a, the centres of P_{a+1..b}, then glue b."""
        return [records[a].position2] + [doubled(p[k].pos) for k in range(a + 1, b + 1)] + [records[b].position2]

    chain: List[Pos] = []
    attached: Set[Pos] = set()
    for m, b in zip(mains, backups):
        part = piece(m, b - 1)
        chain += part
        attached |= polyline_points(part)
    part = piece(mains[-1], len(p) - 2)
    chain += part
    attached |= polyline_points(part)
    vertices = [(chain[0][0], start_y)] + chain + [(chain[-1][0], end_y), (x_east, end_y), (x_east, start_y)]
    return Region(Polygon(vertices), box, frozenset(attached), "east-side")


@dataclass(frozen=True)
class PartitionReport:
    checked: int
    mismatches: Tuple[Pos, ...]
    overlaps: Tuple[Pos, ...]

    @property
    def holds(self) -> bool:
        return not self.mismatches and not self.overlaps


def check_partition(system: TileSystem, p: Path, dec: ArcDecomposition) -> PartitionReport:
    """Compare the workspace of the cut (m_0, |P|-2) with the east side plus the interiors, point by point."""
    direction = Direction.UPWARD if dec.side is VerticalSide.SOUTH else Direction.DOWNWARD
    try:
        workspace = cut_workspace(system, p, dec.mains[0], len(p) - 2, direction, dec.box)
    except NotACut:
        raise PreconditionViolated(f"({dec.mains[0]}, {len(p) - 2}) is not a cut")
    skip = polyline_points([doubled(pos) for pos in p.positions])
    for b in dec.borders[1:-1]:
        skip |= b.points()
    points = [pt for pt in workspace.lattice_points() if pt not in skip]
    in_workspace = workspace.contains_many(points)
    in_east = dec.east_side.contains_many(points)
    inner = [h.polygon.contains(_points(points)) for h in dec.interiors]
    mismatches, overlaps = [], []
    for k, pt in enumerate(points):
        hits = int(in_east[k]) + sum(int(mask[k]) for mask in inner)
        if hits > 1:
            overlaps.append(pt)
        if bool(in_workspace[k]) != (hits > 0):
            mismatches.append(pt)
    if mismatches or overlaps:
        logger.warning(f"Workspace partition fails at {len(mismatches)} points, {len(overlaps)} overlaps")
    return PartitionReport(len(points), tuple(mismatches), tuple(overlaps))


def _points(points: List[Pos]) -> np.ndarray:
    return np.array(points, dtype=np.int64).reshape(-1, 2)


def shield_column(c: int, seed_size: int, tile_count: int, seed_east: Optional[int] = None) -> int:
    """L(c) = c + 3|sigma| + 24|T| + 14, checked against the column window when the seed's east extent is known."""
    if seed_east is not None:
        low, high = seed_east + tile_count + 1, seed_east + 5 * tile_count + 1
        if not low <= c <= high:
            raise ColumnOutOfWindow(f"column {c} outside [{low}, {high}]", column=c, low=low, high=high)
    return c + 3 * seed_size + 24 * tile_count + 14


@dataclass(frozen=True)
class ShieldReport:
    column: int
    shield_column: int
    s: int
    f: int
    a: int
    kind: ShieldKind
    side: VerticalSide
    border_index: Optional[int] = None
    shield_glue: Optional[int] = None
    arc_index: Optional[int] = None
    inconsistent: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "column": self.column, "shield_column": self.shield_column, "cut": [self.s, self.f],
            "a": self.a, "kind": self.kind.value, "side": self.side.value,
            "border_index": self.border_index, "shield_glue": self.shield_glue,
            "arc_index": self.arc_index, "inconsistent": self.inconsistent,
        }


def _negative_arc(a: Path, column: int, direction: Direction) -> bool:
    on_col = [g for g in glues(a) if g.on_column(column)]
    if len(on_col) != 2 or on_col[0].index != 0 or on_col[-1].index != len(a) - 2:
        return False
    arc = _arc(a, 0, len(a) - 1, column)
    return not arc.positive and arc.direction is direction


def verify_shield(system: TileSystem, p: Path, c: int, s_index: int, candidate: Path, *,
                  shield_col: Optional[int] = None,
                  budget: "Optional[SearchBudget | int]" = None) -> ShieldReport:
    """Check the four shield conditions for ``candidate`` and classify it as full or half.

    Raises NotAShield naming the first condition that fails. ``shield_col``
    replaces L(c), which lies beyond small systems.
    """
    budget = budget_of(budget, "verify_shield")
    column = shield_col if shield_col is not None else shield_column(
        c, system.seed_size, system.tile_count, system.seed_extents.east)
    try:
        f = first_glue_index(p, column)
    except NoGlueOnColumn:
        raise PreconditionViolated(f"the path never crosses column {column}", column=column)
    if not 0 <= s_index <= f:
        raise PreconditionViolated(f"glue {s_index} is not before glue {f}", s=s_index, f=f)
    q = p.prefix(f + 1)
    if visible_glue(q, system.seed, c, VerticalSide.SOUTH) == s_index:
        side, direction = VerticalSide.SOUTH, Direction.UPWARD
    elif visible_glue(q, system.seed, c, VerticalSide.NORTH) == s_index:
        side, direction = VerticalSide.NORTH, Direction.DOWNWARD
    else:
        raise PreconditionViolated(f"glue {s_index} is not visible on column {c}", s=s_index, column=c)
    try:
        workspace = cut_workspace(system, q, s_index, f, direction)
    except NotACut:
        raise PreconditionViolated(f"({s_index}, {f}) is not a cut", s=s_index, f=f)

    # 1: a path of gamma, off P_{s..f+1}, inside the workspace
    if not is_path_of_gamma(system, candidate):
        raise NotAShield(1, "the shield is not a path of the terminal assembly")
    if candidate.position_set & set(q.positions[s_index:]):
        raise NotAShield(1, "the shield meets P_{s..f+1}")
    if not region_contains_path(workspace, candidate):
        raise NotAShield(1, "the shield leaves the workspace")

    # 2: S P_{a..f+1} is a negative arc of the shield column
    arc_path, a = None, None
    for k in range(s_index, f + 1):
        try:
            joined = concat(candidate, q.suffix(k))
        except (Intersection, NoBond):
            continue
        if _negative_arc(joined, column, direction):
            arc_path, a = joined, k
            break
    if arc_path is None:
        raise NotAShield(2, f"no attachment makes a {direction.value} negative arc of column {column}")

    # 3: S P_a prefixes the minimal interior path of that arc
    try:
        hole = make_hole(arc_path, column)
    except (NotClosed, CorkCrossed) as e:
        raise NotAShield(3, f"the arc does not close a hole: {e.message}")
    head = arc_path.positions[:len(candidate) + 1]
    if min_interior_path(system, hole, budget).positions[:len(head)] != head:
        raise NotAShield(3, "S P_a is not a prefix of the minimal interior path")

    # 4
    if arc_path.extents.west > c:
        raise NotAShield(4, f"the arc stays east of column {c}")

    full = arc_path.prefix(len(candidate)).extents.west <= c
    report = ShieldReport(c, column, s_index, f, a, ShieldKind.FULL if full else ShieldKind.HALF, side)
    return _locate(system, p, report, candidate)


def _locate(system: TileSystem, p: Path, report: ShieldReport, candidate: Path) -> ShieldReport:
    """Border crossed by a full shield, or arc window holding a half shield's attachment."""
    try:
        dec = dominant_arc_decomposition(system, p, report.column, report.side)
    except PreconditionViolated as e:
        logger.warning(f"Shield located without decomposition: {e.message}")
        return _replace(report, inconsistent=True)
    if report.kind is ShieldKind.FULL:
        extended = concat(candidate, p.segment(report.a, report.a))
        on_c = [g for g in glues(extended) if g.on_column(report.column)]
        if on_c:
            e = on_c[0]
            for border in dec.borders[1:-1]:
                if border.contains(e.position2):
                    return _replace(report, border_index=border.index, shield_glue=e.index)
    else:
        for g, (m, b) in enumerate(zip(dec.mains, dec.backups)):
            if m < report.a < b:
                return _replace(report, arc_index=g)
    logger.warning(f"{report.kind.value} shield at {report.a} has no locator on column {report.column}")
    return _replace(report, inconsistent=True)


def _replace(report: ShieldReport, **changes: Any) -> ShieldReport:
    return replace(report, **changes)
