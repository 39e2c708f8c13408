"""Exact plane regions bounded by path curves.

Everything runs in doubled integer coordinates: tile centres are even pairs and
glue points have one odd coordinate. Rays are clipped at the analysis box, so
every region is a finite axis-aligned polygon. Points on the polygon are in
neither side; a region may additionally admit the points of the path part of
its boundary, which is how branches running along the cut are accepted.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np
from scipy import ndimage

from app.config import settings
from app.core.assembly import Assembly, TileSystem, extents, terminal_assembly
from app.core.exceptions import CorkCrossed, NotACut, NotClosed, SystemStateError
from app.core.glues import cut_directions, glues
from app.core.lattice import Pos, doubled, midpoint2
from app.core.models import Direction
from app.core.paths import Path, Step, by_priority, gamma_neighbours
from app.core.search import SearchBudget, budget_of

logger = logging.getLogger(__name__)

FOUR_CONNECTED = np.array([[0, 1, 0],
                           [1, 1, 1],
                           [0, 1, 0]], dtype=int)


@dataclass(frozen=True)
class Box:
    """Tile-coordinate bounds of an analysis."""
    west: int
    east: int
    south: int
    north: int

    @property
    def x2(self) -> Tuple[int, int]:
        return 2 * self.west, 2 * self.east

    @property
    def y2(self) -> Tuple[int, int]:
        return 2 * self.south, 2 * self.north

    def tiles(self) -> Iterable[Pos]:
        for y in range(self.south, self.north + 1):
            for x in range(self.west, self.east + 1):
                yield (x, y)

    def contains_tile(self, pos: Pos) -> bool:
        return self.west <= pos[0] <= self.east and self.south <= pos[1] <= self.north


def analysis_box(system: Optional[TileSystem], *paths: Path, margin: Optional[int] = None) -> Box:
    """Bounding box of gamma, the seed and the given paths, widened by the margin."""
    margin = margin if margin is not None else settings.BOX_MARGIN
    positions: List[Pos] = []
    for p in paths:
        positions.extend(p.positions)
    if system is not None:
        positions.extend(system.seed)
        try:
            positions.extend(terminal_assembly(system))
        except SystemStateError:
            pass
    ext = extents(positions)
    return Box(ext.west - margin, ext.east + margin, ext.south - margin, ext.north + margin)


class Polygon:
    """Closed axis-aligned polygon over doubled coordinates."""

    def __init__(self, vertices: Sequence[Pos]):
        pts = [tuple(v) for v in vertices]
        if pts[0] == pts[-1]:
            pts = pts[:-1]
        self.vertices: List[Pos] = _drop_repeats(pts)
        arr = np.array(self.vertices + [self.vertices[0]], dtype=np.int64)
        self._x1, self._y1 = arr[:-1, 0], arr[:-1, 1]
        self._x2, self._y2 = arr[1:, 0], arr[1:, 1]

    def edges(self) -> List[Tuple[Pos, Pos]]:
        v = self.vertices
        return [(v[k], v[(k + 1) % len(v)]) for k in range(len(v))]

    def on_boundary(self, points: np.ndarray) -> np.ndarray:
        px = points[:, 0][:, None]
        py = points[:, 1][:, None]
        cross = (self._x2 - self._x1) * (py - self._y1) - (self._y2 - self._y1) * (px - self._x1)
        within_x = (np.minimum(self._x1, self._x2) <= px) & (px <= np.maximum(self._x1, self._x2))
        within_y = (np.minimum(self._y1, self._y2) <= py) & (py <= np.maximum(self._y1, self._y2))
        return np.any((cross == 0) & within_x & within_y, axis=1)

    def crossing_parity(self, points: np.ndarray) -> np.ndarray:
        """Even-odd test with the half-open edge rule, in exact integers."""
        px = points[:, 0][:, None]
        py = points[:, 1][:, None]
        upward = (self._y1 <= py) & (self._y2 > py)
        downward = (self._y1 > py) & (self._y2 <= py)
        dy = self._y2 - self._y1
        # px < x1 + (py - y1) * (x2 - x1) / dy, multiplied through by dy
        lhs = (px - self._x1) * dy
        rhs = (py - self._y1) * (self._x2 - self._x1)
        right_of = np.where(dy > 0, lhs < rhs, lhs > rhs)
        crossings = np.sum((upward | downward) & right_of, axis=1)
        return crossings % 2 == 1

    def contains(self, points: np.ndarray) -> np.ndarray:
        return self.crossing_parity(points) & ~self.on_boundary(points)

    @cached_property
    def signed_area2(self) -> int:
        """Twice the signed area; positive for counter-clockwise vertices."""
        v = self.vertices
        return sum(v[k][0] * v[(k + 1) % len(v)][1] - v[(k + 1) % len(v)][0] * v[k][1] for k in range(len(v)))

    @cached_property
    def _raster(self) -> Tuple[np.ndarray, int, int]:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        x0, y0 = min(xs) - 1, min(ys) - 1
        width = 2 * (max(xs) + 1 - x0) + 1
        height = 2 * (max(ys) + 1 - y0) + 1
        wall = np.zeros((height, width), dtype=bool)
        for (ax, ay), (bx, by) in self.edges():
            if ax != bx and ay != by:
                raise ValueError("flood fill needs axis-aligned edges")
            c0, c1 = sorted((2 * (ax - x0), 2 * (bx - x0)))
            r0, r1 = sorted((2 * (ay - y0), 2 * (by - y0)))
            wall[r0:r1 + 1, c0:c1 + 1] = True
        labels, _ = ndimage.label(~wall, structure=FOUR_CONNECTED)
        border = np.unique(np.concatenate([labels[0, :], labels[-1, :], labels[:, 0], labels[:, -1]]))
        inside = ~wall & ~np.isin(labels, border)
        return inside, x0, y0

    def flood_contains(self, points: np.ndarray) -> np.ndarray:
        """Membership from 4-connected labelling of a rasterised copy of the plane."""
        inside, x0, y0 = self._raster
        rows = 2 * (points[:, 1] - y0)
        cols = 2 * (points[:, 0] - x0)
        valid = (rows >= 0) & (rows < inside.shape[0]) & (cols >= 0) & (cols < inside.shape[1])
        out = np.zeros(len(points), dtype=bool)
        out[valid] = inside[rows[valid], cols[valid]]
        return out


def _drop_repeats(pts: List[Pos]) -> List[Pos]:
    out: List[Pos] = []
    for p in pts:
        if not out or out[-1] != p:
            out.append(p)
    return out


def _as_points(points: Iterable[Pos]) -> np.ndarray:
    arr = np.array(list(points), dtype=np.int64)
    return arr.reshape(-1, 2)


@dataclass(frozen=True)
class Region:
    polygon: Polygon = field(compare=False)
    box: Box
    attached: FrozenSet[Pos] = frozenset()
    name: str = "region"

    def contains(self, pt2: Pos) -> bool:
        return bool(self.polygon.contains(_as_points([pt2]))[0])

    def admits(self, pt2: Pos) -> bool:
        return pt2 in self.attached or self.contains(pt2)

    def __contains__(self, pos: Pos) -> bool:
        return self.admits(doubled(pos))

    def contains_many(self, points2: Iterable[Pos]) -> np.ndarray:
        return self.polygon.contains(_as_points(points2))

    def flood_contains_many(self, points2: Iterable[Pos]) -> np.ndarray:
        return self.polygon.flood_contains(_as_points(points2))

    def tiles(self) -> Set[Pos]:
        """Tile positions strictly inside."""
        candidates = list(self.box.tiles())
        mask = self.contains_many(doubled(p) for p in candidates)
        return {p for p, inside in zip(candidates, mask) if inside}

    def admitted_tiles(self) -> Set[Pos]:
        return self.tiles() | {(x // 2, y // 2) for x, y in self.attached if x % 2 == 0 and y % 2 == 0}

    def lattice_points(self) -> List[Pos]:
        """All doubled integer points of the box, tile centres and glue points alike."""
        (x0, x1), (y0, y1) = self.box.x2, self.box.y2
        return [(x, y) for y in range(y0, y1 + 1) for x in range(x0, x1 + 1)]


def step_points(a: Pos, b: Pos) -> Tuple[Pos, Pos, Pos]:
    return doubled(a), midpoint2(a, b), doubled(b)


def region_contains_path(r: Region, q: Path) -> bool:
    if len(q) == 1:
        return r.admits(doubled(q[0].pos))
    for k in range(len(q) - 1):
        if not all(r.admits(pt) for pt in step_points(q[k].pos, q[k + 1].pos)):
            return False
    return True


def step_admitted(r: Region, a: Pos, b: Pos) -> bool:
    return all(r.admits(pt) for pt in step_points(a, b))


def polyline_points(vertices: Sequence[Pos]) -> Set[Pos]:
    """Every integer point on an axis-aligned polyline."""
    out: Set[Pos] = set()
    for (ax, ay), (bx, by) in zip(vertices, vertices[1:]):
        if ax == bx:
            for y in range(min(ay, by), max(ay, by) + 1):
                out.add((ax, y))
        else:
            for x in range(min(ax, bx), max(ax, bx) + 1):
                out.add((x, ay))
    return out


@dataclass(frozen=True)
class CutCurve:
    i: int
    j: int
    direction: Direction
    glue_i: Pos
    glue_j: Pos
    path_part: Tuple[Pos, ...]  # glue i point, tile centres of P_{i+1..j}, glue j point

    def ray_i(self, box: Box) -> Tuple[Pos, Pos]:
        y = box.y2[0] if self.direction is Direction.UPWARD else box.y2[1]
        return self.glue_i, (self.glue_i[0], y)

    def ray_j(self, box: Box) -> Tuple[Pos, Pos]:
        y = box.y2[1] if self.direction is Direction.UPWARD else box.y2[0]
        return self.glue_j, (self.glue_j[0], y)


def cut_curve(p: Path, i: int, j: int, direction: Direction) -> CutCurve:
    records = glues(p)
    gi, gj = records[i].position2, records[j].position2
    centres = tuple(doubled(p[k].pos) for k in range(i + 1, j + 1))
    return CutCurve(i, j, direction, gi, gj, (gi,) + centres + (gj,))


def curve_region(curve: CutCurve, box: Box, name: str = "workspace") -> Region:
    """East side of a ray + path + ray curve."""
    (_, x_east), _ = box.x2, box.y2
    start_y = curve.ray_i(box)[1][1]
    end_y = curve.ray_j(box)[1][1]
    vertices = [(curve.glue_i[0], start_y)] + list(curve.path_part) + [
        (curve.glue_j[0], end_y),
        (x_east, end_y),
        (x_east, start_y),
    ]
    attached = frozenset(polyline_points(list(curve.path_part[1:])))
    return Region(Polygon(vertices), box, attached, name)


def cut_workspace(system: TileSystem, p: Path, i: int, j: int, direction: Direction,
                  box: Optional[Box] = None) -> Region:
    """The workspace (east side) of the cut (i, j)."""
    if direction not in cut_directions(p, system.seed, i, j):
        raise NotACut(f"({i}, {j}) is not a {direction.value} cut", i=i, j=j, direction=direction.value)
    box = box or analysis_box(system, p)
    region = curve_region(cut_curve(p, i, j, direction), box)
    logger.debug(f"Workspace of {direction.value} cut ({i}, {j}): {len(region.attached)} attached points")
    return region


@dataclass(frozen=True)
class Hole:
    path: Path
    column: int
    direction: Direction
    polygon: Polygon = field(compare=False)
    interior: FrozenSet[Pos]

    @property
    def cork(self) -> Tuple[Pos, Pos]:
        records = glues(self.path)
        return records[0].position2, records[-1].position2

    @property
    def left_handed(self) -> bool:
        """True when the interior lies to the left of the path."""
        return self.polygon.signed_area2 > 0

    def closure_admits(self, pt2: Pos) -> bool:
        pts = _as_points([pt2])
        return bool(self.polygon.contains(pts)[0] or self.polygon.on_boundary(pts)[0])

    def flood_interior(self) -> Set[Pos]:
        xs = [v[0] for v in self.polygon.vertices]
        ys = [v[1] for v in self.polygon.vertices]
        box = [(x, y) for y in range(min(ys) // 2, max(ys) // 2 + 1) for x in range(min(xs) // 2, max(xs) // 2 + 1)]
        mask = self.polygon.flood_contains(_as_points(doubled(p) for p in box))
        return {p for p, inside in zip(box, mask) if inside}


def make_hole(h: Path, c: int) -> Hole:
    if len(h) < 3:
        raise NotClosed("a hole needs at least three tiles")
    records = glues(h)
    first, last = records[0], records[-1]
    if not (first.on_column(c) and last.on_column(c)):
        raise NotClosed(f"end glues of the hole are not on column {c}", column=c)
    lo, hi = sorted((first.y, last.y))
    for g in records[1:-1]:
        if g.on_column(c) and lo <= g.y <= hi:
            raise CorkCrossed(f"glue {g.index} meets the cork on column {c}", index=g.index)
    vertices = [first.position2] + [doubled(h[k].pos) for k in range(1, len(h) - 1)] + [last.position2]
    polygon = Polygon(vertices)
    xs = [v[0] for v in vertices]
    ys = [v[1] for v in vertices]
    candidates = [(x, y) for y in range(min(ys) // 2, max(ys) // 2 + 1) for x in range(min(xs) // 2, max(xs) // 2 + 1)]
    mask = polygon.contains(_as_points(doubled(p) for p in candidates)) if candidates else []
    interior = frozenset(p for p, inside in zip(candidates, mask) if inside)
    direction = Direction.UPWARD if first.y < last.y else Direction.DOWNWARD
    return Hole(h, c, direction, polygon, interior)


def min_interior_path(system: TileSystem, hole: Hole, budget: "Optional[SearchBudget | int]" = None) -> Path:
    """Priority member of the gamma paths from H_0H_1 to H_{-2}H_{-1} inside the hole.

    The priority side is the one the interior lies on, so the search walks
    around the interior as tightly as gamma allows.
    """
    gamma = terminal_assembly(system)
    budget = budget_of(budget, "min_interior_path")
    h = hole.path
    start = (Step(h[0].pos, gamma[h[0].pos]), Step(h[1].pos, gamma[h[1].pos]))
    goal_a, goal_b = h[-2].pos, h[-1].pos
    right = not hole.left_handed

    def ordered(prefix: List[Step]) -> List[Step]:
        return by_priority(prefix[-2].pos, prefix[-1].pos, gamma_neighbours(gamma, prefix[-1]), right)

    stack: List[List[Step]] = [list(start)]
    while stack:
        prefix = stack.pop()
        budget.tick()
        if prefix[-1].pos == goal_b and prefix[-2].pos == goal_a:
            return Path(tuple(prefix))
        used = {s.pos for s in prefix}
        children = []
        for s in ordered(prefix):
            if s.pos in used or (s.pos == goal_b) != (prefix[-1].pos == goal_a):
                continue
            if s.pos == goal_b:
                children.append(prefix + [s])
                continue
            if not all(hole.closure_admits(pt) for pt in step_points(prefix[-1].pos, s.pos)):
                continue
            children.append(prefix + [s])
        stack.extend(reversed(children))
    raise NotClosed(f"no path of gamma runs from {h[0].pos} around the hole to {goal_b}", start=h[0].pos, end=goal_b)
