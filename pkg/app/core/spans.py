"""Spans, span decompositions on a column, canonical paths and useful prefixes.

A span is a cut whose two glues share a column. Starting from the initial
span (both glues visible in P) the decomposition follows next visible glues,
alternating sides, until the last glue of P on the column.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, NoReturn, Optional, Tuple

from app.core.assembly import TileSystem, extents, terminal_assembly
from app.core.cuts import Cut, is_minimum_cut
from app.core.exceptions import (
    ColumnOutOfRange, NoExtremalPath, NoGlueOnColumn, NoVisibleGlue, NotACut, PreconditionViolated,
)
from app.core.glues import (
    anchor_rows, cut_directions, glues, glues_on_column, last_glue_index, seed_glue_ys, visible_glue,
    width_on_column,
)
from app.core.models import Direction, VerticalSide
from app.core.paths import Path, Step, gamma_neighbours, last_tile_easternmost, producible_starts, right_priority_of_set
from app.core.search import SearchBudget, budget_of

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Span:
    cut: Cut
    initial: bool
    width: int

    @property
    def column(self) -> int:
        return self.cut.c_i


@dataclass(frozen=True)
class SpanDecomposition:
    column: int
    indices: Tuple[int, ...]
    directions: Tuple[Direction, ...]
    widths: Tuple[int, ...]

    @property
    def t(self) -> int:
        return len(self.indices) - 1

    @property
    def last(self) -> int:
        return self.indices[-1]

    def spans(self) -> List[Span]:
        c = self.column
        return [
            Span(Cut(self.indices[k], self.indices[k + 1], d, c, c), k == 0, w)
            for k, (d, w) in enumerate(zip(self.directions, self.widths))
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "column": self.column,
            "indices": list(self.indices),
            "directions": [d.value for d in self.directions],
            "widths": list(self.widths),
        }


def _flip(d: Direction) -> Direction:
    return Direction.DOWNWARD if d is Direction.UPWARD else Direction.UPWARD


def span_decomposition(system: TileSystem, p: Path, c: int) -> Optional[SpanDecomposition]:
    """Decomposition of ``p`` into spans on column ``c``, or None when the initial span is undefined.

    The chain after the initial span is only guaranteed when the last tile
    of ``p`` is the easternmost one and neither the seed nor its bond to P_0
    crosses ``c``. A broken chain raises PreconditionViolated when that
    fails, NotACut otherwise.
    """
    ext = p.extents
    if not ext.west <= c < ext.east:
        raise PreconditionViolated(f"column {c} is not crossed by the path", column=c)
    if not glues_on_column(p, c):
        raise PreconditionViolated(f"no glue of the path on column {c}", column=c)
    seed = system.seed
    south = visible_glue(p, seed, c, VerticalSide.SOUTH)
    north = visible_glue(p, seed, c, VerticalSide.NORTH)
    if south is None or north is None:
        raise PreconditionViolated(f"the seed hides the glues of column {c}", column=c)

    records = glues(p)
    ell = last_glue_index(p, c)
    if south == north:
        return SpanDecomposition(c, (ell,), (), ())

    if south < north and records[south].east:
        indices, direction = [south, north], Direction.UPWARD
    elif north < south and records[north].east:
        indices, direction = [north, south], Direction.DOWNWARD
    else:
        logger.debug(f"Initial span on column {c} undefined: visible glues {south}/{north}")
        return None

    directions = [direction]
    while indices[-1] != ell:
        u = indices[-1]
        side = VerticalSide.SOUTH if direction is Direction.UPWARD else VerticalSide.NORTH
        nxt = visible_glue(p.suffix(u), seed, c, side)
        if nxt is None or nxt == 0:
            _chain_broken(system, p, c, f"the chain stalls at glue {u}", index=u)
        direction = _flip(direction)
        indices.append(u + nxt)
        directions.append(direction)

    for (a, b), d in zip(zip(indices, indices[1:]), directions):
        if d not in cut_directions(p, seed, a, b):
            _chain_broken(system, p, c, f"({a}, {b}) is not a {d.value} span", i=a, j=b)
    widths = tuple(abs(records[b].y - records[a].y) for a, b in zip(indices, indices[1:]))
    return SpanDecomposition(c, tuple(indices), tuple(directions), widths)


def _chain_broken(system: TileSystem, p: Path, c: int, reason: str, **details: Any) -> NoReturn:
    if not last_tile_easternmost(system, p) or seed_glue_ys(system.seed, c) or anchor_rows(p, system.seed, c):
        raise PreconditionViolated(f"column {c}: {reason} on a path the decomposition does not cover",
                                   column=c, **details)
    raise NotACut(f"column {c}: {reason}", column=c, **details)


def extremal_paths(system: TileSystem, budget: "Optional[SearchBudget | int]" = None) -> List[Path]:
    """Every extremal path, found by depth-first search stopped at the first arrival on gamma's east column."""
    budget = budget_of(budget, "extremal_paths")
    gamma = terminal_assembly(system)
    east = extents(gamma).east
    if system.seed_extents.east >= east:
        return []
    found: List[Path] = []
    stack: List[Tuple[Step, ...]] = [(s,) for s in reversed(producible_starts(system, gamma))]
    while stack:
        prefix = stack.pop()
        budget.tick()
        if prefix[-1].x == east:
            found.append(Path(prefix))
            continue
        used = {s.pos for s in prefix}
        for nxt in gamma_neighbours(gamma, prefix[-1]):
            if nxt.pos not in used and nxt.pos not in system.seed:
                stack.append(prefix + (nxt,))
    logger.debug(f"{len(found)} extremal paths after {budget.spent} nodes")
    return found


def _width(system: TileSystem, q: Path, c: int) -> Optional[int]:
    try:
        return width_on_column(q, system.seed, c)
    except (NoGlueOnColumn, NoVisibleGlue, ColumnOutOfRange):
        return None


def _first(paths: List[Path]) -> Path:
    return min(paths, key=lambda q: (len(q), q.positions))


def _check_window(system: TileSystem, c: int, strict: bool) -> None:
    gamma = terminal_assembly(system)
    e_gamma = extents(gamma).east
    e_sigma = system.seed_extents.east
    if strict:
        low, high = e_sigma + system.tile_count + 1, e_gamma - 1
        if not low <= c < high:
            raise NoExtremalPath(f"column {c} outside [{low}, {high})", column=c, low=low, high=high)
    elif not e_sigma < c < e_gamma:
        raise NoExtremalPath(f"column {c} outside ({e_sigma}, {e_gamma})", column=c)


def _first_non_minimum(system: TileSystem, p: Path, dec: SpanDecomposition, budget: SearchBudget) -> Optional[int]:
    for k, span in enumerate(dec.spans()):
        if not is_minimum_cut(system, p, span.cut, budget):
            return k
    return None


def is_canonical(system: TileSystem, q: Path, c: int, budget: "Optional[SearchBudget | int]" = None) -> bool:
    """Width 0 on ``c``, or a span decomposition on ``c`` made of minimum spans."""
    width = _width(system, q, c)
    if width is None:
        return False
    if width == 0:
        return True
    try:
        dec = span_decomposition(system, q, c)
    except PreconditionViolated:
        return False
    return dec is not None and _first_non_minimum(system, q, dec, budget_of(budget, "is_canonical")) is None


def canonical_path(system: TileSystem, c: int, strict: bool = True,
                   budget: "Optional[SearchBudget | int]" = None) -> Optional[Path]:
    """An extremal path of width 0 on ``c``, or one whose spans on ``c`` are all minimum.

    Minimum-width extremal paths come first. The first span that is not
    minimum is then repaired by taking the priority path among the extremal
    paths sharing the prefix up to that span and keeping its glue (pseudo-)
    visible, narrowest from there on. Each round fixes one more span. When a
    round finds no candidate the extremal paths are scanned narrowest first,
    so None means no extremal path is canonical for ``c``.
    """
    budget = budget_of(budget, "canonical_path")
    _check_window(system, c, strict)
    everything = extremal_paths(system, budget)
    widths = {q: _width(system, q, c) for q in everything}
    e0 = [q for q in everything if widths[q] is not None]
    if not e0:
        raise NoExtremalPath(f"no extremal path crosses column {c}", column=c)
    best = min(widths[q] for q in e0)
    e1 = [q for q in e0 if widths[q] == best]
    p = _first(e1)
    if best == 0:
        logger.info(f"Column {c}: extremal path of width 0")
        return p

    found = _refine(system, p, c, e0, e1, budget)
    if found is not None:
        return found
    for q in sorted(e0, key=lambda q: (widths[q], len(q), q.positions)):
        if is_canonical(system, q, c, budget):
            logger.info(f"Column {c}: canonical path of length {len(q)} found by scanning")
            return q
    logger.warning(f"Column {c}: none of the {len(e0)} extremal paths is canonical")
    return None


def _refine(system: TileSystem, p: Path, c: int, e0: List[Path], e1: List[Path],
            budget: SearchBudget) -> Optional[Path]:
    seen = {p}
    while True:
        try:
            dec = span_decomposition(system, p, c)
        except PreconditionViolated as e:
            logger.info(f"Column {c}: refinement left the decomposable paths ({e.message})")
            return None
        if dec is None:
            logger.info(f"Column {c}: decomposition of a minimum-width path is undefined")
            return None
        k = _first_non_minimum(system, p, dec, budget)
        if k is None:
            logger.info(f"Column {c}: canonical path of length {len(p)} with {dec.t} spans")
            return p
        s = dec.indices[k]
        direction = dec.directions[k]
        side = VerticalSide.SOUTH if direction is Direction.UPWARD else VerticalSide.NORTH
        head = p.prefix(s + 1).positions
        if k == 0:
            pool = [q for q in e1 if q.positions[:s + 2] == head and visible_glue(q, system.seed, c, side) == s]
        else:
            pool = [q for q in e0 if q.positions[:s + 2] == head and _pseudo_visible_on(system, q, s, c, side)]
            tail_widths = {q: _width(system, q.suffix(s), c) for q in pool}
            pool = [q for q in pool if tail_widths[q] is not None]
            if pool:
                narrow = min(tail_widths[q] for q in pool)
                pool = [q for q in pool if tail_widths[q] == narrow]
        if not pool:
            logger.info(f"Column {c}: no candidate repairs span {k}")
            return None
        nxt = right_priority_of_set(pool, right=direction is Direction.UPWARD)
        if nxt in seen:
            logger.info(f"Column {c}: refinement stalls on span {k}")
            return None
        seen.add(nxt)
        p = nxt


def _pseudo_visible_on(system: TileSystem, q: Path, s: int, c: int, side: VerticalSide) -> bool:
    return len(q) > s + 1 and visible_glue(q.suffix(s), system.seed, c, side) == 0


def useful_prefix(system: TileSystem, p: Path, c: int) -> Path:
    """P_{0..j} where glue j is the first glue on the column just east of P_{0..l}."""
    try:
        ell = last_glue_index(p, c)
    except NoGlueOnColumn:
        raise PreconditionViolated(f"no glue on column {c}", column=c)
    east = p.prefix(ell).extents.east
    on_next = glues_on_column(p, east + 1)
    if not on_next:
        raise PreconditionViolated(f"no glue on column {east + 1}", column=east + 1, last_glue=ell)
    return p.prefix(on_next[0].index)
