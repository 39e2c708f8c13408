"""Registered statement checks.

Each check yields one outcome per place its hypothesis can be tested. Ids
are ``<suite>.<what the statement says>``; checks whose hypotheses need
columns far east of the seed are registered with ``desk_scale=False``.
"""
import logging
from itertools import combinations
from typing import Any, Callable, Iterator, List, Optional, Tuple, Type

import numpy as np

from app.core.arcs import (
    arcs_of, check_partition, dominant_arc_decomposition, dominant_arcs, dominates, is_north_of, is_weakly_dominant,
    next_glue_index, shield_column, verify_shield,
)
from app.core.assembly import (
    Assembly, Finite, Infinite, NonDirected, cached_classification, classification_cap,
    explore_producible_assemblies, extents, rounds, terminal_assembly, union,
)
from app.core.cuts import (
    Cut, all_cuts, glues_close_workspace, is_cut, is_minimal_cut, is_minimum_cut, is_visible_cut,
    right_priority_path_of_cut, workspace,
)
from app.core.exceptions import AssemblyError, Intersection, NoBond, NoExtremalPath, TamError
from app.core.glues import (
    GlueRecord, anchor_rows, glues, is_pseudo_visible, is_visible, last_glue_index, seed_glue_ys, visible_glue,
    width_on_column,
)
from app.core.harness import UNMET, Instance, Outcome, holds, lemma
from app.core.lattice import doubled
from app.core.models import Direction, VerticalSide
from app.core.paths import Path, concat, is_producible_path, last_tile_easternmost
from app.core.regions import cut_workspace, make_hole, region_contains_path
from app.core.search import SearchBudget
from app.core.spans import canonical_path, extremal_paths, is_canonical, span_decomposition

logger = logging.getLogger(__name__)


def _try(fn: Callable[..., Any], *args: Any, unmet: Tuple[Type[TamError], ...] = UNMET, **kwargs: Any) -> Any:
    """``fn(*args)``, or None when it raises one of ``unmet``; other errors reach the harness."""
    try:
        return fn(*args, **kwargs)
    except unmet as e:
        logger.debug(f"{fn.__name__}: {e.message}")
        return None


def _finite(inst: Instance) -> bool:
    return isinstance(cached_classification(inst.system), Finite)


def _visible_records(p: Path, inst: Instance, side: VerticalSide) -> List[GlueRecord]:
    """Glues of ``p`` visible from ``side``, one per column, west to east."""
    records = glues(p)
    found = []
    for c in range(p.extents.west, p.extents.east):
        k = visible_glue(p, inst.system.seed, c, side)
        if k is not None:
            found.append(records[k])
    return found


def _decomposable(inst: Instance, p: Path, c: int) -> bool:
    """Column ``c`` sits west of e_P - 1, clear of the seed, with both visible glues pointing east.

    These are the facts the far column window provides to the arc statements.
    """
    seed = inst.system.seed
    if not c < p.extents.east - 1 or seed_glue_ys(seed, c) or anchor_rows(p, seed, c):
        return False
    records = glues(p)
    for side in VerticalSide:
        k = visible_glue(p, seed, c, side)
        if k is None or not records[k].east:
            return False
    return True


def _correct_right_path(inst: Instance, p: Path, cut: Cut, budget: SearchBudget) -> Optional[Path]:
    """P_{0..i}R when the result is a producible path."""
    r = right_priority_path_of_cut(inst.system, p, cut, budget)
    q = _try(concat, p.prefix(cut.i), r, unmet=(Intersection, NoBond))
    if q is None or not is_producible_path(inst.system, q):
        return None
    return q


# assembly

@lemma("assembly.size-bound", "assembly",
       "finite terminal assemblies are at most 7|seed|+58|T|+30 wide and high", needs_path=False)
def size_bound(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    result = cached_classification(inst.system)
    if not isinstance(result, Finite):
        return
    bound = classification_cap(inst.system)
    ext = result.extents
    yield holds(ext.width <= bound and ext.height <= bound, width=ext.width, height=ext.height, bound=bound)


@lemma("assembly.oracle-agreement", "assembly",
       "saturation agrees with breadth-first search over single attachments", needs_path=False)
def oracle_agreement(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    result = cached_classification(inst.system)
    oracle = explore_producible_assemblies(inst.system)
    if not oracle.complete:
        return
    if isinstance(result, Finite):
        yield holds(oracle.disagreement is None and oracle.terminals == [result.terminal],
                    terminals=len(oracle.terminals))
    elif isinstance(result, NonDirected):
        yield holds(oracle.disagreement is not None or len(oracle.terminals) > 1, position=list(result.position))
    elif isinstance(result, Infinite):
        yield holds(False, kind=result.kind, states=oracle.states)


@lemma("assembly.saturation-monotone", "assembly",
       "each saturation round contains the previous one", needs_path=False)
def saturation_monotone(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    previous: Optional[Assembly] = None
    for k, state in enumerate(rounds(inst.system, classification_cap(inst.system))):
        if not isinstance(state, Assembly):
            return
        if previous is not None:
            yield holds(previous.is_subassembly_of(state), round=k)
        previous = state


@lemma("assembly.union-commutative", "assembly",
       "union of the seed with gamma and with each first tile is commutative", needs_path=False)
def union_commutative(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    if not _finite(inst):
        return
    seed = inst.system.seed
    gamma = terminal_assembly(inst.system)
    yield holds(union(seed, gamma) == union(gamma, seed), pair="seed/gamma")
    for pos in sorted(gamma.positions - seed.positions):
        single = Assembly({pos: gamma[pos]})
        forward = _try(union, seed, single, unmet=(AssemblyError,))
        if forward is not None:
            yield holds(forward == union(single, seed), pair=f"seed/{pos}")


# visibility

@lemma("visibility.prefix-monotone", "visibility",
       "a glue visible in P stays visible in every prefix containing it")
def prefix_monotone(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    p, seed = inst.path, inst.system.seed
    if len(p) < 2:
        return
    for side in VerticalSide:
        for g in glues(p):
            if not is_visible(p, seed, g.index, side):
                continue
            kept = all(is_visible(p.prefix(k), seed, g.index, side) for k in range(g.index + 1, len(p)))
            yield holds(kept, index=g.index, side=side.value)


@lemma("visibility.visible-implies-pseudo", "visibility", "a visible glue is pseudo-visible from the same side")
def visible_implies_pseudo(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    p, seed = inst.path, inst.system.seed
    if len(p) < 2:
        return
    for side in VerticalSide:
        for g in glues(p):
            if is_visible(p, seed, g.index, side):
                yield holds(is_pseudo_visible(p, g.index, side, seed), index=g.index, side=side.value)


@lemma("visibility.south-visible-columns-ordered", "visibility",
       "with the last glue visible from the north, south-visible east glues move east and west glues move west")
def south_visible_columns_ordered(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    p = inst.path
    if len(p) < 2 or not is_visible(p, inst.system.seed, len(p) - 2, VerticalSide.NORTH):
        return
    south = _visible_records(p, inst, VerticalSide.SOUTH)
    for a, b in combinations(sorted(south, key=lambda g: g.index), 2):
        if a.east and b.east:
            yield holds(a.column < b.column, first=a.index, second=b.index)
        elif not a.east and not b.east:
            yield holds(a.column > b.column, first=a.index, second=b.index)


@lemma("visibility.single-turn-column", "visibility",
       "with the last glue visible from the north, south-visible glues point west then east along the columns")
def single_turn_column(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    p = inst.path
    if len(p) < 2 or not is_visible(p, inst.system.seed, len(p) - 2, VerticalSide.NORTH):
        return
    flags = [g.east for g in _visible_records(p, inst, VerticalSide.SOUTH)]
    if flags:
        yield holds(flags == sorted(flags), directions=["east" if f else "west" for f in flags])


@lemma("visibility.easternmost-glues-point-east", "visibility",
       "when the last tile is the unique easternmost one, the glues visible from one side all point east")
def easternmost_glues_point_east(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    p = inst.path
    if len(p) < 2 or not last_tile_easternmost(inst.system, p):
        return
    north = all(g.east for g in _visible_records(p, inst, VerticalSide.NORTH))
    south = all(g.east for g in _visible_records(p, inst, VerticalSide.SOUTH))
    yield holds(north or south, north=north, south=south)


@lemma("visibility.far-glues-point-east", "visibility",
       "when the last tile is easternmost, visible glues at columns >= w_P+|T| point east", desk_scale=False)
def far_glues_point_east(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    p = inst.path
    if len(p) < 2 or not last_tile_easternmost(inst.system, p):
        return
    threshold = p.extents.west + inst.system.tile_count
    for side in VerticalSide:
        for g in _visible_records(p, inst, side):
            if g.column >= threshold:
                yield holds(g.east, index=g.index, side=side.value)


@lemma("paths.west-extent-bound", "visibility",
       "a path reaching past e_seed+2|T|+1 stays east of w_seed-2|T|-1", desk_scale=False)
def west_extent_bound(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    seed, t = inst.system.seed_extents, inst.system.tile_count
    ext = inst.path.extents
    if ext.east > seed.east + 2 * t + 1:
        yield holds(ext.west >= seed.west - 2 * t - 1, west=ext.west, bound=seed.west - 2 * t - 1)


# cuts

def _cuts(inst: Instance) -> List[Cut]:
    return all_cuts(inst.system, inst.path) if len(inst.path) > 1 else []


@lemma("cuts.visible-glues-point-east", "cuts",
       "inside a cut, glues visible from the first side at columns >= c_i point east")
def visible_glues_point_east(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    p = inst.path
    for cut in _cuts(inst):
        seg = p.segment(cut.i, cut.j + 1)
        for g in _visible_records(seg, inst, cut.first_side):
            if g.column >= cut.c_i:
                yield holds(g.east, cut=[cut.i, cut.j], index=cut.i + g.index)


@lemma("cuts.visible-columns-ordered", "cuts",
       "inside a cut, glues visible from the first side at columns >= c_i come in column order")
def visible_columns_ordered(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    p = inst.path
    for cut in _cuts(inst):
        seg = p.segment(cut.i, cut.j + 1)
        seen = sorted((g for g in _visible_records(seg, inst, cut.first_side) if g.column >= cut.c_i),
                      key=lambda g: g.index)
        if seen:
            columns = [g.column for g in seen]
            yield holds(columns == sorted(columns), cut=[cut.i, cut.j], columns=columns)


@lemma("cuts.tail-placement", "cuts",
       "the tail after glue j lies in the workspace iff glue j points east")
def tail_placement(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    p = inst.path
    for cut in _cuts(inst):
        region = workspace(inst.system, p, cut)
        tail = p.suffix(cut.j + 1)
        if glues(p)[cut.j].east:
            yield holds(region_contains_path(region, tail), cut=[cut.i, cut.j], points="east")
        else:
            outside = not any(region.contains(doubled(pos)) for pos in tail.positions)
            yield holds(outside, cut=[cut.i, cut.j], points="west")


@lemma("cuts.visible-glues-make-visible-cut", "cuts",
       "a cut whose two glues are visible in P, with rays missing the seed, is visible")
def visible_glues_make_visible_cut(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    p = inst.path
    for cut in _cuts(inst):
        if glues_close_workspace(inst.system, p, cut):
            yield holds(is_visible_cut(inst.system, p, cut, budget, shortcut=False), cut=[cut.i, cut.j])


@lemma("cuts.right-priority-reaches-east", "cuts",
       "the priority path of a cut reaches at least as far east as P_{i..j+1}")
def right_priority_reaches_east(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    p = inst.path
    for cut in _cuts(inst):
        r = right_priority_path_of_cut(inst.system, p, cut, budget)
        east = p.segment(cut.i, cut.j + 1).extents.east
        yield holds(r.extents.east >= east, cut=[cut.i, cut.j], e_r=r.extents.east, e_p=east)


@lemma("cuts.right-priority-is-minimal", "cuts",
       "rebuilding a cut along its priority path gives a minimal cut, visible when the original was")
def right_priority_is_minimal(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    p, system = inst.path, inst.system
    for cut in _cuts(inst):
        q = _correct_right_path(inst, p, cut, budget)
        if q is None:
            continue
        rebuilt = is_cut(system, q, cut.i, len(q) - 2, cut.direction)
        if rebuilt is None:
            yield holds(False, cut=[cut.i, cut.j], reason="not a cut of the rebuilt path")
            continue
        minimal = is_minimal_cut(system, q, rebuilt, budget)
        visible = not is_visible_cut(system, p, cut, budget) or is_visible_cut(system, q, rebuilt, budget)
        yield holds(minimal and visible, cut=[cut.i, cut.j], minimal=minimal, visible=visible)


@lemma("cuts.rebuilt-width", "cuts",
       "when c_i < c_j, rebuilding along the priority path does not widen P on column c_i")
def rebuilt_width(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    p, seed = inst.path, inst.system.seed
    for cut in _cuts(inst):
        if cut.c_i >= cut.c_j:
            continue
        q = _correct_right_path(inst, p, cut, budget)
        if q is None:
            continue
        before = _try(width_on_column, p, seed, cut.c_i)
        after = _try(width_on_column, q, seed, cut.c_i)
        if before is not None and after is not None:
            yield holds(after <= before, cut=[cut.i, cut.j], before=before, after=after)


@lemma("cuts.remove-end", "cuts",
       "a cut stays a cut of every prefix reaching past glue j, keeping visibility and minimality")
def remove_end(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    p, system = inst.path, inst.system
    for cut in _cuts(inst):
        if cut.j + 1 >= len(p) - 1:
            continue
        visible = is_visible_cut(system, p, cut, budget)
        minimal = is_minimal_cut(system, p, cut, budget)
        for k in range(cut.j + 1, len(p) - 1):
            q = p.prefix(k)
            kept = is_cut(system, q, cut.i, cut.j, cut.direction)
            ok = kept is not None
            if ok and visible:
                ok = is_visible_cut(system, q, kept, budget)
            if ok and minimal:
                ok = is_minimal_cut(system, q, kept, budget)
            yield holds(ok, cut=[cut.i, cut.j], prefix=k)


@lemma("cuts.inner-cut-inherits", "cuts",
       "a later glue visible from the first side on a column in [c_i, c_j] starts a cut with the same flags")
def inner_cut_inherits(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    p, system = inst.path, inst.system
    records = glues(p) if len(p) > 1 else []
    for cut in _cuts(inst):
        suffix = p.suffix(cut.i)
        for s in range(cut.i, cut.j):
            g = records[s]
            if not g.horizontal or not cut.c_i <= g.column <= cut.c_j:
                continue
            if visible_glue(suffix, system.seed, g.column, cut.first_side) != s - cut.i:
                continue
            inner = is_cut(system, p, s, cut.j, cut.direction)
            if inner is None:
                yield holds(False, cut=[cut.i, cut.j], s=s, reason="not a cut")
                continue
            visible = not is_visible_cut(system, p, cut, budget) or is_visible_cut(system, p, inner, budget)
            minimal = not is_minimal_cut(system, p, cut, budget) or is_minimal_cut(system, p, inner, budget)
            yield holds(visible and minimal, cut=[cut.i, cut.j], s=s, visible=visible, minimal=minimal)


@lemma("cuts.directed-shield", "cuts",
       "a repeated glue east of c_i inside a minimal visible cut bounds how far west the cut reaches")
def directed_shield(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    p, system = inst.path, inst.system
    records = glues(p) if len(p) > 1 else []
    for cut in _cuts(inst):
        i, k = cut.i, cut.j
        seg = p.segment(i, k + 1)
        repeats = [
            g for g in records[i + 1:k]
            if g.horizontal and g.column > cut.c_i and g.label == records[i].label
            and visible_glue(seg, system.seed, g.column, cut.first_side) == g.index - i
        ]
        if not repeats:
            continue
        if not (is_minimal_cut(system, p, cut, budget) and is_visible_cut(system, p, cut, budget)):
            continue
        west = p.segment(i + 1, k).extents.west
        for g in repeats:
            bound = p.segment(g.index + 1, k).extents.west + (cut.c_i - g.column)
            yield holds(west <= bound, cut=[i, k], j=g.index, west=west, bound=bound)


@lemma("cuts.banana", "cuts",
       "a visible cut with a well-defined priority path satisfies e - c_j < (c_i - w) + |T| + 1")
def banana(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    p, system = inst.path, inst.system
    for cut in _cuts(inst):
        if not is_visible_cut(system, p, cut, budget) or _correct_right_path(inst, p, cut, budget) is None:
            continue
        ext = p.segment(cut.i + 1, cut.j + 1).extents
        lhs = ext.east - cut.c_j
        rhs = (cut.c_i - ext.west) + system.tile_count + 1
        yield holds(lhs < rhs, cut=[cut.i, cut.j], lhs=lhs, rhs=rhs)


# spans

@lemma("spans.widths-decrease", "spans", "span widths strictly decrease and directions alternate")
def widths_decrease(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    p = inst.path
    if len(p) < 2:
        return
    for c in range(p.extents.west, p.extents.east):
        dec = _try(span_decomposition, inst.system, p, c)
        if dec is None or dec.t < 1:
            continue
        decreasing = all(a > b for a, b in zip(dec.widths, dec.widths[1:]))
        alternating = all(a is not b for a, b in zip(dec.directions, dec.directions[1:]))
        yield holds(decreasing and alternating, column=c, widths=list(dec.widths))


@lemma("spans.canonical-spans-minimum", "spans",
       "every span of a canonical path is minimum when re-checked from scratch", needs_path=False)
def canonical_spans_minimum(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    if not _finite(inst):
        return
    system = inst.system
    east = extents(terminal_assembly(system)).east
    for c in range(system.seed_extents.east + 1, east):
        try:
            p = canonical_path(system, c, False, budget)
        except NoExtremalPath:
            continue
        if p is None:
            rival = next((q for q in extremal_paths(system, budget) if is_canonical(system, q, c, budget)), None)
            yield holds(rival is None, column=c, reason="a canonical path exists but none was returned",
                        rival=rival.to_json() if rival is not None else None)
            continue
        dec = span_decomposition(system, p, c)
        if dec is None:
            yield holds(False, column=c, reason="canonical path has no span decomposition")
            continue
        yield holds(all(is_minimum_cut(system, p, s.cut, budget) for s in dec.spans()), column=c, spans=dec.t)


@lemma("spans.canonical-bound", "spans",
       "a canonical path reaching past e_seed+2|T|+1 has e_{P_0..l} <= 2c - w_seed + 3|T| + 2",
       needs_path=False, desk_scale=False)
def canonical_bound(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    if not _finite(inst):
        return
    system = inst.system
    seed, t = system.seed_extents, system.tile_count
    east = extents(terminal_assembly(system)).east
    for c in range(seed.east + t + 1, east - 1):
        p = _try(canonical_path, system, c, True, budget)
        if p is None or p.extents.east <= seed.east + 2 * t + 1:
            continue
        last = _try(last_glue_index, p, c)
        if last is None:
            continue
        reach = p.prefix(last).extents.east
        yield holds(reach <= 2 * c - seed.west + 3 * t + 2, column=c, reach=reach)


# arcs

@lemma("arcs.dominant-dichotomy", "arcs",
       "positive arcs are nested or disjoint, and dominant arcs lie north or south of each other")
def dominant_dichotomy(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    p = inst.path
    if len(p) < 2:
        return
    for c in range(p.extents.west, p.extents.east):
        arcs = arcs_of(p, c)
        if not arcs:
            continue
        ok = True
        for a, b in combinations(arcs, 2):
            nested = dominates(p, a, b) or dominates(p, b, a)
            apart = is_north_of(p, a, b) or is_north_of(p, b, a)
            ok = ok and (nested or apart)
        for a, b in combinations(dominant_arcs(p, c), 2):
            ok = ok and (is_north_of(p, a, b) or is_north_of(p, b, a))
        yield holds(ok, column=c, arcs=len(arcs))


@lemma("arcs.workspace-partition", "arcs",
       "the workspace of (m_0, |P|-2) is the east side plus the interiors, without overlap")
def workspace_partition(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    p = inst.path
    if len(p) < 3:
        return
    for c in range(p.extents.west, p.extents.east):
        for side in VerticalSide:
            dec = _try(dominant_arc_decomposition, inst.system, p, c, side)
            if dec is None:
                continue
            report = _try(check_partition, inst.system, p, dec)
            if report is not None:
                yield holds(report.holds, column=c, side=side.value,
                            mismatches=[list(pt) for pt in report.mismatches[:5]])


@lemma("arcs.next-glue-order", "arcs",
       "the next glue of an arc comes after the arc and points east")
def next_glue_order(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    p = inst.path
    if len(p) < 2 or not last_tile_easternmost(inst.system, p):
        return
    records = glues(p)
    for c in range(p.extents.west, p.extents.east):
        if not _decomposable(inst, p, c):
            continue
        for arc in arcs_of(p, c):
            k = next_glue_index(p, arc)
            if k is not None:
                yield holds(arc.i < arc.j < k and records[k].east, arc=[arc.i, arc.j], next=k)


@lemma("arcs.all-dominant-covered", "arcs",
       "every dominant arc of the decomposition's direction is one of its (m, b) pairs")
def all_dominant_covered(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    p = inst.path
    if len(p) < 3 or not last_tile_easternmost(inst.system, p):
        return
    for c in range(p.extents.west, p.extents.east):
        if not _decomposable(inst, p, c):
            continue
        for side in VerticalSide:
            dec = _try(dominant_arc_decomposition, inst.system, p, c, side)
            if dec is None:
                continue
            direction = Direction.UPWARD if side is VerticalSide.SOUTH else Direction.DOWNWARD
            pairs = set(zip(dec.mains, dec.backups))
            for arc in dominant_arcs(p, c):
                if arc.direction is direction:
                    yield holds((arc.i, arc.j) in pairs, column=c, side=side.value, arc=[arc.i, arc.j])


@lemma("arcs.weakly-dominant-link", "arcs",
       "a dominant arc sits inside one span of the same direction and is weakly dominant there")
def weakly_dominant_link(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    p = inst.path
    if len(p) < 3 or not last_tile_easternmost(inst.system, p):
        return
    for c in range(p.extents.west, p.extents.east):
        if not _decomposable(inst, p, c):
            continue
        dec = _try(span_decomposition, inst.system, p, c)
        if dec is None or dec.t < 1:
            continue
        spans = dec.spans()
        for arc in dominant_arcs(p, c):
            home = [s for s in spans if s.cut.i <= arc.i and arc.j < s.cut.j]
            if not home:
                yield holds(False, column=c, arc=[arc.i, arc.j], reason="no enclosing span")
                continue
            span = home[0]
            weak = _try(is_weakly_dominant, inst.system, p, c, span, arc)
            yield holds(bool(weak) and span.cut.direction is arc.direction, column=c, arc=[arc.i, arc.j],
                        span=[span.cut.i, span.cut.j])


# shields

def _shield_reports(inst: Instance, budget: SearchBudget):
    setup = inst.extras.get("shield")
    if not setup:
        return
    for candidate in setup["candidates"]:
        report = _try(verify_shield, inst.system, inst.path, setup["column"], setup["s"], candidate,
                      shield_col=setup.get("shield_col"), budget=budget)
        if report is not None:
            yield candidate, report


@lemma("shield.interior-in-workspace", "shield",
       "the interior of a verified shield's arc lies inside the cut's workspace")
def interior_in_workspace(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    for candidate, report in _shield_reports(inst, budget):
        q = inst.path.prefix(report.f + 1)
        direction = Direction.UPWARD if report.side is VerticalSide.SOUTH else Direction.DOWNWARD
        hole = make_hole(concat(candidate, q.suffix(report.a)), report.shield_column)
        region = cut_workspace(inst.system, q, report.s, report.f, direction)
        outside = [list(t) for t in sorted(hole.interior) if not region.contains(doubled(t))]
        yield holds(not outside, kind=report.kind.value, outside=outside[:5])


@lemma("shield.locator-consistent", "shield",
       "a full shield crosses an inner border and a half shield attaches inside an arc")
def locator_consistent(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    for _, report in _shield_reports(inst, budget):
        yield holds(not report.inconsistent, kind=report.kind.value, border=report.border_index,
                    arc=report.arc_index)


@lemma("shield.column-identities", "shield",
       "L(c) shifts with c, peaks at e_seed+3|seed|+29|T|+15 and stays above 4c-3w_seed+9|T|+11",
       needs_path=False)
def column_identities(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    system = inst.system
    sigma, t = system.seed_size, system.tile_count
    seed = system.seed_extents
    low, high = seed.east + t + 1, seed.east + 5 * t + 1
    top = shield_column(high, sigma, t, seed.east)
    yield holds(top == seed.east + 3 * sigma + 29 * t + 15, top=top)
    for c in range(low, high + 1):
        value = shield_column(c, sigma, t, seed.east)
        ok = value >= 4 * c - 3 * seed.west + 9 * t + 11 and top - value == high - c
        yield holds(ok, column=c, value=value)


# regions

@lemma("regions.membership-agreement", "regions",
       "even-odd and flood-fill membership agree on every workspace point")
def membership_agreement(inst: Instance, budget: SearchBudget) -> Iterator[Outcome]:
    for cut in _cuts(inst):
        region = workspace(inst.system, inst.path, cut)
        points = region.lattice_points()
        parity = region.contains_many(points)
        flood = region.flood_contains_many(points)
        differ = np.flatnonzero(parity != flood)
        yield holds(differ.size == 0, cut=[cut.i, cut.j], differ=[list(points[k]) for k in differ[:5]])
