"""Cuts of a producible path and their taxonomy: visible, minimal, minimum.

An upward cut (i, j) pairs an east-pointing glue i, pseudo-visible from the
south, with a glue j visible from the north in P_{i..}; the rays from the two
glues and the subpath between them bound the workspace. Downward cuts mirror
this north/south. Existential questions are answered by exhaustive searches
over gamma inside the workspace, charged to a SearchBudget.
"""
import logging
from collections import deque
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Any, Dict, List, Optional, Set, Tuple

from app.core.assembly import TileSystem, terminal_assembly
from app.core.exceptions import BadIndices, EmptySet
from app.core.glues import cut_directions, glues, is_visible, ray_clear
from app.core.lattice import Pos
from app.core.models import Direction, VerticalSide
from app.core.paths import Path, Step, by_priority, gamma_neighbours
from app.core.regions import Region, cut_workspace, region_contains_path, step_admitted
from app.core.search import SearchBudget, budget_of

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Cut:
    i: int
    j: int
    direction: Direction
    c_i: int
    c_j: int
    visible: Optional[bool] = None
    minimal: Optional[bool] = None
    minimum: Optional[bool] = None

    @property
    def upward(self) -> bool:
        return self.direction is Direction.UPWARD

    @property
    def is_span(self) -> bool:
        return self.c_i == self.c_j

    @property
    def first_side(self) -> VerticalSide:
        """Side from which glue i is (pseudo-)visible."""
        return VerticalSide.SOUTH if self.upward else VerticalSide.NORTH

    def to_dict(self) -> Dict[str, Any]:
        return {
            "i": self.i, "j": self.j, "direction": self.direction.value,
            "c_i": self.c_i, "c_j": self.c_j,
            "visible": self.visible, "minimal": self.minimal, "minimum": self.minimum,
        }


def is_cut(system: TileSystem, p: Path, i: int, j: int, direction: Optional[Direction] = None) -> Optional[Cut]:
    if not 0 <= i <= j <= len(p) - 1:
        raise BadIndices(f"({i}, {j}) are not ordered indices of a path of length {len(p)}", i=i, j=j)
    found = cut_directions(p, system.seed, i, j)
    if direction is not None:
        found = [d for d in found if d is direction]
    if not found:
        return None
    records = glues(p)
    return Cut(i, j, found[0], records[i].column, records[j].column)


def all_cuts(system: TileSystem, p: Path) -> List[Cut]:
    cuts = []
    for i in range(len(p) - 1):
        for j in range(i, len(p) - 1):
            for d in cut_directions(p, system.seed, i, j):
                records = glues(p)
                cuts.append(Cut(i, j, d, records[i].column, records[j].column))
    return cuts


@lru_cache(maxsize=512)
def _workspace(system: TileSystem, p: Path, i: int, j: int, direction: Direction) -> Region:
    return cut_workspace(system, p, i, j, direction)


def workspace(system: TileSystem, p: Path, cut: Cut) -> Region:
    return _workspace(system, p, cut.i, cut.j, cut.direction)


def is_branch(system: TileSystem, p: Path, cut: Cut, b: Path) -> bool:
    if b[0].pos != p[cut.i + 1].pos:
        return False
    return region_contains_path(workspace(system, p, cut), b)


def _blocked(system: TileSystem, p: Path, k: int) -> Set[Pos]:
    """Positions a branch diverging after P_k may not use: the seed and P_{0..k}."""
    return set(system.seed.positions) | set(p.positions[:k + 1])


def glues_close_workspace(system: TileSystem, p: Path, cut: Cut) -> bool:
    """Both glues visible in P, with rays that miss the bond from P_0 to the seed."""
    seed, first, second = system.seed, cut.first_side, cut.first_side.opposite
    return (is_visible(p, seed, cut.i, first) and is_visible(p, seed, cut.j, second)
            and ray_clear(p, seed, cut.i, first) and ray_clear(p, seed, cut.j, second))


def is_visible_cut(system: TileSystem, p: Path, cut: Cut, budget: "Optional[SearchBudget | int]" = None,
                   shortcut: bool = True) -> bool:
    """Every branch B keeps P_{0..i}B producible.

    Both glues visible in P, with rays clear of the seed anchor, settles it at
    once unless ``shortcut`` is off. Otherwise gamma is searched from P_{i+1}
    inside the workspace for a bond leading onto the seed or onto P_{0..i}.
    """
    if shortcut and glues_close_workspace(system, p, cut):
        return True
    budget = budget_of(budget, "is_visible_cut")
    gamma = terminal_assembly(system)
    region = workspace(system, p, cut)
    blocked = _blocked(system, p, cut.i)
    start = p[cut.i + 1]
    seen = {start.pos}
    queue = deque([start])
    while queue:
        here = queue.popleft()
        budget.tick()
        for nxt in gamma_neighbours(gamma, here):
            if not step_admitted(region, here.pos, nxt.pos):
                continue
            if nxt.pos in blocked:
                logger.debug(f"Cut ({cut.i}, {cut.j}) not visible: branch reaches {nxt.pos}")
                return False
            if nxt.pos not in seen:
                seen.add(nxt.pos)
                queue.append(nxt)
    return True


def _crosses_ray(cut: Cut, ray_y: int, here: Pos, nxt: Pos) -> bool:
    """Whether the step here -> nxt crosses column c_j on the ray from glue j."""
    if here[1] != nxt[1] or min(here[0], nxt[0]) != cut.c_j:
        return False
    return here[1] >= ray_y if cut.upward else here[1] <= ray_y


def right_priority_path_of_cut(system: TileSystem, p: Path, cut: Cut,
                               budget: "Optional[SearchBudget | int]" = None) -> Path:
    """Priority member of the branch set R of the cut, without its leading P_i.

    Members start with P_iP_{i+1}, run through free tiles of gamma inside the
    workspace and end with the first step across the ray from glue j; that
    last tile may lie outside the workspace or on a taken position. Upward
    cuts take the right-priority member, downward cuts the left-priority one.
    P_{i..j+1} is always a member, so R is never empty.
    """
    budget = budget_of(budget, "right_priority_path_of_cut")
    gamma = terminal_assembly(system)
    region = workspace(system, p, cut)
    blocked = _blocked(system, p, cut.i)
    ray_y = glues(p)[cut.j].y
    right = cut.upward

    start = [p[cut.i], p[cut.i + 1]]
    if _crosses_ray(cut, ray_y, start[0].pos, start[1].pos):
        return Path(tuple(start[1:]))

    # depth first in priority order: the first finished member popped wins
    stack: List[Tuple[List[Step], bool]] = [(start, False)]
    while stack:
        prefix, finished = stack.pop()
        if finished:
            return Path(tuple(prefix[1:]))
        budget.tick()
        here = prefix[-1]
        used = {s.pos for s in prefix}
        children = []
        for nxt in by_priority(prefix[-2].pos, here.pos, gamma_neighbours(gamma, here), right):
            if nxt.pos in used:
                continue
            if _crosses_ray(cut, ray_y, here.pos, nxt.pos):
                children.append((prefix + [nxt], True))
            elif nxt.pos not in blocked and step_admitted(region, here.pos, nxt.pos):
                children.append((prefix + [nxt], False))
        stack.extend(reversed(children))
    raise EmptySet(f"cut ({cut.i}, {cut.j}) has no branch reaching glue {cut.j}", i=cut.i, j=cut.j)


def is_minimal_cut(system: TileSystem, p: Path, cut: Cut, budget: "Optional[SearchBudget | int]" = None) -> bool:
    return right_priority_path_of_cut(system, p, cut, budget) == p.segment(cut.i + 1, cut.j + 1)


def is_minimum_cut(system: TileSystem, p: Path, cut: Cut, budget: "Optional[SearchBudget | int]" = None) -> bool:
    """Minimal, and no branch leaving P_{i+1..j+1} comes back to the tail P_{j+1..}."""
    budget = budget_of(budget, "is_minimum_cut")
    if not is_minimal_cut(system, p, cut, budget):
        return False
    gamma = terminal_assembly(system)
    region = workspace(system, p, cut)
    tail = set(p.positions[cut.j + 1:])
    for k in range(cut.i + 1, cut.j + 1):
        blocked = _blocked(system, p, k)
        for n in gamma_neighbours(gamma, p[k]):
            if n.pos == p[k + 1].pos or n.pos in blocked or not step_admitted(region, p[k].pos, n.pos):
                continue
            if _reaches(gamma, region, n, blocked, tail, budget):
                logger.debug(f"Cut ({cut.i}, {cut.j}) not minimum: branch at index {k} rejoins the tail")
                return False
    return True


def _reaches(gamma, region: Region, start: Step, blocked: Set[Pos], targets: Set[Pos], budget: SearchBudget) -> bool:
    if start.pos in targets:
        return True
    seen = {start.pos}
    queue = deque([start])
    while queue:
        here = queue.popleft()
        budget.tick()
        for nxt in gamma_neighbours(gamma, here):
            if nxt.pos in seen or nxt.pos in blocked or not step_admitted(region, here.pos, nxt.pos):
                continue
            if nxt.pos in targets:
                return True
            seen.add(nxt.pos)
            queue.append(nxt)
    return False


def analyze_cut(system: TileSystem, p: Path, cut: Cut, budget: "Optional[SearchBudget | int]" = None) -> Cut:
    """The cut with its visible/minimal/minimum flags filled in."""
    budget = budget_of(budget, "analyze_cut")
    minimal = is_minimal_cut(system, p, cut, budget)
    return replace(
        cut,
        visible=is_visible_cut(system, p, cut, budget),
        minimal=minimal,
        minimum=minimal and is_minimum_cut(system, p, cut, budget),
    )
