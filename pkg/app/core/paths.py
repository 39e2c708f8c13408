"""Paths of tiles: construction, membership in the terminal assembly, and priority order.

A path is a self-avoiding sequence of tiles where each consecutive pair abuts
and binds. Right-priority compares two paths at their first divergence using
the clockwise frame of the incoming step.
"""
import logging
from dataclasses import asdict, dataclass
from functools import cached_property
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from app.core.assembly import Assembly, Extents, TileSystem, TileType, extents, terminal_assembly
from app.core.exceptions import (
    BadIndex, BadPrefix, EmptySet, Intersection, MixedOrigins, NoBond, NonAdjacentStep, NonBindingStep,
    PreconditionViolated, RepeatedPosition, TooShort, UsageError,
)
from app.core.lattice import Pos, Vec, add, clockwise_frame, neighbors, side_towards, sub
from app.core.models import PathStep, Priority, Turn

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Step:
    pos: Pos
    tile: TileType

    @property
    def x(self) -> int:
        return self.pos[0]

    @property
    def y(self) -> int:
        return self.pos[1]

    def binds(self, other: "Step") -> bool:
        side = side_towards(self.pos, other.pos)
        return side is not None and self.tile.binds_towards(side, other.tile)


class Path:
    """A validated path. Build with make_path, concat, translate or reverse."""

    def __init__(self, steps: Tuple[Step, ...]):
        self.steps = steps

    def __len__(self) -> int:
        return len(self.steps)

    def __getitem__(self, i: int) -> Step:
        return self.steps[i]

    def __iter__(self) -> Iterator[Step]:
        return iter(self.steps)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Path) and self.steps == other.steps

    def __hash__(self) -> int:
        return hash(self.steps)

    def __repr__(self) -> str:
        return "Path(" + " ".join(f"{s.pos}{s.tile.name}" for s in self.steps) + ")"

    @cached_property
    def positions(self) -> Tuple[Pos, ...]:
        return tuple(s.pos for s in self.steps)

    @cached_property
    def position_set(self) -> frozenset:
        return frozenset(self.positions)

    @cached_property
    def index_of(self) -> Dict[Pos, int]:
        return {p: i for i, p in enumerate(self.positions)}

    @cached_property
    def extents(self) -> Extents:
        return extents(self.positions)

    @property
    def last(self) -> Step:
        return self.steps[-1]

    def _check_index(self, i: int) -> None:
        if not 0 <= i < len(self.steps):
            raise BadIndex(f"index {i} outside path of length {len(self.steps)}", index=i, length=len(self.steps))

    def segment(self, i: int, j: int) -> "Path":
        """P_{i..j}, both ends included."""
        self._check_index(i)
        self._check_index(j)
        if j < i:
            raise BadIndex(f"empty segment ({i}, {j})", index=i)
        return Path(self.steps[i:j + 1])

    def prefix(self, k: int) -> "Path":
        """P_{0..k}."""
        return self.segment(0, k)

    def suffix(self, i: int) -> "Path":
        """P_{i..|P|-1}."""
        return self.segment(i, len(self.steps) - 1)

    def as_assembly(self) -> Assembly:
        return Assembly((s.pos, s.tile) for s in self.steps)

    def to_json(self) -> List[Dict[str, Any]]:
        return [{"x": s.x, "y": s.y, "tile": s.tile.name} for s in self.steps]


def make_path(steps: Iterable[Union[Step, Tuple[Pos, TileType]]]) -> Path:
    built = tuple(s if isinstance(s, Step) else Step(tuple(s[0]), s[1]) for s in steps)
    if not built:
        raise TooShort("a path needs at least one tile")
    seen = set()
    for i, s in enumerate(built):
        if s.pos in seen:
            raise RepeatedPosition(f"position {s.pos} repeated at index {i}", position=s.pos, index=i)
        seen.add(s.pos)
    for i in range(len(built) - 1):
        a, b = built[i], built[i + 1]
        if side_towards(a.pos, b.pos) is None:
            raise NonAdjacentStep(f"{a.pos} and {b.pos} do not abut", index=i)
        if not a.binds(b):
            raise NonBindingStep(f"{a.tile.name} at {a.pos} does not bind {b.tile.name} at {b.pos}", index=i)
    return Path(built)


def concat(p: Path, q: Path) -> Path:
    common = p.position_set & q.position_set
    if common:
        raise Intersection("paths share positions", positions=sorted(common))
    if not p.last.binds(q[0]):
        raise NoBond(f"{p.last.pos} does not bind {q[0].pos}")
    return Path(p.steps + q.steps)


def translate(p: Path, v: Vec) -> Path:
    return Path(tuple(Step(add(s.pos, v), s.tile) for s in p.steps))


def reverse(p: Path) -> Path:
    return make_path(reversed(p.steps))


def path_from_json(system: TileSystem, data: Sequence[Union[Mapping[str, Any], PathStep]]) -> Path:
    steps = []
    for raw in data:
        entry = raw if isinstance(raw, PathStep) else PathStep.model_validate(raw)
        tile = system.by_name.get(entry.tile)
        if tile is None:
            raise UsageError(f"path uses undeclared tile {entry.tile!r}", tile=entry.tile)
        steps.append(Step((entry.x, entry.y), tile))
    return make_path(steps)


def is_path_of_gamma(system: TileSystem, p: Path) -> bool:
    gamma = terminal_assembly(system)
    return all(gamma.get(s.pos) == s.tile for s in p)


def binds_seed(system: TileSystem, step: Step) -> bool:
    for side, q in neighbors(step.pos):
        seed_tile = system.seed.get(q)
        if seed_tile is not None and step.tile.binds_towards(side, seed_tile):
            return True
    return False


def is_producible_path(system: TileSystem, p: Path) -> bool:
    if not is_path_of_gamma(system, p):
        return False
    if any(s.pos in system.seed for s in p):
        return False
    return binds_seed(system, p[0])


def turn_of(prefix: Path, candidate_next: Pos, reference_next: Pos) -> Turn:
    """Where ``candidate_next`` lies relative to ``reference_next`` after the prefix."""
    i = len(prefix) - 1
    if i < 1:
        raise BadPrefix("turns need a prefix of at least two tiles")
    here = prefix[i].pos
    frame = clockwise_frame(sub(prefix[i - 1].pos, here))
    try:
        a = frame.index(sub(candidate_next, here))
        b = frame.index(sub(reference_next, here))
    except ValueError:
        raise BadPrefix("next positions must be fresh neighbours of the last tile")
    if a == b:
        return Turn.SAME
    return Turn.RIGHT_OF if a > b else Turn.LEFT_OF


def _priority(p: Path, q: Path, right: bool) -> Priority:
    if p[0].pos != q[0].pos or (len(p) > 1 and len(q) > 1 and p[1].pos != q[1].pos):
        raise PreconditionViolated("priority needs paths sharing their first two positions")
    n = 0
    limit = min(len(p), len(q))
    while n < limit and p[n] == q[n]:
        n += 1
    if n == len(p) and n == len(q):
        return Priority.EQUAL
    if n == len(p):
        return Priority.P_FIRST
    if n == len(q):
        return Priority.Q_FIRST
    if p[n].pos == q[n].pos:
        return Priority.P_FIRST if p[n].tile.name < q[n].tile.name else Priority.Q_FIRST
    turn = turn_of(p.prefix(n - 1), p[n].pos, q[n].pos)
    wins = Turn.RIGHT_OF if right else Turn.LEFT_OF
    return Priority.P_FIRST if turn is wins else Priority.Q_FIRST


def right_priority(p: Path, q: Path) -> Priority:
    return _priority(p, q, right=True)


def left_priority(p: Path, q: Path) -> Priority:
    return _priority(p, q, right=False)


def right_priority_of_set(paths: Iterable[Path], right: bool = True) -> Path:
    """The member with priority over every other member (left-priority when ``right`` is False)."""
    members = list(paths)
    if not members:
        raise EmptySet("priority of an empty set")
    head = members[0]
    for m in members[1:]:
        if m[0].pos != head[0].pos or (len(m) > 1 and len(head) > 1 and m[1].pos != head[1].pos):
            raise MixedOrigins("paths do not share their first two positions")
    best = head
    for m in members[1:]:
        if _priority(m, best, right) is Priority.P_FIRST:
            best = m
    return best


def left_priority_of_set(paths: Iterable[Path]) -> Path:
    return right_priority_of_set(paths, right=False)


@dataclass(frozen=True)
class PathClass:
    in_paths_of_gamma: bool
    producible: bool
    extremal: bool
    last_tile_easternmost: bool
    last_tile_westernmost: bool

    def to_dict(self) -> Dict[str, bool]:
        return asdict(self)


def last_tile_easternmost(system: TileSystem, p: Path) -> bool:
    column = max(system.seed_extents.east, p.extents.east)
    return _unique_last_on_column(system, p, column)


def last_tile_westernmost(system: TileSystem, p: Path) -> bool:
    column = min(system.seed_extents.west, p.extents.west)
    return _unique_last_on_column(system, p, column)


def _unique_last_on_column(system: TileSystem, p: Path, column: int) -> bool:
    if p.last.x != column:
        return False
    others = sum(1 for s in p.steps[:-1] if s.x == column)
    others += sum(1 for pos in system.seed if pos[0] == column)
    return others == 0


def classify_path(system: TileSystem, p: Path) -> PathClass:
    gamma = terminal_assembly(system)
    in_gamma = is_path_of_gamma(system, p)
    producible = in_gamma and is_producible_path(system, p)
    east = last_tile_easternmost(system, p)
    extremal = producible and east and p.extents.east == extents(gamma).east
    return PathClass(
        in_paths_of_gamma=in_gamma,
        producible=producible,
        extremal=extremal,
        last_tile_easternmost=east,
        last_tile_westernmost=last_tile_westernmost(system, p),
    )


def is_extremal(system: TileSystem, p: Path) -> bool:
    return classify_path(system, p).extremal


def gamma_neighbours(gamma: Assembly, step: Step) -> Iterator[Step]:
    """Tiles of gamma bound to ``step``, in north/east/south/west order."""
    for side, q in neighbors(step.pos):
        tile = gamma.get(q)
        if tile is not None and step.tile.binds_towards(side, tile):
            yield Step(q, tile)


def producible_starts(system: TileSystem, gamma: Optional[Assembly] = None) -> List[Step]:
    """Tiles of gamma outside the seed that bind a seed tile, sorted by (y, x)."""
    gamma = gamma if gamma is not None else terminal_assembly(system)
    starts = []
    for pos, tile in gamma.items():
        if pos in system.seed:
            continue
        step = Step(pos, tile)
        if binds_seed(system, step):
            starts.append(step)
    return sorted(starts, key=lambda s: (s.y, s.x))


def by_priority(prev: Pos, here: Pos, candidates: Iterable[Step], right: bool = True) -> List[Step]:
    """Successors of ``here`` from highest to lowest priority, ties broken by tile name."""
    rank = {v: k for k, v in enumerate(clockwise_frame(sub(prev, here)))}

    def key(s: Step) -> Tuple[int, str]:
        k = rank[sub(s.pos, here)]
        return (-k if right else k, s.tile.name)

    return sorted((s for s in candidates if sub(s.pos, here) in rank), key=key)
