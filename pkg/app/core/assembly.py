"""Temperature-1 tile systems: validation, attachment, saturation and classification.

A tile of type ``A`` may attach next to an assembly when one of its sides faces
an occupied position whose facing glue carries the same label, both strengths
being at least 1. Saturation grows the seed round by round in a deterministic
scan order and reports the first conflict it meets, so a finite outcome is the
unique terminal assembly of a directed system.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, ValidationError

from app.config import settings
from app.core.exceptions import (
    BadStrength, ConflictingOverlap, DisconnectedSeed, DisjointUnbound, DuplicateTileName,
    EmptyAssembly, OccupiedPosition, SearchBudgetExceeded, SystemNotDirected, SystemNotFinite,
    UnknownSeedTile, UsageError,
)
from app.core.lattice import SIDES, Pos, Side, neighbors
from app.core.models import SystemDescription

logger = logging.getLogger(__name__)


class GlueLabel(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: str = ""
    strength: int = 0

    def binds(self, other: "GlueLabel") -> bool:
        return self.strength >= 1 and other.strength >= 1 and self.label == other.label


NULL_GLUE = GlueLabel()


class TileType(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    north: GlueLabel = NULL_GLUE
    east: GlueLabel = NULL_GLUE
    south: GlueLabel = NULL_GLUE
    west: GlueLabel = NULL_GLUE

    def glue(self, side: Side) -> GlueLabel:
        return getattr(self, side.value)

    def binds_towards(self, side: Side, other: "TileType") -> bool:
        """True when ``other`` placed on ``side`` of this tile is glued to it."""
        return self.glue(side).binds(other.glue(side.opposite))


class Assembly:
    """Immutable map from lattice positions to tile types."""

    __slots__ = ("_tiles", "_hash")

    def __init__(self, tiles: Union[Mapping[Pos, TileType], Iterable[Tuple[Pos, TileType]]] = ()):
        self._tiles: Dict[Pos, TileType] = dict(tiles)
        self._hash: Optional[int] = None

    def __contains__(self, pos: object) -> bool:
        return pos in self._tiles

    def __getitem__(self, pos: Pos) -> TileType:
        return self._tiles[pos]

    def __len__(self) -> int:
        return len(self._tiles)

    def __iter__(self) -> Iterator[Pos]:
        return iter(self._tiles)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Assembly) and self._tiles == other._tiles

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._tiles.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{p}:{t.name}" for p, t in sorted(self._tiles.items(), key=lambda kv: (kv[0][1], kv[0][0])))
        return f"Assembly({body})"

    def get(self, pos: Pos) -> Optional[TileType]:
        return self._tiles.get(pos)

    def items(self):
        return self._tiles.items()

    @property
    def positions(self) -> FrozenSet[Pos]:
        return frozenset(self._tiles)

    def with_tile(self, pos: Pos, tile: TileType) -> "Assembly":
        tiles = dict(self._tiles)
        tiles[pos] = tile
        return Assembly(tiles)

    def is_subassembly_of(self, other: "Assembly") -> bool:
        return all(other.get(p) == t for p, t in self._tiles.items())

    def is_connected(self) -> bool:
        if not self._tiles:
            return False
        start = next(iter(self._tiles))
        seen = {start}
        queue = deque([start])
        while queue:
            p = queue.popleft()
            for _, q in neighbors(p):
                if q in self._tiles and q not in seen:
                    seen.add(q)
                    queue.append(q)
        return len(seen) == len(self._tiles)


@dataclass(frozen=True)
class Extents:
    east: int
    west: int
    north: int
    south: int

    @property
    def width(self) -> int:
        return self.east - self.west

    @property
    def height(self) -> int:
        return self.north - self.south

    def to_dict(self) -> Dict[str, int]:
        return {"east": self.east, "west": self.west, "north": self.north, "south": self.south,
                "width": self.width, "height": self.height}


def extents(a: Union[Assembly, Iterable[Pos]]) -> Extents:
    positions = list(a)
    if not positions:
        raise EmptyAssembly("extents of an empty assembly")
    xs = [p[0] for p in positions]
    ys = [p[1] for p in positions]
    return Extents(east=max(xs), west=min(xs), north=max(ys), south=min(ys))


@dataclass(frozen=True)
class TileSystem:
    tile_types: Tuple[TileType, ...]
    seed: Assembly
    temperature: int = 1

    @cached_property
    def by_name(self) -> Dict[str, TileType]:
        return {t.name: t for t in self.tile_types}

    @cached_property
    def _binders(self) -> Dict[Tuple[Side, str], Tuple[TileType, ...]]:
        index: Dict[Tuple[Side, str], List[TileType]] = {}
        for tile in self.tile_types:
            for side in SIDES:
                glue = tile.glue(side)
                if glue.strength >= 1:
                    index.setdefault((side, glue.label), []).append(tile)
        return {k: tuple(v) for k, v in index.items()}

    @property
    def seed_size(self) -> int:
        return len(self.seed)

    @property
    def tile_count(self) -> int:
        return len(self.tile_types)

    @cached_property
    def seed_extents(self) -> Extents:
        return extents(self.seed)

    def binders(self, side: Side, glue: GlueLabel) -> Tuple[TileType, ...]:
        """Tile types whose ``side`` glue binds ``glue``."""
        if glue.strength < 1:
            return ()
        return self._binders.get((side, glue.label), ())

    def binding_types(self, assembly: Assembly, pos: Pos) -> List[TileType]:
        """Tile types attachable at an empty ``pos``, sorted by name."""
        found: Dict[str, TileType] = {}
        for side, q in neighbors(pos):
            neighbour = assembly.get(q)
            if neighbour is None:
                continue
            for tile in self.binders(side, neighbour.glue(side.opposite)):
                found[tile.name] = tile
        return [found[name] for name in sorted(found)]


# Saturation outcomes
@dataclass(frozen=True)
class Saturated:
    assembly: Assembly
    rounds: int = 0


@dataclass(frozen=True)
class CapExceeded:
    axis: str
    position: Pos


@dataclass(frozen=True)
class Conflict:
    position: Pos
    type_a: str
    type_b: str


SaturationOutcome = Union[Saturated, CapExceeded, Conflict]


# Classification
@dataclass(frozen=True)
class Finite:
    terminal: Assembly
    extents: Extents
    kind: str = field(default="finite", init=False)


@dataclass(frozen=True)
class Infinite:
    bound_exceeded_axis: str
    kind: str = field(default="infinite", init=False)


@dataclass(frozen=True)
class NonDirected:
    position: Pos
    type_a: str
    type_b: str
    kind: str = field(default="non-directed", init=False)


Classification = Union[Finite, Infinite, NonDirected]


def validate_system(description: Union[Mapping[str, Any], SystemDescription]) -> TileSystem:
    """Build a TileSystem from its JSON description.

    Glues are ``[label, strength]`` pairs; a missing side is the null glue.
    """
    try:
        desc = description if isinstance(description, SystemDescription) else SystemDescription.model_validate(description)
    except ValidationError as e:
        raise UsageError(f"malformed tile system description: {e.errors()[0]['msg']}")

    names = set()
    tiles: List[TileType] = []
    for td in desc.tiles:
        if td.name in names:
            raise DuplicateTileName(f"tile type {td.name!r} declared twice", name=td.name)
        names.add(td.name)
        glues = {}
        for side in SIDES:
            label, strength = getattr(td, side.value)
            if strength < 0:
                raise BadStrength(f"negative strength on {td.name}.{side.value}", tile=td.name, side=side.value)
            glues[side.value] = GlueLabel(label=label, strength=strength)
        tiles.append(TileType(name=td.name, **glues))

    by_name = {t.name: t for t in tiles}
    seed_tiles: Dict[Pos, TileType] = {}
    for st in desc.seed:
        if st.tile not in by_name:
            raise UnknownSeedTile(f"seed uses undeclared tile {st.tile!r}", tile=st.tile)
        if (st.x, st.y) in seed_tiles:
            raise OccupiedPosition(f"seed position {(st.x, st.y)} given twice", position=(st.x, st.y))
        seed_tiles[(st.x, st.y)] = by_name[st.tile]

    seed = Assembly(seed_tiles)
    if not seed.is_connected():
        raise DisconnectedSeed("seed domain is empty or not edge-connected")

    system = TileSystem(tile_types=tuple(sorted(tiles, key=lambda t: t.name)), seed=seed)
    logger.debug(f"Validated system: |T|={system.tile_count}, |seed|={system.seed_size}")
    return system


def describe_system(system: TileSystem) -> Dict[str, Any]:
    """Inverse of validate_system."""
    return {
        "tiles": [
            {"name": t.name, **{s.value: [t.glue(s).label, t.glue(s).strength] for s in SIDES}}
            for t in system.tile_types
        ],
        "seed": [
            {"x": p[0], "y": p[1], "tile": t.name}
            for p, t in sorted(system.seed.items(), key=lambda kv: (kv[0][1], kv[0][0]))
        ],
    }


def attachable(assembly: Assembly, pos: Pos, tile: TileType) -> bool:
    if pos in assembly:
        raise OccupiedPosition(f"position {pos} is already occupied", position=pos)
    for side, q in neighbors(pos):
        neighbour = assembly.get(q)
        if neighbour is not None and tile.binds_towards(side, neighbour):
            return True
    return False


def union(a: Assembly, b: Assembly) -> Assembly:
    overlap = False
    for p, t in a.items():
        other = b.get(p)
        if other is None:
            continue
        if other != t:
            raise ConflictingOverlap(f"assemblies disagree at {p}", position=p)
        overlap = True
    if not overlap and not _touching_bond(a, b):
        raise DisjointUnbound("assemblies neither overlap nor bind")
    merged = dict(a.items())
    merged.update(b.items())
    return Assembly(merged)


def _touching_bond(a: Assembly, b: Assembly) -> bool:
    for p, t in a.items():
        for side, q in neighbors(p):
            other = b.get(q)
            if other is not None and t.binds_towards(side, other):
                return True
    return False


def is_terminal(system: TileSystem, a: Assembly) -> bool:
    for p in _frontier(a):
        if system.binding_types(a, p):
            return False
    return True


def _frontier(a: Assembly) -> List[Pos]:
    empty = {q for p in a for _, q in neighbors(p) if q not in a}
    return sorted(empty, key=lambda p: (p[1], p[0]))


@dataclass(frozen=True)
class _Box:
    west: int
    east: int
    south: int
    north: int

    def axis_outside(self, p: Pos) -> Optional[str]:
        if not self.west <= p[0] <= self.east:
            return "x"
        if not self.south <= p[1] <= self.north:
            return "y"
        return None


def _cap_box(system: TileSystem, cap: int) -> _Box:
    ext = system.seed_extents
    return _Box(ext.west - cap, ext.east + cap, ext.south - cap, ext.north + cap)


def rounds(system: TileSystem, cap: int, forbidden: FrozenSet[Pos] = frozenset()) -> Iterator[Union[Assembly, SaturationOutcome]]:
    """Yield the assembly after each growth round, then the final outcome."""
    if cap <= 0:
        raise UsageError("saturation cap must be positive", cap=cap)
    box = _cap_box(system, cap)
    current = system.seed
    n = 0
    yield current
    while True:
        additions: Dict[Pos, TileType] = {}
        for p in _frontier(current):
            if p in forbidden:
                continue
            candidates = system.binding_types(current, p)
            if not candidates:
                continue
            if len(candidates) > 1:
                yield Conflict(p, candidates[0].name, candidates[1].name)
                return
            axis = box.axis_outside(p)
            if axis is not None:
                yield CapExceeded(axis, p)
                return
            additions[p] = candidates[0]
        if not additions:
            yield Saturated(current, n)
            return
        tiles = dict(current.items())
        tiles.update(additions)
        current = Assembly(tiles)
        n += 1
        yield current


def _grow(system: TileSystem, cap: int, forbidden: FrozenSet[Pos] = frozenset()) -> SaturationOutcome:
    outcome: Any = None
    for outcome in rounds(system, cap, forbidden):
        pass
    return outcome


def saturate(system: TileSystem, cap: int, budget: Optional[int] = None) -> SaturationOutcome:
    """Grow the seed to its fixpoint inside the cap box.

    After the fixpoint, every placed tile is re-examined: if a neighbour could
    have been placed before it and some other type binds that neighbour toward
    it, the two types compete for the position.
    """
    outcome = _grow(system, cap)
    if not isinstance(outcome, Saturated):
        logger.debug(f"Saturation stopped early: {outcome}")
        return outcome
    hidden = _hidden_conflict(system, cap, outcome.assembly, budget if budget is not None else settings.SEARCH_BUDGET)
    return hidden or outcome


def _hidden_conflict(system: TileSystem, cap: int, grown: Assembly, budget: int) -> Optional[SaturationOutcome]:
    restricted: Dict[Pos, SaturationOutcome] = {}
    spent = 0
    for p in sorted(grown, key=lambda q: (q[1], q[0])):
        if p in system.seed:
            continue
        placed = grown[p]
        for side, q in neighbors(p):
            neighbour = grown.get(q)
            if neighbour is None:
                continue
            rivals = [t for t in system.binders(side, neighbour.glue(side.opposite)) if t != placed]
            if not rivals:
                continue
            if p not in restricted:
                spent += len(grown)
                if spent > budget:
                    raise SearchBudgetExceeded("hidden conflict scan exceeded its budget", budget=budget)
                restricted[p] = _grow(system, cap, frozenset({p}))
            without_p = restricted[p]
            if not isinstance(without_p, Saturated):
                return without_p
            if without_p.assembly.get(q) == neighbour:
                a, b = sorted([placed.name, rivals[0].name])
                return Conflict(p, a, b)
    return None


def classification_cap(system: TileSystem) -> int:
    return 7 * system.seed_size + 58 * system.tile_count + 30


def classify(system: TileSystem) -> Classification:
    cap = classification_cap(system)
    outcome = saturate(system, cap)
    if isinstance(outcome, CapExceeded):
        result: Classification = Infinite(outcome.axis)
    elif isinstance(outcome, Conflict):
        result = NonDirected(outcome.position, outcome.type_a, outcome.type_b)
    else:
        result = Finite(outcome.assembly, extents(outcome.assembly))
    logger.info(f"Classified system (cap={cap}): {result.kind}")
    return result


@lru_cache(maxsize=256)
def cached_classification(system: TileSystem) -> Classification:
    return classify(system)


def terminal_assembly(system: TileSystem) -> Assembly:
    """The unique terminal assembly of a finite directed system."""
    result = cached_classification(system)
    if isinstance(result, Infinite):
        raise SystemNotFinite("system grows beyond the classification bound", axis=result.bound_exceeded_axis)
    if isinstance(result, NonDirected):
        raise SystemNotDirected("system is not directed", position=result.position,
                                types=[result.type_a, result.type_b])
    return result.terminal


@dataclass
class OracleResult:
    terminals: List[Assembly]
    disagreement: Optional[Tuple[Pos, str, str]]
    escaped: bool
    truncated: bool
    states: int

    @property
    def complete(self) -> bool:
        return not self.truncated and not self.escaped


def explore_producible_assemblies(system: TileSystem, max_states: Optional[int] = None,
                                  cap: Optional[int] = None) -> OracleResult:
    """Breadth-first search over single-tile attachments from the seed."""
    max_states = max_states if max_states is not None else settings.BFS_MAX_STATES
    box = _cap_box(system, cap if cap is not None else classification_cap(system))
    seen = {system.seed}
    queue = deque([system.seed])
    placed: Dict[Pos, str] = {}
    disagreement: Optional[Tuple[Pos, str, str]] = None
    terminals: List[Assembly] = []
    escaped = False
    truncated = False

    while queue:
        state = queue.popleft()
        grew = False
        for p in _frontier(state):
            for tile in system.binding_types(state, p):
                if box.axis_outside(p) is not None:
                    escaped = True
                    grew = True
                    continue
                grew = True
                prior = placed.setdefault(p, tile.name)
                if prior != tile.name and disagreement is None:
                    a, b = sorted([prior, tile.name])
                    disagreement = (p, a, b)
                nxt = state.with_tile(p, tile)
                if nxt in seen:
                    continue
                if len(seen) >= max_states:
                    truncated = True
                    continue
                seen.add(nxt)
                queue.append(nxt)
        if not grew:
            terminals.append(state)

    logger.debug(f"Oracle explored {len(seen)} states (truncated={truncated}, escaped={escaped})")
    return OracleResult(terminals, disagreement, escaped, truncated, len(seen))
