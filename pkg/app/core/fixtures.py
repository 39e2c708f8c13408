"""Shipped fixture files and hand-built systems.

Constructed systems come from ``tree_system``: every bond gets its own glue
label unless one is given, so the terminal assembly is exactly the bonded
tiles and the path through them is the only way to grow it.
"""
import json
import logging
import os
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from app.config import settings
from app.core.assembly import TileSystem, terminal_assembly, validate_system
from app.core.exceptions import SystemDefinitionError, UsageError
from app.core.harness import Instance, instances_for
from app.core.lattice import Pos, side_towards
from app.core.models import SeedTileDescription, SystemDescription, TileDescription
from app.core.paths import Path, make_path

logger = logging.getLogger(__name__)

SHIPPED = ("FIX-RAY", "FIX-LINE3", "FIX-CONFLICT", "FIX-SPAN", "FIX-ZIGZAG")

Bond = Union[Tuple[Pos, Pos], Tuple[Pos, Pos, str]]


def fixture_path(name: str) -> str:
    return os.path.join(settings.FIXTURES_DIR, f"{name}.json")


def load_description(name: str) -> Dict[str, Any]:
    path = name if name.endswith(".json") else fixture_path(name)
    if not os.path.exists(path) and os.path.basename(path) == name:
        # bare file names fall back to the fixtures directory
        path = os.path.join(settings.FIXTURES_DIR, name)
    if not os.path.exists(path):
        raise UsageError(f"no tile-system file at {path}", path=path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise UsageError(f"{path} is not valid JSON: {e.msg}", path=path, line=e.lineno)


def load_fixture(name: str) -> TileSystem:
    """A shipped fixture by name (``FIX-SPAN``) or any tile-system file path."""
    return validate_system(load_description(name))


def _name(pos: Pos, prefix: str) -> str:
    return f"{prefix}{pos[0]}_{pos[1]}"


def tree_system(seed: Sequence[Pos], bonds: Sequence[Bond], names: Optional[Mapping[Pos, str]] = None) -> TileSystem:
    """A system whose tiles sit at the bonded positions.

    Tiles default to one type per position (``t{x}_{y}``, seed ``s{x}_{y}``);
    ``names`` lets positions share a type, whose sides are then merged.
    """
    names = dict(names or {})
    seed_set = set(seed)
    sides: Dict[str, Dict[str, Tuple[str, int]]] = {}

    def type_of(pos: Pos) -> str:
        name = names.get(pos) or _name(pos, "s" if pos in seed_set else "t")
        sides.setdefault(name, {})
        return name

    def put(name: str, side: str, label: str) -> None:
        prior = sides[name].get(side)
        if prior is not None and prior[0] != label:
            raise SystemDefinitionError(f"type {name} gets two {side} glues", tile=name, labels=[prior[0], label])
        sides[name][side] = (label, 1)

    for pos in seed:
        type_of(pos)
    for k, bond in enumerate(bonds):
        a, b = bond[0], bond[1]
        label = bond[2] if len(bond) > 2 else f"g{k}"
        side = side_towards(a, b)
        if side is None:
            raise SystemDefinitionError(f"{a} and {b} do not abut", a=a, b=b)
        put(type_of(a), side.value, label)
        put(type_of(b), side.opposite.value, label)

    tiles = [TileDescription(name=n, **s) for n, s in sorted(sides.items())]
    seed_tiles = [SeedTileDescription(x=x, y=y, tile=type_of((x, y))) for x, y in seed]
    return validate_system(SystemDescription(tiles=tiles, seed=seed_tiles))


def chain(positions: Sequence[Pos]) -> List[Tuple[Pos, Pos]]:
    return list(zip(positions, positions[1:]))


def path_at(system: TileSystem, positions: Sequence[Pos]) -> Path:
    """The path of the terminal assembly through ``positions``."""
    gamma = terminal_assembly(system)
    return make_path((pos, gamma[pos]) for pos in positions)


@dataclass(frozen=True)
class Constructed:
    name: str
    system: TileSystem
    path: Path
    extras: Dict[str, Any] = field(default_factory=dict, compare=False, hash=False)

    def instance(self) -> Instance:
        return Instance(self.system, self.path, self.name, self.extras)


LOOP = [(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2)]


def loop() -> Constructed:
    """A path closing a hole with one interior tile on column 0."""
    system = tree_system([(-1, 0)], chain([(-1, 0)] + LOOP))
    return Constructed("loop", system, path_at(system, LOOP))


def chorded_loop() -> Constructed:
    """The loop with a chord through its interior tile."""
    system = tree_system([(-1, 0)], chain([(-1, 0)] + LOOP) + [((1, 0), (1, 1)), ((1, 1), (1, 2))])
    return Constructed("chorded-loop", system, path_at(system, LOOP))


def branch() -> Constructed:
    """Cut (0, 4) has an eastern detour, so it is not minimal."""
    p = [(1, 0), (2, 0), (2, 1), (2, 2), (2, 3), (3, 3)]
    detour = [((2, 0), (3, 0)), ((3, 0), (3, 1)), ((3, 1), (3, 2)), ((3, 2), (2, 2))]
    system = tree_system([(0, 0)], chain([(0, 0)] + p) + detour)
    return Constructed("branch", system, path_at(system, p))


def rejoin_tail() -> Constructed:
    """Cut (0, 5) is minimal; a branch rejoining the tail makes it not minimum."""
    p = [(1, 0), (2, 0), (2, 1), (2, 2), (3, 2), (3, 1), (4, 1), (5, 1)]
    detour = [((3, 1), (3, 0)), ((3, 0), (4, 0)), ((4, 0), (4, 1))]
    system = tree_system([(0, 0)], chain([(0, 0)] + p) + detour)
    return Constructed("rejoin-tail", system, path_at(system, p))


def seed_in_workspace() -> Constructed:
    """Cut (3, 5) encloses part of the seed, and a branch binds it, so the cut is not visible."""
    seed = [(3, -2), (4, -2)]
    p = [(2, -2), (1, -2), (1, -1), (1, 0), (2, 0), (3, 0), (4, 0)]
    extra = [((2, 0), (2, -1)), ((2, -1), (3, -1)), ((3, -1), (3, -2))]
    system = tree_system(seed, chain([(3, -2)] + p) + extra)
    return Constructed("seed-in-workspace", system, path_at(system, p))


SHIELD_PATH = [(1, 0), (2, 0), (2, 1), (1, 1), (0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (3, 3), (4, 3), (5, 3)]
FULL_SHIELD = [(5, 2), (4, 2), (3, 2), (2, 2), (1, 2)]
HALF_SHIELD = [(5, 1), (4, 1), (3, 1)]


def shield() -> Constructed:
    """A path wrapping around column 1 with two shields for shield column 4.

    The full shield hangs off P_7 and crosses the inner border; the half
    shield hangs off P_2 inside the first arc.
    """
    bonds = chain([(0, 0)] + SHIELD_PATH)
    bonds += chain(FULL_SHIELD) + [((1, 2), (1, 3))]
    bonds += chain(HALF_SHIELD) + [((3, 1), (2, 1))]
    system = tree_system([(0, 0)], bonds)
    candidates = [path_at(system, FULL_SHIELD), path_at(system, HALF_SHIELD)]
    extras = {"shield": {"column": 1, "s": 0, "shield_col": 4, "candidates": candidates}}
    return Constructed("shield", system, path_at(system, SHIELD_PATH), extras)


PUMP_PATH = [
    (0, -1), (1, -1), (2, -1), (3, -1), (4, -1), (5, -1), (6, -1), (7, -1), (7, 0), (7, 1), (6, 1), (6, 2),
    (5, 2), (4, 2), (3, 2), (2, 2), (1, 2), (1, 1), (1, 0),
    (2, 0), (2, 1), (3, 1), (3, 0), (4, 0), (4, 1), (5, 1), (5, 0), (6, 0),
]
PUMP_NAMES = {
    (1, 0): "A", (2, 0): "B", (2, 1): "C", (3, 1): "D", (3, 0): "E",
    (4, 0): "B", (4, 1): "C", (5, 1): "D", (5, 0): "E", (6, 0): "B",
}
_PUMP_LABELS = {"B": "a", "C": "b", "D": "x", "E": "y"}


def pump() -> Constructed:
    """A path that repeats the B C D E block, so glue "a" appears on columns 1, 3 and 5.

    The last B carries a north glue that finds nothing to bind at (6, 1).
    """
    bonds: List[Bond] = []
    for a, b in chain([(0, 0)] + PUMP_PATH):
        if b in PUMP_NAMES and (a in PUMP_NAMES or PUMP_NAMES[b] == "B"):
            bonds.append((a, b, _PUMP_LABELS[PUMP_NAMES[b]]))
        else:
            bonds.append((a, b))
    system = tree_system([(0, 0)], bonds, PUMP_NAMES)
    return Constructed("pump", system, path_at(system, PUMP_PATH))


CONSTRUCTED = (loop, chorded_loop, branch, rejoin_tail, seed_in_workspace, shield, pump)


def constructed() -> List[Constructed]:
    return [build() for build in CONSTRUCTED]


def fixture_systems() -> List[Tuple[str, TileSystem]]:
    shipped = [(name, load_fixture(name)) for name in SHIPPED]
    return shipped + [(c.name, c.system) for c in constructed()]


def fixture_instances(max_len: Optional[int] = None) -> Iterator[Instance]:
    """Instances over every fixture: short producible paths plus each constructed path in full."""
    limit = max_len if max_len is not None else settings.MAX_PATH_LENGTH
    yield from instances_for(fixture_systems(), limit)
    for c in constructed():
        if c.extras or len(c.path) > limit:
            yield c.instance()
