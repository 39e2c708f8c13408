"""Generators for small tile systems and producible paths, and the statement-check registry.

Checks are registered with the ``lemma`` decorator and run over instances: a
system alone, or a system with one of its producible paths. Each check yields
outcomes; an outcome whose hypothesis fails is counted apart so vacuous
suites stay visible.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Type

import numpy as np
from pydantic import BaseModel, Field

from app.config import settings
from app.core.assembly import (
    Finite, TileSystem, cached_classification, describe_system, terminal_assembly, validate_system,
)
from app.core.exceptions import (
    ColumnOutOfRange, ColumnOutOfWindow, ConfigTooLarge, NoExtremalPath, NoGlueOnColumn, NotAShield, NoVisibleGlue,
    PreconditionViolated, SearchBudgetExceeded, SystemStateError, TamError, TooShort, UnknownLemma,
)
from app.core.models import SeedTileDescription, SystemDescription, TileDescription
from app.core.paths import Path, Step, gamma_neighbours, path_from_json, producible_starts
from app.core.search import SearchBudget, budget_of

logger = logging.getLogger(__name__)

SIDE_NAMES = ("north", "east", "south", "west")

# errors meaning a hypothesis does not hold on the instance
UNMET: Tuple[Type[TamError], ...] = (
    PreconditionViolated, SystemStateError, ColumnOutOfRange, ColumnOutOfWindow, NoGlueOnColumn, NoVisibleGlue,
    NoExtremalPath, NotAShield, TooShort,
)


class GeneratorConfig(BaseModel):
    min_tiles: int = Field(1, ge=1, description="Smallest |T|")
    max_tiles: int = Field(2, ge=1, description="Largest |T|")
    alphabet_size: int = Field(2, ge=1, description="Number of glue labels")
    seed_size: int = Field(1, ge=1, description="Seed tiles, laid out as a row")
    samples: int = Field(default_factory=lambda: settings.VERIFY_SAMPLES, ge=0)
    rng_seed: int = Field(default_factory=lambda: settings.RNG_SEED)
    exhaustive: bool = False
    reduce_labels: bool = Field(True, description="Exhaustive mode keeps one system per renaming of glue labels")


def _glue_choices(alphabet_size: int) -> List[Tuple[str, int]]:
    labels = [chr(ord("a") + k) for k in range(alphabet_size)]
    return [("", 0)] + [(label, 1) for label in labels]


def _build(sides: List[Tuple[str, int]], tile_count: int, seed_size: int) -> TileSystem:
    tiles = [
        TileDescription(name=f"t{k}", **dict(zip(SIDE_NAMES, sides[4 * k:4 * k + 4])))
        for k in range(tile_count)
    ]
    # the seed row reuses t0; extra seed tiles only need to be present
    seed = [SeedTileDescription(x=-k, y=0, tile="t0") for k in range(seed_size)]
    return validate_system(SystemDescription(tiles=tiles, seed=seed))


def _first_use_ordered(picks: Sequence[int]) -> bool:
    """Whether labels first appear in alphabet order; 0 is the empty glue."""
    highest = 0
    for k in picks:
        if k > highest + 1:
            return False
        highest = max(highest, k)
    return True


def generate_systems(cfg: GeneratorConfig) -> Iterator[TileSystem]:
    """Every glue assignment up to renaming labels (exhaustive) or ``cfg.samples`` random ones, in a fixed order."""
    choices = _glue_choices(cfg.alphabet_size)
    if cfg.exhaustive:
        if cfg.max_tiles > settings.EXHAUSTIVE_MAX_TILES or cfg.alphabet_size > settings.EXHAUSTIVE_MAX_GLUES:
            raise ConfigTooLarge(
                f"exhaustive mode is limited to {settings.EXHAUSTIVE_MAX_TILES} tiles "
                f"and {settings.EXHAUSTIVE_MAX_GLUES} glue labels",
                max_tiles=cfg.max_tiles, alphabet_size=cfg.alphabet_size,
            )
        for n in range(cfg.min_tiles, cfg.max_tiles + 1):
            for picks in itertools.product(range(len(choices)), repeat=4 * n):
                if cfg.reduce_labels and not _first_use_ordered(picks):
                    continue
                yield _build([choices[k] for k in picks], n, cfg.seed_size)
        return
    rng = np.random.default_rng(cfg.rng_seed)
    for _ in range(cfg.samples):
        n = int(rng.integers(cfg.min_tiles, cfg.max_tiles + 1))
        picks = rng.integers(0, len(choices), size=4 * n)
        yield _build([choices[int(k)] for k in picks], n, cfg.seed_size)


def enumerate_producible_paths(system: TileSystem, max_len: int,
                               budget: "Optional[SearchBudget | int]" = None) -> Iterator[Path]:
    """Every producible path with at most ``max_len`` tiles, each once, depth first."""
    if max_len <= 0:
        return
    budget = budget_of(budget, "enumerate_producible_paths")
    gamma = terminal_assembly(system)
    stack: List[Tuple[Step, ...]] = [(s,) for s in reversed(producible_starts(system, gamma))]
    while stack:
        prefix = stack.pop()
        budget.tick()
        yield Path(prefix)
        if len(prefix) == max_len:
            continue
        used = {s.pos for s in prefix}
        children = [n for n in gamma_neighbours(gamma, prefix[-1]) if n.pos not in used and n.pos not in system.seed]
        stack.extend((prefix + (n,) for n in reversed(children)))


@dataclass(frozen=True)
class Instance:
    system: TileSystem
    path: Optional[Path] = None
    label: str = ""
    extras: Dict[str, Any] = field(default_factory=dict, compare=False, hash=False)

    def with_path(self, path: Path) -> "Instance":
        return Instance(self.system, path, self.label, self.extras)


@dataclass(frozen=True)
class Outcome:
    applies: bool
    holds: bool = True
    details: Dict[str, Any] = field(default_factory=dict)


SKIP = Outcome(applies=False)


def holds(ok: bool, **details: Any) -> Outcome:
    return Outcome(True, bool(ok), details)


@dataclass
class Witness:
    system: Dict[str, Any]
    path: Optional[List[Dict[str, Any]]]
    label: str
    details: Dict[str, Any]

    def to_dict(self) -> Dict[str, Any]:
        return {"system": self.system, "path": self.path, "label": self.label, "details": self.details}


@dataclass
class LemmaVerdict:
    lemma_id: str
    suite: str
    instances: int = 0
    preconditions_met: int = 0
    violations: List[Witness] = field(default_factory=list)
    desk_scale: bool = True

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def note(self) -> Optional[str]:
        if self.preconditions_met:
            return None
        return "precondition never met" if self.desk_scale else "not exercisable at this scale"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lemma": self.lemma_id,
            "suite": self.suite,
            "instances": self.instances,
            "preconditions_met": self.preconditions_met,
            "violations": [w.to_dict() for w in self.violations],
            "passed": self.passed,
            "note": self.note,
        }


CheckFn = Callable[[Instance, SearchBudget], Iterable[Outcome]]


@dataclass(frozen=True)
class LemmaCheck:
    lemma_id: str
    suite: str
    description: str
    fn: CheckFn
    needs_path: bool = True
    desk_scale: bool = True


REGISTRY: Dict[str, LemmaCheck] = {}


def lemma(lemma_id: str, suite: str, description: str, needs_path: bool = True, desk_scale: bool = True):
    def register(fn: CheckFn) -> CheckFn:
        REGISTRY[lemma_id] = LemmaCheck(lemma_id, suite, description, fn, needs_path, desk_scale)
        return fn
    return register


def registered(suite: str = "all") -> List[LemmaCheck]:
    # registration happens on import of the checks module
    from app.core import lemma_checks  # noqa: F401
    return [c for c in REGISTRY.values() if suite in ("all", c.suite)]


def get_check(lemma_id: str) -> LemmaCheck:
    for c in registered():
        if c.lemma_id == lemma_id:
            return c
    raise UnknownLemma(f"no check registered as {lemma_id!r}", lemma=lemma_id)


def _violations(check: LemmaCheck, inst: Instance, budget: SearchBudget) -> Tuple[int, List[Outcome]]:
    met, bad = 0, []
    for outcome in safely(lambda: check.fn(inst, budget)):
        if outcome.applies:
            met += 1
            if not outcome.holds:
                bad.append(outcome)
    return met, bad


def _minimise(check: LemmaCheck, inst: Instance, budget: SearchBudget) -> Tuple[Instance, Outcome]:
    """Shortest prefix of the instance path that still violates the check, re-checked."""
    for k in range(len(inst.path)):
        shorter = inst.with_path(inst.path.prefix(k))
        _, bad = _violations(check, shorter, budget)
        if bad:
            return shorter, bad[0]
    _, bad = _violations(check, inst, budget)
    return inst, bad[0]


def _witness(inst: Instance, outcome: Outcome) -> Witness:
    return Witness(
        system=describe_system(inst.system),
        path=inst.path.to_json() if inst.path is not None else None,
        label=inst.label,
        details=outcome.details,
    )


def check(lemma_id: str, scope: Iterable[Instance], budget: "Optional[SearchBudget | int]" = None) -> LemmaVerdict:
    """Evaluate one registered check on every instance it applies to."""
    entry = get_check(lemma_id)
    budget = budget_of(budget, f"check {lemma_id}")
    verdict = LemmaVerdict(lemma_id, entry.suite, desk_scale=entry.desk_scale)
    for inst in scope:
        if entry.needs_path != (inst.path is not None):
            continue
        verdict.instances += 1
        met, bad = _violations(entry, inst, budget)
        verdict.preconditions_met += met
        if bad:
            if inst.path is not None:
                inst, first = _minimise(entry, inst, budget)
            else:
                first = bad[0]
            verdict.violations.append(_witness(inst, first))
    level = logging.INFO if verdict.passed else logging.WARNING
    logger.log(level, f"{lemma_id}: {verdict.instances} instances, {verdict.preconditions_met} met, "
                      f"{len(verdict.violations)} violations")
    return verdict


def instances_for(systems: Iterable[Tuple[str, TileSystem]], max_len: Optional[int] = None,
                  budget: "Optional[SearchBudget | int]" = None) -> Iterator[Instance]:
    """One system instance per finite directed system, then one per producible path."""
    max_len = max_len if max_len is not None else settings.MAX_PATH_LENGTH
    budget = budget_of(budget, "instances_for")
    for label, system in systems:
        yield Instance(system, None, label)
        if not isinstance(cached_classification(system), Finite):
            continue
        try:
            for p in enumerate_producible_paths(system, max_len, budget):
                yield Instance(system, p, label)
        except SystemStateError as e:
            logger.debug(f"{label}: no paths ({e.message})")


def replay(witness: Dict[str, Any], lemma_id: str, budget: "Optional[SearchBudget | int]" = None) -> LemmaVerdict:
    """Re-run a check on a serialized witness."""
    system = validate_system(witness["system"])
    path = path_from_json(system, witness["path"]) if witness.get("path") else None
    return check(lemma_id, [Instance(system, path, witness.get("label", "replay"))], budget)


def safely(outcomes: Callable[[], Iterable[Outcome]]) -> Iterator[Outcome]:
    """Outcomes of a check body.

    An error in ``UNMET`` counts as the hypothesis not being met; any other
    domain error is recorded as a violation carrying the error.
    """
    try:
        yield from outcomes()
    except SearchBudgetExceeded:
        raise
    except UNMET as e:
        logger.debug(f"check skipped: {e.message}")
        yield SKIP
    except TamError as e:
        logger.warning(f"check raised {e.name}: {e.message}")
        yield holds(False, error=e.name, message=e.message)
