import pytest

from app.core.assembly import describe_system
from app.core.exceptions import ConfigTooLarge, NotClosed, PreconditionViolated, UnknownLemma
from app.core.harness import (
    REGISTRY, GeneratorConfig, Instance, check, enumerate_producible_paths, generate_systems, get_check, holds,
    instances_for, lemma, registered, replay,
)

FAILING = "test.short-paths-only"


@pytest.fixture
def failing_check():
    """A check that rejects paths of three tiles or more."""

    @lemma(FAILING, "test", "paths have fewer than three tiles")
    def short_paths_only(inst, budget):
        yield holds(len(inst.path) < 3, length=len(inst.path))

    yield FAILING
    REGISTRY.pop(FAILING, None)


def test_exhaustive_single_tile():
    cfg = GeneratorConfig(min_tiles=1, max_tiles=1, alphabet_size=1, exhaustive=True)
    systems = list(generate_systems(cfg))
    # four sides, each empty or glue "a"
    assert len(systems) == 16
    assert all(s.tile_count == 1 and s.seed_size == 1 for s in systems)


def test_exhaustive_too_large():
    cfg = GeneratorConfig(min_tiles=1, max_tiles=3, exhaustive=True)
    with pytest.raises(ConfigTooLarge):
        list(generate_systems(cfg))


def test_sampling_is_deterministic():
    cfg = GeneratorConfig(samples=10, rng_seed=7)
    first = [describe_system(s) for s in generate_systems(cfg)]
    second = [describe_system(s) for s in generate_systems(cfg)]
    assert len(first) == 10
    assert first == second


def test_sampling_respects_tile_range():
    cfg = GeneratorConfig(min_tiles=2, max_tiles=2, samples=5, seed_size=2)
    for system in generate_systems(cfg):
        assert system.tile_count == 2
        assert system.seed_size == 2


def test_enumerate_line(line3):
    found = [p.positions for p in enumerate_producible_paths(line3, 3)]
    assert found == [((1, 0),), ((1, 0), (2, 0))]


def test_enumerate_span(span):
    found = list(enumerate_producible_paths(span, 6))
    assert len(found) == 6
    assert max(len(p) for p in found) == 6
    assert list(enumerate_producible_paths(span, 0)) == []


def test_instances_for(line3, ray):
    scope = list(instances_for([("line", line3), ("ray", ray)], 3))
    assert [inst.label for inst in scope] == ["line", "line", "line", "ray"]
    assert scope[0].path is None
    assert scope[-1].path is None


def test_unknown_check():
    with pytest.raises(UnknownLemma):
        get_check("visibility.no-such-statement")


def test_registry_suites():
    ids = {c.lemma_id for c in registered()}
    assert "cuts.banana" in ids
    assert {c.suite for c in registered("spans")} == {"spans"}
    assert all(c.lemma_id.startswith("arcs.") for c in registered("arcs"))


def test_empty_scope_notes():
    verdict = check("visibility.prefix-monotone", [])
    assert verdict.passed
    assert verdict.preconditions_met == 0
    assert verdict.note == "precondition never met"
    assert check("visibility.far-glues-point-east", []).note == "not exercisable at this scale"


def test_violation_minimised(failing_check, span, span_path):
    verdict = check(failing_check, [Instance(span, span_path, "span")])
    assert not verdict.passed
    assert verdict.instances == 1
    assert verdict.preconditions_met == 1
    (witness,) = verdict.violations
    assert len(witness.path) == 3
    assert witness.details == {"length": 3}
    assert witness.label == "span"


def test_replay_witness(failing_check, span, span_path):
    witness = check(failing_check, [Instance(span, span_path)]).violations[0].to_dict()
    again = replay(witness, failing_check)
    assert not again.passed
    assert again.violations[0].path == witness["path"]


def test_path_checks_skip_system_instances(failing_check, span):
    verdict = check(failing_check, [Instance(span)])
    assert verdict.instances == 0
    assert verdict.to_dict()["note"] == "precondition never met"


RAISING = "test.raises"


@pytest.fixture
def raising_check():
    """A system check that raises whatever the test hands it."""
    raised = {}

    @lemma(RAISING, "test", "never returns normally", needs_path=False)
    def raises(inst, budget):
        raise raised["error"]
        yield  # pragma: no cover

    yield raised
    REGISTRY.pop(RAISING, None)


def test_domain_errors_are_violations(raising_check, span):
    raising_check["error"] = NotClosed("no path around the hole")
    verdict = check(RAISING, [Instance(span)])
    assert not verdict.passed
    assert verdict.preconditions_met == 1
    assert verdict.violations[0].details == {"error": "NotClosed", "message": "no path around the hole"}


def test_unmet_hypotheses_skip(raising_check, span):
    raising_check["error"] = PreconditionViolated("not decomposable")
    verdict = check(RAISING, [Instance(span)])
    assert verdict.passed
    assert verdict.preconditions_met == 0


def test_exhaustive_relabeling_reduction():
    cfg = GeneratorConfig(min_tiles=1, max_tiles=1, alphabet_size=2, exhaustive=True)
    reduced = [describe_system(s) for s in generate_systems(cfg)]
    # empty, one label, or both labels in first-use order
    assert len(reduced) == 1 + 15 + 25
    assert len({repr(d) for d in reduced}) == len(reduced)
    full = list(generate_systems(cfg.model_copy(update={"reduce_labels": False})))
    assert len(full) == 3 ** 4


def test_exhaustive_corpus_size():
    cfg = GeneratorConfig(min_tiles=1, max_tiles=2, alphabet_size=3, exhaustive=True)
    assert sum(1 for _ in generate_systems(cfg)) == 51 + 11051
