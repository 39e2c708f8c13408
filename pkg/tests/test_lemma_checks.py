import pytest

from app.core.fixtures import chorded_loop, fixture_instances, loop, pump, shield
from app.core.harness import check, get_check, registered

REACHED_ON_FIXTURES = [
    "assembly.size-bound",
    "assembly.oracle-agreement",
    "assembly.saturation-monotone",
    "visibility.prefix-monotone",
    "visibility.visible-implies-pseudo",
    "visibility.single-turn-column",
    "visibility.easternmost-glues-point-east",
    "cuts.tail-placement",
    "cuts.visible-glues-make-visible-cut",
    "cuts.right-priority-is-minimal",
    "cuts.inner-cut-inherits",
    "spans.widths-decrease",
    "spans.canonical-spans-minimum",
    "arcs.dominant-dichotomy",
    "arcs.next-glue-order",
    "arcs.all-dominant-covered",
    "arcs.weakly-dominant-link",
    "shield.column-identities",
    "regions.membership-agreement",
]

DESK_SCALE = [c.lemma_id for c in registered() if c.desk_scale and c.suite != "test"]


@pytest.fixture(scope="module")
def scope():
    return list(fixture_instances())


def test_scope_covers_every_fixture(scope):
    labels = {inst.label for inst in scope}
    assert {"FIX-RAY", "FIX-SPAN", "shield", "pump"} <= labels
    assert any(inst.extras.get("shield") for inst in scope)


@pytest.mark.parametrize("lemma_id", REACHED_ON_FIXTURES)
def test_hypothesis_reached(scope, lemma_id):
    assert get_check(lemma_id).desk_scale
    verdict = check(lemma_id, scope)
    assert verdict.preconditions_met >= 1
    assert verdict.note is None


@pytest.mark.parametrize("lemma_id", DESK_SCALE)
def test_statement_holds(scope, lemma_id):
    verdict = check(lemma_id, scope)
    assert verdict.passed, verdict.to_dict()["violations"][:1]


def test_directed_shield_on_pump():
    verdict = check("cuts.directed-shield", [pump().instance()])
    assert verdict.instances == 1
    assert verdict.preconditions_met >= 1
    assert verdict.passed, verdict.to_dict()["violations"][:1]


@pytest.mark.parametrize("build", [loop, chorded_loop, pump])
def test_inner_cuts_stay_between_the_outer_columns(build):
    # glue 1 of the loop sits on column 1, east of c_j = 0 for cut (0, 5)
    verdict = check("cuts.inner-cut-inherits", [build().instance()])
    assert verdict.passed, verdict.to_dict()["violations"][:1]


@pytest.mark.parametrize("lemma_id", ["arcs.next-glue-order", "arcs.all-dominant-covered", "arcs.weakly-dominant-link"])
def test_arc_checks_meet_their_hypothesis_on_the_shield(lemma_id):
    verdict = check(lemma_id, [shield().instance()])
    assert verdict.preconditions_met >= 1
    assert verdict.passed, verdict.to_dict()["violations"][:1]


def test_shield_checks_see_the_shield_instance():
    verdict = check("shield.locator-consistent", [shield().instance()])
    assert verdict.instances == 1
    assert verdict.preconditions_met == 2
    assert verdict.passed


def test_far_statements_are_marked():
    assert not get_check("visibility.far-glues-point-east").desk_scale
    assert not get_check("paths.west-extent-bound").desk_scale
    assert not get_check("spans.canonical-bound").desk_scale
    assert not get_check("spans.canonical-bound").needs_path
    assert "arcs.next-glue-order" in DESK_SCALE
