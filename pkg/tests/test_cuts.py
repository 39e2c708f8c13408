import pytest

from app.core.cuts import (
    Cut, all_cuts, analyze_cut, glues_close_workspace, is_branch, is_cut, is_minimal_cut, is_minimum_cut, is_visible_cut,
    right_priority_path_of_cut,
)
from app.core.exceptions import BadIndices, SearchBudgetExceeded
from app.core.fixtures import branch, chorded_loop, constructed, path_at, pump, rejoin_tail, seed_in_workspace
from app.core.harness import Instance, check
from app.core.paths import concat
from app.core.models import Direction


@pytest.fixture
def span_cut(span, span_path):
    return is_cut(span, span_path, 0, 4)


def test_span_cut(span_cut):
    assert span_cut == Cut(0, 4, Direction.UPWARD, 1, 1)
    assert span_cut.is_span


def test_not_cuts(span, span_path):
    assert is_cut(span, span_path, 2, 4) is None
    assert is_cut(span, span_path, 0, 4, Direction.DOWNWARD) is None
    with pytest.raises(BadIndices):
        is_cut(span, span_path, 4, 2)


def test_degenerate_cut(line3, line3_path):
    cut = is_cut(line3, line3_path, 0, 0)
    assert cut is not None
    assert cut.direction is Direction.UPWARD
    assert is_cut(line3, line3_path, 0, 0, Direction.DOWNWARD) is not None


def test_all_cuts(span, span_path):
    pairs = {(c.i, c.j, c.direction) for c in all_cuts(span, span_path)}
    assert (0, 4, Direction.UPWARD) in pairs
    assert not any(i == 2 for i, _, _ in pairs)


def test_span_cut_flags(span, span_path, span_cut):
    assert is_visible_cut(span, span_path, span_cut)
    assert is_visible_cut(span, span_path, span_cut, shortcut=False)
    assert right_priority_path_of_cut(span, span_path, span_cut) == span_path.segment(1, 5)
    assert is_minimal_cut(span, span_path, span_cut)
    assert is_minimum_cut(span, span_path, span_cut)
    flagged = analyze_cut(span, span_path, span_cut)
    assert (flagged.visible, flagged.minimal, flagged.minimum) == (True, True, True)
    assert flagged.to_dict()["direction"] == "upward"


def test_branches(span, span_path, span_cut):
    assert is_branch(span, span_path, span_cut, span_path.segment(1, 5))
    assert is_branch(span, span_path, span_cut, span_path.segment(1, 1))
    assert not is_branch(span, span_path, span_cut, span_path.segment(2, 5))


def test_detour_makes_cut_not_minimal():
    case = branch()
    cut = is_cut(case.system, case.path, 0, 4)
    assert cut is not None
    assert not is_minimal_cut(case.system, case.path, cut)
    assert right_priority_path_of_cut(case.system, case.path, cut) != case.path.segment(1, 5)


def test_rejoining_branch_makes_cut_not_minimum():
    case = rejoin_tail()
    cut = is_cut(case.system, case.path, 0, 5)
    assert cut.direction is Direction.UPWARD
    assert (cut.c_i, cut.c_j) == (1, 3)
    assert is_minimal_cut(case.system, case.path, cut)
    assert not is_minimum_cut(case.system, case.path, cut)


def test_seed_inside_workspace_makes_cut_not_visible():
    case = seed_in_workspace()
    cut = is_cut(case.system, case.path, 3, 5)
    assert cut.direction is Direction.UPWARD
    assert not is_visible_cut(case.system, case.path, cut)


def test_repeated_block_cut():
    case = pump()
    cut = is_cut(case.system, case.path, 18, 26)
    assert cut is not None and cut.upward
    flagged = analyze_cut(case.system, case.path, cut)
    assert flagged.visible
    assert flagged.minimal


def test_searches_respect_the_budget(span, span_path, span_cut):
    with pytest.raises(SearchBudgetExceeded):
        right_priority_path_of_cut(span, span_path, span_cut, budget=1)


CHORD_WITNESS = [(0, 0), (1, 0), (1, 1), (1, 2), (2, 2)]
BRANCH_WITNESS = [(1, 0), (2, 0), (2, 1), (2, 2), (3, 2)]


@pytest.mark.parametrize("build, positions, member", [
    (chorded_loop, CHORD_WITNESS, ((1, 0), (2, 0), (2, 1), (2, 2), (1, 2))),
    (branch, BRANCH_WITNESS, ((2, 0), (3, 0), (3, 1), (3, 2), (2, 2))),
])
def test_priority_member_ends_across_the_ray(build, positions, member):
    system = build().system
    p = path_at(system, positions)
    cut = is_cut(system, p, 0, 3)
    assert cut is not None and cut.upward
    r = right_priority_path_of_cut(system, p, cut)
    assert r.positions == member
    assert not is_minimal_cut(system, p, cut)

    q = concat(p.prefix(0), r)
    rebuilt = is_cut(system, q, 0, len(q) - 2, Direction.UPWARD)
    assert rebuilt is not None
    assert is_minimal_cut(system, q, rebuilt)
    verdict = check("cuts.right-priority-is-minimal", [Instance(system, p)])
    assert verdict.preconditions_met >= 1
    assert verdict.passed


def test_priority_member_exists_for_every_cut():
    for case in constructed():
        for cut in all_cuts(case.system, case.path):
            r = right_priority_path_of_cut(case.system, case.path, cut)
            assert r[0] == case.path[cut.i + 1]


def test_anchor_bond_blocks_the_visibility_shortcut():
    case = seed_in_workspace()
    p = path_at(case.system, [(2, -2), (1, -2), (1, -1), (1, 0), (2, 0), (2, -1), (3, -1)])
    cut = is_cut(case.system, p, 3, 5, Direction.DOWNWARD)
    assert cut is not None
    # both glues are visible, but the southern ray from glue 5 meets the P_0 seed bond
    assert not glues_close_workspace(case.system, p, cut)
    assert not is_visible_cut(case.system, p, cut)
    assert not is_visible_cut(case.system, p, cut, shortcut=False)
    assert check("cuts.visible-glues-make-visible-cut", [Instance(case.system, p)]).passed
