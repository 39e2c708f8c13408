from itertools import permutations

import pytest
from hypothesis import given, settings as hsettings

from app.core.assembly import GlueLabel, TileType
from app.core.exceptions import (
    EmptySet, Intersection, MixedOrigins, NoBond, NonAdjacentStep, NonBindingStep, RepeatedPosition, TooShort,
)
from app.core.fixtures import chain, path_at, tree_system
from app.core.glues import glues
from app.core.harness import enumerate_producible_paths
from app.core.models import Priority, Turn
from app.core.paths import (
    classify_path, concat, is_extremal, is_path_of_gamma, is_producible_path, left_priority, left_priority_of_set,
    make_path, path_from_json, reverse, right_priority, right_priority_of_set, translate, turn_of,
)
from tests.strategies import walk_systems


@pytest.fixture
def line3_full(line3):
    t = line3.by_name
    return make_path([((0, 0), t["t0"]), ((1, 0), t["t1"]), ((2, 0), t["t2"])])


@pytest.fixture
def fork():
    """A line east from the seed that forks at (2, 0) north, east and south."""
    bonds = chain([(0, 0), (1, 0), (2, 0), (3, 0)]) + [((2, 0), (2, 1)), ((2, 0), (2, -1))]
    system = tree_system([(0, 0)], bonds)
    head = [(1, 0), (2, 0)]
    return {
        "system": system,
        "north": path_at(system, head + [(2, 1)]),
        "east": path_at(system, head + [(3, 0)]),
        "south": path_at(system, head + [(2, -1)]),
    }


def test_make_path(line3, ray, line3_full):
    assert len(line3_full) == 3
    t0 = line3.by_name["t0"]
    with pytest.raises(RepeatedPosition):
        make_path([((0, 0), t0), ((0, 0), t0)])
    t = ray.by_name["t"]
    with pytest.raises(NonBindingStep):
        make_path([((0, 0), t), ((0, 1), t)])
    with pytest.raises(NonAdjacentStep):
        make_path([((0, 0), t), ((2, 0), t)])
    with pytest.raises(TooShort):
        make_path([])


def test_concat(line3, line3_full):
    t = line3.by_name
    head = make_path([((0, 0), t["t0"])])
    tail = make_path([((1, 0), t["t1"]), ((2, 0), t["t2"])])
    assert concat(head, tail) == line3_full
    with pytest.raises(Intersection):
        concat(line3_full.prefix(1), tail)
    with pytest.raises(NoBond):
        concat(make_path([((2, 0), t["t2"])]), make_path([((4, 0), t["t0"])]))


def test_translate_and_reverse(line3_full):
    assert translate(line3_full, (0, 0)) == line3_full
    assert translate(line3_full, (3, 1)).positions == ((3, 1), (4, 1), (5, 1))
    backwards = reverse(line3_full)
    assert backwards.positions == ((2, 0), (1, 0), (0, 0))
    assert reverse(backwards) == line3_full


def test_segments(span_path):
    assert span_path.segment(1, 3).positions == ((2, 0), (2, 1), (1, 1))
    assert span_path.prefix(0).positions == ((1, 0),)
    assert span_path.suffix(5).positions == ((2, 2),)


def test_path_from_json_round_trip(span, span_path):
    assert path_from_json(span, span_path.to_json()) == span_path


def test_paths_of_gamma(line3, line3_full, span, span_path):
    assert is_path_of_gamma(line3, line3_full)
    assert not is_path_of_gamma(line3, make_path([((1, 0), line3.by_name["t2"])]))
    assert is_path_of_gamma(span, span_path)


def test_producible_paths(span, span_path):
    assert is_producible_path(span, span_path)
    assert not is_producible_path(span, span_path.suffix(2))
    covering = make_path([((0, 0), span.by_name["s"]), ((1, 0), span.by_name["p0"])])
    assert not is_producible_path(span, covering)


def test_turn_of(line3_full):
    eastbound = line3_full.prefix(1)
    assert turn_of(eastbound, (1, -1), (2, 0)) is Turn.RIGHT_OF
    assert turn_of(eastbound, (1, 1), (2, 0)) is Turn.LEFT_OF
    assert turn_of(eastbound, (2, 0), (2, 0)) is Turn.SAME


def test_right_priority(fork):
    south, east = fork["south"], fork["east"]
    assert right_priority(south, south) is Priority.EQUAL
    assert right_priority(south, east) is Priority.P_FIRST
    assert right_priority(east, south) is Priority.Q_FIRST
    # a strict prefix wins
    assert right_priority(east.prefix(1), east) is Priority.P_FIRST


def test_left_priority(fork):
    north, east, south = fork["north"], fork["east"], fork["south"]
    assert left_priority(north, east) is Priority.P_FIRST
    assert left_priority(south, east) is Priority.Q_FIRST
    assert left_priority(east.prefix(1), north) is Priority.P_FIRST


def test_right_priority_breaks_position_ties_by_tile_name():
    x = GlueLabel(label="x", strength=1)
    u = TileType(name="u", east=x)
    v = TileType(name="v", west=x, east=x)
    a = TileType(name="a", west=x)
    b = TileType(name="b", west=x)
    p = make_path([((0, 0), u), ((1, 0), v), ((2, 0), a)])
    q = make_path([((0, 0), u), ((1, 0), v), ((2, 0), b)])
    assert right_priority(p, q) is Priority.P_FIRST
    assert right_priority(q, p) is Priority.Q_FIRST


def test_priority_of_set_ignores_fold_order(fork):
    members = [fork["north"], fork["east"], fork["south"]]
    for order in permutations(members):
        assert right_priority_of_set(order) == fork["south"]
        assert left_priority_of_set(order) == fork["north"]
    assert right_priority_of_set([fork["east"]]) == fork["east"]


def test_priority_of_set_errors(fork, span_path):
    with pytest.raises(EmptySet):
        right_priority_of_set([])
    with pytest.raises(MixedOrigins):
        right_priority_of_set([fork["east"], span_path.suffix(1)])


def test_classify_path(line3, line3_path, span, span_path):
    full = classify_path(span, span_path)
    assert full.producible
    assert not full.last_tile_easternmost
    assert not full.extremal

    line = classify_path(line3, line3_path)
    assert line.extremal
    assert is_extremal(line3, line3_path)
    assert not is_extremal(span, span_path)

    first = classify_path(span, span_path.prefix(0))
    assert first.producible
    assert first.last_tile_easternmost


@hsettings(max_examples=40, deadline=None)
@given(walk_systems())
def test_walk_paths(case):
    system, path = case
    assert is_producible_path(system, path)
    if len(path) > 1:
        assert len(glues(path)) == len(path) - 1
    assert reverse(reverse(path)) == path
    found = list(enumerate_producible_paths(system, len(path)))
    assert [q.positions for q in found] == [path.prefix(k).positions for k in range(len(path))]
