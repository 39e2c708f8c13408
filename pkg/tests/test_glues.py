import pytest
from hypothesis import given, settings as hsettings

from app.core.assembly import Assembly
from app.core.exceptions import ColumnOutOfRange, NoGlueOnColumn, TooShort
from app.core.fixtures import path_at, seed_in_workspace
from app.core.glues import (
    anchor_rows, first_glue_index, glues, glues_on_column, is_pseudo_visible, is_visible, last_glue_index, ray_clear,
    visibility_report, visible_glue, width_on_column,
)
from app.core.models import Orientation, Pointing, VerticalSide
from app.core.paths import make_path
from tests.strategies import walk_systems

NORTH, SOUTH = VerticalSide.NORTH, VerticalSide.SOUTH


def test_line_glues(line3):
    t = line3.by_name
    p = make_path([((0, 0), t["t0"]), ((1, 0), t["t1"]), ((2, 0), t["t2"])])
    records = glues(p)
    assert [g.column for g in records] == [0, 1]
    assert all(g.points is Pointing.EAST for g in records)
    assert width_on_column(p, None, 0) == 0
    assert last_glue_index(p, 0) == 0
    with pytest.raises(NoGlueOnColumn):
        last_glue_index(p, 5)


def test_span_glues(span_path):
    records = glues(span_path)
    assert [g.orientation for g in records] == [Orientation.HORIZONTAL, Orientation.VERTICAL] * 2 + [Orientation.HORIZONTAL]
    assert [g.column for g in records] == [1, None, 1, None, 1]
    assert [g.points for g in records] == [Pointing.EAST, None, Pointing.WEST, None, Pointing.EAST]
    assert [records[k].y for k in (0, 2, 4)] == [0, 1, 2]


def test_single_tile_has_no_glue(span_path):
    with pytest.raises(TooShort):
        glues(span_path.prefix(0))


def test_span_visibility(span, span_path):
    assert visible_glue(span_path, span.seed, 1, SOUTH) == 0
    assert visible_glue(span_path, span.seed, 1, NORTH) == 4
    assert is_visible(span_path, span.seed, 4, NORTH)
    assert not is_visible(span_path, span.seed, 2, SOUTH)
    assert is_pseudo_visible(span_path, 2, SOUTH, span.seed)
    assert not is_pseudo_visible(span_path, 2, NORTH, span.seed)
    assert width_on_column(span_path, span.seed, 1) == 2
    assert last_glue_index(span_path, 1) == 4
    assert first_glue_index(span_path, 1) == 0
    assert first_glue_index(span_path.suffix(1), 1) == 1


def test_zigzag_visibility(zigzag, zigzag_path):
    assert visible_glue(zigzag_path, zigzag.seed, 0, SOUTH) == 1
    assert visible_glue(zigzag_path, zigzag.seed, 0, NORTH) == 3
    assert glues(zigzag_path)[1].points is Pointing.WEST
    assert first_glue_index(zigzag_path, 0) == 1
    assert width_on_column(zigzag_path, zigzag.seed, 0) == 1


def test_column_outside_path(span, span_path):
    with pytest.raises(ColumnOutOfRange):
        visible_glue(span_path, span.seed, 2, SOUTH)


def test_seed_glues_block_visibility(ray):
    t = ray.by_name["t"]
    p = make_path([((0, 0), t), ((1, 0), t)])
    seed = Assembly({(0, -1): t, (1, -1): t})
    assert visible_glue(p, seed, 0, SOUTH) is None
    assert visible_glue(p, seed, 0, NORTH) == 0
    # a lone seed tile on the column is not a glue
    assert visible_glue(p, Assembly({(0, -1): t}), 0, SOUTH) == 0


def test_visibility_report(span, span_path):
    (column,) = visibility_report(span_path, span.seed)
    assert (column.column, column.visible_from_south, column.visible_from_north, column.width) == (1, 0, 4, 2)


@hsettings(max_examples=50, deadline=None)
@given(walk_systems())
def test_visible_glues_are_the_extreme_glues(case):
    system, path = case
    if len(path) < 2:
        return
    for c in range(path.extents.west, path.extents.east):
        on_c = glues_on_column(path, c)
        assert on_c
        south = visible_glue(path, None, c, SOUTH)
        north = visible_glue(path, None, c, NORTH)
        assert glues(path)[south].y == min(g.y for g in on_c)
        assert glues(path)[north].y == max(g.y for g in on_c)
        assert width_on_column(path, None, c) >= 0
        assert first_glue_index(path, c) <= last_glue_index(path, c)
        assert is_pseudo_visible(path, south, SOUTH, None)


def test_anchor_bond_rays():
    case = seed_in_workspace()
    p = path_at(case.system, [(2, -2), (1, -2), (1, -1), (1, 0), (2, 0), (2, -1), (3, -1)])
    seed = case.system.seed
    # P_0 = (2, -2) binds the seed tile (3, -2) across column 2
    assert anchor_rows(p, seed, 2) == [-2]
    assert anchor_rows(p, seed, 1) == []
    assert anchor_rows(p, None, 2) == []
    assert is_visible(p, seed, 5, SOUTH)
    assert not ray_clear(p, seed, 5, SOUTH)
    assert ray_clear(p, seed, 5, NORTH)
    assert ray_clear(p, seed, 3, NORTH)
