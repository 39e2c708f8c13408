import pytest

from app.core.arcs import (
    Arc, arcs_of, check_partition, dominant_arc_decomposition, dominant_arcs, dominates, find_arcs, is_dominant,
    is_north_of, next_glue_index, shield_column, verify_shield,
)
from app.core.exceptions import ColumnOutOfWindow, NotAShield
from app.core.fixtures import shield
from app.core.models import ArcSign, Direction, ShieldKind, VerticalSide
from app.core.paths import Path, Step

UP = Direction.UPWARD


@pytest.fixture(scope="module")
def wrap():
    return shield()


def test_find_arcs(span_path):
    assert find_arcs(span_path, 1) == [
        Arc(0, 3, 1, ArcSign.POSITIVE, UP),
        Arc(2, 5, 1, ArcSign.NEGATIVE, UP),
    ]
    assert arcs_of(span_path, 1) == [Arc(0, 3, 1, ArcSign.POSITIVE, UP)]
    assert next_glue_index(span_path, arcs_of(span_path, 1)[0]) == 4


def test_line_has_no_arc(line3_path):
    assert find_arcs(line3_path, 1) == []


def test_dominance(span):
    tile = span.by_name["p0"]
    column = Path(tuple(Step((0, y), tile) for y in range(6)))
    outer = Arc(0, 5, 0, ArcSign.POSITIVE, UP)
    inner = Arc(1, 4, 0, ArcSign.POSITIVE, UP)
    low = Arc(0, 1, 0, ArcSign.POSITIVE, UP)
    high = Arc(3, 4, 0, ArcSign.POSITIVE, UP)
    assert dominates(column, outer, inner)
    assert not dominates(column, inner, outer)
    assert is_north_of(column, high, low)
    assert not is_north_of(column, low, high)


def test_dominant_arcs(span_path):
    (arc,) = arcs_of(span_path, 1)
    assert is_dominant(span_path, arc)
    assert dominant_arcs(span_path, 1) == [arc]


def test_span_arc_decomposition(span, span_path):
    dec = dominant_arc_decomposition(span, span_path, 1, VerticalSide.SOUTH)
    assert dec.mains == (0, 4)
    assert dec.backups == (3,)
    assert dec.t == 1
    assert len(dec.borders) == 3


def test_wrap_decomposition_partitions_the_workspace(wrap):
    dec = dominant_arc_decomposition(wrap.system, wrap.path, 1, VerticalSide.SOUTH)
    assert dec.mains == (0, 7)
    assert dec.backups == (3,)
    assert check_partition(wrap.system, wrap.path, dec).holds


def test_shield_column():
    assert shield_column(3, 1, 2) == 68
    with pytest.raises(ColumnOutOfWindow):
        shield_column(0, 1, 2, seed_east=0)


def test_full_shield(wrap):
    full, _ = wrap.extras["shield"]["candidates"]
    report = verify_shield(wrap.system, wrap.path, 1, 0, full, shield_col=4)
    assert report.kind is ShieldKind.FULL
    assert report.f == 10
    assert report.border_index == 1
    assert report.shield_glue == 3
    assert not report.inconsistent


def test_half_shield(wrap):
    _, half = wrap.extras["shield"]["candidates"]
    report = verify_shield(wrap.system, wrap.path, 1, 0, half, shield_col=4)
    assert report.kind is ShieldKind.HALF
    assert report.a == 2
    assert report.arc_index == 0
    assert not report.inconsistent


def test_candidate_on_the_path_is_not_a_shield(wrap):
    with pytest.raises(NotAShield) as err:
        verify_shield(wrap.system, wrap.path, 1, 0, wrap.path.segment(1, 2), shield_col=4)
    assert err.value.bullet == 1
