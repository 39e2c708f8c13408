import json

import pytest

from app.core.exceptions import NotAShield, UsageError
from app.core.fixtures import fixture_systems, shield
from app.core.services import analysis_service, exit_code_for


def test_load_system_sources(span):
    assert analysis_service.load_system("FIX-SPAN") == span
    assert analysis_service.load_system(span) is span


def test_load_path_from_document(span, span_path):
    doc = {"path": span_path.to_json(), "cuts": []}
    assert analysis_service.load_path(span, doc) == span_path
    assert analysis_service.load_path(span, None) is None
    with pytest.raises(UsageError):
        analysis_service.load_path(span, {"cuts": []})
    with pytest.raises(UsageError):
        analysis_service.load_path(span, "not a path")


def test_full_shield_report():
    wrap = shield()
    full, _ = wrap.extras["shield"]["candidates"]
    doc = analysis_service.shield(wrap.system, wrap.path, 1, 0, full.to_json(), 4)
    assert doc["kind"] == "full"
    assert doc["cut"] == [0, 10]
    assert doc["shield_glue"] == 3
    assert not doc["inconsistent"]


def test_shield_rejects_path_segment():
    wrap = shield()
    with pytest.raises(NotAShield):
        analysis_service.shield(wrap.system, wrap.path, 1, 0, wrap.path.segment(1, 2).to_json(), 4)


def test_decompose_defaults_to_canonical_path():
    doc = analysis_service.decompose("FIX-SPAN", 1)
    assert [(s["x"], s["y"]) for s in doc["path"]] == [(1, 0), (2, 0)]
    assert doc["spans"]["widths"] == []


def test_verify_writes_summary(reports_dir):
    doc = analysis_service.verify("shield.column-identities", samples=0)
    assert doc["passed"]
    summaries = list(reports_dir.glob("verify_shield_column-identities_*.json"))
    assert len(summaries) == 1
    assert json.loads(summaries[0].read_text())["suite"] == "shield.column-identities"
    assert (reports_dir / "verify_process.log").exists()


def test_verify_logs_aborted_runs(reports_dir):
    with pytest.raises(UsageError):
        analysis_service.verify("no-such-suite", samples=0)
    log = (reports_dir / "verify_process.log").read_text(encoding="utf-8")
    assert "Run terminated with exception" in log
    assert "exception_type=UsageError" in log


def test_verify_suite_selects_all_members():
    doc = analysis_service.verify("regions", samples=0)
    assert [v["lemma"] for v in doc["verdicts"]] == ["regions.membership-agreement"]


@pytest.mark.parametrize("command, doc, code", [
    ("classify", {"result": "finite"}, 0),
    ("classify", {"result": "non-directed"}, 1),
    ("verify", {"passed": False}, 1),
    ("verify", {"passed": True}, 0),
    ("cuts", {"cuts": []}, 0),
])
def test_exit_codes(command, doc, code):
    assert exit_code_for(command, doc) == code


def test_verify_exhaustive_corpus():
    doc = analysis_service.verify("assembly.size-bound", exhaustive=True, max_tiles=2, alphabet_size=3)
    (verdict,) = doc["verdicts"]
    assert doc["passed"]
    # every glue assignment on one or two tiles, up to renaming the three labels
    assert verdict["instances"] == 51 + 11051 + len(fixture_systems())


@pytest.mark.slow
def test_verify_sampled_four_tile_corpus():
    doc = analysis_service.verify("assembly.size-bound", samples=10_000, max_tiles=4)
    assert doc["passed"]
    assert doc["verdicts"][0]["instances"] == 10_000 + len(fixture_systems())
