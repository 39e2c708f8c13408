from app.core.assembly import terminal_assembly
from app.core.models import OutputFormat
from app.core.rendering import glue_table, render, render_ascii, render_json, render_svg, verdict_table


def test_ascii_line(line3, line3_path):
    gamma = terminal_assembly(line3)
    assert render_ascii(line3, gamma) == "#oo\n"
    assert render_ascii(line3, gamma, line3_path) == "#**\n"


def test_ascii_span(span):
    assert render(span, terminal_assembly(span), fmt=OutputFormat.ASCII) == ".oo\n.oo\n#oo\n"


def test_svg_span(span, span_path):
    doc = render_svg(span, terminal_assembly(span), span_path)
    assert doc.startswith("<svg")
    assert doc.count("<rect") == 7
    # six bonds along the path plus the seed bond
    assert doc.count("<line") == 6
    assert "#f2b632" in doc


def test_json_rows(line3, line3_path):
    doc = render_json(line3, terminal_assembly(line3), line3_path)
    assert doc["extents"]["east"] == 2
    assert [t["seed"] for t in doc["tiles"]] == [True, False, False]
    assert doc["path"] == line3_path.to_json()


def test_glue_table(span, span_path):
    table = glue_table(span, span_path)
    assert len(table) == 5
    assert list(table.loc[table["visible_south"].astype(bool), "index"]) == [0]
    assert list(table.loc[table["visible_north"].astype(bool), "index"]) == [4]
    assert set(table["orientation"]) == {"horizontal", "vertical"}


def test_verdict_table():
    verdicts = [
        {"lemma": "spans.widths-decrease", "instances": 4, "preconditions_met": 2, "violations": [],
         "passed": True, "note": None},
        {"lemma": "spans.canonical-bound", "instances": 4, "preconditions_met": 0, "violations": [],
         "passed": True, "note": "not exercisable at this scale"},
        {"lemma": "cuts.banana", "instances": 4, "preconditions_met": 3, "violations": [{}],
         "passed": False, "note": None},
    ]
    table = verdict_table(verdicts)
    assert list(table["status"]) == ["ok", "not exercisable at this scale", "FAIL"]
    assert list(table["violations"]) == [0, 0, 1]
