from app.core.assembly import describe_system
from app.core.fixtures import load_description, shield

PREFIX = "/tam"


def post(client, endpoint, **body):
    return client.post(f"{PREFIX}/{endpoint}", json=body)


def test_ping(client):
    response = client.get(f"{PREFIX}/ping")
    assert response.status_code == 200
    assert response.json()["status"] == "OK"


def test_classify(client):
    response = post(client, "classify", system=load_description("FIX-CONFLICT"))
    assert response.status_code == 200
    assert response.json() == {"result": "non-directed", "position": [1, 0], "types": ["tA", "tB"]}


def test_paths(client):
    response = post(client, "paths", system=load_description("FIX-LINE3"), max_len=3)
    assert response.json()["count"] == 2


def test_canonical(client):
    response = post(client, "canonical", system=load_description("FIX-SPAN"), column=1)
    assert response.status_code == 200
    assert [(s["x"], s["y"]) for s in response.json()["path"]] == [(1, 0), (2, 0)]


def test_strict_canonical_is_a_domain_error(client):
    response = post(client, "canonical", system=load_description("FIX-SPAN"), column=1, strict=True)
    assert response.status_code == 422
    assert response.json()["error"] == "NoExtremalPath"
    assert "message" in response.json()["details"]


def test_cuts(client, span_path):
    response = post(client, "cuts", system=load_description("FIX-SPAN"), path=span_path.to_json())
    assert response.status_code == 200
    assert {"i": 0, "j": 4} in [{"i": c["i"], "j": c["j"]} for c in response.json()["cuts"]]


def test_cuts_budget(client, span_path):
    response = post(client, "cuts", system=load_description("FIX-SPAN"), path=span_path.to_json(), budget=1)
    assert response.status_code == 503
    assert response.json()["error"] == "SearchBudgetExceeded"


def test_non_adjacent_path(client):
    path = [{"x": 1, "y": 0, "tile": "p0"}, {"x": 2, "y": 2, "tile": "p5"}]
    response = post(client, "cuts", system=load_description("FIX-SPAN"), path=path)
    assert response.status_code == 422
    assert response.json()["error"] == "NonAdjacentStep"


def test_undeclared_tile_is_a_usage_error(client):
    path = [{"x": 1, "y": 0, "tile": "nope"}]
    response = post(client, "cuts", system=load_description("FIX-SPAN"), path=path)
    assert response.status_code == 400


def test_malformed_request(client):
    response = post(client, "canonical", system=load_description("FIX-SPAN"))
    assert response.status_code == 422
    assert response.json()["error"] == "Validation error"


def test_decompose_arcs(client, span_path):
    response = post(client, "decompose", system=load_description("FIX-SPAN"), path=span_path.to_json(),
                    column=1, arcs=True)
    assert response.json()["arcs"]["backups"] == [3]


def test_shield(client):
    wrap = shield()
    _, half = wrap.extras["shield"]["candidates"]
    response = post(client, "shield", system=describe_system(wrap.system), path=wrap.path.to_json(),
                    column=1, s_index=0, candidate=half.to_json(), shield_column=4)
    assert response.status_code == 200
    assert response.json()["kind"] == "half"


def test_render_formats(client):
    system = load_description("FIX-SPAN")
    ascii_doc = post(client, "render", system=system)
    assert ascii_doc.text == ".oo\n.oo\n#oo\n"
    svg = post(client, "render", system=system, format="svg")
    assert svg.headers["content-type"].startswith("image/svg+xml")
    assert svg.text.count("<rect") == 7
    assert len(post(client, "render", system=system, format="json").json()["tiles"]) == 7


def test_verify_unknown_suite(client):
    response = client.post(f"{PREFIX}/verify", json={"suite": "no-such-suite", "samples": 0})
    assert response.status_code == 400


def test_verify_exhaustive_corpus(client):
    body = {"suite": "assembly.size-bound", "exhaustive": True, "max_tiles": 1, "alphabet_size": 1}
    response = client.post(f"{PREFIX}/verify", json=body)
    assert response.status_code == 200
    assert response.json()["passed"]


def test_verify_rejects_empty_alphabet(client):
    response = client.post(f"{PREFIX}/verify", json={"suite": "assembly", "alphabet_size": 0})
    assert response.status_code == 422
