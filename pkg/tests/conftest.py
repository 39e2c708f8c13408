import pytest
from fastapi.testclient import TestClient

from app.config import settings
from app.core.fixtures import load_fixture, path_at

SPAN_POSITIONS = [(1, 0), (2, 0), (2, 1), (1, 1), (1, 2), (2, 2)]
ZIGZAG_POSITIONS = [(1, 0), (1, 1), (0, 1), (0, 2), (1, 2), (2, 2)]


@pytest.fixture(autouse=True)
def reports_dir(tmp_path, monkeypatch):
    """Keep run logs and verification summaries out of the working tree."""
    monkeypatch.setattr(settings, "REPORTS_DIR", str(tmp_path / "logs"))
    return tmp_path / "logs"


@pytest.fixture
def ray():
    return load_fixture("FIX-RAY")


@pytest.fixture
def line3():
    return load_fixture("FIX-LINE3")


@pytest.fixture
def conflict():
    return load_fixture("FIX-CONFLICT")


@pytest.fixture
def span():
    return load_fixture("FIX-SPAN")


@pytest.fixture
def zigzag():
    return load_fixture("FIX-ZIGZAG")


@pytest.fixture
def span_path(span):
    return path_at(span, SPAN_POSITIONS)


@pytest.fixture
def zigzag_path(zigzag):
    return path_at(zigzag, ZIGZAG_POSITIONS)


@pytest.fixture
def line3_path(line3):
    """The producible path of FIX-LINE3: every tile but the seed."""
    return path_at(line3, [(1, 0), (2, 0)])


@pytest.fixture
def client():
    from app.main import app
    return TestClient(app)


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the sampled-corpus checks")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long corpus runs, skipped unless --runslow is given")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
