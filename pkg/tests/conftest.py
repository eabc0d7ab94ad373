import pytest

from ospq.config import WIDTH_ENV
from ospq.cyclo import field_for


@pytest.fixture
def F10():
    return field_for(10)


@pytest.fixture
def F14():
    return field_for(14)


@pytest.fixture(autouse=True)
def _no_width_override(monkeypatch):
    """Tests see the shipped limits unless they set the override themselves."""
    monkeypatch.delenv(WIDTH_ENV, raising=False)


@pytest.fixture
def write_file(tmp_path):
    def write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return write
