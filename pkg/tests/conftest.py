import pytest

from .test_utils import load_one


@pytest.fixture
def one_sided():
    return load_one("one_sided_x.cfg"), load_one("one_sided_y.cfg")


@pytest.fixture
def finite_window():
    return load_one("finite_window_x.cfg"), load_one("finite_window_y.cfg")


@pytest.fixture
def output_base(tmp_path, monkeypatch):
    monkeypatch.setenv("GROSSCA_OUTPUT_BASE", str(tmp_path))
    return tmp_path
