"""Shared test fixtures for reid-gale."""

from pathlib import Path

import pytest

from reid_gale.services.crepant_fan import load_fan
from reid_gale.services.matrix_io import read_matrix
from reid_gale.services.pipeline import analyze_fan

FIXTURES_DIR = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    """Path to the test fixtures directory."""
    return FIXTURES_DIR


@pytest.fixture
def fan_1_3_path(fixtures_dir) -> Path:
    return fixtures_dir / "fan_1_3_1_1_1.json"


@pytest.fixture
def fan_1_19_path(fixtures_dir) -> Path:
    return fixtures_dir / "fan_1_19_1_3_15.json"


@pytest.fixture
def fan_1_6_path(fixtures_dir) -> Path:
    return fixtures_dir / "fan_1_6_1_1_4.json"


@pytest.fixture
def flopped_fan_path(fixtures_dir) -> Path:
    return fixtures_dir / "fan_1_19_flopped.json"


@pytest.fixture
def missing_triangle_path(fixtures_dir) -> Path:
    return fixtures_dir / "fan_1_19_missing_triangle.json"


@pytest.fixture
def malformed_path(fixtures_dir) -> Path:
    return fixtures_dir / "malformed.json"


@pytest.fixture
def fan_1_3(fan_1_3_path):
    return load_fan(fan_1_3_path)


@pytest.fixture
def fan_1_6(fan_1_6_path):
    return load_fan(fan_1_6_path)


@pytest.fixture(scope="session")
def fan_1_19():
    return load_fan(FIXTURES_DIR / "fan_1_19_1_3_15.json")


@pytest.fixture(scope="session")
def analysis_1_19(fan_1_19):
    """Full recipe on 1/19(1,3,15); shared because it is the slowest fixture."""
    return analyze_fan(fan_1_19)


@pytest.fixture
def golden_1_19():
    """(L, Kt) as published for 1/19(1,3,15)."""
    return (
        read_matrix(FIXTURES_DIR / "golden_1_19_L.csv"),
        read_matrix(FIXTURES_DIR / "golden_1_19_Kt.csv"),
    )
