from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture
def example1_catalog_path() -> Path:
    return REPO_ROOT / "data" / "example1_catalog.csv"
