import sys
from pathlib import Path

import pytest

# Add the project root to sys.path so 'app' can be imported
ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT))

from app.numeric_core import p_from_P, pole_from_p  # noqa: E402
from app.utils import make_rng  # noqa: E402


@pytest.fixture
def rng():
    return make_rng(42)


@pytest.fixture
def pole3():
    return p_from_P(3.0)


@pytest.fixture
def pole_half():
    return pole_from_p(0.5)
