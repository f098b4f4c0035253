# tests/conftest.py
import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings as hypothesis_settings

# make `ringlab` importable when pytest runs from anywhere
ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from ringlab.config import Settings, use_settings  # noqa: E402
from ringlab.finite_ring import galois_field, matrix_ring  # noqa: E402
from ringlab.models import MatrixShape  # noqa: E402

# default_settings resets once per test, not per example
SUPPRESSED = [HealthCheck.function_scoped_fixture, HealthCheck.too_slow]
hypothesis_settings.register_profile(
    "ci", max_examples=100, deadline=None, suppress_health_check=SUPPRESSED
)
hypothesis_settings.register_profile(
    "fast", max_examples=20, deadline=None, suppress_health_check=SUPPRESSED
)
hypothesis_settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "ci"))

GOLDEN = ROOT / "tests" / "golden"


@pytest.fixture(autouse=True)
def default_settings(monkeypatch):
    """Every test starts from the built-in defaults, whatever the shell exports"""
    for key in list(os.environ):
        if key.upper().startswith("RINGLAB_"):
            monkeypatch.delenv(key, raising=False)
    use_settings(Settings())
    yield
    use_settings(Settings())


@pytest.fixture
def override():
    """Swap in settings with a few fields changed"""
    def apply(**fields):
        return use_settings(Settings(**fields))
    return apply


@pytest.fixture
def golden():
    return GOLDEN


@pytest.fixture(scope="session")
def gf2():
    return galois_field(2, 1)


@pytest.fixture(scope="session")
def t2(gf2):
    return matrix_ring(gf2, 2, MatrixShape.UPPER_TRIANGULAR)


@pytest.fixture(scope="session")
def m2(gf2):
    return matrix_ring(gf2, 2, MatrixShape.FULL)
