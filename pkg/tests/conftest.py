import sys
import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
unit = st.floats(-1, 1, allow_nan=False, allow_infinity=False)
vec4 = st.lists(finite, min_size=4, max_size=4).map(np.array)
coeffs6 = st.lists(finite, min_size=6, max_size=6).map(np.array).filter(lambda c: np.abs(c).max() > 1e-3)
angle = st.floats(0, 2 * np.pi, allow_nan=False)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
