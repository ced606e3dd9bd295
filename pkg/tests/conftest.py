import os
import sys
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

from sumprod.core_sets import FiniteSet  # noqa: E402

small_int = st.integers(min_value=-30, max_value=30)
rationals = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 6))


def sets(elements=rationals, min_size=1, max_size=8):
    return st.lists(elements, min_size=min_size, max_size=max_size).map(FiniteSet)


def nonzero_sets(min_size=1, max_size=8):
    return sets(rationals.filter(lambda x: x != 0), min_size, max_size)


def pytest_terminal_summary(terminalreporter):
    from _acceptance_log import LINES
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
