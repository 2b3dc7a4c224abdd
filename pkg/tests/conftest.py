import sys

import hypothesis.strategies as st
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def partitions(draw, max_weight=10, max_part=None):
    """Partitions of weight at most ``max_weight`` as descending tuples."""
    budget = draw(st.integers(0, max_weight))
    parts = []
    while budget > 0:
        cap = budget if max_part is None else min(budget, max_part)
        a = draw(st.integers(1, cap))
        parts.append(a)
        budget -= a
        if draw(st.booleans()):
            break
    return tuple(sorted(parts, reverse=True))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for line in results.values():
        terminalreporter.write_line(line)
