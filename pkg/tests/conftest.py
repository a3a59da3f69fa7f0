import contextlib
import math
import time

import numpy as np
import pytest
from hypothesis import strategies as st

_ACCEPTANCE: list[str] = []


@st.composite
def simplex_points(draw, min_size=1, max_size=32, allow_zeros=True):
    """Arrays on the probability simplex, possibly with zero entries."""
    element = st.floats(1e-3, 1.0)
    if allow_zeros:
        element = st.one_of(st.just(0.0), element)
    raw = draw(st.lists(element, min_size=min_size, max_size=max_size))
    if not any(raw):
        raw[draw(st.integers(0, len(raw) - 1))] = 1.0
    a = np.asarray(raw)
    return a / math.fsum(raw)


@pytest.fixture
def criterion():
    """Record one acceptance criterion as a PASS/FAIL line with its runtime."""

    @contextlib.contextmanager
    def run(number, title, budget):
        start = time.perf_counter()
        try:
            yield
        except BaseException as e:
            elapsed = time.perf_counter() - start
            _ACCEPTANCE.append(f"FAIL  criterion {number:2d}  {title}  ({elapsed:.2f}s): {e!s:.120}")
            raise
        elapsed = time.perf_counter() - start
        if elapsed >= budget:
            _ACCEPTANCE.append(
                f"FAIL  criterion {number:2d}  {title}  ({elapsed:.2f}s, budget {budget}s)"
            )
            raise AssertionError(f"criterion {number} took {elapsed:.2f}s, budget {budget}s")
        _ACCEPTANCE.append(f"PASS  criterion {number:2d}  {title}  ({elapsed:.2f}s)")

    return run


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
