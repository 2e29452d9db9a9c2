import random

import pytest
from hypothesis import strategies as st

from latticeforge.freeprod import FreeProduct
from latticeforge.groups import Cyclic, Symmetric
from latticeforge.order import Poset


@pytest.fixture
def z2z3():
    return FreeProduct([Cyclic(2), Cyclic(3)], names=["s", "t"])


@st.composite
def posets(draw, max_size=7):
    n = draw(st.integers(0, max_size))
    seed = draw(st.integers(0, 2**32 - 1))
    density = draw(st.floats(0.0, 0.8))
    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    pairs = [(perm[i], perm[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    return Poset([str(i) for i in range(n)], pairs, "cover")


def words_of(spec, max_len):
    """Hypothesis strategy for reduced words over finite factors."""
    letters = [(f, v) for f in range(spec.rank) for v in spec.alphabet(f)]
    return st.lists(st.sampled_from(letters), max_size=max_len).map(spec.reduce)


# -- acceptance summary: one line per criterion --------------------------------------

_criteria: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call":
        return
    number, title = mark.args
    detail = "; ".join(f"{k}={v}" for k, v in item.user_properties)
    _criteria[number] = (title, "PASS" if report.passed else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status, detail = _criteria[number]
        line = f"criterion {number:2d} [{status}] {title}"
        terminalreporter.write_line(line + (f" ({detail})" if detail else ""))
