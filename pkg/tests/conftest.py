import pytest
from hypothesis import settings
from hypothesis import strategies as st

from monext.catalog import klein, z3_multiplicative
from monext.monoid import (
    cyclic_group,
    enumerate_monoids,
    idempotent_pair,
    relabel,
    saturating_addition,
    trivial_monoid,
)

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def monoids_up_to(n):
    return [m for k in range(1, n + 1) for m in enumerate_monoids(k)]


SMALL = monoids_up_to(3)
UP_TO_4 = monoids_up_to(4)


@st.composite
def relabeled_monoids(draw, pool=UP_TO_4):
    """A monoid from ``pool`` transported along a random permutation."""
    m = draw(st.sampled_from(pool))
    perm = draw(st.permutations(list(range(m.size))))
    return relabel(m, perm)


@pytest.fixture
def t1():
    return trivial_monoid()


@pytest.fixture
def c2():
    return cyclic_group(2)


@pytest.fixture
def c3():
    return cyclic_group(3)


@pytest.fixture
def c4():
    return cyclic_group(4)


@pytest.fixture
def i2():
    return idempotent_pair()


@pytest.fixture
def n3():
    return saturating_addition(3)


@pytest.fixture
def v4():
    return klein()


@pytest.fixture
def z3m():
    return z3_multiplicative()


_ARROWS = {}


def lq_arrows(M, N):
    """All valid LQ arrows over (M, N), cached by the pair of tables."""
    from monext.biset import all_lq_arrows
    key = (M, N)
    if key not in _ARROWS:
        _ARROWS[key] = all_lq_arrows(M, N)
    return _ARROWS[key]


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
