import random
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from troprank.core import TropMatrix

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=100,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

small_ints = st.integers(min_value=0, max_value=4)
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@st.composite
def matrices(draw, max_rows=5, max_cols=5, elements=small_ints, square=False):
    m = draw(st.integers(1, max_rows))
    n = m if square else draw(st.integers(1, max_cols))
    rows = [[draw(elements) for _ in range(n)] for _ in range(m)]
    return TropMatrix.from_rows(rows)


@st.composite
def symmetric_matrices(draw, max_size=5, elements=small_ints):
    n = draw(st.integers(1, max_size))
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a[i][j] = a[j][i] = draw(elements)
    return TropMatrix.from_rows(a, symmetric=True)


def random_matrix(rng: random.Random, m: int, n: int, hi: int = 4) -> TropMatrix:
    return TropMatrix.from_rows([[rng.randint(0, hi) for _ in range(n)] for _ in range(m)])


def random_symmetric(rng: random.Random, n: int, hi: int = 4) -> TropMatrix:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a[i][j] = a[j][i] = rng.randint(0, hi)
    return TropMatrix.from_rows(a, symmetric=True)


def F(x) -> Fraction:
    return Fraction(x)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
