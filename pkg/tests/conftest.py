import random
from fractions import Fraction
from math import gcd

from hypothesis import assume
from hypothesis import strategies as st

from cvpreduce.exact_linalg import DegenerateError
from cvpreduce.lattice_core import LatticeBasis


def basis(*cols):
    return LatticeBasis.from_columns(cols)


def F(x, y=1):
    return Fraction(x, y)


@st.composite
def integer_bases(draw, min_n=1, max_n=4, extra_m=1, bound=6):
    n = draw(st.integers(min_n, max_n))
    m = n + draw(st.integers(0, extra_m))
    entries = st.integers(-bound, bound)
    cols = draw(st.lists(st.lists(entries, min_size=m, max_size=m), min_size=n, max_size=n))
    try:
        return LatticeBasis.from_columns(cols)
    except DegenerateError:
        assume(False)


@st.composite
def rational_vectors(draw, m, bound=6, max_den=4):
    return tuple(
        Fraction(draw(st.integers(-bound, bound)), draw(st.integers(1, max_den))) for _ in range(m)
    )


def random_coprime(rng: random.Random, n: int, spread: int = 4):
    while True:
        c = [rng.randint(-spread, spread) for _ in range(n)]
        g = 0
        for x in c:
            g = gcd(g, x)
        if g == 1:
            return c
