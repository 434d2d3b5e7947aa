"""Exact rational vectors and matrices.

Scalars are :class:`fractions.Fraction`, which keeps every value in lowest
terms with a positive denominator. Vectors are tuples of fractions and a
matrix is a tuple of column vectors. Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt, lcm
from typing import Iterable, Optional, Sequence, Union

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[Vector, ...], one entry per column

RationalLike = Union[int, str, Fraction]


class DimensionError(ValueError):
    """Vectors or matrices of incompatible shapes were combined."""


class DegenerateError(ValueError):
    """A zero vector or linearly dependent columns where independence is required."""


def to_rational(x: RationalLike) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``. Non-canonical input is normalized."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        if sep:
            q = int(den)
            if q == 0:
                raise ValueError
            return Fraction(int(num), q)
        return Fraction(int(num))
    except ValueError:
        raise ValueError(f"not a rational literal: {text!r}") from None


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def vec(*entries: RationalLike) -> Vector:
    if len(entries) == 1 and not isinstance(entries[0], (int, str, Fraction)):
        entries = tuple(entries[0])
    return tuple(to_rational(e) for e in entries)


def mat(columns: Iterable[Iterable[RationalLike]]) -> Matrix:
    cols = tuple(tuple(to_rational(e) for e in c) for c in columns)
    if not cols:
        raise DimensionError("matrix needs at least one column")
    m = len(cols[0])
    if m == 0 or any(len(c) != m for c in cols):
        raise DimensionError("all columns must share a positive dimension")
    return cols


def zero(m: int) -> Vector:
    return (Fraction(0),) * m


def _check_dims(u: Sequence, v: Sequence) -> None:
    if len(u) != len(v):
        raise DimensionError(f"dimension mismatch: {len(u)} vs {len(v)}")


def add(u: Vector, v: Vector) -> Vector:
    _check_dims(u, v)
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    _check_dims(u, v)
    return tuple(a - b for a, b in zip(u, v))


def scale(c: RationalLike, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def is_zero(v: Vector) -> bool:
    return all(a == 0 for a in v)


def inner_product(u: Vector, v: Vector) -> Fraction:
    _check_dims(u, v)
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def norm_sq(v: Vector) -> Fraction:
    return sum((a * a for a in v), Fraction(0))


def project_onto(v: Vector, u: Vector) -> Vector:
    """Component of ``v`` along ``u``."""
    _check_dims(u, v)
    uu = norm_sq(u)
    if uu == 0:
        raise DegenerateError("cannot project onto the zero vector")
    return scale(inner_product(v, u) / uu, u)


def perp_component(v: Vector, u: Vector) -> Vector:
    """Component of ``v`` orthogonal to ``u``."""
    return sub(v, project_onto(v, u))


def combine(columns: Sequence[Vector], coeffs: Sequence[RationalLike]) -> Vector:
    """Return ``sum(coeffs[i] * columns[i])``."""
    _check_dims(columns, coeffs)
    if not columns:
        raise DimensionError("empty column list")
    out = [Fraction(0)] * len(columns[0])
    for c, col in zip(coeffs, columns):
        if c:
            for k, a in enumerate(col):
                out[k] += c * a
    return tuple(out)


def gram_schmidt(B: Matrix) -> Matrix:
    """Orthogonalize the columns of ``B`` with the plain recurrence.

    Raises DegenerateError if the columns are linearly dependent.
    """
    ortho: list[Vector] = []
    norms: list[Fraction] = []
    for b in B:
        w = b
        for bt, nn in zip(ortho, norms):
            mu = inner_product(b, bt) / nn
            if mu:
                w = sub(w, scale(mu, bt))
        n2 = norm_sq(w)
        if n2 == 0:
            raise DegenerateError("columns are linearly dependent")
        ortho.append(w)
        norms.append(n2)
    return tuple(ortho)


def gso_coefficients(B: Matrix) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Gram-Schmidt data of ``B``: the mu table and the squared norms of the
    orthogonalized vectors. ``mu[i][j]`` is defined for ``j < i``."""
    ortho = gram_schmidt(B)
    bstar = [norm_sq(w) for w in ortho]
    mu = [[inner_product(B[i], ortho[j]) / bstar[j] for j in range(i)] for i in range(len(B))]
    return mu, bstar


def _common_denominator(values: Iterable[Fraction]) -> int:
    return lcm(1, *(x.denominator for x in values))


def solve_linear(A: Matrix, y: Vector) -> Optional[Vector]:
    """Solve ``A x = y`` exactly; return None when ``y`` is outside the span.

    Uses fraction-free (Bareiss) elimination on the denominator-cleared
    augmented system. Raises DegenerateError when the columns of ``A`` are
    dependent.
    """
    n = len(A)
    m = len(y)
    if any(len(c) != m for c in A):
        raise DimensionError("right-hand side does not match column dimension")
    d = _common_denominator([a for c in A for a in c] + list(y))
    # rows of the augmented integer system [A | y]
    rows = [[int(A[j][i] * d) for j in range(n)] + [int(y[i] * d)] for i in range(m)]
    prev = 1
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if rows[i][col] != 0), None)
        if piv is None:
            raise DegenerateError("columns are linearly dependent")
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        for i in range(r + 1, m):
            f = rows[i][col]
            rows[i] = [(p * rows[i][k] - f * rows[r][k]) // prev for k in range(n + 1)]
        prev = p
        r += 1
    # rows r.. are zero on the coefficient part; any nonzero rhs means no solution
    if any(rows[i][n] != 0 for i in range(r, m)):
        return None
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(rows[i][n]) - sum((rows[i][k] * x[k] for k in range(i + 1, n)), Fraction(0))
        x[i] = s / rows[i][i]
    return tuple(x)


def entry_bits(values: Iterable[Fraction]) -> int:
    """Largest bit length among the numerators and denominators of ``values``."""
    best = 0
    for x in values:
        best = max(best, abs(x.numerator).bit_length(), x.denominator.bit_length())
    return best


def _sqrt_parts(x: Fraction, rel_bits: int) -> tuple[int, int, int]:
    if x < 0:
        raise ValueError("negative argument")
    s = x.numerator * x.denominator
    e = max(0, rel_bits + 1 - s.bit_length() // 2)
    scaled = s << (2 * e)
    return isqrt(scaled), scaled, x.denominator << e


def sqrt_upper(x: Fraction, rel_bits: int = 16) -> Fraction:
    """Rational r with sqrt(x) <= r <= sqrt(x) * (1 + 2^-rel_bits)."""
    if x == 0:
        return Fraction(0)
    r, scaled, den = _sqrt_parts(x, rel_bits)
    if r * r != scaled:
        r += 1
    return Fraction(r, den)


def sqrt_lower(x: Fraction, rel_bits: int = 16) -> Fraction:
    """Rational r with sqrt(x) * (1 - 2^-rel_bits) <= r <= sqrt(x)."""
    if x == 0:
        return Fraction(0)
    r, _, den = _sqrt_parts(x, rel_bits)
    return Fraction(r, den)
