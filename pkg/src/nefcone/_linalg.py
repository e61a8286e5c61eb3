"""Small exact linear algebra over Q and Q(sqrt d).

Matrices are tuples of row tuples.  Polynomials are coefficient tuples,
highest degree first.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

from .exactnum import QuadExt

Matrix = tuple[tuple, ...]


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple(tuple(QuadExt(0) for _ in range(m)) for _ in range(n))


def identity(n: int) -> Matrix:
    return tuple(tuple(QuadExt(int(i == j)) for j in range(n)) for i in range(n))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a and len(a[0]) != len(b):
        raise ValueError(f"shape mismatch {len(a)}x{len(a[0])} @ {len(b)}x?")
    cols = len(b[0]) if b else 0
    return tuple(
        tuple(sum((row[k] * b[k][j] for k in range(len(b))), QuadExt(0)) for j in range(cols))
        for row in a
    )


def madd(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mscale(c, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def conj_transpose(a: Matrix) -> Matrix:
    if not a:
        return a
    return tuple(tuple(a[i][j].conjugate() for i in range(len(a))) for j in range(len(a[0])))


def submatrix(a: Matrix, rows: Sequence[int], cols: Sequence[int] | None = None) -> Matrix:
    cols = rows if cols is None else cols
    return tuple(tuple(a[i][j] for j in cols) for i in rows)


def det(a: Matrix) -> QuadExt:
    """Determinant by Gaussian elimination (entries must share one field)."""
    n = len(a)
    if n == 0:
        return QuadExt(1)
    m = [list(row) for row in a]
    result = QuadExt(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return QuadExt(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        p = m[c][c]
        result = result * p
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] / p
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return result


def charpoly(a: Matrix) -> tuple:
    """Coefficients of det(tI - a), Faddeev-LeVerrier."""
    n = len(a)
    coeffs = [QuadExt(1)]
    mk = zeros(n)
    c = QuadExt(1)
    eye = identity(n)
    for k in range(1, n + 1):
        mk = madd(matmul(a, mk), mscale(c, eye))
        am = matmul(a, mk)
        c = -sum((am[i][i] for i in range(n)), QuadExt(0)) / k
        coeffs.append(c)
    return tuple(coeffs)


def principal_minors(a: Matrix):
    n = len(a)
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            yield det(submatrix(a, idx))


def leading_minors(a: Matrix):
    for k in range(1, len(a) + 1):
        yield det(submatrix(a, range(k)))


# -- polynomials -------------------------------------------------------------------


def poly_mul(p: Sequence, q: Sequence) -> tuple:
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] = out[i + j] + x * y
    return tuple(out)


def poly_pow(p: Sequence, e: int) -> tuple:
    out: tuple = (1,)
    for _ in range(e):
        out = poly_mul(out, p)
    return out


def poly_eval(p: Sequence, t):
    acc = 0
    for c in p:
        acc = acc * t + c
    return acc


# -- rational vectors ------------------------------------------------------------------


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to a primitive integer vector (same direction)."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in ints)


def rank_q(rows: Sequence[Sequence]) -> int:
    return len(_rref(rows)[1])


def _rref(rows: Sequence[Sequence]):
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def nullspace_q(rows: Sequence[Sequence], ncols: int) -> list[tuple[int, ...]]:
    """Primitive integer basis of {x : rows . x = 0}."""
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    m, pivots = _rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -m[i][f]
        basis.append(primitive(v))
    return basis


def solve_q(cols: Sequence[Sequence], x: Sequence) -> tuple[Fraction, ...] | None:
    """Coefficients z with sum z_j cols[j] == x, or None (cols linearly independent)."""
    n = len(x)
    k = len(cols)
    aug = [[Fraction(cols[j][i]) for j in range(k)] + [Fraction(x[i])] for i in range(n)]
    m, pivots = _rref(aug)
    if k in pivots:
        return None
    z = [Fraction(0)] * k
    for i, p in enumerate(pivots):
        z[p] = m[i][k]
    return tuple(z)


def int_det(a: Sequence[Sequence[int]]) -> int:
    d = det(tuple(tuple(QuadExt(x) for x in row) for row in a))
    return int(d.rational_value())
