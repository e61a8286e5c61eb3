"""Exact arithmetic in Q and in quadratic extensions Q(sqrt d).

A :class:`QuadExt` is the number ``a + b*sqrt(d)`` with rational ``a, b`` and
square-free ``d``.  Rational values are stored with ``b == 0`` and ``d == 1``.
Ordering is only defined for real values (``d > 0`` or ``b == 0``); the real
embedding takes the positive square root.

Also provides rationality certificates (minimal polynomials), exact
continued fractions of real quadratic irrationals, and a rigorous comparison
of real quadratic numbers living in *different* fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import gcd, isqrt, lcm
from typing import Iterator, Sequence, Union

from .errors import UnsupportedError

Rational = Union[int, Fraction]


class IncompatibleFieldError(ValueError):
    """Operands live in different quadratic fields."""


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return ``(k, d)`` with ``n == k*k*d`` and ``d`` square-free (sign kept on ``d``)."""
    if n == 0:
        raise ValueError("0 has no square-free part")
    sign = -1 if n < 0 else 1
    m = abs(n)
    k = 1
    p = 2
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            k *= p
        p += 1 if p == 2 else 2
    return k, sign * m


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def _as_fraction(x: Rational) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


class QuadExt:
    """Exact element ``a + b*sqrt(d)``.

    >>> x = QuadExt(2, 1, 3)
    >>> x * x.conjugate()
    QuadExt(1)
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Rational = 0, b: Rational = 0, d: int = 1) -> None:
        a = _as_fraction(a)
        b = _as_fraction(b)
        if not isinstance(d, int) or d == 0:
            raise ValueError(f"bad radicand {d!r}")
        k, d0 = squarefree_decomposition(d)
        b = b * k
        if d0 == 1:
            a, b = a + b, Fraction(0)
        if b == 0:
            d0 = 1
        self.a: Fraction = a
        self.b: Fraction = b
        self.d: int = d0

    # -- construction helpers -------------------------------------------------

    @classmethod
    def sqrt(cls, n: Rational) -> QuadExt:
        """Exact square root of a rational (real or imaginary)."""
        n = _as_fraction(n)
        if n == 0:
            return cls(0)
        # sqrt(p/q) = sqrt(p*q)/q
        return cls(0, Fraction(1, n.denominator), n.numerator * n.denominator)

    @classmethod
    def coerce(cls, x: QuadExt | Rational) -> QuadExt:
        if isinstance(x, QuadExt):
            return x
        return cls(x)

    # -- predicates ------------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    @property
    def is_real(self) -> bool:
        return self.b == 0 or self.d > 0

    def is_integral_rational(self) -> bool:
        return self.b == 0 and self.a.denominator == 1

    def rational_value(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is not rational")
        return self.a

    # -- arithmetic ------------------------------------------------------------

    def _common_d(self, other: QuadExt) -> int:
        if self.b == 0:
            return other.d
        if other.b == 0 or other.d == self.d:
            return self.d
        raise IncompatibleFieldError(f"Q(sqrt {self.d}) vs Q(sqrt {other.d})")

    def __add__(self, other):
        if not isinstance(other, (QuadExt, int, Fraction)):
            return NotImplemented
        other = QuadExt.coerce(other)
        d = self._common_d(other)
        return QuadExt(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self) -> QuadExt:
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        if not isinstance(other, (QuadExt, int, Fraction)):
            return NotImplemented
        return self + (-QuadExt.coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, (QuadExt, int, Fraction)):
            return NotImplemented
        return QuadExt.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (QuadExt, int, Fraction)):
            return NotImplemented
        other = QuadExt.coerce(other)
        d = self._common_d(other)
        return QuadExt(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> QuadExt:
        """Galois conjugate ``a - b sqrt d`` (complex conjugation when d < 0)."""
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def trace(self) -> Fraction:
        return 2 * self.a

    def __truediv__(self, other):
        if not isinstance(other, (QuadExt, int, Fraction)):
            return NotImplemented
        other = QuadExt.coerce(other)
        self._common_d(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return self * other.conjugate() * QuadExt(1 / n)

    def __rtruediv__(self, other):
        if not isinstance(other, (QuadExt, int, Fraction)):
            return NotImplemented
        return QuadExt.coerce(other) / self

    def __pow__(self, e: int) -> QuadExt:
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return QuadExt(1) / (self ** (-e))
        result = QuadExt(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- equality & ordering ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, QuadExt):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.d == other.d

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def sign(self) -> int:
        """Exact sign of the real value; raises for non-real numbers."""
        if not self.is_real:
            raise ValueError(f"{self} is not real; ordering undefined")
        a, b = self.a, self.b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 against b^2 d
        diff = a * a - b * b * self.d
        return sa if diff > 0 else sb

    def _cmp(self, other) -> int:
        other = QuadExt.coerce(other)
        if not (self.is_real and other.is_real):
            raise ValueError("ordering undefined for non-real quadratic numbers")
        return (self - other).sign()

    def __lt__(self, other):
        if not isinstance(other, (QuadExt, int, Fraction)):
            return NotImplemented
        return self._cmp(other) < 0

    def __le__(self, other):
        if not isinstance(other, (QuadExt, int, Fraction)):
            return NotImplemented
        return self._cmp(other) <= 0

    def __gt__(self, other):
        if not isinstance(other, (QuadExt, int, Fraction)):
            return NotImplemented
        return self._cmp(other) > 0

    def __ge__(self, other):
        if not isinstance(other, (QuadExt, int, Fraction)):
            return NotImplemented
        return self._cmp(other) >= 0

    def __abs__(self) -> QuadExt:
        return -self if self.sign() < 0 else self

    # -- real approximation ----------------------------------------------------

    def enclosure(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        """Rigorous rational interval ``[lo, hi]`` of width <= 2**-bits containing the value."""
        if not self.is_real:
            raise ValueError("enclosure needs a real number")
        if self.b == 0:
            return self.a, self.a
        scale = 1 << bits
        # |b| sqrt d * scale  in  [r, r+1]
        bb = abs(self.b)
        num = bb.numerator * bb.numerator * self.d * scale * scale
        den = bb.denominator * bb.denominator
        r = isqrt(num // den)
        lo = Fraction(r, scale)
        hi = Fraction(r + 1, scale)
        if self.b < 0:
            lo, hi = -hi, -lo
        return self.a + lo, self.a + hi

    def floor(self) -> int:
        if not self.is_real:
            raise ValueError("floor needs a real number")
        lo, _ = self.enclosure(8)
        n = lo.numerator // lo.denominator
        while QuadExt(n + 1) <= self:
            n += 1
        while QuadExt(n) > self:
            n -= 1
        return n

    def __float__(self) -> float:
        lo, hi = self.enclosure(60)
        return float((lo + hi) / 2)

    # -- display & serialization ----------------------------------------------

    def __repr__(self) -> str:
        if self.b == 0:
            return f"QuadExt({self.a})"
        return f"QuadExt({self.a}, {self.b}, {self.d})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        root = "i" if self.d == -1 else f"√{self.d}"
        bpart = root if self.b == 1 else f"-{root}" if self.b == -1 else f"{self.b}*{root}"
        if self.a == 0:
            return bpart
        sep = "" if bpart.startswith("-") else "+"
        return f"{self.a}{sep}{bpart}"

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "d": self.d}

    @classmethod
    def from_json(cls, obj: dict) -> QuadExt:
        return cls(Fraction(str(obj["a"])), Fraction(str(obj["b"])), int(obj["d"]))


def compare_real(x: QuadExt | Rational, y: QuadExt | Rational) -> int:
    """Exact three-way comparison of two real quadratic numbers, fields may differ."""
    x, y = QuadExt.coerce(x), QuadExt.coerce(y)
    try:
        return x._cmp(y)
    except IncompatibleFieldError:
        pass
    # distinct square-free radicands: sqrt(d1), sqrt(d2), 1 are Q-independent,
    # so x == y is impossible and interval refinement terminates
    bits = 32
    while True:
        xl, xh = x.enclosure(bits)
        yl, yh = y.enclosure(bits)
        if xh < yl:
            return -1
        if yh < xl:
            return 1
        bits *= 2


def rational_between(x: QuadExt | Rational, y: QuadExt | Rational) -> Fraction:
    """A rational strictly between real numbers ``x < y`` (small denominator first)."""
    x, y = QuadExt.coerce(x), QuadExt.coerce(y)
    if compare_real(x, y) >= 0:
        raise ValueError("need x < y")
    k = 1
    while True:
        # candidate floor(x*k)+1 over k, for k = 1, 2, 4, ...
        p = (x * k).floor() + 1
        r = Fraction(p, k)
        if compare_real(r, y) < 0:
            return r
        k *= 2


# -- rationality certificates ---------------------------------------------------


@dataclass(frozen=True)
class RationalityCertificate:
    """Either a rational value or an integral minimal polynomial of degree 2.

    ``minpoly`` lists coefficients highest degree first, primitive, with a
    positive leading coefficient.
    """

    rational: bool
    value: Fraction | None = None
    minpoly: tuple[int, ...] | None = None

    @property
    def discriminant(self) -> int | None:
        if self.minpoly is None:
            return None
        c2, c1, c0 = self.minpoly
        return c1 * c1 - 4 * c2 * c0

    def verify(self, x: QuadExt) -> bool:
        """Check the certificate against ``x`` exactly."""
        if self.rational:
            return x == self.value
        c2, c1, c0 = self.minpoly
        disc = self.discriminant
        return (
            c2 > 0
            and gcd(gcd(c2, c1), c0) == 1
            and not is_square(disc)
            and c2 * x * x + c1 * x + c0 == 0
        )


def rationality_certificate(x: QuadExt) -> RationalityCertificate:
    """Decide whether ``x`` is rational; otherwise return its minimal polynomial."""
    if x.b == 0:
        return RationalityCertificate(rational=True, value=x.a)
    # t^2 - 2a t + (a^2 - d b^2)
    coeffs = [Fraction(1), -2 * x.a, x.a * x.a - x.b * x.b * x.d]
    den = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    g = gcd(gcd(ints[0], ints[1]), ints[2])
    return RationalityCertificate(rational=False, minpoly=tuple(c // g for c in ints))


# -- continued fractions -----------------------------------------------------------


def _surd_triple(x: QuadExt) -> tuple[int, int, int]:
    """Write a real irrational ``x`` as ``(P + sqrt N)/Q`` with ``Q | N - P^2``."""
    den = lcm(x.a.denominator, x.b.denominator)
    p = int(x.a * den)
    r = int(x.b * den)
    q = den
    if r < 0:
        p, r, q = -p, -r, -q
    n = r * r * x.d
    if (n - p * p) % q:
        p, n, q = p * abs(q), n * q * q, q * abs(q)
    return p, n, q


def continued_fraction(x: QuadExt | Rational) -> Iterator[int]:
    """Partial quotients of ``x``: finite for rationals, infinite (periodic) otherwise."""
    x = QuadExt.coerce(x)
    if x.b == 0:
        v = x.a
        num, den = v.numerator, v.denominator
        while den:
            a, rem = divmod(num, den)
            yield a
            num, den = den, rem
        return
    if x.d < 0:
        raise ValueError("continued fraction of a non-real number")
    p, n, q = _surd_triple(x)
    r = isqrt(n)
    while True:
        # floor((p + sqrt n)/q); sqrt n is irrational
        if q > 0:
            a = (p + r) // q
        else:
            a = -((p + r) // (-q)) - 1
        yield a
        p = a * q - p
        q = (n - p * p) // q


def convergents(x: QuadExt | Rational) -> Iterator[Fraction]:
    """Successive convergents ``h_k/k_k`` of the continued fraction of ``x``."""
    h0, h1 = 0, 1
    k0, k1 = 1, 0
    for a in continued_fraction(x):
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        yield Fraction(h1, k1)


# -- real roots --------------------------------------------------------------------


def _quadratic_roots(c2: Fraction, c1: Fraction, c0: Fraction) -> list[QuadExt]:
    disc = c1 * c1 - 4 * c2 * c0
    if disc < 0:
        return []
    if disc == 0:
        return [QuadExt(-c1 / (2 * c2))]
    r = QuadExt.sqrt(disc)
    return [(QuadExt(-c1) - r) / (2 * c2), (QuadExt(-c1) + r) / (2 * c2)]


def real_roots(poly: Sequence[Rational]) -> list[QuadExt]:
    """Distinct real roots of a rational polynomial (highest degree first), ascending.

    Every irreducible factor over Q with a real root must have degree <= 2;
    otherwise :class:`UnsupportedError` is raised.
    """
    import sympy

    coeffs = [Fraction(c) for c in poly]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    if len(coeffs) <= 1:
        if coeffs and coeffs[0] != 0:
            return []
        raise ValueError("zero polynomial has no isolated roots")
    t = sympy.Symbol("t")
    p = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], t, domain="QQ")
    roots: list[QuadExt] = []
    for fac, _ in p.factor_list()[1]:
        fc = [Fraction(int(c.p), int(c.q)) for c in fac.all_coeffs()]
        deg = len(fc) - 1
        if deg == 1:
            roots.append(QuadExt(-fc[1] / fc[0]))
        elif deg == 2:
            roots.extend(_quadratic_roots(*fc))
        elif fac.count_roots() > 0:
            raise UnsupportedError(
                f"real root of algebraic degree {deg} > 2 (factor {fac.as_expr()})"
            )
    roots = list(set(roots))
    roots.sort(key=cmp_to_key(compare_real))
    return roots
