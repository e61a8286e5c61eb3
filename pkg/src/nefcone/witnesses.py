"""Certificates that the semigroup of effective classes is not finitely generated.

Two constructions:

* :func:`bm_family` / :func:`refute_bound` -- on ``X x X`` with ``NS(X) = Z M``
  the nef classes ``B_m = (1-m) pr1^*M + (m^2-m) pr2^*M + m mu^*M`` restrict to
  ``M`` on the first axis while ``(iota2^* B_m - iota3^* B_m)^n`` is unbounded in
  magnitude, which no finite generating set can accommodate.
* :func:`prop2_refute` -- on a simple variety with two independent ample
  classes the nef threshold ``s`` of ``t L1 - L2`` is irrational; a convergent
  ``p1/p2`` slightly above ``s`` gives an ample class ``p1 L1 - p2 L2`` whose
  slope lies below every candidate generator slope ``a_i/b_i``.

For odd ``n`` the divergence values are negative (``-(2m+1)`` for elliptic
``X``); only their magnitude is used to violate a bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _linalg as la
from .errors import DomainError
from .exactnum import QuadExt, RationalityCertificate, convergents, rationality_certificate
from .ns_lattice import (
    AbstractVariety,
    LatticeHom,
    NSClass,
    ProductVariety,
    Variety,
    ample_test,
    analytic_charpoly,
    as_product,
    intersection_number,
    nef_test,
    pullback,
    self_product,
    standard_hom,
)
from .cone_engine import boundary_slope


def _base_product(X: Variety) -> ProductVariety:
    if isinstance(X, AbstractVariety):
        return as_product(X)
    if len(X.factors) != 1 or X.factors[0].mult != 1:
        raise DomainError("need a single simple factor with Picard number 1")
    return X


@dataclass(frozen=True)
class BmRecord:
    m: int
    n: int
    klass: NSClass
    coefficients: tuple[int, int, int]  # of (L1, L2, L3)
    charpoly: tuple[int, ...]
    beta_relation_checked: bool
    nef: bool
    restricts_to_generator: bool
    divergence_value: int
    closed_form: bool

    @property
    def expected_charpoly(self) -> tuple[int, ...]:
        return bm_charpoly(self.m, self.n)

    def checks(self) -> dict[str, bool]:
        return {
            "class = (1-m)L1 + (m^2-m)L2 + mL3 = v v^T, v = (1, m)": self.closed_form,
            "nef (intersection inequalities)": self.nef,
            "iota1^* B_m = M": self.restricts_to_generator,
            "beta_m^2 = (m^2+1) beta_m": self.beta_relation_checked,
            "charpoly = t^n (t-(m^2+1))^n": self.charpoly == self.expected_charpoly,
        }

    def verified(self) -> bool:
        return all(self.checks().values())

    def to_json(self) -> dict:
        return {
            "kind": "prop3",
            "m": self.m,
            "class": self.klass.to_json(),
            "charpoly": list(self.charpoly),
            "divergence": self.divergence_value,
        }


def bm_charpoly(m: int, n: int) -> tuple[int, ...]:
    """``t^n (t - (m^2+1))^n``, highest degree first."""
    return la.poly_pow((1, -(m * m + 1)), n) + (0,) * n


def _standard_bundles(P: ProductVariety):
    XX = self_product(P)
    M = P.ample
    L1 = pullback(standard_hom("pr1", XX), M)
    L2 = pullback(standard_hom("pr2", XX), M)
    L3 = pullback(standard_hom("mu", XX), M)
    return XX, M, L1, L2, L3


def _divergence(P: ProductVariety, B: NSClass) -> int:
    XX = B.variety
    diff = pullback(standard_hom("iota2", P), B) - pullback(standard_hom("iota3", P), B)
    assert diff.variety == P and XX == self_product(P)
    return intersection_number([diff] * P.dim)


def bm_family(X: Variety, m: int) -> BmRecord:
    """Build and check ``B_m`` on ``X x X`` for a Picard-rank-1 ``X``."""
    if not isinstance(m, int) or m < 1:
        raise DomainError("m must be a positive integer")
    P = _base_product(X)
    XX, M, L1, L2, L3 = _standard_bundles(P)
    coeffs = (1 - m, m * m - m, m)
    B = coeffs[0] * L1 + coeffs[1] * L2 + coeffs[2] * L3

    alphas = [standard_hom(f"alpha{i}", XX) for i in (1, 2, 3)]
    beta: LatticeHom = coeffs[0] * alphas[0] + coeffs[1] * alphas[1] + coeffs[2] * alphas[2]
    beta_ok = beta.matrix == B.matrix and (beta @ beta).matrix == la.mscale(
        QuadExt(m * m + 1), beta.matrix
    )
    v = (QuadExt(1), QuadExt(m))
    return BmRecord(
        m=m,
        n=P.dim,
        klass=B,
        coefficients=coeffs,
        charpoly=analytic_charpoly(B),
        beta_relation_checked=beta_ok,
        nef=nef_test(B),
        restricts_to_generator=pullback(standard_hom("iota1", P), B) == M,
        divergence_value=_divergence(P, B),
        closed_form=B.matrix == tuple(tuple(x * y for y in v) for x in v),
    )


def refute_bound(
    X: Variety, candidate_generators: Sequence[NSClass]
) -> tuple[int, int, BmRecord]:
    """Return ``(c, m, B_m)`` with ``|divergence(B_m)| > |c|``.

    ``c`` is the largest value ``(iota2^* N - iota3^* N)^n`` over the candidates,
    which would bound every effective ``B`` with ``iota1^* B = M`` if the
    candidates generated all effective classes.
    """
    P = _base_product(X)
    XX = self_product(P)
    M = P.ample
    zero = 0 * M
    iota = {k: standard_hom(k, P) for k in ("iota1", "iota2", "iota3")}
    values = []
    for k, N in enumerate(candidate_generators):
        if N.variety != XX:
            raise DomainError(f"candidate {k} does not live on X x X")
        if not nef_test(N):
            raise DomainError(f"candidate {k} is not nef: profile fails for {N}")
        r1 = pullback(iota["iota1"], N)
        if r1 != M and r1 != zero:
            raise DomainError(f"candidate {k}: iota1^* N = {r1} is neither 0 nor M")
        if r1 == zero and pullback(iota["iota2"], N) != pullback(iota["iota3"], N):
            # nef classes vanishing on the first axis are multiples of pr2^*M
            raise AssertionError(f"candidate {k}: iota2^* N != iota3^* N although iota1^* N = 0")
        values.append(_divergence(P, N))
    c = max(values) if values else 0
    m = 1
    while True:
        record = bm_family(P, m)
        if abs(record.divergence_value) > abs(c):
            return c, m, record
        m += 1


# ---------------------------------------------------------------------------
# irrational slope


@dataclass(frozen=True)
class Prop2Certificate:
    s: QuadExt
    certificate: RationalityCertificate
    q: Fraction
    eps: QuadExt
    approximation: tuple[int, int]
    ample_class: NSClass
    candidates: tuple[tuple[int, int], ...]

    def verify(self) -> bool:
        """Re-check every claim exactly."""
        p1, p2 = self.approximation
        r = Fraction(p1, p2)
        return (
            not self.certificate.rational
            and self.certificate.verify(self.s)
            and self.s < r < self.q
            and r < self.s + self.eps
            and self.q == min(Fraction(a, b) for a, b in self.candidates)
            and ample_test(self.ample_class)
        )

    def to_json(self) -> dict:
        return {
            "kind": "prop2",
            "s": self.s.to_json(),
            "minpoly": list(self.certificate.minpoly),
            "q": str(self.q),
            "approx": list(self.approximation),
        }


def prop2_refute(
    L1: NSClass,
    L2: NSClass,
    X: Variety,
    candidate_generators: Sequence[tuple[int, int]],
    eps: Fraction | QuadExt | None = None,
) -> Prop2Certificate:
    """Exhibit an ample ``p1 L1 - p2 L2`` outside the semigroup spanned by the candidates.

    Candidates ``(a, b)`` stand for classes ``a L1 - b L2``.  By default
    ``eps = (q - s)/2``.
    """
    if not isinstance(X, AbstractVariety) or not X.simple:
        raise DomainError("irrational-slope witness needs a simple abstract presentation")
    if not candidate_generators:
        raise DomainError("need at least one candidate generator")
    cands = tuple((int(a), int(b)) for a, b in candidate_generators)
    for a, b in cands:
        if a < 0 or b <= 0:
            raise DomainError(f"candidate ({a}, {b}) needs a >= 0 and b > 0")
    s = boundary_slope(L1, L2, X)
    cert = rationality_certificate(s)
    if cert.rational:
        raise DomainError(f"slope s = {s} is rational; not an irrational-slope case")
    q = min(Fraction(a, b) for a, b in cands)
    if q <= s:
        raise DomainError(f"q = {q} <= s = {s}: some candidate a L1 - b L2 is not nef")
    eps = (QuadExt(q) - s) / 2 if eps is None else QuadExt.coerce(eps)
    if eps <= 0:
        raise DomainError("eps must be positive")
    bound = min(QuadExt(q), s + eps)
    for r in convergents(s):
        if s < r < bound:
            break
    approx = (r.numerator, r.denominator)
    ample = approx[0] * L1 - approx[1] * L2
    if not ample_test(ample):
        raise AssertionError(f"{approx[0]} L1 - {approx[1]} L2 should be ample")
    return Prop2Certificate(
        s=s,
        certificate=cert,
        q=q,
        eps=eps,
        approximation=approx,
        ample_class=ample,
        candidates=cands,
    )
