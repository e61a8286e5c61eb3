"""Rational polyhedral cones, Hilbert bases, semigroup restriction, slopes and the
polyhedrality decision for nef cones of abelian varieties.

Cones live in ``Z^rho`` with ``rho <= 3``; everything is exact.  Enumeration
bounds used here are our own (the classical statements give finiteness only):

* a Hilbert basis element of a pointed cone lies in the half-open
  parallelepiped of some simplicial subcone spanned by generators, so its
  degree (for any integral grading positive on the cone) is at most the sum of
  the generator degrees;
* generators of ``S intersect Lambda`` for a finite-index sublattice
  ``Lambda`` are ``n_i s_i`` together with the elements ``sum m_i s_i``,
  ``0 <= m_i < n_i``, that lie in ``Lambda`` (``n_i`` the order of ``s_i``
  modulo ``Lambda``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from itertools import combinations, product
from typing import Sequence

from . import _linalg as la
from .errors import DomainError, UnsupportedError
from .exactnum import QuadExt, compare_real, rational_between, real_roots
from .ns_lattice import (
    AbstractVariety,
    NSClass,
    ProductVariety,
    Variety,
    ample_test,
    generator_class,
    intersection_number,
    nef_test,
    ns_basis,
)

MAX_RANK = 3

Vector = tuple[int, ...]


# ---------------------------------------------------------------------------
# cones


@dataclass(frozen=True)
class RationalCone:
    """Cone generated by primitive integer rays (sorted, duplicate-free)."""

    rank: int
    rays: tuple[Vector, ...]

    def __post_init__(self):
        rays = []
        for r in self.rays:
            if len(r) != self.rank:
                raise DomainError(f"ray {r} has wrong length for rank {self.rank}")
            if not any(r):
                raise DomainError("zero vector is not a ray")
            rays.append(la.primitive(r))
        object.__setattr__(self, "rays", tuple(sorted(set(rays))))

    def facets(self) -> tuple[Vector, ...]:
        """Inequalities ``f . x >= 0`` cutting out the cone (standard pairing)."""
        return _facets(self)

    def contains(self, v: Sequence) -> bool:
        if not self.rays:
            return not any(v)
        return all(sum(f_i * v_i for f_i, v_i in zip(f, v)) >= 0 for f in self.facets())

    def is_pointed(self) -> bool:
        fs = self.facets()
        return la.rank_q(fs) == self.rank if fs else not self.rays

    def grading(self) -> Vector:
        """Integral linear form strictly positive on the cone minus the origin."""
        if not self.is_pointed():
            raise DomainError("cone is not pointed")
        w = [sum(f[i] for f in self.facets()) for i in range(self.rank)]
        return la.primitive(w) if any(w) else tuple(w)

    def to_json(self) -> dict:
        return {"rank": self.rank, "rays": [list(r) for r in self.rays]}

    @classmethod
    def from_json(cls, obj: dict) -> RationalCone:
        return cls(int(obj["rank"]), tuple(tuple(int(x) for x in r) for r in obj["rays"]))


@lru_cache(maxsize=None)
def _facets(C: RationalCone) -> tuple[Vector, ...]:
    return _cone_from_inequalities(C.rays, C.rank)


def _check_rank(rank: int) -> None:
    if rank > MAX_RANK:
        raise UnsupportedError(f"cone rank {rank} > {MAX_RANK} is not supported")


def _cone_from_inequalities(rows: Sequence[Sequence[int]], rank: int) -> tuple[Vector, ...]:
    """Generators of ``{y : row . y >= 0 for all rows}``.

    A lineality space contributes both signs of a basis; the pointed part is
    enumerated through its extreme rays (one-dimensional solution spaces of
    rank-1 tight subsystems).
    """
    rows = [tuple(r) for r in rows if any(r)]
    lin = la.nullspace_q(rows, rank) if rows else la.nullspace_q([], rank)
    gens: set[Vector] = set()
    for v in lin:
        gens.add(v)
        gens.add(tuple(-x for x in v))
    need = rank - 1 - len(lin)
    if need < 0:
        return tuple(sorted(gens))
    for subset in combinations(rows, need):
        tight = list(subset) + list(lin)
        if la.rank_q(tight) != rank - 1:
            continue
        (v,) = la.nullspace_q(tight, rank)
        for cand in (v, tuple(-x for x in v)):
            if all(sum(a * b for a, b in zip(r, cand)) >= 0 for r in rows):
                gens.add(cand)
    return tuple(sorted(gens))


def dual_cone(C: RationalCone, pairing: Sequence[Sequence[int]] | None = None) -> RationalCone:
    """``{y : <y, x> >= 0 for all x in C}`` with ``<y, x> = y^T G x``."""
    _check_rank(C.rank)
    n = C.rank
    G = pairing if pairing is not None else [[int(i == j) for j in range(n)] for i in range(n)]
    if len(G) != n or any(len(r) != n for r in G):
        raise DomainError("pairing matrix has wrong shape")
    if la.int_det(G) == 0:
        raise DomainError("degenerate pairing")
    rows = [tuple(sum(G[i][j] * x[j] for j in range(n)) for i in range(n)) for x in C.rays]
    return RationalCone(n, _cone_from_inequalities(rows, n))


# ---------------------------------------------------------------------------
# semigroups


@dataclass(frozen=True)
class SemigroupBasis:
    generators: tuple[Vector, ...]
    index: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(sorted(set(map(tuple, self.generators)))))

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def to_json(self) -> dict:
        out = {"generators": [list(g) for g in self.generators]}
        if self.index is not None:
            out["index"] = self.index
        return out


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def in_semigroup(x: Sequence[int], gens: Sequence[Vector], grading: Sequence[int]) -> bool:
    """Whether ``x`` is a non-negative integer combination of ``gens`` (pointed case)."""
    gens = [g for g in gens if any(g)]
    if any(_dot(grading, g) <= 0 for g in gens):
        raise DomainError("grading is not positive on the generators")

    @lru_cache(maxsize=None)
    def reach(v: Vector) -> bool:
        if not any(v):
            return True
        if _dot(grading, v) <= 0:
            return False
        return any(reach(tuple(a - b for a, b in zip(v, g))) for g in gens)

    return reach(tuple(x))


def minimalize(gens: Sequence[Vector], grading: Sequence[int]) -> tuple[Vector, ...]:
    """Drop generators that are non-negative combinations of the others."""
    gens = sorted(set(tuple(g) for g in gens if any(g)))
    keep = []
    for g in gens:
        others = [h for h in gens if h != g]
        if not in_semigroup(g, others, grading):
            keep.append(g)
    return tuple(keep)


def hilbert_basis(C: RationalCone, box: int | None = None) -> SemigroupBasis:
    """Minimal generating set of ``C intersect Z^rho`` for a pointed cone."""
    _check_rank(C.rank)
    if not C.rays:
        return SemigroupBasis(())
    if not C.is_pointed():
        raise DomainError("Hilbert basis needs a pointed cone")
    w = C.grading()
    max_deg = sum(_dot(w, r) for r in C.rays)
    bound = sum(max(abs(x) for x in r) for r in C.rays) if box is None else box
    pts = []
    for v in product(range(-bound, bound + 1), repeat=C.rank):
        if any(v) and _dot(w, v) <= max_deg and C.contains(v):
            pts.append(v)
    pts.sort(key=lambda v: (_dot(w, v), v))
    basis: list[Vector] = []
    for v in pts:
        if not any(C.contains(tuple(a - b for a, b in zip(v, h))) for h in basis):
            basis.append(v)
    return SemigroupBasis(tuple(basis))


def sublattice_index(sublattice: Sequence[Sequence[int]], rank: int) -> int:
    """Index of the lattice spanned by the given basis; 0 when of infinite index."""
    if len(sublattice) != rank or la.rank_q(sublattice) != rank:
        return 0
    return abs(la.int_det(sublattice))


def _in_lattice(x: Sequence[int], basis: Sequence[Sequence[int]]) -> bool:
    z = la.solve_q(basis, x)
    return z is not None and all(c.denominator == 1 for c in z)


def _order_mod(x: Sequence[int], basis: Sequence[Sequence[int]]) -> int:
    z = la.solve_q(basis, x)
    return math.lcm(*(c.denominator for c in z))


def _semigroup_grading(gens: Sequence[Vector], rank: int) -> Vector:
    cone = RationalCone(rank, tuple(g for g in gens if any(g)))
    return cone.grading()


def transfer_generators(
    S: SemigroupBasis | Sequence[Vector], target_sublattice: Sequence[Sequence[int]]
) -> SemigroupBasis:
    """Generators of ``semigroup(S) intersect Lambda`` for a finite-index sublattice ``Lambda``."""
    gens = [tuple(g) for g in S]
    if not gens:
        return SemigroupBasis((), index=None)
    rank = len(gens[0])
    index = sublattice_index(target_sublattice, rank)
    if index == 0:
        raise DomainError("sublattice has infinite index")
    orders = [_order_mod(g, target_sublattice) for g in gens]
    cands = {tuple(n * x for x in g) for n, g in zip(orders, gens)}
    for ms in product(*(range(n) for n in orders)):
        if not any(ms):
            continue
        v = tuple(sum(m * g[i] for m, g in zip(ms, gens)) for i in range(rank))
        if any(v) and _in_lattice(v, target_sublattice):
            cands.add(v)
    w = _semigroup_grading(gens, rank)
    return SemigroupBasis(minimalize(sorted(cands), w), index=index)


def semigroup_restrict(
    S: SemigroupBasis | Sequence[Vector], sublattice: Sequence[Sequence[int]]
) -> SemigroupBasis:
    """Generators of ``semigroup(S) intersect Lambda`` for any sublattice ``Lambda``.

    Full-rank sublattices use the order-mod-Lambda construction (valid for any
    ``S``).  Lower-rank sublattices require ``S`` to be saturated (a Hilbert
    basis of its cone), which is checked; the restricted cone is then computed
    in sublattice coordinates and its Hilbert basis mapped back.
    """
    gens = [tuple(g) for g in S]
    if not gens:
        return SemigroupBasis(())
    rank = len(gens[0])
    basis = [tuple(b) for b in sublattice]
    k = la.rank_q(basis)
    if k != len(basis):
        raise DomainError("sublattice basis is linearly dependent")
    if k == rank:
        return transfer_generators(gens, basis)
    cone = RationalCone(rank, tuple(g for g in gens if any(g)))
    w = cone.grading()
    for h in hilbert_basis(cone):
        if not in_semigroup(h, gens, w):
            raise DomainError(f"generators are not saturated ({h} missing); restriction undefined")
    rows = [tuple(_dot(f, b) for b in basis) for f in cone.facets()]
    sub = RationalCone(k, _cone_from_inequalities(rows, k)) if rows else RationalCone(k, ())
    hb = hilbert_basis(sub)
    back = [tuple(sum(z[j] * basis[j][i] for j in range(k)) for i in range(rank)) for z in hb]
    return SemigroupBasis(tuple(back))


# ---------------------------------------------------------------------------
# boundary slope


def _slope_polynomials(L1: NSClass, L2: NSClass) -> list[tuple[Fraction, ...]]:
    """``p_i(t) = (t L1 - L2)^i A^{g-i}`` for ``i = 1..g``, highest degree first."""
    X = L1.variety
    A = X.ample if isinstance(X, ProductVariety) else X.ample_class
    g = X.dim
    polys = []
    for i in range(1, g + 1):
        coeffs = []
        for k in range(i, -1, -1):  # coefficient of t^k
            val = intersection_number([L1] * k + [L2] * (i - k) + [A] * (g - i))
            coeffs.append(Fraction(math.comb(i, k) * (-1) ** (i - k)) * val)
        polys.append(tuple(coeffs))
    return polys


def _nef_at(polys, t) -> bool:
    return all(QuadExt.coerce(la.poly_eval(p, QuadExt.coerce(t))).sign() >= 0 for p in polys)


def boundary_slope(L1: NSClass, L2: NSClass, X: Variety | None = None) -> QuadExt:
    """``inf {t : t L1 - L2 nef}`` as an exact quadratic or rational number."""
    L1._same(L2)
    X = L1.variety if X is None else X
    if X != L1.variety:
        raise DomainError("classes do not live on the given variety")
    if not ample_test(L1):
        raise DomainError("L1 must be ample")
    polys = _slope_polynomials(L1, L2)
    if isinstance(X, ProductVariety):
        # nef boundary = largest generalized eigenvalue of (H2, H1)
        roots = real_roots(polys[-1])
        s = roots[-1]
        above = s + 1
        below = roots[-2] if len(roots) > 1 else s - 1
    else:
        roots = sorted(
            set(r for p in polys if any(p[:-1]) for r in real_roots(p)),
            key=cmp_to_key(compare_real),
        )
        s, above, below = _abstract_slope(polys, roots)
    _validate_slope(L1, L2, s, above, below)
    return s


def _abstract_slope(polys, roots):
    if not roots or not _nef_at(polys, roots[-1] + 1):
        raise DomainError("t L1 - L2 is never nef for large t (L1 not ample?)")
    idx = len(roots) - 1
    while True:
        r = roots[idx]
        if not _nef_at(polys, r):
            # the nef ray is open at r: impossible for a closed condition
            raise AssertionError("nef locus not closed")
        lower = roots[idx - 1] if idx > 0 else None
        probe = rational_between(lower, r) if lower is not None else r.floor() - 1
        if not _nef_at(polys, probe):
            above = roots[idx + 1] if idx + 1 < len(roots) else r + 1
            below = lower if lower is not None else r - 1
            return r, above, below
        if lower is None:
            raise DomainError("t L1 - L2 is nef for every t; slope is -infinity")
        idx -= 1


def _validate_slope(L1, L2, s, above, below) -> None:
    hi = rational_between(s, above)
    lo = rational_between(below, s)
    if not nef_test(hi * L1 - L2) or nef_test(lo * L1 - L2):
        raise AssertionError(f"slope {s} failed validation at {lo} / {hi}")


# ---------------------------------------------------------------------------
# decision


@dataclass(frozen=True)
class PolyhedralityVerdict:
    polyhedral: bool
    basis: tuple[NSClass, ...] = ()
    witness: str | None = None  # "prop2" | "prop3"
    factor: str | None = None

    def to_json(self) -> dict:
        if self.polyhedral:
            return {"polyhedral": True, "basis": [c.to_json() for c in self.basis]}
        return {"polyhedral": False, "witness": self.witness, "factor": self.factor}


ABSTRACT_FACTOR_ID = "X"


def decide_polyhedral(X: Variety) -> PolyhedralityVerdict:
    """Finite generation of effective classes from the declared isogeny decomposition.

    Polyhedral iff every factor has Picard number 1 and multiplicity 1.  Product
    factors are modelled with Picard number 1; abstract presentations must be
    declared simple.
    """
    if isinstance(X, AbstractVariety):
        if not X.simple:
            raise DomainError(
                "abstract presentation must be declared simple; "
                "supply the isogeny decomposition as a product instead"
            )
        if X.rank == 1:
            return PolyhedralityVerdict(True, basis=(generator_class(X),))
        return PolyhedralityVerdict(False, witness="prop2", factor=ABSTRACT_FACTOR_ID)
    for f in X.factors:
        if f.mult >= 2:
            return PolyhedralityVerdict(False, witness="prop3", factor=f.id)
    n = X.size
    basis = tuple(
        NSClass(X, matrix=[[QuadExt(int(i == j == k)) for j in range(n)] for i in range(n)])
        for k in range(n)
    )
    return PolyhedralityVerdict(True, basis=basis)


def nef_cone(X: Variety) -> RationalCone:
    """Nef cone in :func:`ns_basis` coordinates, when it is rational polyhedral."""
    verdict = decide_polyhedral(X)
    if not verdict.polyhedral:
        raise DomainError(f"nef cone is not rational polyhedral (witness {verdict.witness})")
    basis = ns_basis(X)
    rays = tuple(class_coordinates(c, basis) for c in verdict.basis)
    rays = tuple(tuple(int(x) for x in r) for r in rays)
    return RationalCone(len(basis), rays)


def class_coordinates(L: NSClass, basis: Sequence[NSClass] | None = None) -> tuple[Fraction, ...]:
    """Coordinates of ``L`` in the given (default :func:`ns_basis`) basis."""
    basis = ns_basis(L.variety) if basis is None else basis
    if not L.is_product:
        return L.coords
    X = L.variety

    def flat(c: NSClass):
        out = []
        for i, row in enumerate(c.matrix):
            end = X.factor_of_row(i).end
            for x in row:
                out.extend(end.coefficients(x) if end.is_cm else (x.rational_value(),))
        return out

    z = la.solve_q([flat(b) for b in basis], flat(L))
    if z is None:
        raise DomainError("class not in the span of the basis")
    return z
