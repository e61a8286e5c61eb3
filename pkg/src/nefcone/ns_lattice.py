"""Neron-Severi lattices of abelian varieties at the level of numerical classes.

Two presentations are supported.

*Product presentations* ``X = X_1^{n_1} x ... x X_r^{n_r}`` with pairwise
non-isogenous factors.  A class is a Hermitian matrix over the factor
endomorphism rings (the symmetric endomorphism attached to the class via the
product polarization ``A``); blocks between different factors vanish.
Elliptic factors may have ``End = Z`` or an imaginary quadratic order of
discriminant ``D`` with generator ``omega = (D + sqrt D)/2``.  A factor of
dimension ``n > 1`` is allowed when its Neron-Severi group is ``Z`` and only
the ``Z``-part of its endomorphisms is modelled.

*Abstract presentations* give a rank-``rho`` lattice together with the full
symmetric ``g``-linear intersection tensor and an ample reference class.

Intersection numbers on products use the mixed discriminant:
``L_1 ... L_g = s * sum_{S} (-1)^{g-|S|} det(sum_{i in S} H_i)`` where the
sum runs over subsets of the arguments and ``s`` is a fixed positive scale
(``s = 1`` for products of elliptic curves, so that ``A^g = g!``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb, factorial
from typing import Sequence, Union

from . import _linalg as la
from .errors import DomainError, PresentationError
from .exactnum import QuadExt

__all__ = [
    "EndRing",
    "Factor",
    "ProductVariety",
    "AbstractVariety",
    "NSClass",
    "LatticeHom",
    "build_variety",
    "variety_to_json",
    "class_from_json",
    "standard_hom",
    "identity_hom",
    "pullback",
    "intersection_number",
    "intersection_profile",
    "analytic_charpoly",
    "nef_test",
    "ample_test",
    "is_psd",
    "is_positive_definite",
    "ns_rank",
    "ns_basis",
    "self_product",
    "as_product",
    "generator_class",
]


# ---------------------------------------------------------------------------
# endomorphism rings


@dataclass(frozen=True)
class EndRing:
    """``Z`` or the imaginary quadratic order of discriminant ``D``."""

    kind: str = "Z"
    D: int | None = None

    def __post_init__(self):
        if self.kind == "Z":
            if self.D is not None:
                raise PresentationError("End = Z takes no discriminant")
        elif self.kind == "cm":
            D = self.D
            if not isinstance(D, int) or D >= 0 or D % 4 not in (0, 1):
                raise PresentationError(f"bad CM discriminant {D!r}: need D < 0, D = 0,1 mod 4")
        else:
            raise PresentationError(f"unknown endomorphism ring kind {self.kind!r}")

    @property
    def is_cm(self) -> bool:
        return self.kind == "cm"

    @property
    def omega(self) -> QuadExt:
        if not self.is_cm:
            raise ValueError("End = Z has no CM generator")
        return QuadExt(Fraction(self.D, 2), Fraction(1, 2), self.D)

    def embed(self, a, b=0) -> QuadExt:
        """Complex embedding of ``a + b*omega``."""
        if b and not self.is_cm:
            raise PresentationError("omega-coefficient given for End = Z")
        if not b:
            return QuadExt(a)
        return QuadExt(a) + QuadExt(b) * self.omega

    def coefficients(self, x: QuadExt) -> tuple[Fraction, Fraction]:
        """Inverse of :meth:`embed`: ``x = a + b*omega``."""
        if x.b == 0:
            return x.a, Fraction(0)
        if not self.is_cm:
            raise ValueError(f"{x} is not rational")
        w = self.omega
        if x.d != w.d:
            raise ValueError(f"{x} not in Q(sqrt {self.D})")
        b = x.b / w.b
        return x.a - b * w.a, b

    def contains(self, x: QuadExt) -> bool:
        try:
            a, b = self.coefficients(x)
        except ValueError:
            return False
        return a.denominator == 1 and b.denominator == 1

    @property
    def rank(self) -> int:
        return 2 if self.is_cm else 1

    def to_json(self) -> dict:
        return {"kind": "cm", "D": self.D} if self.is_cm else {"kind": "Z"}


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Factor:
    id: str
    end: EndRing = EndRing()
    mult: int = 1
    dim: int = 1
    degree: int | None = None  # top self-intersection of the ample generator

    def __post_init__(self):
        if not isinstance(self.mult, int) or self.mult < 1:
            raise PresentationError(f"factor {self.id!r}: multiplicity must be >= 1")
        if not isinstance(self.dim, int) or self.dim < 1:
            raise PresentationError(f"factor {self.id!r}: dimension must be >= 1")
        if self.dim > 1 and self.end.is_cm:
            raise PresentationError(f"factor {self.id!r}: CM model only for elliptic factors")
        if self.degree is None:
            object.__setattr__(self, "degree", factorial(self.dim))
        if self.degree <= 0 or self.degree % factorial(self.dim):
            raise PresentationError(
                f"factor {self.id!r}: degree must be a positive multiple of dim! (got {self.degree})"
            )

    @property
    def scale(self) -> Fraction:
        return Fraction(self.degree, factorial(self.dim))


@dataclass(frozen=True)
class ProductVariety:
    factors: tuple[Factor, ...]

    def __post_init__(self):
        if not self.factors:
            raise PresentationError("product needs at least one factor")
        ids = [f.id for f in self.factors]
        if len(set(ids)) != len(ids):
            raise PresentationError("factor ids must be distinct (copies are expressed via mult)")

    @property
    def size(self) -> int:
        """Side length of class matrices (number of factor copies)."""
        return sum(f.mult for f in self.factors)

    @property
    def dim(self) -> int:
        return sum(f.mult * f.dim for f in self.factors)

    @property
    def scale(self) -> Fraction:
        s = Fraction(1)
        for f in self.factors:
            s *= f.scale ** f.mult
        return s

    def blocks(self) -> list[tuple[Factor, range]]:
        out = []
        start = 0
        for f in self.factors:
            out.append((f, range(start, start + f.mult)))
            start += f.mult
        return out

    def factor_of_row(self, i: int) -> Factor:
        for f, rows in self.blocks():
            if i in rows:
                return f
        raise IndexError(i)

    @property
    def ample(self) -> NSClass:
        return NSClass(self, matrix=la.identity(self.size))


@dataclass(frozen=True)
class AbstractVariety:
    rank: int
    dim: int
    tensor: tuple  # nested tuples of ints, shape rank^dim
    ample: tuple[Fraction, ...]
    simple: bool | None = None
    _values: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.rank < 1 or self.dim < 1:
            raise PresentationError("abstract presentation needs rank >= 1 and dim >= 1")
        values = {}
        for idx in product(range(self.rank), repeat=self.dim):
            node = self.tensor
            try:
                for i in idx:
                    node = node[i]
            except (IndexError, TypeError):
                raise PresentationError(f"tensor has wrong shape at index {idx}") from None
            if not isinstance(node, int):
                raise PresentationError(f"tensor entry at {idx} is not an integer")
            values[idx] = node
        for idx, v in values.items():
            if values[tuple(sorted(idx))] != v:
                raise PresentationError(f"intersection tensor not symmetric at {idx}")
        object.__setattr__(self, "_values", values)
        if len(self.ample) != self.rank:
            raise PresentationError("ample reference has wrong length")
        object.__setattr__(self, "ample", tuple(Fraction(x) for x in self.ample))
        top = self.evaluate([self.ample] * self.dim)
        if top <= 0:
            raise PresentationError(f"ample reference has top self-intersection {top} <= 0")

    def evaluate(self, vectors: Sequence[Sequence[Fraction]]) -> Fraction:
        total = Fraction(0)
        for idx, v in self._values.items():
            if v:
                term = Fraction(v)
                for vec, i in zip(vectors, idx):
                    term *= vec[i]
                    if not term:
                        break
                total += term
        return total

    def tensor_value0(self) -> int:
        return self._values[(0,) * self.dim]

    @property
    def ample_class(self) -> NSClass:
        return NSClass(self, coords=self.ample)


Variety = Union[ProductVariety, AbstractVariety]


def _reference(X: Variety) -> NSClass:
    return X.ample if isinstance(X, ProductVariety) else X.ample_class


# ---------------------------------------------------------------------------
# classes


class NSClass:
    """A numerical class, Hermitian matrix (products) or coordinate vector (abstract)."""

    __slots__ = ("variety", "matrix", "coords")

    def __init__(self, variety: Variety, matrix=None, coords=None) -> None:
        self.variety = variety
        self.matrix = None
        self.coords = None
        if isinstance(variety, ProductVariety):
            if matrix is None or coords is not None:
                raise PresentationError("product classes are given by a matrix")
            m = tuple(tuple(QuadExt.coerce(x) for x in row) for row in matrix)
            _check_hermitian(variety, m)
            self.matrix = m
        else:
            if coords is None or matrix is not None:
                raise PresentationError("abstract classes are given by coordinates")
            c = tuple(Fraction(x) for x in coords)
            if len(c) != variety.rank:
                raise PresentationError(f"expected {variety.rank} coordinates, got {len(c)}")
            self.coords = c

    @classmethod
    def from_coefficients(cls, X: ProductVariety, entries) -> NSClass:
        """Build from a matrix of ``(a, b)`` pairs meaning ``a + b*omega`` (or plain integers)."""
        rows = []
        for i, row in enumerate(entries):
            r = []
            for j, e in enumerate(row):
                fi, fj = X.factor_of_row(i), X.factor_of_row(j)
                a, b = (e, 0) if isinstance(e, (int, Fraction)) else e
                if fi.id != fj.id:
                    if a or b:
                        raise PresentationError(
                            f"entry ({i},{j}) links non-isogenous factors and must be 0"
                        )
                    r.append(QuadExt(0))
                else:
                    r.append(fi.end.embed(a, b))
            rows.append(r)
        return cls(X, matrix=rows)

    @property
    def is_product(self) -> bool:
        return self.matrix is not None

    def _same(self, other: NSClass) -> None:
        if not isinstance(other, NSClass):
            raise TypeError("expected an NSClass")
        if other.variety != self.variety:
            raise DomainError("classes live on different varieties")

    def __add__(self, other):
        if not isinstance(other, NSClass):
            return NotImplemented
        self._same(other)
        if self.is_product:
            return NSClass(self.variety, matrix=la.madd(self.matrix, other.matrix))
        return NSClass(self.variety, coords=[x + y for x, y in zip(self.coords, other.coords)])

    def __neg__(self):
        return (-1) * self

    def __sub__(self, other):
        if not isinstance(other, NSClass):
            return NotImplemented
        return self + (-other)

    def __rmul__(self, c):
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        if self.is_product:
            return NSClass(self.variety, matrix=la.mscale(QuadExt(c), self.matrix))
        return NSClass(self.variety, coords=[c * x for x in self.coords])

    def __eq__(self, other):
        if not isinstance(other, NSClass):
            return NotImplemented
        return (
            self.variety == other.variety
            and self.matrix == other.matrix
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.matrix, self.coords))

    def is_zero(self) -> bool:
        if self.is_product:
            return all(not x for row in self.matrix for x in row)
        return all(x == 0 for x in self.coords)

    def is_integral(self) -> bool:
        """Whether the class lies in the lattice (not only in NS tensor Q)."""
        if not self.is_product:
            return all(x.denominator == 1 for x in self.coords)
        X = self.variety
        for i, row in enumerate(self.matrix):
            end = X.factor_of_row(i).end
            for x in row:
                if x and not end.contains(x):
                    return False
        return True

    def coefficient_matrix(self) -> list[list[tuple[Fraction, Fraction]]]:
        X = self.variety
        return [
            [X.factor_of_row(i).end.coefficients(x) for x in row]
            for i, row in enumerate(self.matrix)
        ]

    def to_json(self) -> dict:
        if self.is_product:
            return {
                "matrix": [
                    [{"a": _num_json(a), "b": _num_json(b)} for a, b in row]
                    for row in self.coefficient_matrix()
                ]
            }
        return {"coords": [str(x) for x in self.coords]}

    def __repr__(self):
        if self.is_product:
            return f"NSClass({[[str(x) for x in row] for row in self.matrix]})"
        return f"NSClass(coords={[str(x) for x in self.coords]})"


def _num_json(x: Fraction):
    return x.numerator if x.denominator == 1 else str(x)


def _check_hermitian(X: ProductVariety, m) -> None:
    n = X.size
    if len(m) != n or any(len(row) != n for row in m):
        raise PresentationError(f"class matrix must be {n}x{n}")
    for i in range(n):
        fi = X.factor_of_row(i)
        for j in range(n):
            fj = X.factor_of_row(j)
            x = m[i][j]
            if fi.id != fj.id and x:
                raise PresentationError(f"entry ({i},{j}) links non-isogenous factors and must be 0")
            if m[j][i] != x.conjugate():
                raise PresentationError(f"class matrix not Hermitian at ({i},{j})")
            if x and fi.id == fj.id:
                try:
                    fi.end.coefficients(x)
                except ValueError:
                    raise PresentationError(f"entry ({i},{j}) not in End({fi.id}) tensor Q") from None


# ---------------------------------------------------------------------------
# JSON


def build_variety(doc: dict) -> Variety:
    """Validate a JSON-style presentation and build it."""
    if not isinstance(doc, dict) or len(doc) != 1:
        raise PresentationError("variety must have exactly one of 'product' or 'abstract'")
    if "product" in doc:
        body = doc["product"]
        try:
            factors = []
            for f in body["factors"]:
                end = f.get("end", {"kind": "Z"})
                factors.append(
                    Factor(
                        id=str(f["id"]),
                        end=EndRing(end["kind"], end.get("D")),
                        mult=f.get("mult", 1),
                        dim=f.get("dim", 1),
                        degree=f.get("degree"),
                    )
                )
        except (KeyError, TypeError) as exc:
            raise PresentationError(f"malformed product presentation: {exc}") from None
        return ProductVariety(tuple(factors))
    if "abstract" in doc:
        body = doc["abstract"]
        try:
            return AbstractVariety(
                rank=int(body["rank"]),
                dim=int(body["dim"]),
                tensor=_freeze(body["tensor"]),
                ample=tuple(Fraction(str(x)) for x in body["ample"]),
                simple=body.get("simple"),
            )
        except (KeyError, TypeError) as exc:
            raise PresentationError(f"malformed abstract presentation: {exc}") from None
    raise PresentationError("variety must have exactly one of 'product' or 'abstract'")


def _freeze(t):
    if isinstance(t, list):
        return tuple(_freeze(x) for x in t)
    return t


def _thaw(t):
    if isinstance(t, tuple):
        return [_thaw(x) for x in t]
    return t


def variety_to_json(X: Variety) -> dict:
    if isinstance(X, ProductVariety):
        factors = []
        for f in X.factors:
            d = {"id": f.id, "end": f.end.to_json(), "mult": f.mult}
            if f.dim != 1:
                d["dim"] = f.dim
                d["degree"] = f.degree
            factors.append(d)
        return {"product": {"factors": factors}}
    body = {
        "rank": X.rank,
        "dim": X.dim,
        "tensor": _thaw(X.tensor),
        "ample": [_num_json(x) for x in X.ample],
    }
    if X.simple is not None:
        body["simple"] = X.simple
    return {"abstract": body}


def class_from_json(obj: dict, X: Variety) -> NSClass:
    try:
        if "matrix" in obj:
            if not isinstance(X, ProductVariety):
                raise PresentationError("matrix class given for an abstract presentation")
            entries = [
                [(Fraction(str(e["a"])), Fraction(str(e.get("b", 0)))) for e in row]
                for row in obj["matrix"]
            ]
            return NSClass.from_coefficients(X, entries)
        if "coords" in obj:
            if not isinstance(X, AbstractVariety):
                raise PresentationError("coordinate class given for a product presentation")
            return NSClass(X, coords=[Fraction(str(c)) for c in obj["coords"]])
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, PresentationError):
            raise
        raise PresentationError(f"malformed class: {exc}") from None
    raise PresentationError("class needs 'matrix' or 'coords'")


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class LatticeHom:
    """Homomorphism ``source -> target`` as a (target.size x source.size) block matrix."""

    source: ProductVariety
    target: ProductVariety
    matrix: tuple

    def __post_init__(self):
        m = self.matrix
        if len(m) != self.target.size or any(len(r) != self.source.size for r in m):
            raise PresentationError("hom matrix shape does not match source/target")
        for i, row in enumerate(m):
            fi = self.target.factor_of_row(i)
            for j, x in enumerate(row):
                fj = self.source.factor_of_row(j)
                if x and fi.id != fj.id:
                    raise PresentationError("Hom between non-isogenous factors is zero")

    def __matmul__(self, other: LatticeHom) -> LatticeHom:
        """Composition ``self o other``."""
        if other.target != self.source:
            raise DomainError("composition: target/source mismatch")
        return LatticeHom(other.source, self.target, la.matmul(self.matrix, other.matrix))

    def __add__(self, other: LatticeHom) -> LatticeHom:
        if (self.source, self.target) != (other.source, other.target):
            raise DomainError("cannot add homs with different source/target")
        return LatticeHom(self.source, self.target, la.madd(self.matrix, other.matrix))

    def __rmul__(self, c):
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        return LatticeHom(self.source, self.target, la.mscale(QuadExt(c), self.matrix))

    def __mul__(self, other):
        return self @ other if isinstance(other, LatticeHom) else NotImplemented


def identity_hom(X: ProductVariety) -> LatticeHom:
    return LatticeHom(X, X, la.identity(X.size))


def self_product(X: ProductVariety) -> ProductVariety:
    """``X x X``: each factor multiplicity doubled; first-copy rows precede second-copy rows."""
    return ProductVariety(
        tuple(Factor(f.id, f.end, 2 * f.mult, f.dim, f.degree) for f in X.factors)
    )


def _halve(XX: ProductVariety) -> ProductVariety:
    if any(f.mult % 2 for f in XX.factors):
        raise DomainError("variety is not of the form X x X (odd multiplicity)")
    return ProductVariety(
        tuple(Factor(f.id, f.end, f.mult // 2, f.dim, f.degree) for f in XX.factors)
    )


# (rows of X x X) x (cols of X) pattern per factor block, or the transpose shape
_EMBEDDINGS = {"iota1": (1, 0), "iota2": (0, 1), "iota3": (1, 1)}
_PROJECTIONS = {"pr1": (1, 0), "pr2": (0, 1), "mu": (1, 1)}
# 2x2 block patterns acting on column vectors (x, y)
_ENDOS = {
    "alpha1": ((1, 0), (0, 0)),
    "alpha2": ((0, 0), (0, 1)),
    "alpha3": ((1, 1), (1, 1)),
}
STANDARD_HOMS = tuple(_EMBEDDINGS) + tuple(_PROJECTIONS) + tuple(_ENDOS)


def _block_pattern(small: ProductVariety, big: ProductVariety, pattern, rows_big: bool):
    """Assemble a hom matrix from a per-factor 2x2 (or 2x1/1x2) integer pattern."""
    nr = big.size if rows_big else small.size
    nc = small.size if rows_big else big.size
    m = [[QuadExt(0)] * nc for _ in range(nr)]
    for (f, srows), (_, brows) in zip(small.blocks(), big.blocks()):
        k = f.mult
        for i in range(k):
            for half in (0, 1):
                c = pattern[half]
                if not c:
                    continue
                b = brows[half * k + i]
                s = srows[i]
                if rows_big:
                    m[b][s] = QuadExt(c)
                else:
                    m[s][b] = QuadExt(c)
    return tuple(tuple(r) for r in m)


def standard_hom(name: str, X: ProductVariety) -> LatticeHom:
    """The named map among ``X -> X x X`` (iota*), ``X x X -> X`` (pr*, mu), ``X x X -> X x X`` (alpha*).

    For ``iota*`` pass the base ``X``; for the others pass ``X x X``.
    """
    if not isinstance(X, ProductVariety):
        raise DomainError("standard homomorphisms need a product presentation")
    if name in _EMBEDDINGS:
        XX = self_product(X)
        return LatticeHom(X, XX, _block_pattern(X, XX, _EMBEDDINGS[name], rows_big=True))
    if name in _PROJECTIONS:
        base = _halve(X)
        return LatticeHom(X, base, _block_pattern(base, X, _PROJECTIONS[name], rows_big=False))
    if name in _ENDOS:
        base = _halve(X)
        pat = _ENDOS[name]
        m = [[QuadExt(0)] * X.size for _ in range(X.size)]
        for (f, _), (_, brows) in zip(base.blocks(), X.blocks()):
            k = f.mult
            for i in range(k):
                for r in (0, 1):
                    for c in (0, 1):
                        if pat[r][c]:
                            m[brows[r * k + i]][brows[c * k + i]] = QuadExt(pat[r][c])
        return LatticeHom(X, X, tuple(tuple(r) for r in m))
    raise ValueError(f"unknown standard homomorphism {name!r}")


def pullback(f: LatticeHom, H: NSClass) -> NSClass:
    """``f^* H = f' H f`` with ``f'`` the conjugate transpose."""
    if not H.is_product:
        raise DomainError("pullback along block homs needs a product presentation")
    if H.variety != f.target:
        raise DomainError("class does not live on the target of the homomorphism")
    m = la.matmul(la.matmul(la.conj_transpose(f.matrix), H.matrix), f.matrix)
    return NSClass(f.source, matrix=m)


# ---------------------------------------------------------------------------
# intersection theory


def _block_det(X: ProductVariety, m) -> QuadExt:
    """det of the complex embedding; each factor block enters with power dim."""
    total = QuadExt(1)
    for f, rows in X.blocks():
        d = la.det(la.submatrix(m, rows))
        total = total * d ** f.dim
    return total


def intersection_number(classes: Sequence[NSClass]):
    """Intersection number ``L_1 ... L_g`` (exact; an ``int`` for lattice classes)."""
    classes = list(classes)
    if not classes:
        raise DomainError("need at least one class")
    X = classes[0].variety
    for c in classes[1:]:
        classes[0]._same(c)
    if len(classes) != X.dim:
        raise DomainError(f"need exactly {X.dim} classes, got {len(classes)}")
    if isinstance(X, AbstractVariety):
        value = X.evaluate([c.coords for c in classes])
    else:
        g = len(classes)
        acc = QuadExt(0)
        for k in range(1, g + 1):
            sign = -1 if (g - k) % 2 else 1
            for subset in combinations(classes, k):
                m = subset[0].matrix
                for c in subset[1:]:
                    m = la.madd(m, c.matrix)
                acc = acc + sign * _block_det(X, m)
        if not acc.is_rational:
            raise DomainError(f"intersection number {acc} is not rational (normalization bug)")
        value = acc.rational_value() * X.scale
    if all(c.is_integral() for c in classes):
        if value.denominator != 1:
            raise DomainError(f"non-integral intersection number {value} of lattice classes")
        return int(value)
    return value


def intersection_profile(L: NSClass, A: NSClass | None = None) -> list:
    """``[L^i A^{g-i} for i = 0..g]``."""
    X = L.variety
    A = _reference(X) if A is None else A
    g = X.dim
    return [intersection_number([L] * i + [A] * (g - i)) for i in range(g + 1)]


def analytic_charpoly(H: NSClass) -> tuple[int, ...]:
    """Characteristic polynomial of the complex embedding of H (highest degree first)."""
    if not H.is_product:
        raise DomainError("analytic characteristic polynomial needs a product presentation")
    X = H.variety
    poly: tuple = (QuadExt(1),)
    for f, rows in X.blocks():
        block = la.charpoly(la.submatrix(H.matrix, rows))
        poly = la.poly_mul(poly, la.poly_pow(block, f.dim))
    out = []
    for c in poly:
        c = QuadExt.coerce(c)
        if not c.is_rational:
            raise DomainError(f"charpoly coefficient {c} not rational")
        v = c.rational_value()
        out.append(int(v) if v.denominator == 1 else v)
    return tuple(out)


def _blocks_of(H: NSClass):
    X = H.variety
    for f, rows in X.blocks():
        yield f, la.submatrix(H.matrix, rows)


def is_psd(H: NSClass) -> bool:
    """Exact positive semidefiniteness of the complex embedding (all principal minors)."""
    return all(m.rational_value() >= 0 for _, b in _blocks_of(H) for m in la.principal_minors(b))


def is_positive_definite(H: NSClass) -> bool:
    """Sylvester's criterion on each factor block."""
    return all(m.rational_value() > 0 for _, b in _blocks_of(H) for m in la.leading_minors(b))


def nef_test(L: NSClass, X: Variety | None = None) -> bool:
    """``L^i A^{g-i} >= 0`` for ``1 <= i <= g`` against the ample reference ``A``."""
    if X is not None and X != L.variety:
        raise DomainError("class does not live on the given variety")
    return all(v >= 0 for v in intersection_profile(L)[1:])


def ample_test(L: NSClass, X: Variety | None = None) -> bool:
    """Strict positivity ``L^i A^{g-i} > 0`` for ``0 <= i <= g``.

    On products the answer is cross-checked against positive definiteness.
    """
    if X is not None and X != L.variety:
        raise DomainError("class does not live on the given variety")
    answer = all(v > 0 for v in intersection_profile(L))
    if L.is_product and answer != is_positive_definite(L):
        raise AssertionError("intersection-number and Sylvester ampleness disagree")
    return answer


def ns_rank(X: Variety) -> int:
    if isinstance(X, AbstractVariety):
        return X.rank
    total = 0
    for f in X.factors:
        n = f.mult
        total += n * n if f.end.is_cm else n * (n + 1) // 2
    return total


def ns_basis(X: Variety) -> list[NSClass]:
    """A Z-basis of the modelled Neron-Severi lattice."""
    if isinstance(X, AbstractVariety):
        return [NSClass(X, coords=[int(i == j) for j in range(X.rank)]) for i in range(X.rank)]
    n = X.size
    basis = []

    def unit(entries):
        m = [[QuadExt(0)] * n for _ in range(n)]
        for (i, j), v in entries.items():
            m[i][j] = v
        return NSClass(X, matrix=m)

    for f, rows in X.blocks():
        for i in rows:
            basis.append(unit({(i, i): QuadExt(1)}))
        for i, j in combinations(rows, 2):
            basis.append(unit({(i, j): QuadExt(1), (j, i): QuadExt(1)}))
            if f.end.is_cm:
                w = f.end.omega
                basis.append(unit({(i, j): w, (j, i): w.conjugate()}))
    return basis


def as_product(X: AbstractVariety, factor_id: str = "X") -> ProductVariety:
    """Re-present a simple Picard-rank-1 abstract variety as a one-factor product."""
    if X.rank != 1:
        raise DomainError(f"need Picard rank 1, got {X.rank}")
    if X.simple is False:
        raise DomainError("rank-1 presentation declared non-simple")
    degree = generator_class(X).coords[0] ** X.dim * X.tensor_value0()
    return ProductVariety((Factor(factor_id, EndRing(), 1, X.dim, int(degree)),))


def generator_class(X: Variety) -> NSClass:
    """The ample generator ``M`` of a Picard-rank-1 presentation."""
    if isinstance(X, AbstractVariety):
        if X.rank != 1:
            raise DomainError("generator only defined for Picard rank 1")
        sign = 1 if X.ample[0] > 0 else -1
        return NSClass(X, coords=[sign])
    if X.size != 1:
        raise DomainError("generator only defined for a single simple factor")
    return X.ample
