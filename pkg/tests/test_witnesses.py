from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nefcone import (
    AbstractVariety,
    DomainError,
    NSClass,
    ample_test,
    bm_family,
    prop2_refute,
    refute_bound,
)
from nefcone.exactnum import QuadExt
from nefcone.ns_lattice import self_product
from nefcone.witnesses import bm_charpoly


def rank_one(XX, v):
    return NSClass.from_coefficients(XX, [[x * y for y in v] for x in v])


@pytest.mark.parametrize("m", range(1, 21))
def test_bm_elliptic(E, m):
    rec = bm_family(E, m)
    assert rec.verified()
    assert rec.charpoly == (1, -(m * m + 1), 0)
    # iota2^*B = m^2, iota3^*B = (1+m)^2
    assert rec.divergence_value == m * m - (1 + m) ** 2 == -(2 * m + 1)
    assert rec.coefficients == (1 - m, m * m - m, m)


def test_b1_is_l3(E):
    rec = bm_family(E, 1)
    assert rec.coefficients == (0, 0, 1)
    assert rec.klass == rank_one(self_product(E), (1, 1))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_bm_on_abelian_surface(m):
    # simple surface with NS = Z M, M^2 = 4
    X = AbstractVariety(1, 2, ((4,),), (1,), True)
    rec = bm_family(X, m)
    k = m * m + 1
    assert rec.charpoly == (1, -2 * k, k * k, 0, 0) == bm_charpoly(m, 2)
    # (m^2 - (1+m)^2)^2 M^2
    assert rec.divergence_value == (2 * m + 1) ** 2 * 4
    assert rec.verified()


def test_bm_rejects_bad_input(E, ExE):
    with pytest.raises(DomainError):
        bm_family(E, 0)
    with pytest.raises(DomainError):
        bm_family(ExE, 1)


def test_refute_bound_examples(E):
    XX = self_product(E)
    c, m, rec = refute_bound(E, [rank_one(XX, (1, -5))])
    assert (c, m) == (9, 5) and rec.divergence_value == -11
    assert refute_bound(E, [])[:2] == (0, 1)
    assert refute_bound(E, [bm_family(E, 1).klass])[:2] == (-3, 2)
    # pr2^* M restricts to 0 on the first axis and contributes 0
    assert refute_bound(E, [rank_one(XX, (0, 1))])[:2] == (0, 1)


def test_refute_bound_rejects_invalid_candidates(E):
    XX = self_product(E)
    with pytest.raises(DomainError):
        refute_bound(E, [NSClass.from_coefficients(XX, [[1, 2], [2, 1]])])  # not nef
    with pytest.raises(DomainError):
        refute_bound(E, [rank_one(XX, (2, 1))])  # restricts to 4M
    with pytest.raises(DomainError):
        refute_bound(E, [E.ample])


@given(st.lists(st.integers(-30, 30), max_size=5))
def test_refute_bound_minimal(ks):
    from conftest import elliptic

    E = elliptic()
    XX = self_product(E)
    cands = [rank_one(XX, (1, k)) for k in ks]
    c, m, rec = refute_bound(E, cands)
    # divergence of (1, k) v v^T is k^2 - (1+k)^2 = -(2k+1)
    assert c == max((-(2 * k + 1) for k in ks), default=0)
    assert abs(rec.divergence_value) > abs(c)
    assert m == 1 or 2 * (m - 1) + 1 <= abs(c)


# -- irrational slope -------------------------------------------------------------------


def gram_classes(X):
    return NSClass(X, coords=[1, 0]), NSClass(X, coords=[0, 1])


def test_prop2_example(gram_surface):
    L1, L2 = gram_classes(gram_surface)
    cert = prop2_refute(L1, L2, gram_surface, [(4, 1)])
    assert cert.s == QuadExt(2, 1, 3)
    assert cert.certificate.minpoly == (1, -4, 1) and cert.certificate.discriminant == 12
    assert cert.q == 4 and cert.approximation == (15, 4)
    assert cert.ample_class == 15 * L1 - 4 * L2 and ample_test(cert.ample_class)
    assert cert.verify()
    assert cert.to_json() == {
        "kind": "prop2",
        "s": {"a": "2", "b": "1", "d": 3},
        "minpoly": [1, -4, 1],
        "q": "4",
        "approx": [15, 4],
    }


def test_prop2_closer_candidates(gram_surface):
    L1, L2 = gram_classes(gram_surface)
    cert = prop2_refute(L1, L2, gram_surface, [(15, 4), (4, 1)])
    assert cert.q == Fraction(15, 4) and cert.approximation == (56, 15)
    assert cert.verify()
    cert = prop2_refute(L1, L2, gram_surface, [(4, 1)], eps=Fraction(1, 100))
    assert cert.approximation == (56, 15) and cert.verify()


def test_prop2_errors(gram_surface):
    L1, L2 = gram_classes(gram_surface)
    with pytest.raises(DomainError):
        prop2_refute(L1, L2, gram_surface, [(7, 2)])  # 7/2 < s: not nef
    with pytest.raises(DomainError):
        prop2_refute(L1, L2, gram_surface, [])
    Y = AbstractVariety(2, 2, ((2, 3), (3, 4)), (1, 0), True)
    # (t L1 - L2)^2 = 2t^2 - 6t + 4 has rational roots 1, 2
    A, B = gram_classes(Y)
    with pytest.raises(DomainError):
        prop2_refute(A, B, Y, [(3, 1)])
    Z = AbstractVariety(2, 2, ((2, 4), (4, 2)), (1, 0), False)
    with pytest.raises(DomainError):
        prop2_refute(*gram_classes(Z), Z, [(4, 1)])


@given(st.lists(st.tuples(st.integers(4, 60), st.integers(1, 15)), min_size=1, max_size=4))
def test_prop2_random_candidates(cands):
    X = AbstractVariety(2, 2, ((2, 4), (4, 2)), (1, 0), True)
    s = QuadExt(2, 1, 3)
    cands = [(a, b) for a, b in cands if Fraction(a, b) > s]
    if not cands:
        return
    L1, L2 = gram_classes(X)
    cert = prop2_refute(L1, L2, X, cands)
    assert cert.verify()
    p1, p2 = cert.approximation
    assert all(Fraction(p1, p2) < Fraction(a, b) for a, b in cands)
