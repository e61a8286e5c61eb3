"""Acceptance gate: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (lines also appear in the
terminal summary) or directly with ``python tests/test_acceptance.py``.
"""

import json
import random
import subprocess
import sys
import tempfile
from fractions import Fraction
from itertools import product
from math import factorial
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from cli_inputs import EXAMPLES, write_inputs  # noqa: E402
from oracles import brute_hilbert_basis, semigroup_points  # noqa: E402
from nefcone import (  # noqa: E402
    AbstractVariety,
    EndRing,
    Factor,
    NSClass,
    ProductVariety,
    RationalCone,
    ample_test,
    analytic_charpoly,
    bm_family,
    boundary_slope,
    decide_polyhedral,
    dual_cone,
    hilbert_basis,
    nef_test,
    refute_bound,
    transfer_generators,
)
from nefcone.exactnum import QuadExt, rationality_certificate  # noqa: E402
from nefcone.ns_lattice import intersection_profile, is_psd, self_product  # noqa: E402
from nefcone.schemas import validate  # noqa: E402

RESULTS: list[str] = []


def report(n: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {title} ({detail})"
    RESULTS.append(line)
    print(line)
    assert ok, line


def product_of(mult, D=None):
    end = EndRing("cm", D) if D is not None else EndRing()
    return ProductVariety((Factor("E", end, mult),))


# 1 -----------------------------------------------------------------------------------


def test_criterion_1_nef_equals_psd():
    # closed-form PSD of [[x, z], [conj z, y]]: x >= 0, y >= 0, x*y >= |z|^2
    XZ, XC = product_of(2), product_of(2, -4)
    rng = range(-3, 4)
    bad, count = 0, 0
    for x, b, y in product(rng, repeat=3):
        L = NSClass.from_coefficients(XZ, [[x, b], [b, y]])
        oracle = x >= 0 and y >= 0 and x * y >= b * b
        bad += nef_test(L) != oracle or is_psd(L) != oracle
        count += 1
    z_count = count
    for x, y, a, b in product(rng, repeat=4):
        # omega = -2 + i, so a + b*omega = (a - 2b) + b*i; conj = (a - 4b) - b*omega
        L = NSClass.from_coefficients(XC, [[x, (a, b)], [(a - 4 * b, -b), y]])
        oracle = x >= 0 and y >= 0 and x * y >= (a - 2 * b) ** 2 + b * b
        bad += nef_test(L) != oracle or is_psd(L) != oracle
        count += 1
    report(
        1,
        "nef test agrees with exact PSD on ExE and CM ExE",
        bad == 0 and z_count == 343 and count - z_count == 2401,
        f"{z_count} + {count - z_count} classes, {bad} disagreements",
    )


# 2 -----------------------------------------------------------------------------------


def test_criterion_2_bm_family():
    E = product_of(1)
    failures = []
    mags = []
    for m in range(1, 21):
        rec = bm_family(E, m)
        ok = (
            rec.nef
            and rec.restricts_to_generator
            and rec.beta_relation_checked
            and rec.charpoly == (1, -(m * m + 1), 0)
            and abs(rec.divergence_value) == 2 * m + 1
        )
        if not ok:
            failures.append(m)
        mags.append(abs(rec.divergence_value))
    increasing = all(a < b for a, b in zip(mags, mags[1:]))
    XX = self_product(E)
    cand = NSClass.from_coefficients(XX, [[1, -5], [-5, 25]])
    c, m, _ = refute_bound(E, [cand])
    report(
        2,
        "B_m suite for m = 1..20 and refute_bound",
        not failures and increasing and (c, m) == (9, 5),
        f"failures {failures}, magnitudes {mags[0]}..{mags[-1]} increasing={increasing}, c={c} -> m={m}",
    )


# 3 -----------------------------------------------------------------------------------


def test_criterion_3_coefficient_identity():
    X = product_of(2)
    triples = sorted(product(range(-3, 4), repeat=3), key=lambda t: (max(map(abs, t)), t))[:200]
    bad = 0
    for a, b, c in triples:
        L = NSClass.from_coefficients(X, [[a, b], [b, c]])
        prof, cp = intersection_profile(L), analytic_charpoly(L)
        bad += any(prof[k] != (-1) ** k * factorial(k) * factorial(2 - k) * cp[k] for k in range(3))
    report(3, "L^k A^(2-k) = (-1)^k k!(2-k)! [t^(2-k)] charpoly", bad == 0 and len(triples) == 200,
           f"{len(triples)} classes, {bad} mismatches")


# 4 -----------------------------------------------------------------------------------


def test_criterion_4_decision():
    E1xE2 = ProductVariety((Factor("E1"), Factor("E2")))
    E = product_of(1)
    gram = AbstractVariety(2, 2, ((2, 4), (4, 2)), (1, 0), True)

    def diag(X, k):
        n = X.size
        return NSClass(X, matrix=[[QuadExt(int(i == j == k)) for j in range(n)] for i in range(n)])

    cases = [
        ("E1 x E2", decide_polyhedral(E1xE2), (True, {diag(E1xE2, 0), diag(E1xE2, 1)}, None)),
        ("E", decide_polyhedral(E), (True, {E.ample}, None)),
        ("E x E", decide_polyhedral(product_of(2)), (False, set(), "prop3")),
        ("CM E x E", decide_polyhedral(product_of(2, -4)), (False, set(), "prop3")),
        ("simple surface, rank 2", decide_polyhedral(gram), (False, set(), "prop2")),
    ]
    hits = [name for name, v, (p, basis, w) in cases if (v.polyhedral, set(v.basis), v.witness) == (p, basis, w)]
    report(4, "decision on five presentations", len(hits) == 5, f"{len(hits)}/5 exact matches")


# 5 -----------------------------------------------------------------------------------


def test_criterion_5_hilbert_oracle():
    rng = random.Random(20240501)
    cones = []
    while len(cones) < 20:
        r1, r2 = (tuple(rng.randint(-6, 6) for _ in range(2)) for _ in range(2))
        if any(r1) and any(r2) and r1[0] * r2[1] - r1[1] * r2[0] != 0:
            cones.append((r1, r2))
    bad_hb, bad_dual = [], []
    for r1, r2 in cones:
        C = RationalCone(2, (r1, r2))
        if set(hilbert_basis(C)) != brute_hilbert_basis([r1, r2], 36):
            bad_hb.append((r1, r2))
        if dual_cone(dual_cone(C)) != C:
            bad_dual.append((r1, r2))
    report(5, "Hilbert bases of 20 random pointed planar cones vs box-36 enumeration",
           not bad_hb and not bad_dual, f"{len(bad_hb)} basis mismatches, {len(bad_dual)} biduality failures")


# 6 -----------------------------------------------------------------------------------


def test_criterion_6_irrational_slope():
    from nefcone import prop2_refute

    X = AbstractVariety(2, 2, ((2, 4), (4, 2)), (1, 0), True)
    L1, L2 = NSClass(X, coords=[1, 0]), NSClass(X, coords=[0, 1])
    s = boundary_slope(L1, L2)
    cert = rationality_certificate(s)
    w = prop2_refute(L1, L2, X, [(4, 1)])
    r = Fraction(15, 4)
    ok = (
        s == QuadExt(2, 1, 3)
        and cert.minpoly == (1, -4, 1)
        and cert.discriminant == 12
        and not cert.rational
        and w.q == 4
        and w.approximation == (15, 4)
        and w.ample_class == 15 * L1 - 4 * L2
        and ample_test(w.ample_class)
        and s < r < w.q
        and w.verify()
    )
    report(6, "irrational slope on the Gram [[2,4],[4,2]] surface", ok,
           f"s = {s}, minpoly {list(cert.minpoly)}, disc {cert.discriminant}, q = {w.q}, approx {w.approximation}")


# 7 -----------------------------------------------------------------------------------


def test_criterion_7_transfer():
    t = transfer_generators([(1, 0), (0, 1)], [(1, 1), (1, -1)])
    got = set(t)
    box = 8
    reach = semigroup_points(sorted(got), box)
    even = {(x, y) for x in range(box + 1) for y in range(box + 1) if (x + y) % 2 == 0}
    generates = even <= reach and all(p in even for p in reach)
    member = lambda v: v[0] >= 0 and v[1] >= 0 and (v[0] + v[1]) % 2 == 0  # noqa: E731
    # no generator is another generator plus a point of the semigroup
    minimal = all(not any(member((g[0] - h[0], g[1] - h[1])) for h in got if h != g) for g in got)
    ok = got == {(2, 0), (0, 2), (1, 1)} and generates and minimal and t.index == 2
    report(7, "transfer of the orthant basis to the even sublattice", ok,
           f"{sorted(got)}, generates box <= {box}: {generates}, minimal: {minimal}")


# 8 -----------------------------------------------------------------------------------


def test_criterion_8_cli_determinism():
    details = []
    ok = True
    with tempfile.TemporaryDirectory() as d:
        d = write_inputs(Path(d))
        for argv, schema in EXAMPLES:
            cmd = [sys.executable, "-m", "nefcone.cli", *argv, "--json"]
            outs = [subprocess.run(cmd, cwd=d, capture_output=True) for _ in range(2)]
            same = outs[0].stdout == outs[1].stdout and all(o.returncode == 0 for o in outs)
            try:
                doc = json.loads(outs[0].stdout)
                validate(doc, schema)
                again = json.dumps(doc, sort_keys=True, indent=2) + "\n"
                valid = again.encode() == outs[0].stdout
            except Exception:  # any parse/validation problem counts as failure
                valid = False
            ok &= same and valid
            details.append(f"{argv[0]}: identical={same} schema={valid}")
    report(8, "CLI examples deterministic and schema-valid", ok, "; ".join(details))


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failed = 0
    for t in tests:
        try:
            t()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
