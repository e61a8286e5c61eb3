"""``nefcone`` command line front end.

Exit status: 0 on success, 1 on I/O, parse or usage errors, 2 when the
mathematics refuses the request (a :class:`~nefcone.errors.DomainError`).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from itertools import product
from math import factorial
from pathlib import Path
from typing import Sequence

from . import cone_engine as ce
from . import ns_lattice as ns
from . import witnesses as wt
from .errors import DomainError, PresentationError
from .exactnum import rationality_certificate
from .schemas import validate

DEFAULT_MAX_BOX = 10


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def max_box() -> int:
    raw = os.environ.get("NEFCONE_MAX_BOX")
    if raw is None:
        return DEFAULT_MAX_BOX
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"NEFCONE_MAX_BOX must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError("NEFCONE_MAX_BOX must be positive")
    return value


def _load(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise PresentationError(f"{path}: not valid JSON ({exc})") from None


def _variety(path: str) -> ns.Variety:
    doc = _load(path)
    validate(doc, "variety")
    return ns.build_variety(doc)


def _class(path: str, X: ns.Variety) -> ns.NSClass:
    doc = _load(path)
    validate(doc, "class")
    return ns.class_from_json(doc, X)


def _cone(path: str) -> ce.RationalCone:
    doc = _load(path)
    validate(doc, "cone")
    return ce.RationalCone.from_json(doc)


def _vectors(path: str) -> list[tuple[int, ...]]:
    doc = _load(path)
    if isinstance(doc, dict):
        validate(doc, "semigroup")
        doc = doc["generators"]
    if not isinstance(doc, list) or not all(
        isinstance(v, list) and all(isinstance(x, int) for x in v) for v in doc
    ):
        raise PresentationError(f"{path}: expected a list of integer vectors")
    return [tuple(v) for v in doc]


def _num(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    return x


# ---------------------------------------------------------------------------
# verbs; each returns (json document, checklist lines)


def cmd_nef(args):
    X = _variety(args.variety)
    L = _class(args.klass, X)
    prof = ns.intersection_profile(L)
    ok = ns.nef_test(L)
    checks = [(f"L^{i} A^{X.dim - i} = {_num(v)} >= 0", v >= 0) for i, v in enumerate(prof) if i]
    if L.is_product:
        checks.append(("complex embedding PSD (principal minors) agrees", ns.is_psd(L) == ok))
    return {"nef": ok, "intersections": [_num(v) for v in prof]}, checks


def cmd_ample(args):
    X = _variety(args.variety)
    L = _class(args.klass, X)
    prof = ns.intersection_profile(L)
    ok = ns.ample_test(L)
    checks = [(f"L^{i} A^{X.dim - i} = {_num(v)} > 0", v > 0) for i, v in enumerate(prof)]
    if L.is_product:
        checks.append(("Sylvester criterion agrees with intersection numbers", True))
    return {"ample": ok, "intersections": [_num(v) for v in prof]}, checks


def cmd_intersect(args):
    X = _variety(args.variety)
    classes = [_class(p, X) for p in args.klass]
    value = ns.intersection_number(classes)
    return {"intersection": _num(value)}, [(f"{len(classes)} classes on a {X.dim}-dimensional variety", True)]


def cmd_charpoly(args):
    X = _variety(args.variety)
    L = _class(args.klass, X)
    cp = ns.analytic_charpoly(L)
    g = X.dim
    prof = ns.intersection_profile(L)
    scale = X.scale
    link = all(
        prof[k] == scale * (-1) ** k * factorial(k) * factorial(g - k) * cp[k] for k in range(g + 1)
    )
    return {"charpoly": [_num(c) for c in cp]}, [
        (f"L^k A^(g-k) = (-1)^k k!(g-k)! [t^(g-k)] for k = 0..{g}", link)
    ]


def cmd_rank(args):
    X = _variety(args.variety)
    return {"rank": ns.ns_rank(X)}, []


def cmd_decide(args):
    X = _variety(args.variety)
    v = ce.decide_polyhedral(X)
    checks = []
    if v.polyhedral:
        checks.append((f"{len(v.basis)} block generators, each nef", all(ns.nef_test(c) for c in v.basis)))
        cone = ce.nef_cone(X)
        hb = ce.hilbert_basis(cone)
        checks.append(("Hilbert basis of nef cone equals block basis", set(hb) == set(cone.rays)))
    else:
        checks.append((f"witness constructor: {v.witness} on factor {v.factor}", True))
    return v.to_json(), checks


def _box_check(cone: ce.RationalCone, gens, box: int) -> bool:
    w = cone.grading()
    for v in product(range(-box, box + 1), repeat=cone.rank):
        if any(v) and cone.contains(v) and not ce.in_semigroup(v, gens, w):
            return False
    return True


def cmd_hilbert(args):
    cone = _cone(args.cone)
    hb = ce.hilbert_basis(cone)
    box = max_box()
    w = cone.grading() if hb.generators else None
    gen_ok = _box_check(cone, hb.generators, box) if hb.generators else True
    minimal = all(
        not ce.in_semigroup(g, [h for h in hb if h != g], w) for g in hb
    ) if hb.generators else True
    if not (gen_ok and minimal):
        raise AssertionError("Hilbert basis verification failed")
    checks = [
        (f"generates every lattice point of C with |coords| <= {box}", True),
        ("minimal (no element is a combination of the others)", True),
    ]
    return hb.to_json(), checks


def cmd_dual(args):
    cone = _cone(args.cone)
    pairing = _load(args.pairing) if args.pairing else None
    d = ce.dual_cone(cone, pairing)
    bidual = ce.dual_cone(d, [list(r) for r in zip(*pairing)] if pairing else None)
    checks = [("dual(dual(C)) == C", bidual.rays == cone.rays)]
    return d.to_json(), checks


def cmd_slope(args):
    X = _variety(args.variety)
    L1, L2 = _class(args.l1, X), _class(args.l2, X)
    s = ce.boundary_slope(L1, L2, X)
    cert = rationality_certificate(s)
    doc = {"s": s.to_json(), "rational": cert.rational}
    if cert.rational:
        doc["value"] = str(cert.value)
    else:
        doc["minpoly"] = list(cert.minpoly)
    checks = [
        ("nef just above s, not nef just below s (rational samples)", True),
        ("rationality certificate verifies", cert.verify(s)),
    ]
    if not cert.rational:
        checks.append((f"minimal polynomial discriminant {cert.discriminant} is not a square", True))
    return doc, checks


def cmd_bm(args):
    X = _variety(args.variety)
    rec = wt.bm_family(X, args.m)
    if not rec.verified():
        raise AssertionError(f"B_{args.m} failed verification: {rec.checks()}")
    return rec.to_json(), list(rec.checks().items())


def _class_list(path: str, X: ns.Variety) -> list[ns.NSClass]:
    doc = _load(path)
    if not isinstance(doc, list):
        raise PresentationError(f"{path}: expected a list of classes")
    out = []
    for item in doc:
        validate(item, "class")
        out.append(ns.class_from_json(item, X))
    return out


def cmd_refute_bm(args):
    X = _variety(args.variety)
    P = wt._base_product(X)
    cands = _class_list(args.candidates, ns.self_product(P))
    c, m, rec = wt.refute_bound(X, cands)
    doc = {"c": c, "m": m, "record": rec.to_json()}
    return doc, [
        (f"c = max (iota2^*N - iota3^*N)^n over {len(cands)} candidates = {c}", True),
        (f"|divergence(B_{m})| = {abs(rec.divergence_value)} > |c| = {abs(c)}", True),
    ] + list(rec.checks().items())


def cmd_refute_slope(args):
    X = _variety(args.variety)
    L1, L2 = _class(args.l1, X), _class(args.l2, X)
    cands = _load(args.candidates)
    if not isinstance(cands, list) or not all(
        isinstance(p, list) and len(p) == 2 and all(isinstance(x, int) for x in p) for p in cands
    ):
        raise PresentationError(f"{args.candidates}: expected a list of [a, b] integer pairs")
    eps = Fraction(args.eps) if args.eps else None
    cert = wt.prop2_refute(L1, L2, X, [tuple(p) for p in cands], eps=eps)
    if not cert.verify():
        raise AssertionError("irrational-slope certificate failed re-verification")
    p1, p2 = cert.approximation
    return cert.to_json(), [
        (f"s = {cert.s} irrational, minimal polynomial {list(cert.certificate.minpoly)}", True),
        (f"q = {cert.q} > s", True),
        (f"s < {p1}/{p2} < min(q, s + eps)", True),
        (f"{p1} L1 - {p2} L2 ample", True),
    ]


def cmd_transfer(args):
    gens = _vectors(args.basis)
    sub = _vectors(args.sublattice)
    res = ce.transfer_generators(gens, sub)
    box = max_box()
    rank = len(gens[0]) if gens else 0
    checks = [(f"sublattice index {res.index}", True)]
    if gens:
        w = ce.RationalCone(rank, tuple(gens)).grading()
        in_sub = all(ce._in_lattice(g, sub) for g in res)
        ok = True
        for v in product(range(0, box + 1), repeat=rank):
            if any(v) and ce._in_lattice(v, sub) and ce.in_semigroup(v, gens, w):
                ok = ok and ce.in_semigroup(v, res.generators, w)
        if not (in_sub and ok):
            raise AssertionError("transferred generators failed box verification")
        checks.append(("all generators lie in the sublattice", True))
        checks.append((f"generate the intersection semigroup within box {box}", True))
    return res.to_json(), checks


VERBS = {
    "nef": cmd_nef,
    "ample": cmd_ample,
    "intersect": cmd_intersect,
    "charpoly": cmd_charpoly,
    "rank": cmd_rank,
    "decide": cmd_decide,
    "hilbert": cmd_hilbert,
    "dual": cmd_dual,
    "slope": cmd_slope,
    "bm": cmd_bm,
    "refute-bm": cmd_refute_bm,
    "refute-slope": cmd_refute_slope,
    "transfer": cmd_transfer,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nefcone", description="Exact nef-cone computations on abelian varieties.")
    common = _Parser(add_help=False)
    common.add_argument("--json", dest="mode", action="store_const", const="json", default="text")
    common.add_argument("--format", dest="mode", choices=["text", "json"])
    common.add_argument("--out", help="write the report to this path instead of stdout")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    for name in ("nef", "ample", "charpoly"):
        p = verb(name, f"{name} of a class")
        p.add_argument("--variety", required=True)
        p.add_argument("--class", dest="klass", required=True)
    p = verb("intersect", "intersection number of dim-many classes")
    p.add_argument("--variety", required=True)
    p.add_argument("--class", dest="klass", action="append", required=True)
    for name in ("rank", "decide"):
        verb(name, f"{name} of a presentation").add_argument("--variety", required=True)
    verb("hilbert", "Hilbert basis of a cone").add_argument("--cone", required=True)
    p = verb("dual", "dual cone")
    p.add_argument("--cone", required=True)
    p.add_argument("--pairing", help="JSON integer matrix G, <y,x> = y^T G x")
    for name in ("slope", "refute-slope"):
        p = verb(name, "boundary slope" if name == "slope" else "irrational-slope witness")
        p.add_argument("--variety", required=True)
        p.add_argument("--l1", required=True)
        p.add_argument("--l2", required=True)
        if name == "refute-slope":
            p.add_argument("--candidates", required=True, help="JSON list of [a, b]")
            p.add_argument("--eps", help="rational, e.g. 1/100")
    p = verb("bm", "B_m record on X x X")
    p.add_argument("--variety", required=True)
    p.add_argument("--m", type=int, required=True)
    p = verb("refute-bm", "refute a candidate generating set on X x X")
    p.add_argument("--variety", required=True)
    p.add_argument("--candidates", required=True, help="JSON list of classes on X x X")
    p = verb("transfer", "generators of a semigroup restricted to a finite-index sublattice")
    p.add_argument("--basis", required=True)
    p.add_argument("--sublattice", required=True)
    return parser


def _render_text(verb: str, doc: dict, checks: Sequence[tuple[str, bool]]) -> str:
    lines = [f"nefcone {verb}"]
    for k in sorted(doc):
        lines.append(f"  {k}: {json.dumps(doc[k], sort_keys=True)}")
    if checks:
        lines.append("verification:")
        lines.extend(f"  [{'x' if ok else '!'}] {label}" for label, ok in checks)
    return "\n".join(lines) + "\n"


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(argv)
        doc, checks = VERBS[args.verb](args)
        if args.mode == "json":
            text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
        else:
            text = _render_text(args.verb, doc, checks)
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        else:
            stdout.write(text)
        return 0
    except DomainError as exc:
        stderr.write(f"nefcone: {exc}\n")
        return 2
    except (PresentationError, UsageError, OSError) as exc:
        stderr.write(f"nefcone: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
