"""Exact Neron-Severi computations for abelian varieties: nefness, Hilbert bases of
nef cones, and certificates that effective classes are not finitely generated."""

from .cone_engine import (
    PolyhedralityVerdict,
    RationalCone,
    SemigroupBasis,
    boundary_slope,
    decide_polyhedral,
    dual_cone,
    hilbert_basis,
    nef_cone,
    semigroup_restrict,
    transfer_generators,
)
from .errors import DomainError, NefConeError, PresentationError, UnsupportedError
from .exactnum import QuadExt, convergents, continued_fraction, rationality_certificate
from .ns_lattice import (
    AbstractVariety,
    EndRing,
    Factor,
    LatticeHom,
    NSClass,
    ProductVariety,
    ample_test,
    analytic_charpoly,
    build_variety,
    intersection_number,
    nef_test,
    ns_rank,
    pullback,
    standard_hom,
)
from .witnesses import BmRecord, Prop2Certificate, bm_family, prop2_refute, refute_bound

__version__ = "0.1.0"
