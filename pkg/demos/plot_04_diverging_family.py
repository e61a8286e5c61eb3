"""
A diverging family on X x X
===========================

For an elliptic curve without CM the classes ``B_m`` on ``E x E`` are nef,
restrict to the generator on the first axis, and have intersection values
that grow without bound.  A finite candidate generating set is refuted by
picking ``m`` beyond its reach.
"""

from nefcone import EndRing, Factor, NSClass, ProductVariety, bm_family, refute_bound
from nefcone.ns_lattice import self_product

E = ProductVariety((Factor("E", EndRing(), 1),))

print(" m  class                       charpoly          divergence")
for m in range(1, 7):
    rec = bm_family(E, m)
    rows = [[str(x) for x in row] for row in rec.klass.matrix]
    print(f"{m:2d}  {str(rows):27s} {str(rec.charpoly):17s} {rec.divergence_value}")
    assert rec.verified()

candidate = NSClass.from_coefficients(self_product(E), [[1, -5], [-5, 25]])
c, m, rec = refute_bound(E, [candidate])
print(f"candidates bound the divergence by c = {c}; B_{m} has {rec.divergence_value}")
