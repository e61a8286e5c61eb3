"""
Cones, duals and Hilbert bases
==============================

When the nef cone is rational polyhedral its integral points form a finitely
generated semigroup.  The minimal generating set is the Hilbert basis.
"""

from nefcone import RationalCone, dual_cone, hilbert_basis, transfer_generators

C = RationalCone(2, ((1, 0), (1, 3)))
print("C rays        ", C.rays)
print("dual rays     ", dual_cone(C).rays)
print("Hilbert basis ", hilbert_basis(C).generators)

# a three-dimensional cone over a square
Q = RationalCone(3, ((1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)))
print("facets of Q   ", Q.facets())
print("basis of Q    ", hilbert_basis(Q).generators)

# Passing to a finite-index sublattice (the effect of an isogeny) keeps the
# semigroup finitely generated: here the orthant meets the even lattice.
T = transfer_generators([(1, 0), (0, 1)], [(1, 1), (1, -1)])
print("even part     ", T.generators, " index", T.index)
