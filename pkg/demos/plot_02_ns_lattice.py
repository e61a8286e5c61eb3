"""
Classes on a product of elliptic curves
=======================================

On ``E x E`` a class is a 2x2 Hermitian matrix over ``End(E)``; the identity
is the product polarization.  Intersection numbers come from determinants of
partial sums.
"""

from nefcone import (
    EndRing,
    Factor,
    NSClass,
    ProductVariety,
    ample_test,
    analytic_charpoly,
    intersection_number,
    nef_test,
    ns_rank,
)

ExE = ProductVariety((Factor("E", EndRing(), 2),))
A = ExE.ample
print("rank NS(E x E) =", ns_rank(ExE), " A^2 =", intersection_number([A, A]))

L = NSClass.from_coefficients(ExE, [[1, 2], [2, 1]])
print("L^2 =", intersection_number([L, L]), " L.A =", intersection_number([L, A]))
print("nef:", nef_test(L), " charpoly:", analytic_charpoly(L))

F = NSClass.from_coefficients(ExE, [[2, 1], [1, 1]])
print("F ample:", ample_test(F), " charpoly:", analytic_charpoly(F))

# With complex multiplication by Z[i] the rank reaches (dim)^2 = 4.
# Off-diagonal entries are pairs (a, b) meaning a + b*omega, omega = -2 + i.
cm = ProductVariety((Factor("E", EndRing("cm", -4), 2),))
print("rank NS for CM E x E =", ns_rank(cm))
N = NSClass.from_coefficients(cm, [[1, (2, 1)], [(-2, -1), 1]])  # off-diagonal entry i
print("N^2 =", intersection_number([N, N]), " nef:", nef_test(N), " ample:", ample_test(N))
