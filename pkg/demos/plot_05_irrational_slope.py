"""
An irrational nef boundary
==========================

On a simple abelian surface with intersection form ``[[2, 4], [4, 2]]`` the
ray ``t L1 - L2`` leaves the nef cone at ``t = 2 + sqrt(3)``.  A convergent
just above that slope yields an ample class missed by any finite list of
candidates.
"""

from nefcone import AbstractVariety, NSClass, boundary_slope, nef_test, prop2_refute

X = AbstractVariety(2, 2, ((2, 4), (4, 2)), (1, 0), True)
L1, L2 = NSClass(X, coords=[1, 0]), NSClass(X, coords=[0, 1])

s = boundary_slope(L1, L2)
print("boundary slope s =", s)
for p, q in [(7, 2), (11, 3), (15, 4), (4, 1)]:
    print(f"  {p}/{q}: nef = {nef_test(p * L1 - q * L2)}")

for cands in ([(4, 1)], [(15, 4), (4, 1)]):
    w = prop2_refute(L1, L2, X, cands)
    p, q = w.approximation
    print(f"candidates {cands}: ample class {p} L1 - {q} L2, verified = {w.verify()}")
