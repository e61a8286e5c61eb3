"""
Exact quadratic irrationals
===========================

Nef thresholds on abelian surfaces are often quadratic irrationals.  They are
stored as ``a + b*sqrt(d)`` with rational ``a, b`` so that every comparison
is decided exactly.
"""

from fractions import Fraction

from nefcone import QuadExt, continued_fraction, convergents, rationality_certificate

s = QuadExt(2, 1, 3)  # 2 + sqrt(3)
print("s =", s, " conjugate =", s.conjugate(), " norm =", s.norm())

# signs are exact, no floating point involved
print("s > 15/4 ?", s > Fraction(15, 4))
print("s > 11/3 ?", s > Fraction(11, 3))

# an irrationality certificate: a primitive integer polynomial with non-square discriminant
cert = rationality_certificate(s)
print("minimal polynomial", cert.minpoly, " discriminant", cert.discriminant)

# the continued fraction is periodic, and its convergents alternate around s
cf = continued_fraction(s)
print("partial quotients", [next(cf) for _ in range(8)])
cv = convergents(s)
for _ in range(6):
    r = next(cv)
    print(f"  {str(r):>6}  {'above' if r > s else 'below'} s")
