"""
Deciding polyhedrality
======================

The nef cone is rational polyhedral exactly when every factor of the isogeny
decomposition appears once and has Picard number one.  Otherwise the verdict
names the factor and the kind of witness to build.
"""

from nefcone import AbstractVariety, EndRing, Factor, ProductVariety, decide_polyhedral

cases = {
    "E1 x E2": ProductVariety((Factor("E1"), Factor("E2"))),
    "E": ProductVariety((Factor("E"),)),
    "E x E": ProductVariety((Factor("E", EndRing(), 2),)),
    "CM E x E": ProductVariety((Factor("E", EndRing("cm", -4), 2),)),
    "simple surface": AbstractVariety(2, 2, ((2, 4), (4, 2)), (1, 0), True),
}
for name, X in cases.items():
    print(f"{name:15s}", decide_polyhedral(X).to_json())
