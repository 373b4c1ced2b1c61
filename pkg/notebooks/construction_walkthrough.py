"""
Beating the union of stars
==========================

Build the ground partition for k=4, m=1, look at the families, and count
what they leave uncovered.
"""

# %%
from kneserkit import build_ground, build_families, verify_construction
from kneserkit.construction import family_count, uncovered_count_formula, star_uncovered_count
from kneserkit.core import binomial

gp = build_ground(4, 1)
print("ground size", gp.n)
for name, part in gp.to_dict().items():
    print(name, part)

# %%
# Every family is intersecting with no common element.
bundle = build_families(gp)
for f in bundle.families():
    print(len(f), f.tau, f.trivial_center)

# %%
rep = verify_construction(4, 1)
print(rep.uncovered, "uncovered vs", rep.star_uncovered, "for", rep.s, "stars")
print("union", rep.union, "star union", rep.star_union)

# %%
# The count of uncovered sets has a closed form; compare it with the
# star count C(n-s, k) as k grows.
for k in range(4, 13):
    m = k // 4
    print(k, m, family_count(k, m), uncovered_count_formula(k, m), star_uncovered_count(k, m))
