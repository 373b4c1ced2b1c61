"""
Small extremal problems by exhaustive search
=============================================

Largest union of s intersecting families of k-sets, with and without
the non-triviality requirement.
"""

# %%
from kneserkit import max_union_intersecting, star_union_bound, verify_star_optimality

for n, k, s in [(5, 2, 1), (5, 2, 2), (6, 2, 2), (6, 2, 3), (6, 3, 2)]:
    full = max_union_intersecting(n, k, s)
    nt = max_union_intersecting(n, k, s, nontrivial_only=True)
    print((n, k, s), full.optimum, nt.optimum, star_union_bound(n, k, s))

# %%
# Stars are optimal at (6,2,2) and nothing else reaches the bound.
print(verify_star_optimality(6, 2, 2))

# %%
# At (5,2,2) a star plus a triangle also covers 7 pairs.
res = max_union_intersecting(5, 2, 2, collect_all=True)
for w in res.all_optima:
    centres = [f.trivial_center for f in w]
    if None in centres:
        print([f.as_sets() for f in w])
        break

# %%
# Two triangles are the best non-trivial pair.
print(max_union_intersecting(5, 2, 2, nontrivial_only=True).witness)
