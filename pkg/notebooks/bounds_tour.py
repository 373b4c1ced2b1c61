"""
Exact bounds
============

Everything here is integer or rational arithmetic; floats appear only
when printing.
"""

# %%
from fractions import Fraction

from kneserkit import GraphOnN, kn_lower_bound, mainlemma_check, prop21_check
from kneserkit.bounds import ChoiceParams, choice_exponent_check, c_upper_bound
from kneserkit.core import count_cliques

# %%
rep = prop21_check(60, 3, 10)
print(rep.lhs, rep.relation, rep.rhs, rep.holds)

# %%
# Clique-count lower bound against the true count on a dense graph.
g = GraphOnN.from_pairs(9, [(u, v) for u in range(9) for v in range(u + 1, 9) if (u + v) % 4])
for k in (3, 4):
    print(k, kn_lower_bound(g, k), count_cliques(g, k))

# %%
for n in (51, 80, 200):
    r = mainlemma_check(n, 5, 10)
    print(n, r.checks["termwise"], r.checks["quadratic"], r.holds, float(r.lhs / max(r.rhs, 1)))

# %%
print(c_upper_bound(3), c_upper_bound(6))
for k in (4, 6, 10):
    r = choice_exponent_check(ChoiceParams.derive(10**6, k, Fraction(1, 12)))
    print(k, r.checks["lhs_exponent"], r.checks["rhs_exponent"], r.holds)
