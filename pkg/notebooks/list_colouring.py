"""
Random lists on Kneser graphs
=============================
"""

# %%
from fractions import Fraction

from kneserkit import KneserGraph, ListAssignment, list_coloring_feasible, monte_carlo_choice
from kneserkit.bounds import choice_prob_ratio
from kneserkit.search import exact_choice_failure

petersen = KneserGraph(5, 2)
print(list_coloring_feasible(petersen, ListAssignment.uniform(len(petersen), [1, 2, 3])))
print(list_coloring_feasible(petersen, ListAssignment.uniform(len(petersen), [1, 2])))

# %%
# A triangle with 2-lists from 4 colours fails only when all lists agree.
p = exact_choice_failure(KneserGraph(3, 1), 4)
rep = monte_carlo_choice(3, 1, 4, 20000, seed=1)
print(p, float(p), rep.rate, float(rep.rate))

# %%
# Random 5-lists from 10 colours on the Petersen graph.
rep = monte_carlo_choice(5, 2, 10, 2000, seed=3)
print(rep.infeasible, "of", rep.trials)

# %%
# Chance that a random half-list avoids z fixed colours.
for z in range(6):
    print(z, choice_prob_ratio(10, z), float(choice_prob_ratio(10, z)))
