import itertools
import math
from fractions import Fraction

import pytest

from kneserkit.core import CapacityError, GraphOnN, binomial
from kneserkit.families import union_size
from kneserkit.search import (
    KneserGraph,
    ListAssignment,
    exact_choice_failure,
    is_proper_list_coloring,
    kneser_coloring,
    list_coloring_feasible,
    max_union_intersecting,
    monte_carlo_choice,
    verify_star_optimality,
)


def brute_max_union(n, k, s, nontrivial=False):
    """Try every assignment of vertices to s colours or 'uncovered'."""
    verts = [frozenset(c) for c in itertools.combinations(range(1, n + 1), k)]
    best = 0
    for assign in itertools.product(range(s + 1), repeat=len(verts)):
        classes = [[v for v, a in zip(verts, assign) if a == c] for c in range(1, s + 1)]
        if any(a & b == set() for cl in classes for a, b in itertools.combinations(cl, 2)):
            continue
        if nontrivial and any(cl and frozenset.intersection(*cl) for cl in classes):
            continue
        best = max(best, sum(1 for a in assign if a))
    return best


def test_kneser_graph_structure():
    kg = KneserGraph(5, 2)
    assert len(kg) == 10 and kg.edge_count == 15  # Petersen
    assert all(not (kg.adj[i] >> i) & 1 for i in range(len(kg)))
    assert all(((kg.adj[j] >> i) & 1) == ((kg.adj[i] >> j) & 1) for i in range(10) for j in range(10))
    assert KneserGraph(5, 3).edge_count == 0
    with pytest.raises(CapacityError):
        KneserGraph(20, 10)


@pytest.mark.parametrize(
    "n, k, s, nontrivial, expected",
    [(5, 2, 1, False, 4), (5, 2, 2, False, 7), (6, 2, 2, False, 9), (5, 2, 2, True, 6)],
)
def test_max_union_examples(n, k, s, nontrivial, expected):
    res = max_union_intersecting(n, k, s, nontrivial)
    assert res.exact and res.optimum == expected
    assert union_size(res.witness) == expected
    for f in res.witness:
        assert f.is_intersecting
        if nontrivial:
            assert f.trivial_center is None


@pytest.mark.parametrize(
    "n, k, s, nontrivial",
    [(4, 2, 1, False), (4, 2, 2, False), (4, 2, 2, True), (5, 2, 1, True), (3, 1, 2, False), (5, 3, 1, False)],
)
def test_max_union_matches_brute_force(n, k, s, nontrivial):
    assert max_union_intersecting(n, k, s, nontrivial).optimum == brute_max_union(n, k, s, nontrivial)


def test_two_triangles_witness():
    res = max_union_intersecting(5, 2, 2, True, collect_all=True)
    assert res.optimum == 6
    for w in res.all_optima:
        assert sorted(len(f) for f in w) == [3, 3]


def test_max_union_upper_bounds():
    for n, k in [(5, 2), (6, 2), (6, 3)]:
        for s in range(1, 4):
            full = max_union_intersecting(n, k, s).optimum
            nt = max_union_intersecting(n, k, s, True).optimum
            assert full <= min(s * binomial(n - 1, k - 1), binomial(n, k))
            assert nt <= full


@pytest.mark.parametrize("n, k", [(5, 2), (6, 2)])
def test_chromatic_number_colours_everything(n, k):
    assert max_union_intersecting(n, k, n - 2 * k + 2).optimum == binomial(n, k)
    assert max_union_intersecting(n, k, n - 2 * k + 1).optimum < binomial(n, k)


def test_star_optimality_6_2_2():
    assert verify_star_optimality(6, 2, 2)
    res = max_union_intersecting(6, 2, 2)
    assert res.optimum == 15 - 6


def test_star_optimality_fails_at_n_equal_2k():
    assert not verify_star_optimality(4, 2, 1)


def test_star_optimality_5_2_2_has_star_plus_triangle_optimum():
    # star at 1 plus the triangle {23, 24, 34} also covers 7 vertices
    res = max_union_intersecting(5, 2, 2, collect_all=True)
    shapes = {tuple(sorted(f.trivial_center is None for f in w)) for w in res.all_optima}
    assert (False, True) in shapes
    assert not verify_star_optimality(5, 2, 2)


def test_node_limit_marks_inexact():
    res = max_union_intersecting(6, 2, 2, node_limit=5)
    assert not res.exact


# -- list colouring -------------------------------------------------------------


def test_petersen_lists():
    kg = KneserGraph(5, 2)
    three = ListAssignment.uniform(len(kg), [1, 2, 3])
    col = list_coloring_feasible(kg, three)
    assert col is not None and is_proper_list_coloring(kg, three, col)
    assert list_coloring_feasible(kg, ListAssignment.uniform(len(kg), [1, 2])) is None


def test_single_edge_same_singleton_lists():
    g = GraphOnN.from_pairs(2, [(0, 1)])
    assert list_coloring_feasible(g, [{1}, {1}]) is None
    assert list_coloring_feasible(g, [{1}, {1, 2}]) == {0: 1, 1: 2}


@pytest.mark.parametrize("n, k", [(5, 2), (6, 2), (7, 2), (7, 3)])
def test_kneser_upper_bound_lists(n, k):
    kg = KneserGraph(n, k)
    lists = ListAssignment.uniform(len(kg), range(1, n - 2 * k + 3))
    col = list_coloring_feasible(kg, lists)
    assert col is not None and is_proper_list_coloring(kg, lists, col)


@pytest.mark.parametrize("n, k", [(5, 2), (6, 2), (7, 3), (8, 3)])
def test_classical_kneser_colouring_is_proper(n, k):
    kg = KneserGraph(n, k)
    colours = kneser_coloring(n, k)
    assert max(colours) <= n - 2 * k + 2
    assert all(colours[i] != colours[j] for i in range(len(kg)) for j in range(len(kg)) if kg.adj[i] >> j & 1)


def test_list_coloring_agrees_with_brute_force_on_small_graphs():
    import random

    rng = random.Random(4)
    for _ in range(200):
        n = rng.randint(1, 6)
        g = GraphOnN.from_pairs(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5])
        lists = [frozenset(rng.sample(range(1, 5), rng.randint(1, 3))) for _ in range(n)]
        adj = g.adjacency()
        brute = any(
            all(c[u] != c[v] for u in range(n) for v in range(n) if adj[u] >> v & 1)
            for c in itertools.product(*(sorted(lst) for lst in lists))
        )
        got = list_coloring_feasible(g, lists)
        assert (got is not None) == brute
        if got is not None:
            assert is_proper_list_coloring(g, lists, got)


def test_list_assignment_validation():
    with pytest.raises(ValueError):
        ListAssignment(3, (frozenset(),))
    with pytest.raises(ValueError):
        ListAssignment(3, (frozenset({4}),))


# -- random lists ----------------------------------------------------------------


def test_edgeless_graph_always_feasible():
    rep = monte_carlo_choice(5, 3, 4, 200, seed=1)
    assert rep.infeasible == 0


def test_replay_is_deterministic():
    a = monte_carlo_choice(3, 1, 4, 500, seed=42)
    b = monte_carlo_choice(3, 1, 4, 500, seed=42)
    assert a.to_dict() == b.to_dict()


def test_exact_failure_triangle():
    # K3 with 2-lists from 4 colours fails exactly when all three lists agree
    assert exact_choice_failure(KneserGraph(3, 1), 4) == Fraction(6, 6**3)


def test_exact_failure_kg42_is_zero():
    # KG(4,2) is a perfect matching; an edge with two 2-lists is always colourable
    per_edge_bad = sum(
        1
        for a in itertools.combinations(range(4), 2)
        for b in itertools.combinations(range(4), 2)
        if not any(x != y for x in a for y in b)
    )
    assert per_edge_bad == 0
    assert exact_choice_failure(KneserGraph(4, 2), 4) == 0
    assert monte_carlo_choice(4, 2, 4, 2000, seed=7).infeasible == 0


def test_monte_carlo_within_three_sigma_of_exact():
    p = exact_choice_failure(KneserGraph(3, 1), 4)
    trials = 10_000
    rep = monte_carlo_choice(3, 1, 4, trials, seed=2025)
    sigma = math.sqrt(p * (1 - p) / trials)
    assert abs(float(rep.rate) - float(p)) <= 3 * sigma
    assert 0 < rep.rate < 1


def test_monte_carlo_rejects_odd_u():
    with pytest.raises(ValueError):
        monte_carlo_choice(4, 2, 5, 10, seed=0)
