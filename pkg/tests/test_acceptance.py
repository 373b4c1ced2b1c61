"""Acceptance criteria, one test per criterion.

Each test is self-timing where a runtime limit applies. The summary hook in
conftest.py prints one PASS/FAIL line per criterion at the end of the run.
"""

import itertools
import random
import time
from fractions import Fraction

from kneserkit.bounds import (
    ChoiceParams,
    CoverSpec,
    c_upper_bound,
    choice_exponent_check,
    choice_prob_ratio,
    expected_centers,
    kn_lower_bound,
    kn_threshold,
    mainlemma_check,
)
from kneserkit.construction import uncovered_count_formula, verify_construction
from kneserkit.core import GraphOnN, binomial, iter_kmasks, mask_of
from kneserkit.families import SetFamily, hilton_milner_family, hm_bound
from kneserkit.search import (
    KneserGraph,
    ListAssignment,
    is_proper_list_coloring,
    list_coloring_feasible,
    max_union_intersecting,
    verify_star_optimality,
)
from kneserkit.setcover import SetCoverInstance, build_set_cover, set_cover_levels, verify_set_cover


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def test_criterion_01_construction_k4_m1():
    with Timer() as t:
        rep = verify_construction(4, 1)
    assert rep.total_sets == 715
    assert rep.uncovered == 27 == 3**3
    assert rep.characterization_ok
    assert (rep.union, rep.star_union) == (688, 680) and rep.union > rep.star_union
    assert rep.s == 6 and rep.families_ok
    assert t.elapsed < 1, f"{t.elapsed:.2f}s"


def test_criterion_02_construction_k5_m1():
    with Timer() as t:
        rep = verify_construction(5, 1)
    assert rep.total_sets == 20349
    assert rep.uncovered == 81 < binomial(9, 5) == 126
    assert (rep.union, rep.star_union) == (20268, 20223)
    assert rep.characterization_ok and rep.ok
    assert t.elapsed < 10, f"{t.elapsed:.2f}s"


def test_criterion_03_uncovered_formula_scan():
    with Timer() as t:
        bad = [
            (k, m)
            for k in range(4, 201)
            for m in range(1, k // 4 + 1)
            if not uncovered_count_formula(k, m) < binomial(2 * k - 2 + m, k)
        ]
    assert bad == []
    assert t.elapsed < 5, f"{t.elapsed:.2f}s"


def test_criterion_04_hilton_milner_sizes():
    for n, k in [(5, 2), (7, 3), (9, 3), (9, 4)]:
        E = frozenset(range(2, k + 2))
        # independent count: sets through 1 meeting E, plus E itself
        direct = sum(
            1 for A in itertools.combinations(range(1, n + 1), k) if (1 in A and E & set(A)) or set(A) == E
        )
        fam = hilton_milner_family(n, k, 1, sorted(E))
        assert len(fam) == direct == hm_bound(n, k), (n, k)
        assert fam.is_intersecting and fam.trivial_center is None


def test_criterion_05_extremal_oracle():
    failures = []
    with Timer() as t:
        for args, want in [((5, 2, 1), 4), ((5, 2, 2), 7), ((6, 2, 2), 9)]:
            got = max_union_intersecting(*args).optimum
            if got != want:
                failures.append(f"max_union{args}={got}, want {want}")
        for args in [(5, 2, 2), (6, 2, 2)]:
            if not verify_star_optimality(*args):
                failures.append(f"verify_star_optimality{args} is False")
        nt = max_union_intersecting(5, 2, 2, nontrivial_only=True).optimum
        if not nt == 6 < 7:
            failures.append(f"nontrivial (5,2,2)={nt}, want 6")
    if t.elapsed >= 60:
        failures.append(f"runtime {t.elapsed:.1f}s")
    assert not failures, "; ".join(failures)


def _clique_count(n, edges, k):
    es = set(edges)
    return sum(1 for c in itertools.combinations(range(n), k) if all(p in es for p in itertools.combinations(c, 2)))


def test_criterion_06_kn_bound():
    rng = random.Random(6)
    checked = 0
    while checked < 100:
        n = rng.randint(4, 14)
        k = rng.randint(3, 5)
        p = rng.uniform(0.5, 1.0)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        if Fraction(len(edges), n * n) < kn_threshold(k):
            continue  # preconditions fail, outside the criterion
        g = GraphOnN.from_pairs(n, edges)
        assert kn_lower_bound(g, k) <= _clique_count(n, edges, k), (n, k, edges)
        checked += 1
    assert kn_lower_bound(GraphOnN.complete(4), 3) == 4
    assert kn_lower_bound(GraphOnN.complete(5), 3) == 10


def test_criterion_07_mainlemma_grid():
    rng = random.Random(7)
    triples = set()
    for k in range(2, 7):
        for n in range(2 * k * k + 1, min(2 * k**3, 500) + 1):
            triples.add((n, k, 1))
            triples.add((n, k, n - 1))
    while len(triples) < 12_000:
        k = rng.randint(2, 6)
        lo, hi = 2 * k * k + 1, min(2 * k**3, 500)
        n = rng.randint(lo, hi)
        triples.add((n, k, rng.randint(1, n - 1)))
    bad = []
    for n, k, s in sorted(triples):
        r = mainlemma_check(n, k, s)
        if not (r.checks["termwise"] and r.checks["quadratic"]):
            bad.append((n, k, s))
    assert len(triples) >= 10_000
    assert bad == [], bad[:10]
    # s = 0 makes both sides of each term equal, so the strict form is vacuous there
    assert mainlemma_check(51, 5, 0).checks["termwise_failures"] == [1, 2, 3, 4]


def test_criterion_08_choice_machinery():
    assert choice_prob_ratio(10, 2) == Fraction(2, 9)
    for u in range(0, 201, 2):
        prod = Fraction(1)
        for z in range(0, u // 2 + 1):
            assert choice_prob_ratio(u, z) == prod, (u, z)
            if z < u // 2:
                prod *= Fraction(u // 2 - z, u - z)
    rng = random.Random(8)
    for _ in range(100):
        k = rng.randint(2, 6)
        n = rng.randint(k * k, 60)
        u1 = rng.randint(0, 5)
        pairs = [[tuple(rng.sample(range(1, n + 1), 2)) for _ in range(rng.randint(1, k))] for _ in range(rng.randint(0, 5))]
        cover = CoverSpec.build(k, u1, pairs)
        assert expected_centers(n, k, cover) <= Fraction(cover.u * k, n)
    assert c_upper_bound(3) == Fraction(1, 12)
    eps = Fraction(1, 100)
    inside = ChoiceParams(10**6, 3, Fraction(1, 12) - eps, eps, Fraction(0), 2, 0)
    outside = ChoiceParams(10**6, 3, Fraction(1, 12) - eps / 2, eps, Fraction(0), 2, 0)
    assert choice_exponent_check(inside).checks["C_constraint"]
    assert not choice_exponent_check(outside).checks["C_constraint"]


def test_criterion_09_list_coloring():
    with Timer() as t:
        kg = KneserGraph(5, 2)
        three = ListAssignment.uniform(len(kg), [1, 2, 3])
        col = list_coloring_feasible(kg, three)
        assert col is not None and is_proper_list_coloring(kg, three, col)
        assert list_coloring_feasible(kg, ListAssignment.uniform(len(kg), [1, 2])) is None
        kg = KneserGraph(7, 3)
        lists = ListAssignment.uniform(len(kg), range(1, 7 - 6 + 3))
        col = list_coloring_feasible(kg, lists)
        assert col is not None and is_proper_list_coloring(kg, lists, col)
    assert t.elapsed < 30, f"{t.elapsed:.2f}s"


def _random_cover_instance(rng, k):
    levels = 2 if k == 4 else 3
    size_range = (2, 8) if k == 4 else (10, 30)
    while True:
        n = rng.randint(k + 2, 16)
        t = rng.choice((k - 1, k))
        g = SetFamily(n, t, (mask_of(rng.sample(range(1, n + 1), t)) for _ in range(rng.randint(*size_range))))
        if g.tau < levels:
            continue
        meets = [a for a in iter_kmasks(n, k) if all(a & b for b in g.masks)]
        if meets:
            F = SetFamily(n, k, rng.sample(meets, min(len(meets), rng.randint(1, 60))))
            return SetCoverInstance(F, g, k)


def test_criterion_10_set_cover():
    with Timer() as t:
        left, right = mask_of(range(1, 5)), mask_of(range(5, 9))
        F = SetFamily(8, 4, (a for a in iter_kmasks(8, 4) if a & left and a & right))
        inst = SetCoverInstance(F, SetFamily(8, 4, [left, right]), 4)
        H = build_set_cover(inst)
        assert {frozenset(h) for h in H.as_sets()} == {frozenset((i, j)) for i in range(1, 5) for j in range(5, 9)}
        assert verify_set_cover(F, H)
        assert len(H) <= 4**2
        rng = random.Random(10)
        for i in range(50):
            inst = _random_cover_instance(rng, 4 if i % 2 else 9)
            for level, Hl in enumerate(set_cover_levels(inst)):
                assert verify_set_cover(inst.F, Hl) and len(Hl) <= inst.k**level
    assert t.elapsed < 5, f"{t.elapsed:.2f}s"
