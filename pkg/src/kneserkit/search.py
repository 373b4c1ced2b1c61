"""Exhaustive oracles on small Kneser graphs.

* :func:`max_union_intersecting`: most k-sets coverable by ``s`` intersecting
  families, i.e. the largest induced s-colourable subgraph of KG(n, k).
* :func:`list_coloring_feasible`: exact list-colouring by backtracking.
* :func:`monte_carlo_choice`: random u/2-lists on every vertex, reproducible
  from a seed.

Random lists are drawn with NumPy's PCG64 generator. Trial ``t`` of a run
with seed ``S`` uses ``Generator(PCG64(SeedSequence(S, spawn_key=(t,))))``;
each vertex, in colex order, receives the first u/2 entries of
``rng.permutation(u)``, shifted to colours ``1..u``.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .bounds import star_union_bound
from .core import CapacityError, GraphOnN, binomial, elements_of, iter_kmasks
from .families import SetFamily, hm_bound

log = logging.getLogger(__name__)

DEFAULT_VERTEX_CAP = 2000
DEFAULT_COLORING_CAP = 64
_PROGRESS_EVERY = 200_000


class KneserGraph:
    """KG(n, k): k-subsets of ``[n]`` in colex order, adjacent when disjoint."""

    def __init__(self, n: int, k: int, cap: int = DEFAULT_VERTEX_CAP):
        if binomial(n, k) > cap:
            raise CapacityError(f"KG({n},{k}) has {binomial(n, k)} vertices, cap is {cap}")
        self.n = n
        self.k = k
        self.vertices: list[int] = list(iter_kmasks(n, k))
        index = range(len(self.vertices))
        self.adj: list[int] = [
            sum(1 << j for j in index if not a & self.vertices[j]) for a in self.vertices
        ]

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"KneserGraph(n={self.n}, k={self.k})"

    @property
    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def adjacency(self) -> list[int]:
        return list(self.adj)

    def as_graph(self) -> GraphOnN:
        return GraphOnN.from_pairs(
            len(self), ((i, j) for i, a in enumerate(self.adj) for j in _bits(a) if i < j)
        )


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class ListAssignment:
    """Colour lists (subsets of ``1..u``) indexed by vertex."""

    u: int
    lists: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        for v, lst in enumerate(self.lists):
            if not lst:
                raise ValueError(f"vertex {v} has an empty list")
            if not all(1 <= c <= self.u for c in lst):
                raise ValueError(f"vertex {v} has colours outside 1..{self.u}")

    @classmethod
    def uniform(cls, nvertices: int, colors: Sequence[int]) -> "ListAssignment":
        lst = frozenset(colors)
        return cls(max(lst), (lst,) * nvertices)

    @property
    def sizes(self) -> list[int]:
        return [len(lst) for lst in self.lists]


@dataclass
class SearchResult:
    optimum: int
    witness: list[SetFamily]
    nodes_explored: int
    exact: bool
    all_optima: list[list[SetFamily]] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "optimum": self.optimum,
            "witness": [f.as_sets() for f in self.witness],
            "nodes_explored": self.nodes_explored,
            "exact": self.exact,
            "optima_found": len(self.all_optima),
        }


def _class_cap(n: int, k: int, nontrivial_only: bool) -> int:
    if 2 * k > n:
        return binomial(n, k)
    if nontrivial_only and n > 2 * k:
        return hm_bound(n, k)
    return binomial(n - 1, k - 1)


def max_union_intersecting(
    n: int,
    k: int,
    s: int,
    nontrivial_only: bool = False,
    *,
    cap: int = DEFAULT_VERTEX_CAP,
    collect_all: bool = False,
    node_limit: int | None = None,
) -> SearchResult:
    """Largest union of ``s`` intersecting families in ``C([n], k)``.

    Branch and bound over vertices in colex order: each vertex joins an open
    colour class it is not adjacent to, opens the next unused class, or is
    left uncovered. Classes are opened in order, so the first covered vertex
    is always in class 1. Bounds: vertices still colourable, and the per-class
    cap (EKR size, or the Hilton-Milner size for non-trivial classes when
    n > 2k).

    With ``nontrivial_only`` every non-empty class must have no common
    element. With ``collect_all`` every optimal assignment is kept in
    ``all_optima`` (ties are explored instead of pruned).
    """
    if s < 0 or s > max(n, 1):
        raise ValueError(f"need 0 <= s <= n, got s={s}")
    kg = KneserGraph(n, k, cap)
    verts, adj = kg.vertices, kg.adj
    N = len(verts)
    class_cap = _class_cap(n, k, nontrivial_only)
    ceiling = min(N, s * class_cap)
    full_ground = (1 << n) - 1

    members = [0] * s
    forb = [0] * s
    common = [full_ground] * s
    sizes = [0] * s
    best = -1
    best_assign: list[list[int]] = []
    nodes = 0
    aborted = False

    def record(covered: int) -> None:
        nonlocal best, best_assign
        if nontrivial_only and any(members[c] and common[c] for c in range(s)):
            return
        snapshot = [members[c] for c in range(s)]
        if covered > best:
            best = covered
            best_assign = [snapshot]
        elif covered == best and collect_all:
            best_assign.append(snapshot)

    def done() -> bool:
        return aborted or (not collect_all and best >= ceiling)

    def go(idx: int, used: int, covered: int) -> None:
        nonlocal nodes, aborted
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            aborted = True
            return
        if nodes % _PROGRESS_EVERY == 0:
            log.info("max_union n=%d k=%d s=%d: %d nodes, best %d", n, k, s, nodes, best)
        if idx == N:
            record(covered)
            return
        remaining = ((1 << N) - 1) >> idx << idx
        if used < s:
            colorable = N - idx
        else:
            blocked = remaining
            for c in range(used):
                blocked &= forb[c]
            colorable = (remaining & ~blocked).bit_count()
        room = sum(class_cap - sizes[c] for c in range(used)) + (s - used) * class_cap
        ub = covered + min(colorable, room)
        if ub < best or (ub == best and not collect_all):
            return
        if nontrivial_only:
            for c in range(used):
                if common[c] and not remaining & ~forb[c]:
                    return

        bit = 1 << idx
        vmask = verts[idx]
        for c in range(used + (used < s)):
            if forb[c] & bit or sizes[c] >= class_cap:
                continue
            saved = (members[c], forb[c], common[c])
            members[c] |= bit
            forb[c] |= adj[idx]
            common[c] &= vmask
            sizes[c] += 1
            go(idx + 1, max(used, c + 1), covered + 1)
            members[c], forb[c], common[c] = saved
            sizes[c] -= 1
            if done():
                return
        go(idx + 1, used, covered)

    go(0, 0, 0)

    def to_families(assign: list[int]) -> list[SetFamily]:
        return [SetFamily(n, k, (verts[j] for j in _bits(a))) for a in assign if a]

    optima = [to_families(a) for a in best_assign]
    return SearchResult(
        optimum=max(best, 0),
        witness=optima[0] if optima else [],
        nodes_explored=nodes,
        exact=not aborted,
        all_optima=optima if collect_all else [],
    )


def _is_union_of_stars(fams: list[SetFamily], n: int, k: int, s: int) -> bool:
    if len(fams) != s:
        return False
    centres = []
    for f in fams:
        common = (1 << n) - 1
        for m in f.masks:
            common &= m
        if not common:
            return False
        centres.append([b + 1 for b in _bits(common)])
    covered = set().union(*(f.masks for f in fams))
    for choice in itertools.product(*centres):
        if len(set(choice)) != s:
            continue
        xs = 0
        for x in choice:
            xs |= 1 << (x - 1)
        if covered == {a for a in iter_kmasks(n, k) if a & xs}:
            return True
    return False


def verify_star_optimality(n: int, k: int, s: int, *, cap: int = DEFAULT_VERTEX_CAP) -> bool:
    """True iff the exact optimum equals the star-union size and every optimal
    assignment found is a union of ``s`` stars (classes may share the sets
    lying in two stars)."""
    res = max_union_intersecting(n, k, s, cap=cap, collect_all=True)
    if not res.exact or res.optimum != star_union_bound(n, k, s):
        return False
    return all(_is_union_of_stars(w, n, k, s) for w in res.all_optima)


def _adjacency_of(g) -> list[int]:
    if isinstance(g, KneserGraph):
        return g.adjacency()
    if isinstance(g, GraphOnN):
        return g.adjacency()
    raise TypeError(f"expected KneserGraph or GraphOnN, got {type(g).__name__}")


def list_coloring_feasible(
    g, lists: ListAssignment | Sequence[Sequence[int]], *, cap: int = DEFAULT_COLORING_CAP
) -> dict[int, int] | None:
    """Return a proper colouring choosing each vertex's colour from its list,
    or ``None`` if none exists.

    Backtracking with forward checking; the next vertex is the uncoloured one
    with the fewest remaining options (lowest index on ties), colours are tried
    in increasing order.
    """
    adj = _adjacency_of(g)
    nv = len(adj)
    if nv > cap:
        raise CapacityError(f"{nv} vertices exceeds the list-colouring cap {cap}")
    raw = lists.lists if isinstance(lists, ListAssignment) else lists
    if len(raw) != nv:
        raise ValueError(f"{len(raw)} lists for {nv} vertices")
    avail = [sum(1 << c for c in lst) for lst in raw]
    if any(a == 0 for a in avail):
        return None
    colour: dict[int, int] = {}

    def solve(avail: list[int]) -> bool:
        pick, fewest = -1, None
        for v in range(nv):
            if v in colour:
                continue
            cnt = avail[v].bit_count()
            if fewest is None or cnt < fewest:
                pick, fewest = v, cnt
                if cnt <= 1:
                    break
        if pick < 0:
            return True
        options = avail[pick]
        while options:
            low = options & -options
            options ^= low
            nxt = list(avail)
            ok = True
            for w in _bits(adj[pick]):
                if w not in colour:
                    nxt[w] &= ~low
                    if not nxt[w]:
                        ok = False
                        break
            if not ok:
                continue
            colour[pick] = low.bit_length() - 1
            if solve(nxt):
                return True
            del colour[pick]
        return False

    return dict(sorted(colour.items())) if solve(avail) else None


def is_proper_list_coloring(g, lists, coloring: dict[int, int]) -> bool:
    adj = _adjacency_of(g)
    raw = lists.lists if isinstance(lists, ListAssignment) else lists
    if set(coloring) != set(range(len(adj))):
        return False
    if any(coloring[v] not in raw[v] for v in coloring):
        return False
    return all(coloring[v] != coloring[w] for v in range(len(adj)) for w in _bits(adj[v]))


# -- random lists ----------------------------------------------------------------


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(trial,))))


def random_lists(rng: np.random.Generator, nvertices: int, u: int) -> ListAssignment:
    half = u // 2
    lists = tuple(frozenset(int(c) + 1 for c in rng.permutation(u)[:half]) for _ in range(nvertices))
    return ListAssignment(u, lists)


@dataclass
class ChoiceSimReport:
    n: int
    k: int
    u: int
    trials: int
    seed: int
    infeasible: int
    generator: str = "PCG64/SeedSequence(seed, spawn_key=(trial,))"
    sampling: str = "shuffle-prefix"

    @property
    def rate(self) -> Fraction:
        return Fraction(self.infeasible, self.trials) if self.trials else Fraction(0)

    def to_dict(self) -> dict[str, Any]:
        out = dict(self.__dict__)
        out["rate"] = self.rate
        return out


def monte_carlo_choice(
    n: int, k: int, u: int, trials: int, seed: int, *, cap: int = DEFAULT_COLORING_CAP
) -> ChoiceSimReport:
    """Fraction of trials in which random u/2-lists on KG(n, k) admit no proper
    list colouring."""
    if u <= 0 or u % 2:
        raise ValueError(f"u must be a positive even integer, got {u}")
    if trials < 0:
        raise ValueError("trials must be non-negative")
    kg = KneserGraph(n, k, cap)
    infeasible = 0
    for t in range(trials):
        lists = random_lists(trial_rng(seed, t), len(kg), u)
        if list_coloring_feasible(kg, lists, cap=cap) is None:
            infeasible += 1
        if t and t % 10_000 == 0:
            log.info("choice-sim: %d/%d trials, %d infeasible", t, trials, infeasible)
    return ChoiceSimReport(n, k, u, trials, seed, infeasible)


def exact_choice_failure(g, u: int, max_assignments: int = 2_000_000) -> Fraction:
    """Exact probability that independent uniform u/2-lists admit no proper
    colouring, by enumerating all list assignments of each connected
    component (the failure events of components are independent)."""
    adj = _adjacency_of(g)
    nv = len(adj)
    all_lists = [frozenset(c) for c in itertools.combinations(range(1, u + 1), u // 2)]
    seen = 0
    p_ok = Fraction(1)
    for comp in _components(adj):
        size = len(comp)
        if len(all_lists) ** size > max_assignments:
            raise CapacityError(f"component of {size} vertices needs {len(all_lists)}^{size} assignments")
        pos = {v: i for i, v in enumerate(comp)}
        sub = [sum(1 << pos[w] for w in _bits(adj[v]) if w in pos) for v in comp]
        good = 0
        total = 0
        for choice in itertools.product(all_lists, repeat=size):
            total += 1
            if _brute_colourable(sub, choice):
                good += 1
        p_ok *= Fraction(good, total)
        seen += size
    assert seen == nv
    return 1 - p_ok


def _components(adj: list[int]) -> list[list[int]]:
    left = set(range(len(adj)))
    comps = []
    while left:
        start = min(left)
        stack, comp = [start], {start}
        while stack:
            v = stack.pop()
            for w in _bits(adj[v]):
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        left -= comp
        comps.append(sorted(comp))
    return comps


def _brute_colourable(adj: list[int], lists) -> bool:
    # plain product search, independent of list_coloring_feasible
    for colours in itertools.product(*(sorted(lst) for lst in lists)):
        if all(colours[v] != colours[w] for v in range(len(adj)) for w in _bits(adj[v]) if v < w):
            return True
    return False


def kneser_coloring(n: int, k: int) -> list[int]:
    """The classical (n-2k+2)-colouring of KG(n, k): colour ``min(A)`` when it is
    at most n-2k+1, otherwise the last colour (those sets all lie in the last
    2k-1 elements)."""
    last = n - 2 * k + 2
    return [min(elements_of(a)[0], last) for a in iter_kmasks(n, k)]
