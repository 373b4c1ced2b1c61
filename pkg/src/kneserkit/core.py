"""Combinatorial primitives: exact binomials, k-subsets as bit sets, graphs on
``[n]``, independent-set counting and covering numbers.

Elements of the ground set are 1-based (``[n] = {1, ..., n}``); element ``x``
lives in bit ``x - 1`` of a subset mask. Graph vertices are 0-based indices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache, total_ordering
from typing import Iterable, Iterator

MAX_GROUND = 64
DEFAULT_GRAPH_CAP = 40


class CapacityError(ValueError):
    """An instance is too large for an exact enumeration path."""


class DomainError(ValueError):
    """A formula was evaluated outside the range where it is defined."""


def binomial(n: int, k: int) -> int:
    """Exact C(n, k); zero when ``k > n``."""
    if n < 0 or k < 0:
        raise ValueError(f"binomial needs n, k >= 0, got ({n}, {k})")
    return math.comb(n, k)


def mask_of(elements: Iterable[int]) -> int:
    bits = 0
    for x in elements:
        if x < 1:
            raise ValueError(f"elements are 1-based, got {x}")
        bits |= 1 << (x - 1)
    return bits


def elements_of(bits: int) -> tuple[int, ...]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length())
        bits ^= low
    return tuple(out)


@total_ordering
@dataclass(frozen=True)
class KSubset:
    """A subset of ``[n]`` stored as a bit mask.

    Ordering is colexicographic, which for masks over the same ground set is
    plain integer order of ``bits``.
    """

    bits: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"mask {self.bits:#x} has bits outside [{self.n}]")

    @classmethod
    def from_elements(cls, elements: Iterable[int], n: int) -> "KSubset":
        return cls(mask_of(elements), n)

    @property
    def k(self) -> int:
        return self.bits.bit_count()

    def elements(self) -> tuple[int, ...]:
        return elements_of(self.bits)

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and x >= 1 and bool(self.bits >> (x - 1) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements())

    def __len__(self) -> int:
        return self.k

    def __int__(self) -> int:
        return self.bits

    def __lt__(self, other: "KSubset") -> bool:
        if not isinstance(other, KSubset):
            return NotImplemented
        return (self.bits, self.n) < (other.bits, other.n)

    def __repr__(self) -> str:
        return f"KSubset({set(self.elements()) or '{}'}, n={self.n})"


def iter_kmasks(n: int, k: int) -> Iterator[int]:
    """Yield every k-subset mask of ``[n]`` in colex order (Gosper's hack)."""
    if k == 0:
        yield 0
        return
    if k > n:
        return
    bits = (1 << k) - 1
    limit = 1 << n
    while bits < limit:
        yield bits
        low = bits & -bits
        ripple = bits + low
        bits = (((ripple ^ bits) >> 2) // low) | ripple


def enumerate_ksubsets(n: int, k: int) -> Iterator[KSubset]:
    """Stream all k-subsets of ``[n]`` in colex order.

    Raises
    ------
    CapacityError
        If ``n`` exceeds the 64-element word width.
    """
    if n > MAX_GROUND:
        raise CapacityError(f"ground set of size {n} exceeds {MAX_GROUND}")
    if n < 1 or not 0 <= k <= n:
        raise ValueError(f"need 1 <= n and 0 <= k <= n, got n={n}, k={k}")
    return (KSubset(b, n) for b in iter_kmasks(n, k))


def _as_masks(fam) -> list[int]:
    masks = getattr(fam, "masks", None)
    if masks is not None:
        return list(masks)
    return [int(m) for m in fam]


def _disjoint_lower_bound(masks: list[int]) -> int:
    # greedy packing of pairwise disjoint members; each needs its own cover element
    used = 0
    count = 0
    for m in masks:
        if not m & used:
            used |= m
            count += 1
    return count


def covering_number(fam) -> int:
    """Exact covering number τ: the least size of a set meeting every member.

    Accepts a ``SetFamily`` or any iterable of masks / ``KSubset``. The empty
    family has τ = 0. A family containing the empty set has no cover; that
    raises ``ValueError``.
    """
    masks = sorted(set(_as_masks(fam)), key=lambda m: (m.bit_count(), m))
    if not masks:
        return 0
    if masks[0] == 0:
        raise ValueError("a family containing the empty set has no cover")
    # drop supersets; a cover hitting the smaller member hits them too
    minimal: list[int] = []
    for m in masks:
        if not any(s & m == s for s in minimal):
            minimal.append(m)

    def hits(budget: int, remaining: list[int]) -> bool:
        if not remaining:
            return True
        if budget == 0 or _disjoint_lower_bound(remaining) > budget:
            return False
        first = remaining[0]
        bits = first
        while bits:
            low = bits & -bits
            bits ^= low
            if hits(budget - 1, [m for m in remaining if not m & low]):
                return True
        return False

    lower = _disjoint_lower_bound(minimal)
    for budget in range(lower, len(minimal) + 1):
        if hits(budget, minimal):
            return budget
    raise AssertionError("unreachable: one element per member always covers")


@dataclass(frozen=True)
class GraphOnN:
    """A simple graph on vertices ``0..n-1``."""

    n: int
    edges: frozenset[frozenset[int]]

    def __post_init__(self) -> None:
        for e in self.edges:
            if len(e) != 2:
                raise ValueError(f"edge {set(e)} is a loop or malformed")
            if not all(0 <= v < self.n for v in e):
                raise ValueError(f"edge {set(e)} outside 0..{self.n - 1}")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "GraphOnN":
        edges = set()
        for u, v in pairs:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            edges.add(frozenset((u, v)))
        return cls(n, frozenset(edges))

    @classmethod
    def complete(cls, n: int) -> "GraphOnN":
        return cls.from_pairs(n, ((u, v) for u in range(n) for v in range(u + 1, n)))

    @classmethod
    def empty(cls, n: int) -> "GraphOnN":
        return cls(n, frozenset())

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def adjacency(self) -> list[int]:
        """Neighbour masks indexed by vertex."""
        adj = [0] * self.n
        for e in self.edges:
            u, v = tuple(e)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    def complement(self) -> "GraphOnN":
        return GraphOnN.from_pairs(
            self.n,
            (
                (u, v)
                for u in range(self.n)
                for v in range(u + 1, self.n)
                if frozenset((u, v)) not in self.edges
            ),
        )

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.edges)


def _count_from_adjacency(adj: list[int], n: int, k: int) -> int:
    @lru_cache(maxsize=None)
    def count(cand: int, need: int) -> int:
        if need == 0:
            return 1
        if cand.bit_count() < need:
            return 0
        low = cand & -cand
        v = low.bit_length() - 1
        rest = cand ^ low
        return count(rest, need) + count(rest & ~adj[v], need - 1)

    return count((1 << n) - 1, k)


def count_independent_ksets(g: GraphOnN, k: int, cap: int = DEFAULT_GRAPH_CAP) -> int:
    """Number of independent k-sets of ``g`` (= k-cliques of its complement).

    Branches on the lowest candidate vertex; taking it removes its
    neighbourhood from the candidates. Memoised on (candidates, k).
    """
    if g.n > cap:
        raise CapacityError(f"graph on {g.n} vertices exceeds cap {cap}")
    if k < 0:
        raise ValueError("k must be non-negative")
    return _count_from_adjacency(g.adjacency(), g.n, k)


def count_cliques(g: GraphOnN, k: int, cap: int = DEFAULT_GRAPH_CAP) -> int:
    """Number of k-cliques of ``g``."""
    if g.n > cap:
        raise CapacityError(f"graph on {g.n} vertices exceeds cap {cap}")
    full = (1 << g.n) - 1
    adj = g.adjacency()
    non_adj = [full & ~a & ~(1 << v) for v, a in enumerate(adj)]
    return _count_from_adjacency(non_adj, g.n, k)
