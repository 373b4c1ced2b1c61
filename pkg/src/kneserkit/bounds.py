"""Exact evaluation of the closed-form bounds and inequality chains.

Every comparison here is done in integers or ``Fraction``; quantities that
involve ``e`` or logarithms are replaced by rational surrogates or left out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .core import DomainError, GraphOnN, binomial, elements_of, mask_of
from .families import hm_bound

_RELATIONS = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
}


@dataclass
class InequalityReport:
    """Outcome of one exact comparison ``lhs <relation> rhs``.

    ``checks`` carries named sub-results for reports that bundle several
    conditions; ``holds`` always refers to the main ``lhs``/``rhs`` pair.
    """

    name: str
    lhs: Fraction
    rhs: Fraction
    relation: str = "<"
    preconditions_met: bool = True
    notes: str = ""
    checks: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.lhs = Fraction(self.lhs)
        self.rhs = Fraction(self.rhs)
        if self.relation not in _RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")

    @property
    def holds(self) -> bool:
        return _RELATIONS[self.relation](self.lhs, self.rhs)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "relation": self.relation,
            "holds": self.holds,
            "preconditions_met": self.preconditions_met,
            "notes": self.notes,
            "checks": self.checks,
        }


def ceil_sqrt(k: int) -> int:
    r = math.isqrt(k)
    return r if r * r == k else r + 1


# -- unions of stars and the Hilton-Milner comparison ---------------------------


def star_union_bound(n: int, k: int, s: int) -> int:
    """C(n,k) - C(n-s,k): the size of a union of ``s`` distinct stars."""
    if s < 0:
        raise ValueError("s must be non-negative")
    rest = n - s
    return binomial(n, k) - (binomial(rest, k) if rest >= 0 else 0)


def prop21_check(n: int, k: int, s: int) -> InequalityReport:
    """Compare ``s * HM(n,k)`` with the star-union size.

    The precondition ``n > k^2 + k^{3/2} sqrt(s)`` is decided exactly as
    ``n > k^2`` and ``(n - k^2)^2 > k^3 s``.
    """
    if n <= 2 * k:
        raise DomainError(f"needs n > 2k, got n={n}, k={k}")
    over = n - k * k
    pre = over > 0 and over * over > k**3 * s
    return InequalityReport(
        name="prop21",
        lhs=s * hm_bound(n, k),
        rhs=star_union_bound(n, k, s),
        relation="<",
        preconditions_met=pre,
        notes="lhs = s*HM(n,k), rhs = C(n,k) - C(n-s,k)",
        checks={"n": n, "k": k, "s": s},
    )


def survival_ratio(n: int, k: int, s: int) -> Fraction:
    """prod_{i<k} (n-s-i)/(n-i) = C(n-s,k)/C(n,k)."""
    out = Fraction(1)
    for i in range(k):
        out *= Fraction(max(n - s - i, 0), n - i)
    return out


# -- Khadzhiivanov-Nikiforov clique recursion ------------------------------------


def kn_threshold(j: int) -> Fraction:
    """Least density at which the level-``j`` step applies: (j-2)/(2(j-1))."""
    return Fraction(j - 2, 2 * (j - 1))


def kn_step(gamma: Fraction, j: int, vcount: int) -> Fraction:
    """Factor ``(1 + (2γ-1)(j-1)) / j * |V|`` relating j- and (j-1)-clique counts."""
    gamma = Fraction(gamma)
    if j < 2:
        raise ValueError("levels start at j = 2")
    if gamma < kn_threshold(j):
        raise DomainError(f"density {gamma} below (j-2)/(2(j-1)) = {kn_threshold(j)} at level j={j}")
    return (1 + (2 * gamma - 1) * (j - 1)) / j * vcount


def kn_lower_bound(g: GraphOnN, k: int) -> Fraction:
    """Lower bound on the number of k-cliques of ``g`` by iterating :func:`kn_step`
    from ``N_2 = |E|`` with ``γ = |E| / |V|^2``.

    To bound independent k-sets, pass the complement graph.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if g.n == 0:
        raise DomainError("empty vertex set")
    gamma = Fraction(g.edge_count, g.n * g.n)
    bound = Fraction(g.edge_count)
    for j in range(3, k + 1):
        bound *= kn_step(gamma, j, g.n)
    return bound


def kn_closed_form(n: int, k: int, s: int) -> Fraction:
    """``n^k/k! * prod_{i=1}^{k-1} (1 - i(1/n + 2ks/n^2))``: the iterated bound for
    the complement of a graph on ``[n]`` with exactly ``ks`` edges."""
    step = Fraction(1, n) + Fraction(2 * k * s, n * n)
    out = Fraction(n**k, math.factorial(k))
    for i in range(1, k):
        out *= 1 - i * step
    return out


def mainlemma_check(n: int, k: int, s: int) -> InequalityReport:
    """The exact pieces of the independent-set lower bound derivation.

    checks["quadratic"]
        n^2 - (k-1)n - 2k(k-1)s >= 0, the density precondition for every level.
    checks["termwise"]
        1 - i(1/n + 2ks/n^2) > 1 - (s+i)/n for every i in 1..k-1
        (``termwise_failures`` lists the i that fail).
    main comparison
        kn_closed_form(n,k,s) * (1 - s/k^4)  >  C(n-s, k).

    When ``n < s + k`` the right side is 0 and the statement is trivial; the
    report flags ``trivial_case`` rather than raising.
    """
    if not 0 <= s < n:
        raise ValueError(f"need 0 <= s < n, got s={s}, n={n}")
    if k < 2:
        raise ValueError("k must be at least 2")
    quadratic = n * n - (k - 1) * n - 2 * k * (k - 1) * s
    step = Fraction(1, n) + Fraction(2 * k * s, n * n)
    failures = [i for i in range(1, k) if not 1 - i * step > 1 - Fraction(s + i, n)]
    lhs = kn_closed_form(n, k, s) * (1 - Fraction(s, k**4))
    trivial = n < s + k
    return InequalityReport(
        name="mainlemma",
        lhs=lhs,
        rhs=binomial(n - s, k) if not trivial else 0,
        relation=">",
        preconditions_met=quadratic >= 0,
        notes="trivial: C(n-s,k) = 0" if trivial else "",
        checks={
            "n": n,
            "k": k,
            "s": s,
            "quadratic": quadratic >= 0,
            "quadratic_value": quadratic,
            "termwise": not failures,
            "termwise_failures": failures,
            "trivial_case": trivial,
            "regime": 2 * k * k < n < 2 * k**3,
        },
    )


# -- choice-number machinery -----------------------------------------------------


def choice_prob_ratio(u: int, z: int) -> Fraction:
    """C(u-z, u/2) / C(u, u/2): chance a random u/2-list avoids ``z`` fixed colors."""
    if u < 0 or u % 2:
        raise ValueError(f"u must be a non-negative even integer, got {u}")
    if not 0 <= z <= u // 2:
        raise ValueError(f"need 0 <= z <= u/2, got z={z}, u={u}")
    half = u // 2
    return Fraction(binomial(u - z, half), binomial(u, half))


@dataclass(frozen=True)
class CoverSpec:
    """A u-tuple of cover descriptors of three kinds.

    ``u1`` stars; ``pair_covers``, one entry per A-type family, each a tuple
    of 2-subset masks (at most ``k`` of them); ``small_set_covers``, one
    entry per B-type family, each a tuple of ``ceil(sqrt k)``-subset masks
    (at most ``k ** ceil(sqrt k)`` of them).
    """

    k: int
    u1: int
    pair_covers: tuple[tuple[int, ...], ...] = ()
    small_set_covers: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        if self.u1 < 0:
            raise ValueError("u1 must be non-negative")
        for pairs in self.pair_covers:
            if len(pairs) > self.k:
                raise ValueError(f"A-descriptor has {len(pairs)} pairs > k = {self.k}")
            if any(p.bit_count() != 2 for p in pairs):
                raise ValueError("A-descriptor entries must be 2-sets")
        size = ceil_sqrt(self.k)
        cap = self.k**size
        for sets in self.small_set_covers:
            if len(sets) > cap:
                raise ValueError(f"B-descriptor has {len(sets)} sets > k^ceil(sqrt k) = {cap}")
            if any(h.bit_count() != size for h in sets):
                raise ValueError(f"B-descriptor entries must be {size}-sets")

    @classmethod
    def build(
        cls,
        k: int,
        u1: int,
        pair_covers: Sequence[Sequence[Sequence[int]]] = (),
        small_set_covers: Sequence[Sequence[Sequence[int]]] = (),
    ) -> "CoverSpec":
        """Build from element lists instead of masks."""
        return cls(
            k,
            u1,
            tuple(tuple(mask_of(p) for p in d) for d in pair_covers),
            tuple(tuple(mask_of(h) for h in d) for d in small_set_covers),
        )

    @property
    def u2(self) -> int:
        return len(self.pair_covers)

    @property
    def uB(self) -> int:
        return len(self.small_set_covers)

    @property
    def u(self) -> int:
        return self.u1 + self.u2 + self.uB

    def to_dict(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "u1": self.u1,
            "pair_covers": [[list(elements_of(p)) for p in d] for d in self.pair_covers],
            "small_set_covers": [[list(elements_of(h)) for h in d] for d in self.small_set_covers],
        }


def expected_centers(n: int, k: int, cover: CoverSpec) -> Fraction:
    """Exact E[#centres] in a uniform random k-subset of ``[n]``.

    A star centre lies in the set with probability k/n, a pair with
    probability k(k-1)/(n(n-1)). B-type descriptors contribute nothing.
    """
    if n < k:
        raise ValueError(f"need n >= k, got n={n}, k={k}")
    pairs = sum(len(d) for d in cover.pair_covers)
    out = cover.u1 * Fraction(k, n)
    if pairs:
        out += pairs * Fraction(k * (k - 1), n * (n - 1))
    return out


@dataclass(frozen=True)
class ChoiceParams:
    """Parameters of the random-list experiment: ``u`` colors, lists of size
    u/2, and ``z`` colors that can contain a fixed vertex."""

    n: int
    k: int
    C: Fraction
    epsilon: Fraction
    delta: Fraction
    u: int
    z: int

    def __post_init__(self) -> None:
        if self.u % 2:
            raise ValueError(f"u must be even, got {self.u}")
        if self.z < 0:
            raise ValueError("z must be non-negative")

    @classmethod
    def derive(cls, n: int, k: int, C, epsilon=0, delta=0) -> "ChoiceParams":
        """Set ``u`` to ``C n log2 n`` rounded up to an even integer and
        ``z = ceil(2uk/n)``.

        The logarithm is the only floating-point step; it fixes an integer
        parameter and never enters a comparison.
        """
        C = Fraction(C)
        raw = math.ceil(C * n * Fraction(math.log2(n)))
        u = raw + (raw % 2)
        z = -(-2 * u * k // n)
        return cls(n, k, C, Fraction(epsilon), Fraction(delta), u, z)


def c_upper_bound(k: int, epsilon=0) -> Fraction:
    """1/4 - 1/(2k) - ε, the largest admissible constant C."""
    return Fraction(1, 4) - Fraction(1, 2 * k) - Fraction(epsilon)


def choice_exponent_check(params: ChoiceParams) -> InequalityReport:
    """Decide ``k^(ceil(sqrt k) + 1/2) < n^(k(1/2 - 2C) - 1 - δ)`` exactly.

    Both exponents are rational; multiplying them by the lcm ``D`` of their
    denominators turns the comparison into ``k^(aD)`` versus ``n^(bD)`` over
    the integers (or rationals when ``b < 0``). The report also carries the
    constraint on ``C`` and the exponent margin condition.
    """
    k, n = params.k, params.n
    if k < 3:
        raise DomainError("the exponent comparison is stated for k >= 3")
    a = ceil_sqrt(k) + Fraction(1, 2)
    b = k * (Fraction(1, 2) - 2 * params.C) - 1 - params.delta
    d = math.lcm(a.denominator, b.denominator)
    lhs = Fraction(k) ** int(a * d)
    rhs = Fraction(n) ** int(b * d)
    c_max = c_upper_bound(k, params.epsilon)
    return InequalityReport(
        name="choice_exponent",
        lhs=lhs,
        rhs=rhs,
        relation="<",
        preconditions_met=params.C <= c_max,
        notes=f"both sides raised to the power D={d}",
        checks={
            "lhs_exponent": a,
            "rhs_exponent": b,
            "power": d,
            "C": params.C,
            "C_upper_bound": c_max,
            "C_constraint": params.C <= c_max,
            "exponent_margin": Fraction(1, 2) - 2 * params.C >= params.delta + Fraction(1, k),
        },
    )
