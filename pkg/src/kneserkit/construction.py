"""Non-trivial intersecting families whose union beats the same number of stars.

Ground set layout (1-based, contiguous): ``M`` first, then ``T_1..T_{k-1}``
(three elements each), then ``B_1..B_{k-1}`` (``k-2-m`` elements each).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .bounds import star_union_bound
from .core import MAX_GROUND, CapacityError, KSubset, binomial, iter_kmasks
from .families import SetFamily, union_size

VERIFY_CAP = 24


def _range_mask(start: int, size: int) -> int:
    """Mask of the elements ``start, ..., start + size - 1``."""
    return ((1 << size) - 1) << (start - 1)


@dataclass(frozen=True)
class GroundPartition:
    k: int
    m: int
    M: int
    T: tuple[int, ...]
    B: tuple[int, ...]

    @property
    def n(self) -> int:
        return (self.k - 1) * (self.k + 1 - self.m) + self.m

    @property
    def in_theorem_regime(self) -> bool:
        return 4 * self.m <= self.k

    def parts(self) -> list[int]:
        return [self.M, *self.T, *self.B]

    def to_dict(self) -> dict[str, Any]:
        from .core import elements_of

        return {
            "k": self.k,
            "m": self.m,
            "n": self.n,
            "M": list(elements_of(self.M)),
            "T": [list(elements_of(t)) for t in self.T],
            "B": [list(elements_of(b)) for b in self.B],
        }


def build_ground(k: int, m: int) -> GroundPartition:
    if k < 3:
        raise ValueError(f"need k >= 3, got {k}")
    if not 0 <= m <= k - 2:
        raise ValueError(f"need 0 <= m <= k-2, got m={m}, k={k}")
    b_size = k - 2 - m
    M = _range_mask(1, m)
    nxt = m + 1
    T = []
    for _ in range(k - 1):
        T.append(_range_mask(nxt, 3))
        nxt += 3
    B = []
    for _ in range(k - 1):
        B.append(_range_mask(nxt, b_size))
        nxt += b_size
    gp = GroundPartition(k, m, M, tuple(T), tuple(B))
    assert nxt - 1 == gp.n
    return gp


def exceptional_set(gp: GroundPartition, i: int, y: int) -> KSubset:
    """``M ∪ T_i ∪ B_i`` minus ``y``; ``i`` is 1-based and ``y`` must lie in ``B_i``."""
    if not 1 <= i <= gp.k - 1:
        raise ValueError(f"i must be in 1..{gp.k - 1}")
    b = gp.B[i - 1]
    ybit = 1 << (y - 1) if y >= 1 else 0
    if not b & ybit:
        raise ValueError(f"{y} is not in B_{i}")
    return KSubset((gp.M | gp.T[i - 1] | b) & ~ybit, gp.n)


def family_count(k: int, m: int) -> int:
    return (k - 1) * (k - 2 - m) + (k - 1)


@dataclass
class ConstructionBundle:
    gp: GroundPartition
    hm_families: dict[tuple[int, int], SetFamily]
    t_families: list[SetFamily]

    @property
    def s(self) -> int:
        return self.gp.n - 2 * self.gp.k + 2 - self.gp.m

    def families(self) -> list[SetFamily]:
        return [*self.hm_families.values(), *self.t_families]


def build_families(gp: GroundPartition, check: bool | None = None) -> ConstructionBundle:
    """Materialise every HM^i_y and T_i family by filtering ``C(G, k)``.

    With ``check`` (default: whenever ``n <= 24``) each family is verified to
    be intersecting with no common element.
    """
    n, k = gp.n, gp.k
    if n > MAX_GROUND:
        raise CapacityError(f"ground set of size {n} exceeds {MAX_GROUND}")
    everything = list(iter_kmasks(n, k))
    hm: dict[tuple[int, int], SetFamily] = {}
    for i in range(1, k):
        b = gp.B[i - 1]
        bits = b
        while bits:
            ybit = bits & -bits
            bits ^= ybit
            y = ybit.bit_length()
            h = exceptional_set(gp, i, y).bits
            hm[(i, y)] = SetFamily(n, k, (a for a in everything if a == h or (a & ybit and a & h)))
    t_fams = [SetFamily(n, k, (a for a in everything if (a & t).bit_count() >= 2)) for t in gp.T]
    bundle = ConstructionBundle(gp, hm, t_fams)
    if check is None:
        check = n <= VERIFY_CAP
    if check:
        for f in bundle.families():
            if not f.is_intersecting or f.trivial_center is not None:
                raise AssertionError(f"construction family {f!r} is not non-trivial intersecting")
    return bundle


def uncovered_count_formula(k: int, m: int) -> int:
    """sum_{j=1}^{m} C(m,j) C(k-1,k-j) 3^(k-j)."""
    if m < 0 or k < 1:
        raise ValueError("need k >= 1 and m >= 0")
    return sum(binomial(m, j) * binomial(k - 1, k - j) * 3 ** (k - j) for j in range(1, m + 1))


def star_uncovered_count(k: int, m: int) -> int:
    """C(2k-2+m, k): sets missed by a union of n-2k+2-m stars."""
    return binomial(2 * k - 2 + m, k)


@dataclass
class ConstructionReport:
    k: int
    m: int
    n: int
    s: int
    total_sets: int
    uncovered: int
    uncovered_formula: int
    star_uncovered: int
    union: int
    star_union: int
    characterization_ok: bool
    pair_rule_ok: bool
    families_ok: bool
    in_theorem_regime: bool
    failures: list[str] = field(default_factory=list)

    @property
    def count_ok(self) -> bool:
        return self.uncovered == self.uncovered_formula

    @property
    def union_ok(self) -> bool:
        return self.union == self.total_sets - self.uncovered_formula

    @property
    def improvement(self) -> bool:
        return self.uncovered_formula < self.star_uncovered

    @property
    def ok(self) -> bool:
        return (
            self.count_ok
            and self.union_ok
            and self.characterization_ok
            and self.pair_rule_ok
            and self.families_ok
            and self.improvement == (self.union > self.star_union)
        )

    def to_dict(self) -> dict[str, Any]:
        out = {k: v for k, v in self.__dict__.items()}
        out.update(
            count_ok=self.count_ok,
            union_ok=self.union_ok,
            improvement=self.improvement,
            ok=self.ok,
        )
        return out


def verify_construction(k: int, m: int, bundle: ConstructionBundle | None = None) -> ConstructionReport:
    """Enumerate ``C(G, k)`` and check the counting claims of the construction.

    Checked: the uncovered count equals :func:`uncovered_count_formula`; a set
    is uncovered exactly when it lies in ``M ∪ T_1 ∪ ... ∪ T_{k-1}`` and meets
    each ``T_i`` at most once; any set meeting some ``T_i ⊔ B_i`` twice is
    covered; the union size is ``C(n,k) - formula``. Improvement over stars
    is reported, not asserted, outside ``m <= k/4``.
    """
    gp = build_ground(k, m)
    if gp.n > VERIFY_CAP:
        raise CapacityError(f"full enumeration of C({gp.n},{k}) is above the n <= {VERIFY_CAP} cap")
    if bundle is None:
        bundle = build_families(gp)
    fams = bundle.families()
    covered: set[int] = set()
    for f in fams:
        covered.update(f.masks)

    allowed = gp.M
    for t in gp.T:
        allowed |= t
    blocks = [t | b for t, b in zip(gp.T, gp.B)]

    total = 0
    uncovered = 0
    char_ok = True
    pair_ok = True
    failures: list[str] = []
    for a in iter_kmasks(gp.n, k):
        total += 1
        is_covered = a in covered
        predicted = not (a & ~allowed) and all((a & t).bit_count() <= 1 for t in gp.T)
        if not is_covered:
            uncovered += 1
        if predicted == is_covered:
            char_ok = False
            if len(failures) < 10:
                failures.append(f"characterization mismatch at {KSubset(a, gp.n)!r}")
        if not is_covered and any((a & blk).bit_count() >= 2 for blk in blocks):
            pair_ok = False
            if len(failures) < 10:
                failures.append(f"{KSubset(a, gp.n)!r} meets some T_i + B_i twice but is uncovered")

    fams_ok = len(fams) == bundle.s == family_count(k, m) and all(
        f.is_intersecting and f.trivial_center is None for f in fams
    )
    return ConstructionReport(
        k=k,
        m=m,
        n=gp.n,
        s=bundle.s,
        total_sets=total,
        uncovered=uncovered,
        uncovered_formula=uncovered_count_formula(k, m),
        star_uncovered=star_uncovered_count(k, m),
        union=union_size(fams) if fams else 0,
        star_union=star_union_bound(gp.n, k, bundle.s),
        characterization_ok=char_ok,
        pair_rule_ok=pair_ok,
        families_ok=fams_ok,
        in_theorem_regime=gp.in_theorem_regime,
        failures=failures,
    )


def improvement_scan(k_range: range, m_max=lambda k: k // 4) -> list[tuple[int, int]]:
    """Return every ``(k, m)`` with ``1 <= m <= m_max(k)`` where the construction
    does *not* beat the stars. An empty list means the improvement holds
    throughout the scan."""
    bad = []
    for k in k_range:
        for m in range(1, m_max(k) + 1):
            if not uncovered_count_formula(k, m) < star_uncovered_count(k, m):
                bad.append((k, m))
    return bad
