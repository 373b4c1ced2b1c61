"""Level-by-level set cover of a family that cross-intersects a family with
large covering number."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .bounds import ceil_sqrt
from .core import KSubset
from .families import SetFamily, has_disjoint_pair


class SetCoverError(ValueError):
    """No member of the cross family avoids a partial cover set."""


@dataclass(frozen=True)
class SetCoverInstance:
    """``F`` (k-sets) cross-intersecting ``Gx`` (t-sets, t in {k-1, k}) with
    τ(Gx) at least ``ceil(sqrt k)``. Validated on construction."""

    F: SetFamily
    Gx: SetFamily
    k: int

    def __post_init__(self) -> None:
        if self.F.masks and self.F.k != self.k:
            raise ValueError(f"F holds {self.F.k}-sets, expected k={self.k}")
        if self.Gx.k not in (self.k - 1, self.k):
            raise ValueError(f"Gx holds {self.Gx.k}-sets; t must be k-1 or k")
        if has_disjoint_pair(self.F.masks, self.Gx.masks):
            raise ValueError("F does not cross-intersect Gx")
        if self.Gx.tau < self.levels:
            raise ValueError(f"tau(Gx) = {self.Gx.tau} < ceil(sqrt k) = {self.levels}")

    @property
    def levels(self) -> int:
        return ceil_sqrt(self.k)

    @property
    def ground_n(self) -> int:
        return max(self.F.ground_n, self.Gx.ground_n)


def set_cover_levels(inst: SetCoverInstance) -> Iterator[SetFamily]:
    """Yield H_0 = {∅}, H_1, ..., H_L with L = ceil(sqrt k).

    H_{l+1} extends each H in H_l by every element of the first Gx member
    disjoint from H. Repeated sets are merged.
    """
    n = inst.ground_n
    level = [0]
    yield SetFamily(n, 0, level)
    for depth in range(inst.levels):
        nxt: list[int] = []
        for h in level:
            g = next((g for g in inst.Gx.masks if not g & h), None)
            if g is None:
                raise SetCoverError(f"no Gx member is disjoint from {KSubset(h, n)!r} at level {depth}")
            bits = g
            while bits:
                low = bits & -bits
                bits ^= low
                nxt.append(h | low)
        level = list(dict.fromkeys(nxt))
        yield SetFamily(n, depth + 1, level)


def build_set_cover(inst: SetCoverInstance) -> SetFamily:
    """Family of ceil(sqrt k)-sets, at most k^ceil(sqrt k) of them, such that
    every member of ``inst.F`` contains one of them."""
    *_, last = set_cover_levels(inst)
    return last


def verify_set_cover(F, H) -> bool:
    """True iff every member of ``F`` contains some member of ``H``."""
    hs = list(H.masks) if isinstance(H, SetFamily) else [int(h) for h in H]
    fs = list(F.masks) if isinstance(F, SetFamily) else [int(f) for f in F]
    return all(any(h & f == h for h in hs) for f in fs)
