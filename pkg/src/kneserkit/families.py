"""Intersecting families of k-sets: stars, Hilton-Milner families, predicates
and union accounting, plus the plain-text family serialization."""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .core import (
    MAX_GROUND,
    CapacityError,
    DomainError,
    KSubset,
    binomial,
    covering_number,
    elements_of,
    iter_kmasks,
    mask_of,
)

# pairwise scans below this size stay in pure Python
_NUMPY_THRESHOLD = 256
_CHUNK = 2048


def has_disjoint_pair(masks: Sequence[int], others: Sequence[int] | None = None) -> bool:
    """True if some member of ``masks`` is disjoint from some member of
    ``others`` (default: from another member of ``masks`` itself)."""
    same = others is None
    right = masks if same else others
    if not masks or not right:
        return False
    if len(masks) * len(right) <= _NUMPY_THRESHOLD**2 or max(max(masks), max(right)) >> 64:
        for i, a in enumerate(masks):
            for b in (right[i + 1 :] if same else right):
                if not a & b:
                    return True
        return False
    a_arr = np.asarray(masks, dtype=np.uint64)
    b_arr = np.asarray(right, dtype=np.uint64)
    for start in range(0, len(a_arr), _CHUNK):
        block = a_arr[start : start + _CHUNK]
        # self-mode diagonal zeros come only from an empty member, which is then
        # disjoint from every other member anyway (families here have > 1 member)
        if np.any((block[:, None] & b_arr[None, :]) == 0):
            return True
    return False


class SetFamily:
    """An ordered, duplicate-free family of k-subsets of ``[ground_n]``.

    Members are kept as bit masks; ``members`` gives ``KSubset`` views.
    Duplicates passed to the constructor are dropped (first occurrence wins).
    """

    def __init__(self, ground_n: int, k: int, masks: Iterable[int] = ()):
        seen: set[int] = set()
        ordered: list[int] = []
        for m in masks:
            m = int(m)
            if m in seen:
                continue
            if m.bit_count() != k:
                raise ValueError(f"member {elements_of(m)} does not have size {k}")
            if m >> ground_n:
                raise ValueError(f"member {elements_of(m)} is not inside [{ground_n}]")
            seen.add(m)
            ordered.append(m)
        self.ground_n = ground_n
        self.k = k
        self.masks: tuple[int, ...] = tuple(ordered)
        self._mask_set = frozenset(seen)

    @classmethod
    def from_sets(cls, ground_n: int, sets: Iterable[Iterable[int]], k: int | None = None) -> "SetFamily":
        masks = [mask_of(s) for s in sets]
        if k is None:
            if not masks:
                raise ValueError("k is required for an empty family")
            k = masks[0].bit_count()
        return cls(ground_n, k, masks)

    @property
    def members(self) -> list[KSubset]:
        return [KSubset(m, self.ground_n) for m in self.masks]

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, item) -> bool:
        return int(item) in self._mask_set

    def __eq__(self, other) -> bool:
        if not isinstance(other, SetFamily):
            return NotImplemented
        return (self.ground_n, self.k, self.masks) == (other.ground_n, other.k, other.masks)

    def __hash__(self) -> int:
        return hash((self.ground_n, self.k, self.masks))

    def __repr__(self) -> str:
        shown = ", ".join("".join(map(str, elements_of(m))) for m in self.masks[:6])
        more = ", ..." if len(self.masks) > 6 else ""
        return f"SetFamily(n={self.ground_n}, k={self.k}, |F|={len(self)}: {shown}{more})"

    def as_sets(self) -> list[tuple[int, ...]]:
        return [elements_of(m) for m in self.masks]

    @cached_property
    def is_intersecting(self) -> bool:
        return not has_disjoint_pair(self.masks)

    @cached_property
    def trivial_center(self) -> int | None:
        if not self.masks:
            return None
        common = (1 << self.ground_n) - 1
        for m in self.masks:
            common &= m
            if not common:
                return None
        return (common & -common).bit_length()

    @cached_property
    def tau(self) -> int:
        return covering_number(self.masks)


def _check_element(n: int, x: int) -> None:
    if not 1 <= x <= n:
        raise ValueError(f"element {x} is not in [{n}]")


def _enumerable(n: int) -> None:
    if n > MAX_GROUND:
        raise CapacityError(f"ground set of size {n} exceeds {MAX_GROUND}")


def star(n: int, k: int, x: int) -> SetFamily:
    """All k-subsets of ``[n]`` containing ``x``."""
    _check_element(n, x)
    _enumerable(n)
    if k > n:
        raise ValueError(f"k={k} exceeds n={n}")
    bit = 1 << (x - 1)
    return SetFamily(n, k, (m for m in iter_kmasks(n, k) if m & bit))


def is_intersecting(fam: SetFamily) -> bool:
    return fam.is_intersecting


def trivial_center(fam: SetFamily) -> int | None:
    """Smallest element common to every member, or ``None``."""
    return fam.trivial_center


def hm_bound(n: int, k: int) -> int:
    """Hilton-Milner bound C(n-1, k-1) - C(n-k-1, k-1) + 1, defined for n > 2k."""
    if n <= 2 * k:
        raise DomainError(f"Hilton-Milner bound needs n > 2k, got n={n}, k={k}")
    return binomial(n - 1, k - 1) - binomial(n - k - 1, k - 1) + 1


def hilton_milner_family(n: int, k: int, x: int, exceptional: KSubset | Iterable[int]) -> SetFamily:
    """The family ``{E} ∪ {A : x ∈ A, A ∩ E ≠ ∅}``.

    Built by filtering the full k-subset enumeration, so its size is an
    independent check on :func:`hm_bound`.
    """
    _check_element(n, x)
    _enumerable(n)
    e = exceptional.bits if isinstance(exceptional, KSubset) else mask_of(exceptional)
    if e.bit_count() != k or e >> n:
        raise ValueError(f"exceptional set must be a {k}-subset of [{n}]")
    bit = 1 << (x - 1)
    if e & bit:
        raise ValueError(f"centre {x} must not lie in the exceptional set")
    return SetFamily(n, k, (m for m in iter_kmasks(n, k) if m == e or (m & bit and m & e)))


def union_size(fams: Sequence[SetFamily]) -> int:
    """Size of the union, counting sets shared between families once."""
    if not fams:
        return 0
    n, k = fams[0].ground_n, fams[0].k
    for f in fams:
        if (f.ground_n, f.k) != (n, k):
            raise ValueError("families live on different ground sets or uniformities")
    covered: set[int] = set()
    for f in fams:
        covered.update(f.masks)
    return len(covered)


# -- serialization -----------------------------------------------------------
# One subset per line as its sorted 1-based elements joined by commas;
# families are separated by blank lines. The empty subset is written "-".


def format_families(fams: Sequence[SetFamily]) -> str:
    blocks = []
    for f in fams:
        lines = [",".join(map(str, elements_of(m))) if m else "-" for m in f.masks]
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + ("\n" if blocks else "")


def parse_families(text: str, n: int | None = None) -> list[SetFamily]:
    """Inverse of :func:`format_families`. Lines starting with ``#`` are skipped.

    ``n`` defaults to the largest element seen.
    """
    raw_blocks: list[list[tuple[int, ...]]] = []
    current: list[tuple[int, ...]] = []
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("#"):
            continue
        if not line:
            if current:
                raw_blocks.append(current)
                current = []
            continue
        if line == "-":
            current.append(())
        else:
            current.append(tuple(sorted(int(tok) for tok in line.split(","))))
    if current:
        raw_blocks.append(current)
    if n is None:
        n = max((max(s) for b in raw_blocks for s in b if s), default=0)
    return [SetFamily(n, len(b[0]), (mask_of(s) for s in b)) for b in raw_blocks]
