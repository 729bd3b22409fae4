"""Non-exhaustive non-crossing partitions and their even-exclusive variant.

A partition of ``[m] = {1, ..., m}`` here is a set of disjoint, non-empty,
pairwise non-crossing blocks that need not cover ``[m]`` (``NNC_m``).  The
even-exclusive ones (``eNNC_m``) additionally have no singleton block ``{i}``
with ``i`` even; with ``m = 2n`` they label thick subcategories of the
completed category, block elements being site numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from . import surface as sf
from .arcs import Arc, site_numbers
from .errors import CapExceeded, InvalidPartition, ParseError

ENUMERATION_CAP = 10


def is_noncrossing(blocks: Iterable[Iterable[int]], m: int | None = None) -> bool:
    blocks = [frozenset(b) for b in blocks]
    label = {}
    for idx, b in enumerate(blocks):
        for e in b:
            if e in label or (m is not None and not 1 <= e <= m):
                return False
            label[e] = idx
    # crossing iff the block labels, read in order, contain a pattern a..b..a..b
    seq = [label[e] for e in sorted(label)]
    return not _has_abab(seq)


def _has_abab(seq: list[int]) -> bool:
    # open blocks form a stack; returning to a buried block, or closing one
    # that is not on top, means two blocks interleave
    last = {lab: pos for pos, lab in enumerate(seq)}
    stack: list[int] = []
    for pos, lab in enumerate(seq):
        if stack and stack[-1] == lab:
            pass
        elif lab in stack:
            return True
        else:
            stack.append(lab)
        if last[lab] == pos:
            if stack[-1] != lab:
                return True
            stack.pop()
    return False


@dataclass(frozen=True)
class Partition:
    """An element of ``NNC_m``; blocks are frozensets of integers in ``[m]``."""

    m: int
    blocks: frozenset

    def __post_init__(self):
        blocks = frozenset(frozenset(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if self.m < 0:
            raise InvalidPartition(f"ground set size must be >= 0, got {self.m}")
        if any(not b for b in blocks):
            raise InvalidPartition("blocks must be non-empty")
        if not is_noncrossing(blocks, self.m):
            raise InvalidPartition(f"not a non-crossing partition of [{self.m}]: {self.canonical()}")

    @classmethod
    def of(cls, m: int, *blocks: Iterable[int]) -> "Partition":
        return cls(m, frozenset(frozenset(b) for b in blocks))

    @classmethod
    def top(cls, m: int) -> "Partition":
        return cls.of(m, range(1, m + 1)) if m else cls(0, frozenset())

    def canonical(self) -> list[list[int]]:
        return sorted(sorted(b) for b in self.blocks)

    def support(self) -> frozenset[int]:
        return frozenset().union(*self.blocks) if self.blocks else frozenset()

    def block_of(self, e: int):
        for b in self.blocks:
            if e in b:
                return b
        return None

    def is_even_exclusive(self) -> bool:
        return not any(len(b) == 1 and next(iter(b)) % 2 == 0 for b in self.blocks)

    def __repr__(self) -> str:
        return "{" + ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.canonical()) + "}"


def _same_ground(p: Partition, q: Partition) -> int:
    if p.m != q.m:
        raise InvalidPartition(f"ground sets differ: [{p.m}] vs [{q.m}]")
    return p.m


def meet_nnc(p: Partition, q: Partition) -> Partition:
    m = _same_ground(p, q)
    return Partition(m, frozenset(a & b for a in p.blocks for b in q.blocks if a & b))


def _complete(p: Partition) -> list[set[int]]:
    cover = p.support()
    return [set(b) for b in p.blocks] + [{e} for e in range(1, p.m + 1) if e not in cover]


def _blocks_cross(a: set[int], b: set[int]) -> bool:
    return not is_noncrossing([a, b])


def join_nnc(p: Partition, q: Partition) -> Partition:
    """Finest non-crossing partition coarser than both, with unused singletons stripped."""
    m = _same_ground(p, q)
    parent = list(range(m + 1))

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for b in _complete(p) + _complete(q):
        first = min(b)
        for e in b:
            union(first, e)

    while True:
        groups: dict[int, set[int]] = {}
        for e in range(1, m + 1):
            groups.setdefault(find(e), set()).add(e)
        merged = False
        for a, b in combinations(list(groups.values()), 2):
            if _blocks_cross(a, b):
                union(min(a), min(b))
                merged = True
        if not merged:
            break

    used = p.support() | q.support()
    blocks = [g for g in groups.values() if not (len(g) == 1 and next(iter(g)) not in used)]
    return Partition(m, frozenset(frozenset(b) for b in blocks))


def eta(p: Partition) -> Partition:
    """Drop even singletons: ``NNC_2n -> eNNC_2n``."""
    if p.m % 2:
        raise InvalidPartition(f"eta needs an even ground set, got [{p.m}]")
    return Partition(p.m, frozenset(b for b in p.blocks if not (len(b) == 1 and next(iter(b)) % 2 == 0)))


def meet_e(p: Partition, q: Partition) -> Partition:
    return eta(meet_nnc(p, q))


def join_e(p: Partition, q: Partition) -> Partition:
    return join_nnc(p, q)


def zeta(p: Partition) -> Partition:
    """``NNC_n -> eNNC_2n``, ``i -> 2i - 1``."""
    return Partition(2 * p.m, frozenset(frozenset(2 * i - 1 for i in b) for b in p.blocks))


def partition_leq(p: Partition, q: Partition) -> bool:
    _same_ground(p, q)
    return all(any(b <= c for c in q.blocks) for b in p.blocks)


def thick_membership(x: Arc, p: Partition) -> bool:
    """Is the arc in the thick subcategory labelled by ``p``?"""
    if p.m != 2 * x.n:
        raise InvalidPartition(f"partition of [{p.m}] does not label thick subcategories for n={x.n}")
    sites = site_numbers(x)
    return any(sites <= b for b in p.blocks)


def thick_closure(g) -> Partition:
    """eNNC partition labelling the thick closure of a direct sum.

    One block per hc component, consisting of the site numbers of its orbit.
    """
    from .homology import hc_decompose

    n = g.n
    blocks = [
        frozenset(sf.site_number(s, n) for s in comp.orbit_sites) for comp in hc_decompose(g)
    ]
    return Partition(2 * n, frozenset(blocks))


# counting


def catalan(i: int) -> int:
    if i < 0:
        raise ValueError("catalan needs i >= 0")
    return math.comb(2 * i, i) // (i + 1)


def nnc_count(m: int) -> int:
    if m < 0:
        raise ValueError("nnc_count needs m >= 0")
    return sum(math.comb(m, i) * catalan(i) for i in range(m + 1))


def ennc_count(m: int) -> int:
    """``|eNNC_m|`` for even ``m`` by inclusion-exclusion over even singletons."""
    if m < 0 or m % 2:
        raise ValueError(f"ennc_count needs an even ground set size, got {m}")
    n = m // 2
    return sum((-1) ** j * math.comb(n, j) * nnc_count(m - j) for j in range(n + 1))


# enumeration


@lru_cache(maxsize=None)
def _nnc_blocks(ground: tuple[int, ...]) -> tuple[tuple[frozenset, ...], ...]:
    # each element is either dropped or in a block; the block containing the
    # least kept element splits the rest into independent gaps
    if not ground:
        return ((),)
    s, rest = ground[0], ground[1:]
    out = list(_nnc_blocks(rest))
    for r in range(len(rest) + 1):
        for others in combinations(rest, r):
            block = (s,) + others
            gaps = []
            for a, b in zip(block, block[1:] + (None,)):
                gaps.append(tuple(e for e in rest if e > a and (b is None or e < b)))
            partial = [(frozenset(block),)]
            for gap in gaps:
                partial = [acc + sub for acc in partial for sub in _nnc_blocks(gap)]
            out.extend(partial)
    return tuple(out)


def _check_cap(m: int, cap: int | None):
    cap = ENUMERATION_CAP if cap is None else cap
    if m > cap:
        raise CapExceeded(f"enumeration of [{m}] exceeds cap {cap}")


def _canonical_key(p: Partition):
    return (len(p.blocks), p.canonical())


def enumerate_nnc(m: int, cap: int | None = None) -> list[Partition]:
    _check_cap(m, cap)
    parts = [Partition(m, frozenset(bs)) for bs in _nnc_blocks(tuple(range(1, m + 1)))]
    return sorted(parts, key=_canonical_key)


def enumerate_ennc(m: int, cap: int | None = None) -> list[Partition]:
    if m % 2:
        raise ValueError(f"eNNC needs an even ground set size, got {m}")
    return [p for p in enumerate_nnc(m, cap) if p.is_even_exclusive()]


# JSON: {"m": 2n, "blocks": [[...], ...]}


def partition_to_json(p: Partition) -> dict:
    return {"m": p.m, "blocks": p.canonical()}


def partition_from_json(obj) -> Partition:
    try:
        return Partition(int(obj["m"]), frozenset(frozenset(int(e) for e in b) for b in obj["blocks"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad partition {obj!r}") from exc
