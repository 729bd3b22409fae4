"""The marked circle: accumulation points, regular marked points and sites.

The circle carries ``n`` accumulation points ``Acc(0), ..., Acc(n-1)`` in
anticlockwise order.  Segment ``i`` is the open interval between ``Acc(i)``
and ``Acc(i+1)``; its marked points are ``Reg(i, k)`` for ``k`` in Z, with
``k`` increasing anticlockwise.  Indices are always stored reduced mod ``n``,
so ``Acc(n)`` and ``Acc(0)`` are the same point.

Sites are the ``2n`` pieces of the circle that suspension cannot move
between: one per segment and one per accumulation point.  They are numbered
into ``{1, ..., 2n}`` by ``Acc(i) -> 2i`` and ``Seg(i) -> 2i + 1`` (mod 2n,
representatives in ``1..2n``), which lists them in anticlockwise order
starting from segment ``n-1 == -1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import InvalidPoint, ParseError


@dataclass(frozen=True, order=True)
class Acc:
    i: int

    def __repr__(self) -> str:
        return f"Acc({self.i})"


@dataclass(frozen=True, order=True)
class Reg:
    i: int
    k: int

    def __repr__(self) -> str:
        return f"Reg({self.i},{self.k})"


MarkedPoint = Union[Acc, Reg]


@dataclass(frozen=True, order=True)
class Site:
    kind: str  # "acc" or "seg"
    i: int

    def __repr__(self) -> str:
        return f"{'AccSite' if self.kind == 'acc' else 'SegSite'}({self.i})"


def seg_site(i: int) -> Site:
    return Site("seg", i)


def acc_site(i: int) -> Site:
    return Site("acc", i)


@dataclass(frozen=True)
class Surface:
    """A disc with ``n`` accumulation points on its boundary."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidPoint(f"surface needs n >= 1, got {self.n!r}")

    def acc(self, i: int) -> Acc:
        return Acc(i % self.n)

    def reg(self, i: int, k: int) -> Reg:
        return Reg(i % self.n, k)

    def reduce(self, p: MarkedPoint) -> MarkedPoint:
        if isinstance(p, Acc):
            return Acc(p.i % self.n)
        return Reg(p.i % self.n, p.k)

    def check(self, p: MarkedPoint) -> MarkedPoint:
        if not isinstance(p, (Acc, Reg)):
            raise InvalidPoint(f"not a marked point: {p!r}")
        if not 0 <= p.i < self.n:
            raise InvalidPoint(f"index of {p!r} not reduced mod {self.n}")
        return p

    def sites(self) -> list[Site]:
        """All sites, ordered by site number."""
        return sorted(
            [acc_site(i) for i in range(self.n)] + [seg_site(i) for i in range(self.n)],
            key=lambda s: site_number(s, self.n),
        )


def point_key(p: MarkedPoint) -> tuple[int, int]:
    """Linearisation of the cyclic order, cut just before ``Acc(0)``."""
    if isinstance(p, Acc):
        return (2 * p.i, 0)
    return (2 * p.i + 1, p.k)


def cyclic_lt(x: MarkedPoint, y: MarkedPoint, z: MarkedPoint) -> bool:
    """True iff going anticlockwise from ``x`` one meets ``y`` strictly before ``z``."""
    a, b, c = point_key(x), point_key(y), point_key(z)
    if a == b or b == c or a == c:
        return False
    return a < b < c or b < c < a or c < a < b


def rotated_key(p: MarkedPoint, origin: MarkedPoint) -> tuple[int, tuple[int, int]]:
    # position of p on the lap that starts at origin
    kp, ko = point_key(p), point_key(origin)
    return (0 if kp >= ko else 1, kp)


def successor(p: MarkedPoint) -> MarkedPoint:
    if isinstance(p, Acc):
        return p
    return Reg(p.i, p.k + 1)


def predecessor(p: MarkedPoint) -> MarkedPoint:
    if isinstance(p, Acc):
        return p
    return Reg(p.i, p.k - 1)


def step(p: MarkedPoint, j: int) -> MarkedPoint:
    """Move ``j`` marked points clockwise (``j < 0`` moves anticlockwise)."""
    if isinstance(p, Acc):
        return p
    return Reg(p.i, p.k - j)


def site_of(p: MarkedPoint) -> Site:
    if isinstance(p, Acc):
        return acc_site(p.i)
    return seg_site(p.i)


def site_number(s: Site, n: int) -> int:
    if s.kind == "acc":
        return 2 * (s.i % n) or 2 * n
    return 2 * (s.i % n) + 1


def site_from_number(p: int, n: int) -> Site:
    if not 1 <= p <= 2 * n:
        raise InvalidPoint(f"site number {p} outside 1..{2 * n}")
    if p % 2 == 0:
        return acc_site((p // 2) % n)
    return seg_site(((p - 1) // 2) % n)


# JSON encoding: {"acc": i} or {"seg": i, "k": k}


def point_to_json(p: MarkedPoint) -> dict:
    if isinstance(p, Acc):
        return {"acc": p.i}
    return {"seg": p.i, "k": p.k}


def point_from_json(obj, n: int) -> MarkedPoint:
    surf = Surface(n)
    if not isinstance(obj, dict):
        raise ParseError(f"marked point must be an object, got {obj!r}")
    try:
        if "acc" in obj:
            return surf.acc(int(obj["acc"]))
        return surf.reg(int(obj["seg"]), int(obj["k"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad marked point {obj!r}") from exc
