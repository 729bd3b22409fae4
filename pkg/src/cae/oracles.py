"""Brute-force references over a finite window of the arc category.

These work on their own integer encoding of marked points and re-derive the
crossing, extension and cone rules from scratch, so that they can be used to
check the structural shortcuts in :mod:`cae.homology` and
:mod:`cae.partitions`.

A marked point is an integer ``code = slot * SCALE + k`` where ``slot`` is
``2i`` for the accumulation point ``a_i`` and ``2i + 1`` for the segment
``(a_i, a_{i+1})``; accumulation points have ``k = 0``.  Integer order on
codes is the anticlockwise order cut just before ``a_0``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional

from .arcs import Arc
from .surface import Acc, Reg

SCALE = 1_000_000
Code = int
RawArc = tuple[int, int]


def encode(p) -> Code:
    if isinstance(p, Acc):
        return 2 * p.i * SCALE
    return (2 * p.i + 1) * SCALE + p.k


def slot(c: Code) -> int:
    return (c + SCALE // 2) // SCALE


def offset(c: Code) -> int:
    return c - slot(c) * SCALE


def is_reg(c: Code) -> bool:
    return slot(c) % 2 == 1


def decode(c: Code):
    s = slot(c)
    return Reg(s // 2, offset(c)) if s % 2 else Acc(s // 2)


def raw(x: Arc) -> RawArc:
    a, b = encode(x.p), encode(x.q)
    return (a, b) if a < b else (b, a)


def to_arc(r: RawArc, n: int) -> Arc:
    return Arc(n, decode(r[0]), decode(r[1]))


def valid(a: Code, b: Code) -> bool:
    if a == b:
        return False
    return not (is_reg(a) and slot(a) == slot(b) and abs(a - b) == 1)


def pair(a: Code, b: Code) -> Optional[RawArc]:
    if not valid(a, b):
        return None
    return (a, b) if a < b else (b, a)


def shift(c: Code, j: int) -> Code:
    return c - j if is_reg(c) else c


def shift_arc(r: RawArc, j: int) -> RawArc:
    a, b = shift(r[0], j), shift(r[1], j)
    return (a, b) if a < b else (b, a)


def in_window(r: RawArc, w: int) -> bool:
    return all(not is_reg(c) or abs(offset(c)) <= w for c in r)


def ccw(x: Code, y: Code, z: Code) -> bool:
    # y strictly between x and z going anticlockwise from x
    return x < y < z or y < z < x or z < x < y


def cross(x: RawArc, y: RawArc) -> bool:
    a, b = x
    c, d = y
    return a < c < b < d or c < a < d < b


def ext(x: RawArc, y: RawArc) -> bool:
    """Non-zero ``Ext^1(x, y)``: crossing, or ``y`` turned anticlockwise from ``x`` about a shared limit point."""
    if cross(x, y):
        return True
    for a in x:
        if not is_reg(a) and a in y:
            xo = x[0] if x[1] == a else x[1]
            yo = y[0] if y[1] == a else y[1]
            if xo != yo and ccw(a, xo, yo):
                return True
    return False


def middles(x: RawArc, y: RawArc) -> list[RawArc]:
    """Summands of the middle term of ``x -> M -> y`` (needs ``ext(y, x)``)."""
    if cross(x, y):
        x0, x1 = x
        y0, y1 = (y[0], y[1]) if ccw(x0, y[0], x1) else (y[1], y[0])
        cands = [pair(x0, y1), pair(y0, x1)]
    else:
        a = next(c for c in x if c in y and not is_reg(c))
        xo = x[0] if x[1] == a else x[1]
        yo = y[0] if y[1] == a else y[1]
        cands = [pair(xo, yo)]
    return [c for c in cands if c is not None]


@dataclass
class FiniteUniverse:
    """All arcs with regular offsets in ``[-window, window]``, with a cone table."""

    n: int
    window: int
    arcs: list[RawArc] = field(init=False)
    index: dict[RawArc, int] = field(init=False)
    links: list[list[tuple[int, tuple[int, ...]]]] = field(init=False)

    def __post_init__(self):
        w = self.window
        pts = []
        for i in range(self.n):
            pts.append(2 * i * SCALE)
            pts.extend((2 * i + 1) * SCALE + k for k in range(-w, w + 1))
        pts.sort()
        self.arcs = [(a, b) for i, a in enumerate(pts) for b in pts[i + 1:] if valid(a, b)]
        self.index = {r: i for i, r in enumerate(self.arcs)}
        self.links = [[] for _ in self.arcs]
        for i, x in enumerate(self.arcs):
            for j in range(i + 1, len(self.arcs)):
                y = self.arcs[j]
                found = []
                if ext(y, x):
                    found += middles(x, y)
                if ext(x, y):
                    found += middles(y, x)
                if found or ext(x, y) or ext(y, x):
                    ids = tuple(self.index[m] for m in found if m in self.index)
                    self.links[i].append((j, ids))
                    self.links[j].append((i, ids))

    def __len__(self) -> int:
        return len(self.arcs)

    def shifts_of(self, r: RawArc) -> list[int]:
        return [self.index[s] for s in _shift_orbit(r, self.window) if s in self.index]


def _shift_orbit(r: RawArc, w: int) -> list[RawArc]:
    reach = 2 * w + 1 + max((abs(offset(c)) for c in r if is_reg(c)), default=0)
    return list(dict.fromkeys(shift_arc(r, j) for j in range(-reach, reach + 1)))


@lru_cache(maxsize=8)
def universe(n: int, window: int) -> FiniteUniverse:
    return FiniteUniverse(n, window)


def _raw_arcs(g) -> list[RawArc]:
    return [raw(a) for a in (g.arcs if hasattr(g, "arcs") else g)]


def brute_closure_raw(summands: Iterable[RawArc], n: int, window: int) -> set[RawArc]:
    u = universe(n, window)
    member = bytearray(len(u))
    todo: deque[int] = deque()

    def add(i):
        if not member[i]:
            member[i] = 1
            todo.append(i)

    for r in summands:
        for i in u.shifts_of(r):
            add(i)
    while todo:
        i = todo.popleft()
        r = u.arcs[i]
        for j in (1, -1):
            s = u.index.get(shift_arc(r, j))
            if s is not None:
                add(s)
        for j, ids in u.links[i]:
            if member[j]:
                for m in ids:
                    add(m)
    return {u.arcs[i] for i in range(len(u)) if member[i]}


def brute_closure(g, window: int = 8) -> set[Arc]:
    """Least subset of the window closed under shifts and cones of pairs.

    Out-of-window shifts and cone summands are simply absent, so only arcs
    well inside the window should be trusted.
    """
    return {to_arc(r, g.n) for r in brute_closure_raw(_raw_arcs(g), g.n, window)}


def _shift_nodes(rs: list[RawArc], w: int) -> list[RawArc]:
    return list(dict.fromkeys(s for r in rs for s in _shift_orbit(r, w) if in_window(s, w)))


def _bfs(nodes: list[RawArc], source: RawArc, stop=None) -> dict[RawArc, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        if stop is not None and stop(u):
            break
        for v in nodes:
            if v not in dist and (ext(u, v) or ext(v, u)):
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def ext_graph_connected(x: Arc, y: Arc, window: int = 8) -> bool:
    """Is some shift of ``x`` joined to some shift of ``y`` through shifts of the two?"""
    rx, ry = raw(x), raw(y)
    nodes = _shift_nodes([rx, ry], window)
    if rx not in nodes:
        return False
    ys = set(_shift_orbit(ry, window))
    return any(v in ys for v in _bfs(nodes, rx, stop=lambda u: u in ys))


def zigzag_distance_raw(x: RawArc, y: RawArc, window: int, through: Iterable[RawArc] = ()) -> float:
    nodes = _shift_nodes([x, y, *through], window)
    if x not in nodes or y not in nodes:
        return math.inf
    return _bfs(nodes, x, stop=lambda u: u == y).get(y, math.inf)


def zigzag_distance(x: Arc, y: Arc, window: int = 8, through=None) -> float:
    """Shortest zig-zag from ``x`` to ``y`` among shifts of ``x``, ``y`` and the summands of ``through``.

    Returns ``math.inf`` when no zig-zag exists inside the window.
    """
    extra = _raw_arcs(through) if through is not None else []
    return zigzag_distance_raw(raw(x), raw(y), window, extra)
