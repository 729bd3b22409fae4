"""Objects as direct sums of arcs: connectivity, lengths, level sets, generators.

Everything that depends on infinitely many shifts is computed inside a window:
an arc is *in the window* ``W`` when every regular endpoint has ``|k| <= W``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from . import surface as sf
from .arcs import (
    Arc,
    arc_from_json,
    arc_to_json,
    ext1_dim,
    extension_middle,
    has_degree_one,
    make_arc,
    orbit,
    suspend,
    try_arc,
)
from .errors import NotAGenerator, NotConnected, OutOfRange, ParseError
from .surface import Acc, Reg, Site


@dataclass(frozen=True)
class DirectSum:
    """A finite multiset of arcs on one surface; equality ignores summand order."""

    n: int
    arcs: tuple[Arc, ...] = ()

    def __post_init__(self):
        arcs = tuple(sorted(self.arcs))
        for a in arcs:
            if a.n != self.n:
                raise ParseError(f"summand {a!r} lives on n={a.n}, object on n={self.n}")
        object.__setattr__(self, "arcs", arcs)

    def __len__(self) -> int:
        return len(self.arcs)

    def __iter__(self):
        return iter(self.arcs)

    def __add__(self, other: "DirectSum") -> "DirectSum":
        return DirectSum(self.n, self.arcs + other.arcs)

    def without(self, index: int) -> "DirectSum":
        return DirectSum(self.n, self.arcs[:index] + self.arcs[index + 1:])

    def orbit_sites(self) -> frozenset[Site]:
        return frozenset().union(*(orbit(a) for a in self.arcs)) if self.arcs else frozenset()

    def __repr__(self) -> str:
        return " + ".join(repr(a) for a in self.arcs) or "0"


@dataclass(frozen=True)
class HcComponent:
    summands: tuple[Arc, ...]
    orbit_sites: frozenset[Site]

    def site_numbers(self, n: int) -> list[int]:
        return sorted(sf.site_number(s, n) for s in self.orbit_sites)


@dataclass(frozen=True)
class ZigZag:
    """Consecutive nodes ``(arc, shift)`` are joined by a degree-one morphism."""

    nodes: tuple[tuple[Arc, int], ...]

    @property
    def length(self) -> int:
        return len(self.nodes) - 1


@dataclass(frozen=True)
class Unstable:
    """Windowed answers disagree between ``W`` and ``2W``."""

    at_window: object
    at_double: object


@dataclass(frozen=True)
class LowerBoundOnly:
    """Level sets did not cover the margin region; the true value is at least ``bound``."""

    bound: int


# connectivity


def _interleave(a: set[int], b: set[int], m: int) -> bool:
    seq = [0 if p in a else 1 for p in range(1, m + 1) if p in a or p in b]
    runs = sum(1 for i in range(len(seq)) if seq[i] != seq[i - 1])
    return runs >= 4


def hc_connected_pair(x: Arc, y: Arc) -> bool:
    """Some shifts of ``x`` and ``y`` are joined by a zig-zag.

    Holds iff the orbits share a site, or the orbit site sets interleave on
    the cycle of sites (so suitable shifts of the two arcs cross).
    """
    ox, oy = orbit(x), orbit(y)
    if ox & oy:
        return True
    n = x.n
    return _interleave({sf.site_number(s, n) for s in ox}, {sf.site_number(s, n) for s in oy}, 2 * n)


def hc_decompose(g: DirectSum) -> list[HcComponent]:
    arcs = g.arcs
    parent = list(range(len(arcs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(arcs)):
        for j in range(i + 1, len(arcs)):
            if find(i) != find(j) and hc_connected_pair(arcs[i], arcs[j]):
                parent[find(j)] = find(i)

    groups: dict[int, list[Arc]] = {}
    for i, a in enumerate(arcs):
        groups.setdefault(find(i), []).append(a)
    comps = [
        HcComponent(tuple(sorted(members)), frozenset().union(*(orbit(a) for a in members)))
        for members in groups.values()
    ]
    comps.sort(key=lambda c: (min(c.site_numbers(g.n)), c.summands))
    return comps


def is_hom_connected(g: DirectSum) -> bool:
    return len(hc_decompose(g)) <= 1


# homological length


def _shift_nodes(g: DirectSum, radius: int) -> dict[Arc, int]:
    # distinct arcs X[s] for summands X and |s| <= radius, keyed to their smallest |s|
    nodes: dict[Arc, int] = {}
    for x in g.arcs:
        for s in sorted(range(-radius, radius + 1), key=abs):
            nodes.setdefault(suspend(x, s), s)
    return nodes


def _adjacency(arcs: list[Arc]) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in arcs]
    for i in range(len(arcs)):
        for j in range(i + 1, len(arcs)):
            if has_degree_one(arcs[i], arcs[j]):
                adj[i].append(j)
                adj[j].append(i)
    return adj


def _bfs(adj: list[list[int]], start: int) -> list[Optional[int]]:
    dist: list[Optional[int]] = [None] * len(adj)
    dist[start] = 0
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if dist[v] is None:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def _length_at(g: DirectSum, w: int) -> Optional[int]:
    # sources: summands at shift 0; targets: shifts within w; paths may use shifts within 2w
    nodes = _shift_nodes(g, 2 * w)
    arcs = list(nodes)
    index = {a: i for i, a in enumerate(arcs)}
    adj = _adjacency(arcs)
    targets = [i for i, a in enumerate(arcs) if abs(nodes[a]) <= w]
    best = 0
    for x in set(g.arcs):
        dist = _bfs(adj, index[x])
        for t in targets:
            if dist[t] is None:
                return None
            best = max(best, dist[t])
    return best


def homological_length(g: DirectSum, window: int = 8) -> Union[int, Unstable]:
    """Longest minimal zig-zag between shifts of summands of ``g``.

    By shift invariance only pairs with one end at shift 0 are examined.  The
    answer for ``window`` is compared with the one for ``2 * window`` and
    :class:`Unstable` is returned when they differ.
    """
    if window < 1:
        raise OutOfRange(f"window must be >= 1, got {window}")
    if not is_hom_connected(g):
        raise NotConnected(f"{g!r} is not homologically connected")
    if not g.arcs:
        return 0
    a, b = _length_at(g, window), _length_at(g, 2 * window)
    if a is None or a != b:
        return Unstable(a, b)
    return a


def minimal_zigzag(g: DirectSum, source: Arc, target: Arc, window: int = 8) -> Optional[ZigZag]:
    """A shortest zig-zag through shifts of summands of ``g`` within the window."""
    nodes = _shift_nodes(g, 2 * window)
    for end in (source, target):
        if end not in nodes:
            return None
    arcs = list(nodes)
    adj = _adjacency(arcs)
    start, goal = arcs.index(source), arcs.index(target)
    prev = {start: None}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        if u == goal:
            break
        for v in adj[u]:
            if v not in prev:
                prev[v] = u
                queue.append(v)
    if goal not in prev:
        return None
    path = []
    u = goal
    while u is not None:
        path.append((arcs[u], nodes[arcs[u]]))
        u = prev[u]
    return ZigZag(tuple(reversed(path)))


# level sets


def in_window(x: Arc, window: int) -> bool:
    return all(abs(p.k) <= window for p in x.endpoints if isinstance(p, Reg))


def window_arcs(n: int, window: int) -> list[Arc]:
    """All valid arcs on the ``n`` surface inside the window, sorted."""
    pts = [Acc(i) for i in range(n)] + [Reg(i, k) for i in range(n) for k in range(-window, window + 1)]
    out = []
    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            a = try_arc(p, q, n)
            if a is not None:
                out.append(a)
    return sorted(out)


def _level_one(g: DirectSum, window: int) -> set[Arc]:
    out = set()
    reach = window + max((abs(p.k) for a in g.arcs for p in a.endpoints if isinstance(p, Reg)), default=0)
    for x in g.arcs:
        for s in range(-reach, reach + 1):
            y = suspend(x, s)
            if in_window(y, window):
                out.add(y)
    return out


def _cones(a: Arc, b: Arc):
    # summands of middle terms of both triangles a -> M -> b and b -> M -> a
    if ext1_dim(b, a):
        yield from extension_middle(a, b).middle
    if ext1_dim(a, b):
        yield from extension_middle(b, a).middle


@dataclass
class LevelSets:
    """Incrementally computed ``L_1 ⊆ L_2 ⊆ ...`` for one object and window."""

    g: DirectSum
    window: int
    levels: list[frozenset] = field(default_factory=list)

    def __post_init__(self):
        if not self.levels:
            self.levels.append(frozenset(_level_one(self.g, self.window)))

    def level(self, r: int) -> frozenset:
        if r < 1:
            raise OutOfRange(f"level index must be >= 1, got {r}")
        base = self.levels[0]
        while len(self.levels) < r:
            cur = self.levels[-1]
            fresh = cur - self.levels[-2] if len(self.levels) > 1 else cur
            new = set(cur)
            for a in fresh:
                for b in base:
                    for c in _cones(a, b):
                        if in_window(c, self.window):
                            new.add(c)
            self.levels.append(frozenset(new))
        return self.levels[r - 1]

    def stable(self) -> bool:
        return len(self.levels) > 1 and self.levels[-1] == self.levels[-2]


def level_sets(g: DirectSum, r: int, window: int = 8) -> list[frozenset]:
    ls = LevelSets(g, window)
    ls.level(r)
    return ls.levels[:r]


def level_membership(target: Arc, g: DirectSum, r: int, window: int = 8) -> bool:
    if not in_window(target, window):
        return False
    return target in LevelSets(g, window).level(r)


def generation_time(g: DirectSum, window: int = 8, max_levels: int | None = None) -> Union[int, LowerBoundOnly]:
    """Smallest ``m`` with every arc of the margin region (offsets ``<= window // 2``) in ``L_{m+1}``."""
    if not is_generator(g):
        raise NotAGenerator(f"{g!r} is not a classical generator")
    margin = set(window_arcs(g.n, window // 2))
    cap = max_levels if max_levels is not None else 4 * g.n + 4
    ls = LevelSets(g, window)
    for m in range(cap):
        if margin <= ls.level(m + 1):
            return m
        if ls.stable():
            return LowerBoundOnly(m + 1)
    return LowerBoundOnly(cap)


# generators


def is_generator(g: DirectSum) -> bool:
    """Homologically connected with an orbit covering all ``2n`` sites."""
    if not g.arcs:
        return False
    return len(g.orbit_sites()) == 2 * g.n and is_hom_connected(g)


def is_minimal_generator(g: DirectSum) -> bool:
    if not is_generator(g):
        raise NotAGenerator(f"{g!r} is not a classical generator")
    return not any(is_generator(g.without(i)) for i in range(len(g)))


def _x(n: int, i: int) -> Arc:
    return make_arc(Acc(1), Reg(i, 0), n)


def _y(n: int, j: int) -> Arc:
    return make_arc(Acc(1), Acc(j + 1), n)


def standard_generator_E(n: int) -> DirectSum:
    """``X_i = {a_1, z_i}`` for every segment and ``Y_j = {a_1, a_{j+1}}``, ``z_i`` at offset 0."""
    sf.Surface(n)
    return DirectSum(n, tuple(_x(n, i) for i in range(1, n + 1)) + tuple(_y(n, j) for j in range(1, n)))


def generator_M(n: int, d: int) -> DirectSum:
    """Minimal generator of homological length ``d``, ``1 <= d <= 2n - 2``.

    Starting from ``E``, step ``r`` (odd) swaps ``Y_j`` for ``{z_j, a_{j+1}}``
    with ``j = (r + 1) / 2``; step ``r`` (even) swaps ``X_{j+1}`` for
    ``{a_{j+1}, z_{j+1}}`` with ``j = r / 2``.  For ``n = 1`` only ``d = 1``
    (``M_1 = E``) is accepted.
    """
    top = max(1, 2 * n - 2)
    if not 1 <= d <= top:
        raise OutOfRange(f"d must lie in [1, {top}] for n={n}, got {d}")
    xs = {i: _x(n, i) for i in range(1, n + 1)}
    ys = {j: _y(n, j) for j in range(1, n)}
    for r in range(1, d):
        if r % 2:
            j = (r + 1) // 2
            ys[j] = make_arc(Reg(j, 0), Acc(j + 1), n)
        else:
            j = r // 2
            xs[j + 1] = make_arc(Acc(j + 1), Reg(j + 1, 0), n)
    return DirectSum(n, tuple(xs.values()) + tuple(ys.values()))


# JSON: {"n": n, "arcs": [...]}


def direct_sum_to_json(g: DirectSum) -> dict:
    return {"n": g.n, "arcs": [arc_to_json(a) for a in g.arcs]}


def direct_sum_from_json(obj) -> DirectSum:
    try:
        n = int(obj["n"])
        arcs = obj["arcs"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"object must look like {{'n': n, 'arcs': [...]}}, got {obj!r}") from exc
    return DirectSum(n, tuple(arc_from_json(a, n) for a in arcs))


def direct_sum(n: int, arcs: Iterable[Arc]) -> DirectSum:
    return DirectSum(n, tuple(arcs))
