"""Arcs of the completed marked circle and the triangulated structure on them.

An indecomposable object is an arc: an unordered pair of marked points that
are neither equal nor neighbours.  Suspension ``[1]`` rotates both endpoints
one step clockwise and fixes accumulation points.

Degree-one morphisms.  A non-zero morphism ``X -> Y`` exists iff ``X`` and
``Y[-1]`` cross, or both are (double) limit arcs through a common
accumulation point ``a`` and ``Y[-1]`` is a strict anticlockwise rotation of
``X`` about ``a``.  Substituting ``Y[1]`` for ``Y`` gives the rule used by
:func:`ext1_dim`: ``Ext^1(X, Y) != 0`` iff ``X`` and ``Y`` cross, or they share
an accumulation endpoint ``a`` and ``Y`` is a strict anticlockwise rotation of
``X`` about ``a``.  For a limit arc ``X`` this recovers ``Ext^1(X, X[i]) != 0``
for every ``i < 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from . import surface as sf
from .errors import InvalidArc, NoExtension, NoMorphism, ParseError
from .surface import Acc, MarkedPoint, Reg, Site, Surface


class ArcKind(str, Enum):
    SHORT = "short"
    LONG = "long"
    LIMIT = "limit"
    DOUBLE_LIMIT = "double_limit"


def adjacent_or_equal(p: MarkedPoint, q: MarkedPoint) -> bool:
    return q == p or q == sf.successor(p) or q == sf.predecessor(p)


@dataclass(frozen=True)
class Arc:
    """A valid arc on the surface with ``n`` accumulation points.

    Endpoints are stored with ``p`` before ``q`` in the linear order of
    :func:`cae.surface.point_key`, so arcs compare and hash as unordered pairs.
    """

    n: int
    p: MarkedPoint
    q: MarkedPoint

    def __post_init__(self):
        surf = Surface(self.n)
        p, q = surf.check(self.p), surf.check(self.q)
        if adjacent_or_equal(p, q):
            raise InvalidArc(f"{p!r} and {q!r} do not span an arc")
        if sf.point_key(q) < sf.point_key(p):
            object.__setattr__(self, "p", q)
            object.__setattr__(self, "q", p)

    @property
    def endpoints(self) -> tuple[MarkedPoint, MarkedPoint]:
        return (self.p, self.q)

    def sort_key(self):
        return (sf.point_key(self.p), sf.point_key(self.q))

    def __lt__(self, other: "Arc") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"{{{self.p!r}, {self.q!r}}}"


def make_arc(p: MarkedPoint, q: MarkedPoint, n: int) -> Arc:
    surf = Surface(n)
    return Arc(n, surf.reduce(p), surf.reduce(q))


def try_arc(p: MarkedPoint, q: MarkedPoint, n: int) -> Optional[Arc]:
    """The arc on ``p, q``, or ``None`` when the pair is degenerate (a zero object)."""
    try:
        return make_arc(p, q, n)
    except InvalidArc:
        return None


def classify(x: Arc) -> ArcKind:
    accs = isinstance(x.p, Acc) + isinstance(x.q, Acc)
    if accs == 2:
        return ArcKind.DOUBLE_LIMIT
    if accs == 1:
        return ArcKind.LIMIT
    return ArcKind.SHORT if x.p.i == x.q.i else ArcKind.LONG


def suspend(x: Arc, j: int = 1) -> Arc:
    """``x[j]``: rotate both endpoints ``j`` steps clockwise."""
    return Arc(x.n, sf.step(x.p, j), sf.step(x.q, j))


def crosses(x: Arc, y: Arc) -> bool:
    a, b = sf.point_key(x.p), sf.point_key(x.q)
    c, d = sf.point_key(y.p), sf.point_key(y.q)
    return a < c < b < d or c < a < d < b


def shared_acc(x: Arc, y: Arc) -> Optional[tuple[Acc, MarkedPoint, MarkedPoint]]:
    """``(a, x_other, y_other)`` when ``x`` and ``y`` share the accumulation endpoint ``a``."""
    for a in x.endpoints:
        if isinstance(a, Acc) and a in y.endpoints:
            xo = x.q if x.p == a else x.p
            yo = y.q if y.p == a else y.p
            return a, xo, yo
    return None


def _rotates_anticlockwise(x: Arc, y: Arc) -> bool:
    # y is a strict anticlockwise rotation of x about a shared accumulation point
    shared = shared_acc(x, y)
    if shared is None:
        return False
    a, xo, yo = shared
    return sf.cyclic_lt(a, xo, yo)


def ext1_dim(x: Arc, y: Arc) -> int:
    """Dimension of ``Ext^1(x, y)``; always 0 or 1."""
    return int(crosses(x, y) or _rotates_anticlockwise(x, y))


def hom_dim(x: Arc, y: Arc) -> int:
    """Rule-derived ``dim Hom(x, y) = dim Ext^1(x, y[-1])``.

    Identities are not special-cased: for a double limit arc this reports 0.
    """
    return ext1_dim(x, suspend(y, -1))


def has_degree_one(x: Arc, y: Arc) -> bool:
    """A non-zero degree-one morphism between ``x`` and ``y`` in some direction."""
    return bool(ext1_dim(x, y) or ext1_dim(y, x))


@dataclass(frozen=True)
class ConeData:
    """Middle term of the triangle ``x -> middle -> y -> x[1]``."""

    x: Arc
    y: Arc
    middle: tuple[Arc, ...]
    kind: str  # "crossing" or "rotation"

    @property
    def triangle(self) -> str:
        mid = " + ".join(repr(a) for a in self.middle) or "0"
        return f"{self.x!r} -> {mid} -> {self.y!r} -> {self.x!r}[1]"


def _next_anticlockwise(start: MarkedPoint, candidates) -> MarkedPoint:
    return min(candidates, key=lambda c: sf.rotated_key(c, start))


def extension_middle(x: Arc, y: Arc) -> ConeData:
    """Middle term of the non-split triangle ``x -> M -> y -> x[1]``.

    Needs ``Ext^1(y, x) != 0``.  For crossing arcs every endpoint of ``y`` is
    joined to the endpoint of ``x`` that follows it anticlockwise; for a
    rotation about a shared accumulation point the middle term is the arc on
    the two free endpoints.  Degenerate pairs are zero summands and dropped.
    """
    if not ext1_dim(y, x):
        raise NoExtension(f"Ext^1({y!r}, {x!r}) = 0")
    n = x.n
    if crosses(x, y):
        cands = [try_arc(e, _next_anticlockwise(e, x.endpoints), n) for e in y.endpoints]
        kind = "crossing"
    else:
        _, xo, yo = shared_acc(x, y)
        cands = [try_arc(xo, yo, n)]
        kind = "rotation"
    middle = tuple(sorted(a for a in cands if a is not None))
    return ConeData(x, y, middle, kind)


def _chain(points, strict_last: bool = True) -> bool:
    # p0 <= p1 <= ... <= p_{m-1} < p_m on the anticlockwise lap starting at p0
    keys = [sf.rotated_key(p, points[0]) for p in points]
    for a, b in zip(keys[:-2], keys[1:-1]):
        if a > b:
            return False
    return keys[-2] < keys[-1] if strict_last else keys[-2] <= keys[-1]


def _labellings(x: Arc):
    return [(x.p, x.q), (x.q, x.p)]


def factors_through(x: Arc, y: Arc, s: Arc) -> bool:
    """Does the non-zero morphism ``x -> y`` factor through ``s``?

    Criterion: ``x0 <= s0 <= y0 < x1`` and ``x1 <= s1 <= y1 < x0`` for some
    labelling of the endpoints.
    """
    if not hom_dim(x, y):
        raise NoMorphism(f"Hom({x!r}, {y!r}) = 0")
    for x0, x1 in _labellings(x):
        for y0, y1 in _labellings(y):
            if not (_chain([x0, y0, x1]) and _chain([x1, y1, x0])):
                continue
            for s0, s1 in _labellings(s):
                if _chain([x0, s0, y0, x1]) and _chain([x1, s1, y1, x0]):
                    return True
    return False


def localize_point(p: MarkedPoint, n: int) -> MarkedPoint:
    """Endpoint map of the quotient from the surface with ``2n`` accumulation points.

    The closed region from source ``Acc(2i)`` to ``Acc(2i+1)`` (including
    segment ``2i``) collapses to ``Acc(i)``; source segment ``2i+1`` becomes
    target segment ``i`` with offsets unchanged.
    """
    if isinstance(p, Acc):
        return Acc((p.i // 2) % n)
    if p.i % 2 == 0:
        return Acc((p.i // 2) % n)
    return Reg((p.i // 2) % n, p.k)


def localize(source: Arc) -> Optional[Arc]:
    """Image of an arc of the ``2n`` surface, or ``None`` for the zero object."""
    if source.n % 2:
        raise InvalidArc(f"localisation needs an even number of accumulation points, got {source.n}")
    n = source.n // 2
    return try_arc(localize_point(source.p, n), localize_point(source.q, n), n)


def orbit(x: Arc) -> frozenset[Site]:
    return frozenset({sf.site_of(x.p), sf.site_of(x.q)})


def site_numbers(x: Arc) -> frozenset[int]:
    return frozenset(sf.site_number(s, x.n) for s in orbit(x))


def arc_to_json(x: Arc) -> dict:
    return {"a": sf.point_to_json(x.p), "b": sf.point_to_json(x.q)}


def arc_from_json(obj, n: int) -> Arc:
    if not isinstance(obj, dict) or "a" not in obj or "b" not in obj:
        raise ParseError(f"arc must look like {{'a': ..., 'b': ...}}, got {obj!r}")
    return make_arc(sf.point_from_json(obj["a"], n), sf.point_from_json(obj["b"], n), n)


def cone_to_json(c: ConeData) -> dict:
    return {"middle": [arc_to_json(a) for a in c.middle], "kind": c.kind}
