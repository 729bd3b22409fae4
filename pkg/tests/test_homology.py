import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cae import oracles as O
from cae.arcs import ext1_dim, extension_middle, has_degree_one, make_arc, suspend
from cae.errors import NotAGenerator, NotConnected, OutOfRange, ParseError
from cae.homology import (
    DirectSum,
    LevelSets,
    LowerBoundOnly,
    Unstable,
    direct_sum_from_json,
    direct_sum_to_json,
    generation_time,
    generator_M,
    hc_connected_pair,
    hc_decompose,
    homological_length,
    in_window,
    is_generator,
    is_hom_connected,
    is_minimal_generator,
    level_membership,
    level_sets,
    minimal_zigzag,
    standard_generator_E,
    window_arcs,
)
from cae.partitions import Partition, thick_closure, thick_membership
from cae.surface import Acc, Reg, seg_site
from strategies import objects


def arc(n, p, q):
    return make_arc(p, q, n)


def obj(n, *arcs):
    return DirectSum(n, tuple(arcs))


SHORT1 = arc(2, Reg(1, 0), Reg(1, 3))
SHORT2 = arc(2, Reg(0, 0), Reg(0, 3))


# pairwise connectivity


def test_short_arcs_in_one_segment_connected():
    assert hc_connected_pair(SHORT1, arc(2, Reg(1, 5), Reg(1, 9)))


def test_short_arcs_in_different_segments_not_connected():
    assert not hc_connected_pair(SHORT1, SHORT2)
    for w in (4, 6, 8):
        assert not O.ext_graph_connected(SHORT1, SHORT2, w)


def test_interleaved_long_arcs_connected():
    x, y = arc(4, Reg(0, 0), Reg(2, 0)), arc(4, Reg(1, 0), Reg(3, 0))
    assert hc_connected_pair(x, y)
    assert O.ext_graph_connected(x, y, 8)


def test_nested_long_arcs_not_connected():
    x, y = arc(4, Reg(0, 0), Reg(3, 0)), arc(4, Reg(1, 0), Reg(2, 0))
    assert not hc_connected_pair(x, y)
    assert not O.ext_graph_connected(x, y, 8)


def test_pairs_agree_with_oracle_for_two_points():
    pool = window_arcs(2, 2)
    for i, x in enumerate(pool):
        for y in pool[i:]:
            assert hc_connected_pair(x, y) == O.ext_graph_connected(x, y, 6)


# decomposition


def test_single_summand_is_one_component():
    assert len(hc_decompose(obj(2, SHORT1))) == 1


def test_two_short_arcs_split():
    comps = hc_decompose(obj(2, SHORT1, SHORT2))
    assert [c.orbit_sites for c in comps] == [{seg_site(0)}, {seg_site(1)}]
    assert [c.site_numbers(2) for c in comps] == [[1], [3]]
    assert not is_hom_connected(obj(2, SHORT1, SHORT2))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_E_is_one_component(n):
    assert len(hc_decompose(standard_generator_E(n))) == 1
    assert is_hom_connected(standard_generator_E(n))


def test_empty_object():
    assert hc_decompose(obj(2)) == []
    assert is_hom_connected(obj(2))
    assert not is_generator(obj(2))


@given(objects(), st.randoms(use_true_random=False), st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_decomposition_invariant_under_permutation_and_shift(g, rnd, shifts):
    arcs = list(g.arcs)
    rnd.shuffle(arcs)
    moved = DirectSum(g.n, tuple(suspend(a, s) for a, s in zip(arcs, shifts)))
    assert [c.orbit_sites for c in hc_decompose(g)] == [c.orbit_sites for c in hc_decompose(moved)]
    assert [len(c.summands) for c in hc_decompose(g)] == [len(c.summands) for c in hc_decompose(moved)]


@given(objects())
def test_components_are_pairwise_disconnected(g):
    comps = hc_decompose(g)
    for i, a in enumerate(comps):
        for b in comps[i + 1:]:
            assert not any(hc_connected_pair(x, y) for x in a.summands for y in b.summands)


# homological length


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_length_of_E(n):
    assert homological_length(standard_generator_E(n)) == 1


@pytest.mark.parametrize("n,d", [(2, 1), (2, 2), (3, 1), (3, 2), (3, 3), (3, 4)])
def test_length_of_M(n, d):
    assert homological_length(generator_M(n, d)) == d


@pytest.mark.parametrize(
    "x",
    [arc(1, Acc(0), Reg(0, 0)), arc(2, Reg(0, 0), Reg(1, 0)), arc(3, Reg(0, 2), Reg(2, -1)), arc(3, Acc(1), Reg(0, 0))],
)
def test_length_of_single_arc_matches_oracle(x):
    ref = max(O.zigzag_distance(x, suspend(x, s), 8) for s in range(-4, 5))
    assert homological_length(obj(x.n, x)) == ref == 1


def test_double_limit_arc_has_length_zero():
    assert homological_length(obj(2, arc(2, Acc(0), Acc(1)))) == 0


def test_short_arc_length_grows_with_window():
    res = homological_length(obj(2, SHORT1), 4)
    assert isinstance(res, Unstable)
    assert res.at_window < res.at_double


def test_length_needs_connected_object():
    with pytest.raises(NotConnected):
        homological_length(obj(2, SHORT1, SHORT2))
    with pytest.raises(OutOfRange):
        homological_length(standard_generator_E(2), 0)


def test_minimal_zigzag_is_a_zigzag():
    g = generator_M(3, 4)
    x, y = g.arcs[0], g.arcs[-1]
    z = minimal_zigzag(g, x, y)
    assert z.nodes[0][0] == x and z.nodes[-1][0] == y
    assert all(has_degree_one(a, b) for (a, _), (b, _) in zip(z.nodes, z.nodes[1:]))
    assert z.length == O.zigzag_distance(x, y, 8, through=g)
    assert minimal_zigzag(obj(2, SHORT1, SHORT2), SHORT1, SHORT2) is None


# level sets


def test_level_one_holds_shifts():
    g = standard_generator_E(2)
    for x in g.arcs:
        for s in (-3, 0, 2):
            assert level_membership(suspend(x, s), g, 1, 6)


@pytest.mark.parametrize("n", [2, 3])
def test_E_needs_two_levels_for_arcs_away_from_a1(n):
    g = standard_generator_E(n)
    t = arc(n, Reg(0, 1), Reg(1, -2))
    assert not level_membership(t, g, 1, 6)
    assert level_membership(t, g, 2, 6)


def test_levels_stay_inside_thick_closure():
    g = obj(2, SHORT1)
    part = thick_closure(g)
    levels = level_sets(g, 4, 5)
    for x in window_arcs(2, 5):
        if not thick_membership(x, part):
            assert all(x not in lvl for lvl in levels)


def test_target_outside_window():
    assert not level_membership(arc(2, Reg(0, 20), Reg(1, 0)), standard_generator_E(2), 3, 6)


@settings(max_examples=15, deadline=None)
@given(objects(max_n=2, offsets=2, max_size=3))
def test_levels_monotone(g):
    small, big = level_sets(g, 3, 4), level_sets(g, 3, 6)
    for a, b in zip(small, small[1:]):
        assert a <= b
    for a, b in zip(small, big):
        assert a <= b


@settings(max_examples=10, deadline=None)
@given(objects(max_n=2, offsets=2, max_size=2))
def test_star_product_lands_in_sum_of_levels(g):
    w = 4
    ls = LevelSets(g, w)
    l2 = ls.level(2)
    l4 = ls.level(4)
    for a in l2:
        for b in l2:
            if ext1_dim(b, a):
                for c in extension_middle(a, b).middle:
                    assert not in_window(c, w) or c in l4


# generation time


@pytest.mark.parametrize("n", [1, 2, 3])
def test_generation_time_of_E(n):
    assert generation_time(standard_generator_E(n)) == 1


@pytest.mark.parametrize("d", [1, 2])
def test_generation_time_of_M_bounded_by_length(d):
    g = generator_M(2, d)
    t = generation_time(g)
    assert isinstance(t, int) and t <= homological_length(g) == d


def test_generation_time_needs_generator():
    with pytest.raises(NotAGenerator):
        generation_time(obj(2, SHORT1))


def test_generation_time_reports_lower_bound_when_window_too_small():
    res = generation_time(generator_M(3, 4), window=4, max_levels=2)
    assert res == LowerBoundOnly(2)


def test_every_single_limit_arc_generates_n1_in_one_step():
    for k in (-2, 0, 3):
        g = obj(1, arc(1, Acc(0), Reg(0, k)))
        assert is_generator(g)
        assert generation_time(g) == 1


# generators


@pytest.mark.parametrize("n", [1, 2, 3])
def test_E_is_minimal_generator(n):
    g = standard_generator_E(n)
    assert is_generator(g)
    assert is_minimal_generator(g)


def test_E_without_a_segment_arc_is_not_a_generator():
    g = standard_generator_E(3)
    x1 = arc(3, Acc(1), Reg(1, 0))
    assert not is_generator(g.without(g.arcs.index(x1)))


def test_short_arc_is_not_a_generator():
    assert not is_generator(obj(2, SHORT1))
    with pytest.raises(NotAGenerator):
        is_minimal_generator(obj(2, SHORT1))


def test_adding_a_short_arc_breaks_minimality():
    g = standard_generator_E(2) + obj(2, SHORT1)
    assert is_generator(g)
    assert not is_minimal_generator(g)


def test_cycle_of_arcs_is_not_minimal():
    # sites 1 - 2 - 3 - 4 - 1 around the circle for n = 2
    g = obj(
        2,
        arc(2, Reg(0, 0), Acc(1)),
        arc(2, Acc(1), Reg(1, 0)),
        arc(2, Reg(1, 0), Acc(0)),
        arc(2, Acc(0), Reg(0, 0)),
    )
    assert is_generator(g)
    assert not is_minimal_generator(g)


@settings(max_examples=60)
@given(objects())
def test_generator_iff_closure_is_everything(g):
    assert is_generator(g) == (thick_closure(g) == Partition.top(2 * g.n))


def test_E_layout():
    assert standard_generator_E(1) == obj(1, arc(1, Acc(1), Reg(1, 0)))
    assert standard_generator_E(2) == obj(2, arc(2, Acc(1), Reg(1, 0)), arc(2, Acc(1), Reg(2, 0)), arc(2, Acc(1), Acc(2)))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_E_has_complete_orbit(n):
    assert len(standard_generator_E(n).orbit_sites()) == 2 * n


def test_M_family():
    assert generator_M(3, 1) == standard_generator_E(3)
    m2 = generator_M(2, 2)
    assert m2 == obj(2, arc(2, Acc(1), Reg(1, 0)), arc(2, Acc(1), Reg(2, 0)), arc(2, Reg(1, 0), Acc(2)))
    for n in (2, 3, 4):
        for d in range(1, 2 * n - 1):
            assert is_generator(generator_M(n, d))
            assert is_minimal_generator(generator_M(n, d))


@pytest.mark.parametrize("n,d", [(2, 0), (2, 3), (3, 5), (1, 2)])
def test_M_out_of_range(n, d):
    with pytest.raises(OutOfRange):
        generator_M(n, d)


# values


def test_direct_sum_is_a_multiset():
    a, b = arc(2, Acc(0), Reg(0, 1)), SHORT1
    assert obj(2, a, b, a) == obj(2, b, a, a)
    assert obj(2, a, b) != obj(2, a, b, b)
    assert len({obj(2, a, b), obj(2, b, a)}) == 1


@given(objects())
def test_direct_sum_json_round_trip(g):
    assert direct_sum_from_json(direct_sum_to_json(g)) == g


def test_direct_sum_rejects_mixed_surfaces():
    with pytest.raises(ParseError):
        DirectSum(3, (SHORT1,))
    with pytest.raises(ParseError):
        direct_sum_from_json({"arcs": []})
