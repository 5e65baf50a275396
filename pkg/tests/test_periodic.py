import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ggtbench import fixtures as fx
from ggtbench.complexes import SimplicialMap, is_flag
from ggtbench.fingroups import is_prime_power, named_group, subgroup_classes
from ggtbench.homology import euler_characteristic, homology, induced_degree, is_acyclic
from ggtbench.periodic import (PeriodicError, degree_zero_recipe, line_product_2skeleton,
                               min_flag_quotient_period, periodic_line, quotient_by_shift,
                               stage_inclusion_degree, subdivide, telescope)

from oracles import one_skeleton


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(fx.PERIODIC), st.integers(0, 4))
def test_window_euler_characteristic(name, m):
    P = fx.periodic_fixture(name)
    W = P.window(0, m)
    assert euler_characteristic(W) == (m + 1) * euler_characteristic(P.slab) - m * euler_characteristic(P.interface)


def test_line_windows_are_paths():
    P = periodic_line(1)
    for m in range(5):
        W = P.window(0, m)
        assert W.f_vector == (m + 2, m + 1)
        assert is_acyclic(W)
    P2 = periodic_line(2, shift=1)
    assert P2.window(0, 3).f_vector == (6, 5)


def test_window_names():
    W = periodic_line(1).window(0, 1)
    assert set(W.vertices) == {"a0#0", "a1#0", "a1#1"}


def test_quotients_of_line():
    P = periodic_line(1)
    assert quotient_by_shift(P, 1).degenerate
    q2 = quotient_by_shift(P, 2)
    assert not q2.passes and not q2.simplicial
    q3 = quotient_by_shift(P, 3)
    assert q3.simplicial and not q3.flag and len(q3.witness) == 3
    for k in range(4, 9):
        q = quotient_by_shift(P, k)
        assert q.passes and q.complex.f_vector == (k, k)
    assert min_flag_quotient_period(P) == 4


def _window_distance(P, j, v, radius=8):
    """Graph distance between the translates ``(0, v)`` and ``(j, v)`` in a wide window."""
    names = P.window_map(-radius, radius)
    g = one_skeleton(P.window(-radius, radius))
    return nx.shortest_path_length(g, names[(0, v)], names[(j, v)])


@pytest.mark.parametrize("name", fx.PERIODIC_FLAG)
def test_self_distances_match_networkx(name):
    P = fx.periodic_fixture(name)
    close = P.self_distances(3)
    for k, v in P.orbit_representatives()[:3]:
        for j in range(1, 5):
            d = _window_distance(P, j, v)
            if d <= 3:
                assert j in close


@pytest.mark.parametrize("name", fx.PERIODIC_FLAG)
def test_quotients_above_min_period_are_flag(name):
    P = fx.periodic_fixture(name)
    k0 = min_flag_quotient_period(P)
    assert all(quotient_by_shift(P, k).passes for k in range(k0, k0 + 4))
    assert is_flag(P.window(0, 6))


def test_min_periods():
    assert min_flag_quotient_period(fx.periodic_fixture("line")) == 4
    assert min_flag_quotient_period(fx.periodic_fixture("line2")) == 4
    assert min_flag_quotient_period(fx.periodic_fixture("line3")) == 2


def test_non_flag_input_raises():
    with pytest.raises(PeriodicError):
        min_flag_quotient_period(fx.periodic_fixture("join-c2-line"), slack=4)


def test_invalid_line():
    with pytest.raises(PeriodicError):
        periodic_line(2, shift=3)


def test_telescope_stage_degrees():
    C = fx.cycle(6)
    maps = {
        1: SimplicialMap.identity(C),
        -1: SimplicialMap(C, C, {str(i): str(-i % 6) for i in range(6)}),
        0: SimplicialMap(C, C, {v: "0" for v in C.vertices}),
    }
    for deg, f in maps.items():
        assert induced_degree(f) == deg
        P = telescope(f)
        assert [stage_inclusion_degree(P, k) for k in range(3)] == [deg] * 3


def test_degree_zero_telescope_windows():
    # each finite window retracts to a copy of the sphere; the colimit dies
    # because every stage inclusion is zero on top homology
    S = fx.boundary_simplex(3)
    P = telescope(SimplicialMap(S, S, {v: "v0" for v in S.vertices}))
    for m in range(1, 4):
        assert homology(P.window(0, m), "Z").ranks[:3] == (1, 0, 1)
        assert stage_inclusion_degree(P, m) == 0
    ident = telescope(SimplicialMap.identity(S))
    assert homology(ident.window(0, 3), "Z").ranks[:3] == (1, 0, 1)


def test_equivariant_telescope_carries_symmetry():
    a = fx.named_action("sd-bipyramid-s3")
    P = telescope(SimplicialMap.identity(a.complex), a)
    assert P.symmetry is not None and P.symmetry.group.order == 6
    bad = SimplicialMap(a.complex, a.complex, {v: a.complex.vertices[0] for v in a.complex.vertices})
    with pytest.raises(PeriodicError):
        telescope(bad, a)


def test_line_product_and_subdivision():
    P = line_product_2skeleton(fx.named_action("join-c2"))
    assert P.slab.dimension == 2
    assert not is_flag(P.window(0, 2))
    S = subdivide(P)
    assert is_flag(S.window(0, 2))
    assert S.symmetry.group.order == 2
    assert euler_characteristic(S.window(0, 2)) == euler_characteristic(P.window(0, 2))
    with pytest.raises(PeriodicError):
        line_product_2skeleton(fx.boundary_simplex(4))


def _reachable_totals(coins, limit):
    """All sums of the given coin values up to ``limit``."""
    ok = {0}
    for t in range(1, limit + 1):
        if any(t - c in ok for c in coins if c <= t):
            ok.add(t)
    return ok


@pytest.mark.parametrize("name", ["C2", "C4", "C6", "C10", "C12", "D4", "D5", "D6", "Q8", "C2xC2",
                                  "S3", "A4", "S4"])
def test_recipe_against_reachability(name):
    Q = named_group(name)
    r = degree_zero_recipe(Q)
    coins = {Q.order // s.order for s in subgroup_classes(Q) if s.order < Q.order}
    totals = _reachable_totals(coins, Q.order * (Q.order + 2))
    feasible = [n for n in range(1, Q.order + 2) if Q.order * n - 1 in totals]
    assert (r is None) == (not feasible) == is_prime_power(Q.order)
    if r is not None:
        assert r.free_count == feasible[0]
        assert r.degree() == 0
        assert Q.order * r.free_count == 1 + r.orbit_total


def test_recipe_values():
    assert degree_zero_recipe(named_group("S3")).by_index() == {2: 1, 3: 1}
    assert degree_zero_recipe(named_group("A4")).by_index() == {3: 1, 4: 2}
    assert degree_zero_recipe(named_group("C6")).free_count == 1
    assert degree_zero_recipe(named_group("C1")) is None
