from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics import Permutation, PermutationGroup

from ggtbench import fixtures as fx
from ggtbench.fingroups import (CATALOG, ActionError, GroupComplexAction, PermGroup, fixed_subcomplex,
                                has_cyclic_by_p_tower, has_pcq_tower, inverse, invariant_simplices,
                                is_prime_power, mul, named_group, simplex_orbits, sl_order,
                                sl_tau_generators, subgroup_classes)
from ggtbench.homology import homology


def as_sympy(G):
    if not G.generators:
        return PermutationGroup([Permutation(list(range(G.degree)))])
    return PermutationGroup([Permutation(list(g)) for g in G.generators])


def brute_subgroup_classes(G):
    """Subgroups generated by at most two elements, up to conjugacy."""
    els = G.elements
    subs = set()
    for a in els:
        for b in els:
            subs.add(frozenset(G.subgroup([a, b]).elements))
    classes = set()
    for H in subs:
        classes.add(min(tuple(sorted(mul(mul(x, h), inverse(x)) for h in H)) for x in els))
    return classes


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_orders_match_sympy(name):
    G = named_group(name)
    S = as_sympy(G)
    assert G.order == S.order()
    assert G.is_cyclic() == S.is_cyclic
    assert G.is_abelian() == S.is_abelian


@pytest.mark.parametrize("name", ["S3", "S4", "A4", "A5", "D4", "Q8", "C6", "D5"])
def test_conjugacy_class_count_matches_sympy(name):
    G = named_group(name)
    assert len(G.conjugacy_classes) == len(as_sympy(G).conjugacy_classes())
    assert sum(len(c) for c in G.conjugacy_classes) == G.order


@pytest.mark.parametrize("name", ["S3", "S4", "A4", "D4", "Q8", "C6", "C2xC2", "D6"])
def test_subgroup_classes_match_brute_force(name):
    G = named_group(name)
    ours = subgroup_classes(G)
    assert len(ours) == len(brute_subgroup_classes(G))
    # orbit-stabilizer: class sizes divide the group order
    assert all(G.order % r.class_size == 0 for r in ours)


def test_subgroup_class_counts_known():
    assert len(subgroup_classes(named_group("A5"))) == 9
    assert len(subgroup_classes(named_group("S4"))) == 11


def test_group_axioms():
    G = named_group("S4")
    e = G.identity
    for g in G.elements[:8]:
        assert mul(g, inverse(g)) == e
        for h in G.elements[:8]:
            assert mul(g, h) in G


perms5 = st.permutations(list(range(5))).map(tuple)


@settings(max_examples=60, deadline=None)
@given(perms5, perms5, perms5)
def test_composition_matches_sympy(p, q, r):
    # mul(p, q) applies q first
    assert mul(mul(p, q), r) == mul(p, mul(q, r))
    ours = mul(p, q)
    theirs = Permutation(list(q)) * Permutation(list(p))
    assert list(ours) == theirs.array_form


@pytest.mark.parametrize("n", [1, 2, 4, 8, 9, 27, 49])
def test_prime_powers(n):
    assert is_prime_power(n)


@pytest.mark.parametrize("n", [6, 10, 12, 15, 24])
def test_not_prime_powers(n):
    assert not is_prime_power(n)


def test_towers():
    assert has_pcq_tower(named_group("S3")) and has_pcq_tower(named_group("S4"))
    assert not has_pcq_tower(named_group("A5"))
    assert not has_cyclic_by_p_tower(named_group("A4"))
    assert has_cyclic_by_p_tower(named_group("S3"))
    for name in ["C4", "C9", "D4", "Q8", "C2xC2"]:
        assert has_pcq_tower(named_group(name))


@pytest.mark.parametrize("n,p", [(2, 2), (2, 3), (3, 2), (2, 5)])
def test_sl_generators_order(n, p):
    g = sl_tau_generators(n, p)
    G = g.as_perm_group()
    assert G.order == sl_order(n, p) == as_sympy(G).order()


def test_sl_proper_subsets_are_p_groups():
    for n, p in ((2, 2), (2, 3), (3, 2)):
        g = sl_tau_generators(n, p)
        for r in range(1, n):
            for sub in combinations(g.generators, r):
                order = g.as_perm_group(sub).order
                while order % p == 0:
                    order //= p
                assert order == 1


def test_action_validation():
    with pytest.raises(ActionError):
        GroupComplexAction(named_group("C3"), fx.cycle(6), [{str(i): str((i + 1) % 6) for i in range(6)}])
    with pytest.raises(ActionError):
        # not simplicial: 0 -> 0, 1 -> 3 sends the edge 01 to a non-edge
        GroupComplexAction(named_group("C2"), fx.cycle(6),
                           [{"0": "0", "1": "3", "2": "2", "3": "1", "4": "4", "5": "5"}])


def test_action_is_a_left_action():
    a = fx.bipyramid_s3()
    G = a.group
    for s in G.elements:
        for x in G.elements:
            lhs = a.vertex_map(mul(s, x))
            rhs = {v: a.vertex_map(s)[a.vertex_map(x)[v]] for v in a.complex.vertices}
            assert lhs == rhs


def test_fixed_points():
    assert invariant_simplices(fx.hexagon_rotation()) == []
    assert [tuple(s) for s in invariant_simplices(fx.edge_swap())] == [("a", "b")]
    fixed = fixed_subcomplex(fx.hexagon_reflection())
    assert homology(fixed, "Z").ranks == (2,)
    assert invariant_simplices(fx.bipyramid_s3()) == []
    tri = fx.triangle_rotation()
    assert [len(s) for s in invariant_simplices(tri)] == [3]


def test_orbit_stabilizer():
    for name in ["hexagon-c3", "bipyramid-s3", "join-s3", "sphere-s3-fixed"]:
        a = fx.named_action(name)
        orbits = simplex_orbits(a)
        assert all(o.size * len(o.stabilizer) == a.group.order for o in orbits)
        per_dim = {}
        for o in orbits:
            per_dim[o.dim] = per_dim.get(o.dim, 0) + o.size
        assert tuple(per_dim[d] for d in sorted(per_dim)) == a.complex.f_vector


def test_join_action_free_above_vertices():
    a = fx.join_sign_action()
    assert a.complex.f_vector == (14, 60, 72)
    assert all(o.is_free for o in simplex_orbits(a) if o.dim > 0)
    assert not all(o.is_free for o in simplex_orbits(a))


def test_permgroup_bound():
    from ggtbench._limits import BoundExceeded
    with pytest.raises(BoundExceeded):
        PermGroup(5, named_group("S5").generators, bound=10).elements
    with pytest.raises(ValueError):
        PermGroup(6, [(1, 0, 2, 3, 4)])
