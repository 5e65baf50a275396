import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ggtbench import fixtures as fx
from ggtbench.complexes import SimplicialMap, barycentric_subdivision, from_maximal_simplices, join
from ggtbench.homology import (IntegerMatrix, boundary_matrix, euler_characteristic, fundamental_cycle,
                               homology, homology_ratio, induced_degree, is_acyclic, parse_ring,
                               rank, rational_rank, smith_normal_form)

from oracles import rational_homology_ranks, sympy_invariants

small_matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)))


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_snf_matches_sympy(rows):
    d = list(smith_normal_form(IntegerMatrix.from_dense(rows)))
    assert d == sympy_invariants(rows)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))


def test_snf_big_integers_exact():
    big = 10 ** 40 + 7
    rows = [[big, 0], [0, 2 * big]]
    assert smith_normal_form(IntegerMatrix.from_dense(rows)) == (big, 2 * big)
    rows = [[big, big + 1], [big - 1, big]]
    # determinant big^2 - (big^2 - 1) = 1
    assert smith_normal_form(IntegerMatrix.from_dense(rows)) == (1, 1)


def test_boundary_squares_to_zero():
    K = fx.projective_plane()
    d1, d2 = boundary_matrix(K, 1).to_dense(), boundary_matrix(K, 2).to_dense()
    prod = [[sum(d1[i][k] * d2[k][j] for k in range(len(d2))) for j in range(len(d2[0]))]
            for i in range(len(d1))]
    assert all(x == 0 for r in prod for x in r)


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("ring", ["Z", "Q", "F2", "F3"])
def test_sphere_homology(n, ring):
    h = homology(fx.boundary_simplex(n), ring)
    if n == 1:
        assert h.ranks == (2,)
    else:
        assert h.ranks == (1,) + (0,) * (n - 2) + (1,)
    assert not any(h.torsion)


def test_projective_plane_separates_rings(rp2):
    assert homology(rp2, "Q").ranks == (1, 0, 0)
    assert homology(rp2, "F2").ranks == (1, 1, 1)
    assert homology(rp2, "F3").ranks == (1, 0, 0)
    z = homology(rp2, "Z")
    assert z.ranks == (1, 0, 0) and z.torsion_in(1) == (2,)
    assert z.describe() == "H0=Z, H1=Z/2, H2=0"


@pytest.mark.parametrize("name", sorted(fx.COMPLEXES))
def test_rational_betti_matches_sympy(name):
    K = fx.named_complex(name)
    assert homology(K, "Q").ranks == rational_homology_ranks(K)


@pytest.mark.parametrize("name", sorted(fx.COMPLEXES))
def test_euler_characteristic_two_ways(name):
    K = fx.named_complex(name)
    h = homology(K, "Q")
    assert sum((-1) ** d * b for d, b in enumerate(h.ranks)) == euler_characteristic(K)


def test_join_betti():
    J = join(fx.points(6), fx.points(6), fx.points(2))
    assert homology(J, "Q").ranks == (1, 0, 25)
    assert homology(J, "Z").ranks == (1, 0, 25)


def test_acyclicity():
    assert is_acyclic(fx.full_simplex(3))
    assert is_acyclic(fx.named_complex("cone-hexagon"))
    assert not is_acyclic(fx.cycle(5))
    assert not is_acyclic(fx.projective_plane(), "F2")
    assert is_acyclic(fx.projective_plane(), "Q")
    assert not is_acyclic(fx.projective_plane(), "Z")


def test_rank_over_fields():
    M = IntegerMatrix.from_dense([[2, 0], [0, 3]])
    assert rank(M) == 2
    assert rank(M, 2) == 1 and rank(M, 3) == 1
    assert rational_rank([[1, 2], [2, 4]]) == 1


def test_parse_ring():
    assert parse_ring("F5") == ("F", 5)
    with pytest.raises(ValueError):
        parse_ring("F4")


def _wrap(n, k):
    """The k-fold cover C_{nk} -> C_n."""
    big, small = fx.cycle(n * k), fx.cycle(n)
    return SimplicialMap(big, small, {str(i): str(i % n) for i in range(n * k)})


def test_degrees_of_circle_maps():
    C = fx.cycle(5)
    assert induced_degree(SimplicialMap.identity(C)) == 1
    assert induced_degree(SimplicialMap(C, C, {str(i): str(-i % 5) for i in range(5)})) == -1
    assert induced_degree(SimplicialMap(C, C, {v: "0" for v in C.vertices})) == 0
    for k in (2, 3):
        assert abs(induced_degree(_wrap(4, k))) == k


def test_fundamental_cycle_of_sphere():
    z = fundamental_cycle(fx.boundary_simplex(3))
    assert sorted(abs(c) for c in z.values()) == [1, 1, 1, 1]
    assert homology_ratio(fx.boundary_simplex(3), 2, {s: 3 * c for s, c in z.items()}, z) == 3


def test_random_complexes_integral_vs_rational():
    rng = random.Random(5)
    verts = [f"w{i}" for i in range(7)]
    for _ in range(20):
        fams = [rng.sample(verts, rng.randint(1, 4)) for _ in range(6)]
        K = from_maximal_simplices(fams)
        z, q = homology(K, "Z"), homology(K, "Q")
        assert z.ranks == q.ranks
        S = barycentric_subdivision(K)
        assert homology(S, "Z") == z
