from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ggtbench import fixtures as fx
from ggtbench.acceptance import gluing_fixtures
from ggtbench.complexes import from_maximal_simplices, is_flag, link, simplex
from ggtbench.cubes import GluingError, double, glued_link, npc_certificate
from ggtbench.homology import homology

from oracles import flag_by_cliques


def double_oracle(K):
    """All vertex sets that project injectively onto a simplex of K."""
    out = set()
    for d in range(K.dimension + 1):
        for s in K.simplices(d):
            for marks in product(("'", "''"), repeat=len(s)):
                out.add(frozenset(v + m for v, m in zip(s, marks)))
    return out


def faces(K):
    return {frozenset(s) for d in range(K.dimension + 1) for s in K.simplices(d)}


@pytest.mark.parametrize("name", sorted(fx.COMPLEXES))
def test_double_matches_definition(name):
    K = fx.named_complex(name)
    assert faces(double(K)) == double_oracle(K)


VERTS = [f"u{i}" for i in range(6)]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sets(st.sampled_from(VERTS), min_size=1, max_size=3), min_size=1, max_size=6))
def test_double_flag_iff_base_flag(fams):
    K = from_maximal_simplices(fams)
    D = double(K)
    assert bool(is_flag(D)) == bool(is_flag(K)) == flag_by_cliques(D)


def test_double_of_triangle_is_octahedron():
    D = double(simplex(["a", "b", "c"]))
    assert D.f_vector == (6, 12, 8)
    assert homology(D, "Z").ranks == (1, 0, 1)


def test_double_of_join_is_join_of_doubles():
    # the square is {0,2} * {1,3}, so its double is 4 points * 4 points
    assert homology(double(fx.cycle(4)), "Q").ranks == (1, 9)


@pytest.mark.parametrize("fixture", gluing_fixtures(), ids=lambda f: str(f) if isinstance(f, dict) else None)
def test_glued_links_are_flag(fixture):
    vl = glued_link(*fixture)
    assert npc_certificate(vl)
    M, N0, N1, _ = fixture
    # the cone points see doubles of the glued pieces
    if N0:
        assert link(vl.link, ["c0"]).f_vector[0] == 2 * len(N0)
    assert vl.link.f_vector[0] == 2 * len(M.vertices) + 2


def test_glued_link_shapes():
    assert glued_link(simplex(["a", "b"]), ["a"], ["b"], {"a": "b"}).link.f_vector == (6, 8)
    assert glued_link(simplex(["a"]), ["a"], ["a"], {"a": "a"}).link.f_vector == (4, 4)
    assert glued_link(simplex(["a", "b", "c"]), [], [], {}).link.f_vector == (8, 12, 8)


def test_provenance():
    vl = glued_link(simplex(["a", "b"]), ["a"], ["b"], {"a": "b"})
    assert vl.provenance["a'"] == ("M", "a", "up")
    assert vl.provenance["c1"][0] == "stable"


def test_planted_failure_has_witness():
    vl = glued_link(fx.hollow_triangle(), ["a"], ["b"], {"a": "b"})
    cert = npc_certificate(vl)
    assert not cert.ok and cert.witness == ("a'", "b'", "c'")
    assert npc_certificate(fx.hollow_triangle()).witness == ("a", "b", "c")


def test_gluing_validation():
    P = fx.path(3)
    with pytest.raises(GluingError):
        glued_link(P, ["0", "1"], ["0", "2"], {"0": "0", "1": "2"})   # edge to non-edge
    with pytest.raises(GluingError):
        glued_link(P, ["0"], ["9"], {"0": "9"})
    with pytest.raises(GluingError):
        glued_link(P, ["0"], ["1"], {"0": "1"}, cones=("c", "c"))
