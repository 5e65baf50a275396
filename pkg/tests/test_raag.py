from collections import deque
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ggtbench import fixtures as fx
from ggtbench.complexes import barycentric_subdivision, simplex
from ggtbench.cubes import double
from ggtbench.fingroups import named_group
from ggtbench.periodic import periodic_line
from ggtbench.raag import (Presentation, RaagError, ascending_link, count_homs, cube_ball, cube_link,
                           descending_link, format_word, height, hnn_presentation, invert,
                           level_census, normal_form, parse_word, raag_presentation,
                           semidirect_presentation, vertex_link_XL)

PATH = fx.path(3)            # 0-1-2-3: a mix of commuting and free pairs
LETTERS = [(v, e) for v in PATH.vertices for e in (1, -1)]
words = st.lists(st.sampled_from(LETTERS), max_size=7).map(tuple)


def shuffle_oracle(word, L):
    """Shortlex-least word reachable by swapping adjacent commuting letters
    and cancelling adjacent inverse pairs."""
    key = lambda w: (len(w), [(L.order[v], 0 if e > 0 else 1) for v, e in w])
    seen = {word}
    queue = deque([word])
    while queue:
        w = queue.popleft()
        for i in range(len(w) - 1):
            (u, a), (v, b) = w[i], w[i + 1]
            nxt = []
            if u == v and a == -b:
                nxt.append(w[:i] + w[i + 2:])
            if u != v and v in L.neighbors[u]:
                nxt.append(w[:i] + (w[i + 1], w[i]) + w[i + 2:])
            for x in nxt:
                if x not in seen:
                    seen.add(x)
                    queue.append(x)
    return min(seen, key=key)


@settings(max_examples=150, deadline=None)
@given(words)
def test_normal_form_matches_shuffle_oracle(w):
    assert normal_form(w, PATH) == shuffle_oracle(w, PATH)


@settings(max_examples=100, deadline=None)
@given(words, words)
def test_normal_form_properties(u, v):
    nu = normal_form(u, PATH)
    assert normal_form(nu, PATH) == nu
    assert height(nu) == height(u)
    assert normal_form(u + invert(u), PATH) == ()
    assert normal_form(u + v, PATH) == normal_form(nu + normal_form(v, PATH), PATH)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from([("a", 1), ("a", -1), ("b", 1), ("b", -1), ("c", 1), ("c", -1)]),
                max_size=10).map(tuple))
def test_free_abelian_normal_form_is_exponent_vector(w):
    L = simplex(["a", "b", "c"])
    nf = normal_form(w, L)
    exps = {v: sum(e for x, e in w if x == v) for v in "abc"}
    expected = tuple((v, 1 if exps[v] > 0 else -1) for v in "abc" for _ in range(abs(exps[v])))
    assert nf == expected


def test_parse_and_format():
    w = parse_word("a b^-1 c^2")
    assert w == (("a", 1), ("b", -1), ("c", 1), ("c", 1))
    assert format_word(w) == "a b^-1 c c"
    assert parse_word(format_word(w)) == w


def test_non_flag_rejected():
    with pytest.raises(RaagError):
        raag_presentation(fx.hollow_triangle())


def test_presentation_text_roundtrip():
    P = hnn_presentation(periodic_line(2, shift=1))
    assert Presentation.from_text(P.to_text()) == P
    with pytest.raises(RaagError):
        Presentation(("a",), (parse_word("b"),))


def _commuting_pairs(G):
    return sum(1 for g in G.elements for h in G.elements if tuple(map(g.__getitem__, h)) == tuple(map(h.__getitem__, g)))


@pytest.mark.parametrize("name", ["S3", "D4", "Q8", "A4", "C6"])
def test_hom_counts_against_commuting_pairs(name):
    T = named_group(name)
    assert count_homs(raag_presentation(simplex(["a", "b"])), T) == _commuting_pairs(T)
    assert count_homs(raag_presentation(fx.points(2)), T) == T.order ** 2


def test_hom_z2_s3():
    assert count_homs(raag_presentation(simplex(["a", "b"])), named_group("S3")) == 18


@pytest.mark.parametrize("name", ["1", "C2", "C3", "C4", "S3", "C2xC2"])
def test_hnn_slab_choice_does_not_matter(name):
    T = named_group(name)
    one = hnn_presentation(periodic_line(1))
    two = hnn_presentation(periodic_line(2, shift=1))
    assert count_homs(one, T) == count_homs(two, T)


def test_semidirect_presentation_counts():
    # Z^2 extended by the swap: homs into C2 send a, b to equal elements
    a = fx.edge_swap()
    P = semidirect_presentation(a.complex, a)
    assert P.generators == ("a", "b", "s")
    assert count_homs(P, named_group("C2")) == 4


def test_cube_ball_small():
    cells = cube_ball(simplex(["a", "b"]), 1)
    verts = [c for c in cells if c.dim == 0]
    edges = [c for c in cells if c.dim == 1]
    assert len(verts) == 5 and len(edges) == 4
    assert not [c for c in cells if c.dim == 2]
    sq = cube_ball(simplex(["a", "b"]), 2)
    assert len([c for c in sq if c.dim == 2]) == 4


def brute_level_counts(L, c=Fraction(1, 2)):
    """Kernel orbits of level cells, read off an explicit ball of cubes: an
    orbit of ``(g, sigma)`` under the kernel is fixed by ``sigma`` and ``h(g)``."""
    n_max = L.dimension + 1
    cells = cube_ball(L, 2 * n_max - 1)
    found = {}
    for cell in cells:
        h = height(cell.base)
        if cell.dim and h < c < h + cell.dim:
            found.setdefault(cell.dim, set()).add((cell.simplex, h))
    return tuple(len(found.get(n, ())) for n in range(1, n_max + 1))


@pytest.mark.parametrize("L", [simplex(["a"]), simplex(["a", "b"]), simplex(["a", "b", "c"]),
                               fx.cycle(6), fx.path(3)], ids=["point", "edge", "triangle", "hexagon", "path"])
def test_level_census_against_cube_ball(L):
    census = level_census(L)
    assert census.level_cells == brute_level_counts(L)
    for n in range(1, len(census.cube_orbits)):
        assert census.level_cells[n - 1] == n * census.cube_orbits[n]


def test_level_census_values():
    assert level_census(simplex(["a", "b"])) .cube_orbits == (1, 2, 1)
    assert level_census(simplex(["a", "b", "c"]), c=Fraction(3, 2)).level_cells == (3, 6, 3)
    assert level_census(barycentric_subdivision(simplex(["a", "b", "c"]))).cube_orbits == (1, 7, 12, 6)
    with pytest.raises(RaagError):
        level_census(simplex(["a"]), c=1)


def test_level_census_with_symmetry():
    # the swap identifies the two vertices of the edge
    c = level_census(simplex(["a", "b"]), fx.edge_swap())
    assert c.cube_orbits == (1, 1, 1) and c.level_cells == (1, 2)


@pytest.mark.parametrize("L", [simplex(["a", "b"]), simplex(["a", "b", "c"]), fx.cycle(6), fx.path(3)],
                         ids=["edge", "triangle", "hexagon", "path"])
def test_vertex_link_is_double(L):
    link = vertex_link_XL(L)
    assert link.same_simplices(double(L))
    # the same link read off an explicit ball of cubes
    assert cube_link(cube_ball(L, L.dimension + 1), (), L).same_simplices(link)
    asc = ascending_link(L).relabel({f"{v}'": v for v in L.vertices})
    desc = descending_link(L).relabel({f"{v}''": v for v in L.vertices})
    assert asc.same_simplices(L) and desc.same_simplices(L)


def test_link_of_triangle_is_octahedron():
    assert vertex_link_XL(simplex(["a", "b", "c"])).f_vector == (6, 12, 8)
