"""Independent reference computations used only by the tests."""

from itertools import combinations

import networkx as nx
import sympy


def one_skeleton(K):
    g = nx.Graph()
    g.add_nodes_from(K.vertices)
    g.add_edges_from(tuple(e) for e in K.simplices(1))
    return g


def flag_by_cliques(K):
    """Every clique of the 1-skeleton is a simplex."""
    g = one_skeleton(K)
    return all(K.has_simplex(c) for c in nx.enumerate_all_cliques(g))


def all_faces(maximal):
    out = set()
    for m in maximal:
        m = tuple(m)
        for r in range(1, len(m) + 1):
            out.update(frozenset(c) for c in combinations(m, r))
    return out


def sympy_invariants(rows):
    """Nonzero diagonal of the Smith form, made positive and sorted."""
    from sympy.matrices.normalforms import smith_normal_form
    M = sympy.Matrix(rows)
    D = smith_normal_form(M, domain=sympy.ZZ)
    diag = [abs(int(D[i, i])) for i in range(min(D.shape))]
    return sorted(d for d in diag if d)


def rational_homology_ranks(K):
    """Betti numbers over Q from ranks of sympy boundary matrices."""
    top = K.dimension
    faces = {d: sorted(tuple(K.sort(s)) for s in K.simplices(d)) for d in range(top + 1)}
    idx = {d: {s: i for i, s in enumerate(faces[d])} for d in faces}
    rk = {}
    for d in range(1, top + 1):
        M = sympy.zeros(len(faces[d - 1]), len(faces[d]))
        for j, s in enumerate(faces[d]):
            for i in range(len(s)):
                M[idx[d - 1][s[:i] + s[i + 1:]], j] = (-1) ** i
        rk[d] = M.rank()
    return tuple(len(faces[d]) - rk.get(d, 0) - rk.get(d + 1, 0) for d in range(top + 1))
