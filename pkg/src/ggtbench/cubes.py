"""One-vertex cube complexes, seen through their vertex links.

The link at the vertex of a RAAG's Salvetti-type cube complex is the double
``S(K)``; gluing in an HNN stable letter cones off two copies of a
subcomplex.  Nonpositive curvature is certified by flagness of the link.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .complexes import (ComplexError, FlagCheck, SimplicialComplex, from_maximal_simplices,
                        full_subcomplex, is_flag)
from .raag import down, up


class GluingError(ValueError):
    pass


def double(K: SimplicialComplex) -> SimplicialComplex:
    """Vertices ``v'`` and ``v''`` per vertex of ``K``; a set spans a
    simplex iff it projects injectively onto a simplex of ``K``."""
    fams = []
    for m in K.maximal_simplices:
        s = K.sort(m)
        for signs in product((up, down), repeat=len(s)):
            fams.append([f(v) for f, v in zip(signs, s)])
    verts = [up(v) for v in K.vertices] + [down(v) for v in K.vertices]
    if len(set(verts)) != len(verts):
        raise ComplexError("vertex names collide after priming")
    return from_maximal_simplices(fams, vertices=verts)


@dataclass(frozen=True)
class VertexLink:
    link: SimplicialComplex
    provenance: dict = field(default_factory=dict)   # vertex -> (block, source vertex, copy)


def glued_link(M: SimplicialComplex, N0, N1, gamma: dict, cones=("c0", "c1")) -> VertexLink:
    """Link of the single vertex after adding a stable letter conjugating
    the full subcomplex on ``N0`` to the one on ``N1`` via ``gamma``.

    This is ``S(M)`` with a cone point over ``S(N0)`` and one over ``S(N1)``.
    """
    N0, N1 = list(N0), list(N1)
    for N in (N0, N1):
        if not set(N) <= set(M.vertices):
            raise GluingError("subcomplex vertices must belong to M")
    if set(gamma) != set(N0) or sorted(gamma.values(), key=M.order.get) != sorted(N1, key=M.order.get):
        raise GluingError("gamma must be a bijection N0 -> N1")
    F0, F1 = full_subcomplex(M, N0), full_subcomplex(M, N1)
    image = frozenset(frozenset(gamma[v] for v in s) for s in F0.maximal_simplices)
    if image != F1.maximal_simplices:
        raise GluingError("gamma is not an isomorphism of the full subcomplexes on N0 and N1")
    SM = double(M)
    c0, c1 = cones
    if c0 in SM.order or c1 in SM.order or c0 == c1:
        raise GluingError("cone vertex names clash")
    fams = list(SM.maximal_simplices)
    for c, F in ((c0, F0), (c1, F1)):
        SF = double(F) if F.vertices else None
        if SF is None:
            fams.append(frozenset([c]))
        else:
            fams.extend(s | {c} for s in SF.maximal_simplices)
    verts = list(SM.vertices) + [c0, c1]
    link = from_maximal_simplices(fams, vertices=verts)
    prov = {}
    for v in M.vertices:
        prov[up(v)] = ("M", v, "up")
        prov[down(v)] = ("M", v, "down")
    prov[c0] = ("stable", None, "up")
    prov[c1] = ("stable", None, "down")
    return VertexLink(link, prov)


def npc_certificate(vl: VertexLink | SimplicialComplex) -> FlagCheck:
    """Nonpositive curvature of a one-vertex cube complex: its link is flag."""
    link = vl.link if isinstance(vl, VertexLink) else vl
    return is_flag(link)
