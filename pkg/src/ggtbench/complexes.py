"""Finite abstract simplicial complexes stored by their maximal simplices.

Vertices are opaque strings.  Every complex carries a total order on its
vertices (the order of ``vertices``); all orientations and all staircase
triangulations are taken with respect to that order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable, Mapping

_DIGITS = re.compile(r"(\d+)")


class ComplexError(ValueError):
    pass


def natural_key(name: str):
    """Sort key that orders ``v2`` before ``v10``."""
    return tuple((0, int(tok), "") if tok.isdigit() else (1, 0, tok)
                 for tok in _DIGITS.split(name) if tok)


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple
    maximal_simplices: frozenset

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ComplexError("duplicate vertex identifiers")
        covered = set()
        for m in self.maximal_simplices:
            if not m:
                raise ComplexError("empty maximal simplex")
            if not m <= vs:
                raise ComplexError(f"simplex {sorted(m)} uses undeclared vertices")
            covered |= m
        if covered != vs:
            raise ComplexError("vertex not contained in any simplex")

    # -- basic structure -------------------------------------------------

    @cached_property
    def order(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    def sort(self, simplex: Iterable[str]) -> tuple:
        """The simplex as a tuple in vertex order."""
        return tuple(sorted(simplex, key=self.order.__getitem__))

    @cached_property
    def _faces(self) -> dict:
        by_size: dict[int, set] = {}
        for m in self.maximal_simplices:
            for k in range(1, len(m) + 1):
                by_size.setdefault(k, set()).update(
                    frozenset(c) for c in combinations(m, k))
        return by_size

    @cached_property
    def dimension(self) -> int:
        return max((len(m) for m in self.maximal_simplices), default=0) - 1

    def simplices(self, dim: int) -> tuple:
        """All ``dim``-simplices as vertex-ordered tuples, lexicographically sorted."""
        return self._simplices_by_dim.get(dim, ())

    @cached_property
    def _simplices_by_dim(self) -> dict:
        out = {}
        for k, faces in self._faces.items():
            rows = sorted((self.sort(f) for f in faces),
                          key=lambda s: [self.order[v] for v in s])
            out[k - 1] = tuple(rows)
        return out

    @cached_property
    def all_simplices(self) -> frozenset:
        return frozenset().union(*self._faces.values()) if self._faces else frozenset()

    def has_simplex(self, simplex: Iterable[str]) -> bool:
        s = frozenset(simplex)
        if not s:
            return True
        return s in self._faces.get(len(s), ())

    @cached_property
    def f_vector(self) -> tuple:
        return tuple(len(self.simplices(d)) for d in range(self.dimension + 1))

    @property
    def num_simplices(self) -> int:
        return sum(self.f_vector)

    @cached_property
    def neighbors(self) -> dict:
        nbrs = {v: set() for v in self.vertices}
        for a, b in self.simplices(1):
            nbrs[a].add(b)
            nbrs[b].add(a)
        return {v: frozenset(s) for v, s in nbrs.items()}

    def is_empty(self) -> bool:
        return not self.vertices

    def sorted_maximal(self) -> list:
        return sorted((self.sort(m) for m in self.maximal_simplices),
                      key=lambda s: [self.order[v] for v in s])

    def same_simplices(self, other: "SimplicialComplex") -> bool:
        """Equality ignoring the vertex order."""
        return (set(self.vertices) == set(other.vertices)
                and self.maximal_simplices == other.maximal_simplices)

    def relabel(self, mapping: Mapping[str, str]) -> "SimplicialComplex":
        """Rename vertices injectively, keeping the vertex order."""
        new = [mapping.get(v, v) for v in self.vertices]
        if len(set(new)) != len(new):
            raise ComplexError("relabelling is not injective")
        return SimplicialComplex(
            tuple(new),
            frozenset(frozenset(mapping.get(v, v) for v in m)
                      for m in self.maximal_simplices))

    def __repr__(self):
        return (f"SimplicialComplex(vertices={len(self.vertices)}, "
                f"f_vector={self.f_vector})")


def _reduce_maximal(families) -> frozenset:
    """Drop every family contained in another one."""
    uniq = sorted(set(families), key=len, reverse=True)
    kept: list[frozenset] = []
    containing: dict = {}
    for cand in uniq:
        pools = [containing.get(v, ()) for v in cand]
        smallest = min(pools, key=len)
        if any(cand <= kept[i] for i in smallest):
            continue
        idx = len(kept)
        kept.append(cand)
        for v in cand:
            containing.setdefault(v, []).append(idx)
    return frozenset(kept)


def from_maximal_simplices(families, vertices=None) -> SimplicialComplex:
    """Build a complex from a list of vertex sets.

    ``vertices`` fixes the vertex order (and may declare isolated vertices);
    by default the vertices are sorted with :func:`natural_key`.
    """
    fams = []
    for fam in families:
        fam = frozenset(fam)
        if not fam:
            raise ComplexError("empty simplex in family list")
        fams.append(fam)
    used = set().union(*fams) if fams else set()
    if vertices is None:
        verts = tuple(sorted(used, key=natural_key))
    else:
        verts = tuple(vertices)
        outside = used - set(verts)
        if outside:
            raise ComplexError(f"vertices outside declared set: {sorted(outside)}")
        fams.extend(frozenset([v]) for v in verts if v not in used)
    return SimplicialComplex(verts, _reduce_maximal(fams))


EMPTY = SimplicialComplex((), frozenset())


def simplex(vertices) -> SimplicialComplex:
    vertices = list(vertices)
    if not vertices:
        return EMPTY
    return SimplicialComplex(tuple(vertices), frozenset([frozenset(vertices)]))


# -- flagness -------------------------------------------------------------

@dataclass(frozen=True)
class FlagCheck:
    ok: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def is_flag(K: SimplicialComplex) -> FlagCheck:
    """Check that every clique of the 1-skeleton spans a simplex.

    On failure the witness is a non-spanning clique of minimal size, ties
    broken lexicographically in the vertex order.
    """
    order = K.order
    prev = [frozenset(e) for e in K.simplices(1)]
    size = 3
    while prev:
        faces = K._faces.get(size, set())
        bad = []
        for s in prev:
            top = max(order[v] for v in s)
            common = None
            for v in s:
                common = K.neighbors[v] if common is None else common & K.neighbors[v]
            for w in common:
                if order[w] > top:
                    c = s | {w}
                    if c not in faces:
                        bad.append(c)
        if bad:
            witness = min((K.sort(c) for c in bad), key=lambda t: [order[v] for v in t])
            return FlagCheck(False, witness)
        prev = list(faces)
        size += 1
    return FlagCheck(True)


# -- constructions ----------------------------------------------------------

def _check_simplex(K, sigma):
    sigma = frozenset(sigma)
    if not K.has_simplex(sigma):
        raise ComplexError(f"{sorted(sigma)} is not a simplex")
    return sigma


def link(K: SimplicialComplex, sigma) -> SimplicialComplex:
    sigma = _check_simplex(K, sigma)
    if not sigma:
        return K
    fams = [m - sigma for m in K.maximal_simplices if sigma <= m]
    fams = [f for f in fams if f]
    used = set().union(*fams) if fams else set()
    return SimplicialComplex(tuple(v for v in K.vertices if v in used),
                             _reduce_maximal(fams))


def star(K: SimplicialComplex, sigma) -> SimplicialComplex:
    sigma = _check_simplex(K, sigma)
    fams = [m for m in K.maximal_simplices if sigma <= m]
    used = set().union(*fams)
    return SimplicialComplex(tuple(v for v in K.vertices if v in used), frozenset(fams))


def full_subcomplex(K: SimplicialComplex, V) -> SimplicialComplex:
    V = set(V)
    if not V <= set(K.order):
        raise ComplexError(f"vertices not in complex: {sorted(V - set(K.order))}")
    fams = [m & V for m in K.maximal_simplices]
    fams = [f for f in fams if f]
    return SimplicialComplex(tuple(v for v in K.vertices if v in V), _reduce_maximal(fams))


def skeleton(K: SimplicialComplex, dim: int) -> SimplicialComplex:
    fams = []
    for m in K.maximal_simplices:
        if len(m) <= dim + 1:
            fams.append(m)
        else:
            fams.extend(frozenset(c) for c in combinations(m, dim + 1))
    return SimplicialComplex(K.vertices, _reduce_maximal(fams)) if dim >= 0 else EMPTY


def cone(K: SimplicialComplex, apex: str = "*") -> SimplicialComplex:
    if apex in K.order:
        raise ComplexError(f"apex {apex!r} already a vertex")
    if K.is_empty():
        return simplex([apex])
    return SimplicialComplex(K.vertices + (apex,),
                             frozenset(m | {apex} for m in K.maximal_simplices))


def join(*factors: SimplicialComplex) -> SimplicialComplex:
    """Join of complexes; factors sharing vertex names are renamed ``i:v``."""
    if not factors:
        return EMPTY
    names = [v for F in factors for v in F.vertices]
    if len(set(names)) != len(names):
        factors = tuple(F.relabel({v: f"{i}:{v}" for v in F.vertices})
                        for i, F in enumerate(factors))
    maxes = [frozenset()]
    for F in factors:
        if F.is_empty():
            continue
        maxes = [a | b for a in maxes for b in F.maximal_simplices]
    verts = tuple(v for F in factors for v in F.vertices)
    if not verts:
        return EMPTY
    return SimplicialComplex(verts, frozenset(maxes))


@dataclass(frozen=True)
class Cylinder:
    """A triangulated cylinder with its two end embeddings."""
    complex: SimplicialComplex
    bottom: dict
    top: dict


def _end_name(v, end):
    return f"{v}@{end}"


def prism(K: SimplicialComplex) -> Cylinder:
    """Staircase triangulation of ``K x [0, 1]``."""
    fams = []
    for m in K.maximal_simplices:
        s = K.sort(m)
        for i in range(len(s)):
            fams.append(frozenset([_end_name(v, 0) for v in s[:i + 1]]
                                  + [_end_name(v, 1) for v in s[i:]]))
    verts = tuple(_end_name(v, 0) for v in K.vertices) + tuple(_end_name(v, 1) for v in K.vertices)
    cx = SimplicialComplex(verts, frozenset(fams))
    return Cylinder(cx, {v: _end_name(v, 0) for v in K.vertices},
                    {v: _end_name(v, 1) for v in K.vertices})


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    domain: SimplicialComplex
    codomain: SimplicialComplex
    assignment: Mapping[str, str]

    def __post_init__(self):
        missing = set(self.domain.vertices) - set(self.assignment)
        if missing:
            raise ComplexError(f"map undefined on {sorted(missing)}")
        for v in self.domain.vertices:
            if self.assignment[v] not in self.codomain.order:
                raise ComplexError(f"image of {v!r} is not a codomain vertex")
        for m in self.domain.maximal_simplices:
            if not self.codomain.has_simplex(self.image(m)):
                raise ComplexError(f"image of {sorted(m)} is not a simplex")

    def __call__(self, v):
        return self.assignment[v]

    def image(self, simplex) -> frozenset:
        return frozenset(self.assignment[v] for v in simplex)

    def compose(self, first: "SimplicialMap") -> "SimplicialMap":
        """``self`` after ``first``."""
        return SimplicialMap(first.domain, self.codomain,
                             {v: self.assignment[first.assignment[v]] for v in first.domain.vertices})

    @classmethod
    def identity(cls, K):
        return cls(K, K, {v: v for v in K.vertices})


def mapping_cylinder(f: SimplicialMap) -> Cylinder:
    """Ordered simplicial mapping cylinder.

    Each domain simplex ``v0 < ... < vk`` contributes the simplices
    ``{v0..vi}@0 + f{vi..vk}@1``.  The domain sits at end 0 (``bottom``)
    and the codomain at end 1 (``top``).
    """
    dom, cod = f.domain, f.codomain
    fams = [frozenset(_end_name(v, 1) for v in m) for m in cod.maximal_simplices]
    for m in dom.maximal_simplices:
        s = dom.sort(m)
        for i in range(len(s)):
            fams.append(frozenset([_end_name(v, 0) for v in s[:i + 1]]
                                  + [_end_name(f(v), 1) for v in s[i:]]))
    verts = tuple(_end_name(v, 0) for v in dom.vertices) + tuple(_end_name(v, 1) for v in cod.vertices)
    cx = SimplicialComplex(verts, _reduce_maximal(fams))
    return Cylinder(cx, {v: _end_name(v, 0) for v in dom.vertices},
                    {v: _end_name(v, 1) for v in cod.vertices})


def barycenter_name(K: SimplicialComplex, simplex) -> str:
    return "[" + ",".join(K.sort(simplex)) + "]"


def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    """Vertices are the simplices of K, ordered by dimension then
    lexicographically; simplices are chains under inclusion."""
    verts = tuple(barycenter_name(K, s)
                  for d in range(K.dimension + 1) for s in K.simplices(d))
    fams = []
    for m in K.maximal_simplices:
        for perm in permutations(K.sort(m)):
            fams.append(frozenset(barycenter_name(K, perm[:i + 1]) for i in range(len(perm))))
    return SimplicialComplex(verts, frozenset(fams))
