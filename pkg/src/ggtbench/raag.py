"""Right-angled Artin groups, Bestvina-Brady heights, the cube complex X_L,
level-set censuses and group presentations."""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ._limits import BoundExceeded, max_elements
from .complexes import SimplicialComplex, from_maximal_simplices, is_flag
from .fingroups import GroupComplexAction, PermGroup, inverse, mul


class RaagError(ValueError):
    pass


def _require_flag(L):
    check = is_flag(L)
    if not check:
        raise RaagError(f"complex is not flag: missing simplex {check.witness}")


# -- words ---------------------------------------------------------------------

_TOKEN = re.compile(r"^(.+?)(?:\^(-?\d+))?$")


def parse_word(text: str) -> tuple:
    """Parse ``a b^-1 c^2`` into ``(("a", 1), ("b", -1), ("c", 1), ("c", 1))``."""
    out = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        name, exp = m.group(1), int(m.group(2) or 1)
        if exp == 0:
            continue
        sign = 1 if exp > 0 else -1
        out.extend([(name, sign)] * abs(exp))
    return tuple(out)


def format_word(word) -> str:
    """Inverse of :func:`parse_word`; runs of one letter are kept expanded."""
    return " ".join(v if e == 1 else f"{v}^-1" for v, e in word)


def invert(word) -> tuple:
    return tuple((v, -e) for v, e in reversed(word))


def height(word) -> int:
    return sum(e for _, e in word)


def _commute(L, u, v):
    return u == v or v in L.neighbors[u]


def free_reduce(word, L: SimplicialComplex) -> tuple:
    """Cancel ``x ... x^-1`` pairs whose middle commutes with ``x``."""
    out: list = []
    for v, e in word:
        if v not in L.order:
            raise RaagError(f"{v!r} is not a vertex")
        for i in range(len(out) - 1, -1, -1):
            u, f = out[i]
            if u == v and f == -e:
                del out[i]
                break
            if not _commute(L, u, v):
                out.append((v, e))
                break
        else:
            out.append((v, e))
    return tuple(out)


def normal_form(word, L: SimplicialComplex) -> tuple:
    """Shortlex-least representative, letters ordered ``a < a^-1 < b < ...``
    following the vertex order of ``L``."""
    rest = list(free_reduce(word, L))
    key = lambda x: (L.order[x[0]], 0 if x[1] > 0 else 1)
    out = []
    while rest:
        best = None
        for i, x in enumerate(rest):
            if all(_commute(L, y[0], x[0]) for y in rest[:i]):
                if best is None or key(x) < key(rest[best]):
                    best = i
        out.append(rest.pop(best))
    return tuple(out)


# -- presentations ---------------------------------------------------------------

@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relators: tuple

    def __post_init__(self):
        gens = set(self.generators)
        if len(gens) != len(self.generators):
            raise RaagError("repeated generator")
        for r in self.relators:
            for v, _ in r:
                if v not in gens:
                    raise RaagError(f"relator uses undeclared generator {v!r}")

    def to_text(self) -> str:
        lines = ["generators: " + " ".join(self.generators)]
        lines += ["relator: " + format_word(r) for r in self.relators]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Presentation":
        gens, rels = (), []
        for line in text.splitlines():
            if not line.strip():
                continue
            key, _, body = line.partition(":")
            key = key.strip()
            if key == "generators":
                gens = tuple(body.split())
            elif key == "relator":
                rels.append(parse_word(body))
            else:
                raise RaagError(f"unrecognised line {line!r}")
        return cls(gens, tuple(rels))


def commutator(u, v) -> tuple:
    return ((u, 1), (v, 1), (u, -1), (v, -1))


def raag_presentation(L: SimplicialComplex) -> Presentation:
    _require_flag(L)
    return Presentation(tuple(L.vertices), tuple(commutator(*e) for e in L.simplices(1)))


def hnn_presentation(P) -> Presentation:
    """``G_slab`` extended by a stable letter ``t`` with ``t b(x) t^-1 = t(x)``."""
    _require_flag(P.slab)
    if "t" in P.slab.order:
        raise RaagError("slab vertex named 't' clashes with the stable letter")
    base = raag_presentation(P.slab)
    rels = list(base.relators)
    for x in P.interface.vertices:
        rels.append((("t", 1), (P.bottom[x], 1), ("t", -1), (P.top[x], -1)))
    return Presentation(base.generators + ("t",), tuple(rels))


def _group_relators(Q: PermGroup, names):
    """Relators of ``Q`` read off a breadth-first spanning tree of its Cayley graph."""
    gens = Q.generators
    tree = {Q.identity: ()}
    queue = deque([Q.identity])
    tree_edges = set()
    while queue:
        g = queue.popleft()
        for i, s in enumerate(gens):
            h = mul(g, s)
            if h not in tree:
                tree[h] = tree[g] + ((names[i], 1),)
                tree_edges.add((g, i))
                queue.append(h)
    rels = []
    for g in Q.elements:
        for i, s in enumerate(gens):
            if (g, i) in tree_edges:
                continue
            h = mul(g, s)
            rels.append(tree[g] + ((names[i], 1),) + invert(tree[h]))
    return rels


def semidirect_presentation(L: SimplicialComplex, action: GroupComplexAction) -> Presentation:
    """Presentation of ``G_L`` extended by the acting group."""
    base = raag_presentation(L)
    if action.complex != L:
        raise RaagError("action is not on L")
    Q = action.group
    idx = [i for i, g in enumerate(Q.generators) if g != Q.identity]
    if not idx:
        return base
    names = ["s"] if len(idx) == 1 else [f"s{j + 1}" for j in range(len(idx))]
    clash = set(names) & set(L.vertices)
    if clash:
        raise RaagError(f"generator names {sorted(clash)} clash with vertices")
    sub = PermGroup(Q.degree, [Q.generators[i] for i in idx])
    rels = list(base.relators) + _group_relators(sub, names)
    for name, i in zip(names, idx):
        img = action.images[i]
        for v in L.vertices:
            rels.append(((name, 1), (v, 1), (name, -1), (img[v], -1)))
    return Presentation(base.generators + tuple(names), tuple(rels))


def count_homs(P: Presentation, T: PermGroup, bound: int = 10 ** 7) -> int:
    """Number of generator assignments into ``T`` satisfying every relator.

    Backtracking: a relator is tested as soon as all its generators have
    been assigned.
    """
    elems = T.elements
    n = len(P.generators)
    if len(elems) ** n > bound:
        raise BoundExceeded(f"{len(elems)}^{n} assignments exceed the bound {bound}")
    pos = {g: i for i, g in enumerate(P.generators)}
    ready = [[] for _ in range(n)]
    for r in P.relators:
        if r:
            ready[max(pos[v] for v, _ in r)].append(r)
    inv = {g: inverse(g) for g in elems}
    e = T.identity
    assign = {}

    def holds(r):
        acc = e
        for v, s in r:
            x = assign[v]
            acc = mul(acc, x if s > 0 else inv[x])
        return acc == e

    def rec(i):
        if i == n:
            return 1
        total = 0
        for g in elems:
            assign[P.generators[i]] = g
            if all(holds(r) for r in ready[i]):
                total += rec(i + 1)
        return total

    return rec(0)


# -- the cube complex X_L ----------------------------------------------------------

@dataclass(frozen=True)
class CubeCell:
    base: tuple       # normal-form word, the lowest corner
    simplex: tuple    # sorted simplex of L, possibly empty

    @property
    def dim(self):
        return len(self.simplex)


def cube_corners(cell: CubeCell, L) -> list:
    out = []
    for r in range(len(cell.simplex) + 1):
        for S in combinations(cell.simplex, r):
            out.append(normal_form(cell.base + tuple((v, 1) for v in S), L))
    return out


def _simplices_with_empty(L):
    out = [()]
    for d in range(L.dimension + 1):
        out.extend(L.simplices(d))
    return out


def cube_ball(L: SimplicialComplex, r: int, bound: int | None = None) -> set:
    """Cells of ``X_L`` all of whose corners have word length at most ``r``."""
    _require_flag(L)
    bound = max_elements() if bound is None else bound
    letters = [(v, s) for v in L.vertices for s in (1, -1)]
    ball = {()}
    frontier = [()]
    for _ in range(r):
        nxt = []
        for g in frontier:
            for x in letters:
                h = normal_form(g + (x,), L)
                if h not in ball:
                    ball.add(h)
                    nxt.append(h)
                    if len(ball) > bound:
                        raise BoundExceeded(f"ball exceeds {bound} vertices")
        frontier = nxt
    cells = set()
    simplices = _simplices_with_empty(L)
    for g in ball:
        for s in simplices:
            cell = CubeCell(g, s)
            if all(c in ball for c in cube_corners(cell, L)):
                cells.add(cell)
    return cells


@dataclass(frozen=True)
class LevelCensus:
    cube_orbits: tuple   # indexed by cube dimension n >= 0
    level_cells: tuple   # indexed by level-cell dimension n - 1 >= 0
    level: Fraction


def _simplex_orbit_counts(L, action, skip=frozenset()):
    """Number of simplex orbits per dimension, ``skip`` removed first."""
    counts = [0] * (L.dimension + 1)
    seen = set()
    for d in range(L.dimension + 1):
        for s in L.simplices(d):
            fs = frozenset(s)
            if fs in seen or fs in skip:
                continue
            if action is None:
                seen.add(fs)
            else:
                seen |= {action.act(g, fs) for g in action.group.elements}
            counts[d] += 1
    return counts


def level_census(L, action=None, c=Fraction(1, 2)) -> LevelCensus:
    """Orbit counts of cubes of ``X_L`` and of cells of the level set
    ``f^{-1}(c)`` under the Bestvina-Brady kernel extended by the symmetry.

    ``L`` is a finite flag complex (optionally with a group action) or a
    periodic complex, whose own symmetry is then used.  Level cells are
    counted by listing, for every cube orbit ``(g, sigma)``, the heights
    ``h(g)`` whose cube meets the level.
    """
    from .periodic import PeriodicComplex
    c = Fraction(c)
    if c.denominator == 1:
        raise RaagError("level must avoid the integers")
    if isinstance(L, PeriodicComplex):
        P = L
        _require_flag(P.slab)
        top_cells = set()
        for d in range(P.interface.dimension + 1):
            for s in P.interface.simplices(d):
                top_cells.add(frozenset(P.top[x] for x in s))
        counts = _simplex_orbit_counts(P.slab, P.symmetry, top_cells)
    else:
        _require_flag(L)
        if action is not None and action.complex != L:
            raise RaagError("action is not on L")
        counts = _simplex_orbit_counts(L, action)
    cubes = (1,) + tuple(counts)
    level = []
    for n in range(1, len(cubes)):
        lo, hi = int(c) - n - 1, int(c) + 1
        heights = [h for h in range(lo, hi + 1) if h < c < h + n]
        level.append(len(heights) * cubes[n])
    return LevelCensus(cubes, tuple(level), c)


# -- vertex links --------------------------------------------------------------

def up(v):
    return f"{v}'"


def down(v):
    return f"{v}''"


def vertex_link_XL(L: SimplicialComplex) -> SimplicialComplex:
    """Link of the identity vertex of ``X_L``, read off the cubes having
    the identity as a corner.  An edge leaving upward along ``v`` becomes
    ``v'``, one leaving downward ``v''``."""
    _require_flag(L)
    fams = []
    for s in _simplices_with_empty(L):
        if not s:
            continue
        for r in range(len(s) + 1):
            for S in combinations(s, r):
                base = normal_form(tuple((v, -1) for v in S), L)
                cell = CubeCell(base, s)
                assert () in cube_corners(cell, L)
                fams.append([down(v) if v in S else up(v) for v in s])
    verts = [up(v) for v in L.vertices] + [down(v) for v in L.vertices]
    return from_maximal_simplices(fams, vertices=verts)


def ascending_link(L: SimplicialComplex) -> SimplicialComplex:
    from .complexes import full_subcomplex
    return full_subcomplex(vertex_link_XL(L), [up(v) for v in L.vertices])


def descending_link(L: SimplicialComplex) -> SimplicialComplex:
    from .complexes import full_subcomplex
    return full_subcomplex(vertex_link_XL(L), [down(v) for v in L.vertices])


def cube_link(cells, vertex, L) -> SimplicialComplex:
    """Link of ``vertex`` inside a finite set of cube cells."""
    fams = []
    for cell in cells:
        if not cell.simplex:
            continue
        for r in range(len(cell.simplex) + 1):
            for S in combinations(cell.simplex, r):
                corner = normal_form(cell.base + tuple((v, 1) for v in S), L)
                if corner == vertex:
                    fams.append([down(v) if v in S else up(v) for v in cell.simplex])
    return from_maximal_simplices(fams)
