"""Z-periodic complexes, mapping telescopes and the orbit arithmetic of
degree-zero equivariant maps.

A periodic complex is one slab plus an interface complex with two
embeddings.  Copy ``k`` of the slab is glued to copy ``k+1`` by identifying
``top(x)`` in slab ``k`` with ``bottom(x)`` in slab ``k+1``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .complexes import (SimplicialComplex, SimplicialMap, _reduce_maximal,
                        barycenter_name, barycentric_subdivision, full_subcomplex, is_flag, mapping_cylinder, prism, skeleton)
from .fingroups import (GroupComplexAction, PermGroup, subgroup_classes)
from .homology import fundamental_cycle, homology_ratio, push_chain


class PeriodicError(ValueError):
    pass


def _check_embedding(iface, slab, emb, label):
    if set(emb) != set(iface.vertices):
        raise PeriodicError(f"{label} embedding must be defined on every interface vertex")
    if len(set(emb.values())) != len(emb):
        raise PeriodicError(f"{label} embedding is not injective")
    if not set(emb.values()) <= set(slab.vertices):
        raise PeriodicError(f"{label} embedding leaves the slab")
    image = frozenset(frozenset(emb[v] for v in m) for m in iface.maximal_simplices)
    full = full_subcomplex(slab, emb.values())
    if full.maximal_simplices != image:
        raise PeriodicError(f"{label} image is not a full subcomplex isomorphic to the interface")


@dataclass(frozen=True, eq=False)
class PeriodicComplex:
    slab: SimplicialComplex
    interface: SimplicialComplex
    bottom: dict
    top: dict
    symmetry: GroupComplexAction | None = None

    def __post_init__(self):
        _check_embedding(self.interface, self.slab, self.bottom, "bottom")
        _check_embedding(self.interface, self.slab, self.top, "top")
        if self.symmetry is not None:
            if self.symmetry.complex is not self.slab and self.symmetry.complex != self.slab:
                raise PeriodicError("symmetry must act on the slab")
            self._check_symmetry()

    def _check_symmetry(self):
        binv = {w: v for v, w in self.bottom.items()}
        tinv = {w: v for v, w in self.top.items()}
        for img in self.symmetry.images:
            via_bottom, via_top = {}, {}
            for x in self.interface.vertices:
                b, t = img[self.bottom[x]], img[self.top[x]]
                if b not in binv or t not in tinv:
                    raise PeriodicError("symmetry does not preserve the interface images")
                via_bottom[x], via_top[x] = binv[b], tinv[t]
            if via_bottom != via_top:
                raise PeriodicError("symmetry does not commute with the shift")

    def interface_action(self) -> GroupComplexAction:
        binv = {w: v for v, w in self.bottom.items()}
        imgs = [{x: binv[img[self.bottom[x]]] for x in self.interface.vertices}
                for img in self.symmetry.images]
        return GroupComplexAction(self.symmetry.group, self.interface, imgs)

    # -- vertex classes --------------------------------------------------

    def _classes(self, a, b, wrap=False):
        """Union-find over ``(k, v)`` for slabs ``a..b``; optional wrap-around."""
        parent = {}

        def find(x):
            root = x
            while parent.get(root, root) != root:
                root = parent[root]
            while parent.get(x, x) != root:
                parent[x], x = root, parent[x]
            return root

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                # keep the lexicographically earliest (slab, position) as root
                key = lambda r: (r[0], self.slab.order[r[1]])
                if key(ry) < key(rx):
                    rx, ry = ry, rx
                parent[ry] = rx

        for k in range(a, b):
            for x in self.interface.vertices:
                union((k, self.top[x]), (k + 1, self.bottom[x]))
        if wrap:
            for x in self.interface.vertices:
                union((b, self.top[x]), (a, self.bottom[x]))
        return find

    @staticmethod
    def vertex_name(k, v):
        return f"{v}#{k}"

    def window_map(self, a, b) -> dict:
        """``(k, v) -> window vertex name`` for slabs ``a..b``."""
        if a > b:
            raise PeriodicError("window needs a <= b")
        find = self._classes(a, b)
        return {(k, v): self.vertex_name(*find((k, v)))
                for k in range(a, b + 1) for v in self.slab.vertices}

    def window(self, a, b) -> SimplicialComplex:
        names = self.window_map(a, b)
        order = []
        seen = set()
        for k in range(a, b + 1):
            for v in self.slab.vertices:
                n = names[(k, v)]
                if n not in seen:
                    seen.add(n)
                    order.append(n)
        fams = [frozenset(names[(k, v)] for v in m)
                for k in range(a, b + 1) for m in self.slab.maximal_simplices]
        return SimplicialComplex(tuple(order), _reduce_maximal(fams))

    # -- the infinite complex ---------------------------------------------

    def _canonical(self, k, v):
        tinv = {w: x for x, w in self.top.items()}
        steps = 0
        while v in tinv:
            v = self.bottom[tinv[v]]
            k += 1
            steps += 1
            if steps > len(self.slab.vertices):
                raise PeriodicError("the shift fixes a vertex; the Z-action is not free")
        return k, v

    def _memberships(self, k, v):
        binv = {w: x for x, w in self.bottom.items()}
        out = [(k, v)]
        while v in binv:
            v = self.top[binv[v]]
            k -= 1
            out.append((k, v))
            if len(out) > len(self.slab.vertices) + 1:
                raise PeriodicError("the shift fixes a vertex; the Z-action is not free")
        return out

    def neighbors(self, k, v):
        """Neighbours of the canonical vertex ``(k, v)`` in the infinite complex."""
        out = set()
        for j, u in self._memberships(k, v):
            for w in self.slab.neighbors[u]:
                out.add(self._canonical(j, w))
        return out

    def orbit_representatives(self):
        """Canonical vertices ``(0, v)``, one per Z-orbit."""
        tinv = set(self.top.values())
        return [(0, v) for v in self.slab.vertices if v not in tinv]

    def self_distances(self, radius=3):
        """Shifts ``j != 0`` with ``(0, v)`` and ``(j, v)`` within ``radius`` edges."""
        found = set()
        for start in self.orbit_representatives():
            dist = {start: 0}
            queue = deque([start])
            while queue:
                x = queue.popleft()
                if dist[x] == radius:
                    continue
                for y in self.neighbors(*x):
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        queue.append(y)
            for (j, u) in dist:
                if u == start[1] and j != 0:
                    found.add(j)
        return found


# -- quotients ---------------------------------------------------------------

@dataclass(frozen=True)
class ShiftQuotient:
    period: int
    complex: SimplicialComplex | None
    degenerate: bool
    simplicial: bool
    flag: bool
    witness: tuple | None = None

    @property
    def passes(self):
        return not self.degenerate and self.simplicial and self.flag


def quotient_by_shift(P: PeriodicComplex, k: int) -> ShiftQuotient:
    """The quotient of the infinite complex by the subgroup ``kZ``.

    Failures are reported, never repaired: a simplex whose vertices collide
    marks the quotient degenerate, and two distinct cells on one vertex set
    mark it non-simplicial.
    """
    if k < 1:
        raise PeriodicError("period must be positive")
    find = P._classes(0, k - 1, wrap=True)
    # identify cells along the seams
    cell_parent = {}

    def cfind(c):
        while cell_parent.get(c, c) != c:
            c = cell_parent[c]
        return c

    for i in range(k):
        for d in range(P.interface.dimension + 1):
            for s in P.interface.simplices(d):
                a = cfind((i, frozenset(P.top[x] for x in s)))
                b = cfind(((i + 1) % k, frozenset(P.bottom[x] for x in s)))
                if a != b:
                    cell_parent[a] = b
    cells = {}
    degenerate = None
    for i in range(k):
        for d in range(P.slab.dimension + 1):
            for s in P.slab.simplices(d):
                verts = [find((i, v)) for v in s]
                if len(set(verts)) != len(verts):
                    degenerate = degenerate or tuple(P.vertex_name(*x) for x in verts)
                    continue
                key = frozenset(P.vertex_name(*x) for x in verts)
                cells.setdefault(key, set()).add(cfind((i, frozenset(s))))
    if degenerate:
        return ShiftQuotient(k, None, True, False, False, degenerate)
    simplicial = all(len(c) == 1 for c in cells.values())
    order = []
    seen = set()
    for i in range(k):
        for v in P.slab.vertices:
            n = P.vertex_name(*find((i, v)))
            if n not in seen:
                seen.add(n)
                order.append(n)
    cx = SimplicialComplex(tuple(order), _reduce_maximal(cells))
    check = is_flag(cx)
    return ShiftQuotient(k, cx, False, simplicial, check.ok, check.witness)


def min_flag_quotient_period(P: PeriodicComplex, slack: int = 64) -> int:
    """Smallest ``k`` such that vertices in one ``kZ``-orbit are at distance
    at least 4 in the infinite complex and the quotient is flag.

    Distances are computed exactly by breadth-first search in the infinite
    complex, so no window width has to be guessed.
    """
    close = P.self_distances(3)
    limit = max((abs(j) for j in close), default=0) + 1 + slack
    for k in range(1, limit + 1):
        if any(j % k == 0 for j in close):
            continue
        if quotient_by_shift(P, k).passes:
            return k
    raise PeriodicError("no flag quotient found; is the infinite complex flag?")


# -- constructions -------------------------------------------------------------

def _lift_action(action, cx, ends):
    """Extend an action on ``S`` to a cylinder whose ends are ``ends[i][v]``."""
    imgs = []
    for img in action.images:
        m = {}
        for end in ends:
            for v, w in end.items():
                m[w] = end[img[v]]
        imgs.append(m)
    return GroupComplexAction(action.group, cx, imgs)


def telescope(f: SimplicialMap, action: GroupComplexAction | None = None) -> PeriodicComplex:
    """Doubly infinite mapping telescope of a simplicial self-map.

    The slab is the mapping cylinder of ``f``; its domain end is the bottom
    and its codomain end the top.  With ``action`` the map must be
    equivariant and the action must keep the vertex order inside simplices.
    """
    S = f.domain
    if f.codomain is not S and f.codomain != S:
        raise PeriodicError("telescope needs a self-map")
    cyl = mapping_cylinder(f)
    sym = None
    if action is not None:
        if action.complex != S:
            raise PeriodicError("action must be on the domain of f")
        for g, img in zip(action.group.generators, action.images):
            if any(f(img[v]) != img[f(v)] for v in S.vertices):
                raise PeriodicError("map is not equivariant")
        if not action.preserves_order():
            raise PeriodicError("action does not preserve the vertex order inside simplices")
        sym = _lift_action(action, cyl.complex, [cyl.bottom, cyl.top])
    return PeriodicComplex(cyl.complex, S, dict(cyl.bottom), dict(cyl.top), sym)


def line_product_2skeleton(Z: SimplicialComplex | GroupComplexAction) -> PeriodicComplex:
    """2-skeleton of the staircase triangulation of ``R x Z``.

    ``Z`` may carry a group action (acting trivially on the line factor).
    """
    action = Z if isinstance(Z, GroupComplexAction) else None
    Zc = action.complex if action else Z
    if Zc.dimension > 2:
        raise PeriodicError("Z must have dimension at most 2")
    cyl = prism(Zc)
    slab = skeleton(cyl.complex, 2)
    sym = None
    if action is not None:
        if not action.preserves_order():
            raise PeriodicError("action does not preserve the vertex order inside simplices")
        sym = _lift_action(action, slab, [cyl.bottom, cyl.top])
    return PeriodicComplex(slab, Zc, dict(cyl.bottom), dict(cyl.top), sym)


def subdivide(P: PeriodicComplex) -> PeriodicComplex:
    """Barycentric subdivision of slab and interface; the result is flag."""
    slab = barycentric_subdivision(P.slab)
    iface = barycentric_subdivision(P.interface)

    def emb(e):
        return {barycenter_name(P.interface, s): barycenter_name(P.slab, [e[x] for x in s])
                for d in range(P.interface.dimension + 1) for s in P.interface.simplices(d)}

    sym = None
    if P.symmetry is not None:
        imgs = [{barycenter_name(P.slab, s): barycenter_name(P.slab, [img[v] for v in s])
                 for d in range(P.slab.dimension + 1) for s in P.slab.simplices(d)}
                for img in P.symmetry.images]
        sym = GroupComplexAction(P.symmetry.group, slab, imgs)
    return PeriodicComplex(slab, iface, emb(P.bottom), emb(P.top), sym)


def periodic_line(edges_per_slab: int = 1, shift: int | None = None) -> PeriodicComplex:
    """The real line as a path slab of ``edges_per_slab`` edges translated by
    ``shift`` edges (default: the whole slab, so slabs meet in a point)."""
    n = edges_per_slab
    shift = n if shift is None else shift
    if not 1 <= shift <= n:
        raise PeriodicError("shift must lie between 1 and the slab length")
    verts = [f"a{i}" for i in range(n + 1)]
    slab = SimplicialComplex(tuple(verts), frozenset(frozenset(verts[i:i + 2]) for i in range(n)))
    overlap = n - shift
    xs = [f"x{i}" for i in range(overlap + 1)]
    fams = [frozenset(xs[i:i + 2]) for i in range(overlap)] or [frozenset(xs)]
    iface = SimplicialComplex(tuple(xs), frozenset(fams))
    return PeriodicComplex(slab, iface, {x: verts[i] for i, x in enumerate(xs)},
                           {x: verts[i + shift] for i, x in enumerate(xs)})


def stage_inclusion_degree(P: PeriodicComplex, k: int = 0) -> int:
    """How ``window(0, k) -> window(0, k+1)`` acts on top interface homology.

    The interface must have top homology Z.  The class of the interface copy
    at the top of slab ``k`` is compared with the copy at the top of slab
    ``k+1`` inside ``window(0, k+1)``.
    """
    S = P.interface
    z = fundamental_cycle(S)
    names = P.window_map(0, k + 1)
    W = P.window(0, k + 1)
    here = push_chain(z, lambda x: names[(k, P.top[x])], W)
    there = push_chain(z, lambda x: names[(k + 1, P.top[x])], W)
    lam = homology_ratio(W, S.dimension, here, there)
    if lam.denominator != 1:
        raise PeriodicError(f"non-integral stage degree {lam}")
    return int(lam)


# -- degree-zero orbit arithmetic --------------------------------------------------

@dataclass(frozen=True)
class TelescopeRecipe:
    group_order: int
    multiplicities: tuple  # ((SubgroupRecord, count), ...)
    free_count: int

    @property
    def orbit_total(self):
        return sum(self.group_order // rec.order * m for rec, m in self.multiplicities)

    def degree(self):
        """Degree of the resulting equivariant map; zero by construction."""
        return 1 + self.orbit_total - self.free_count * self.group_order

    def by_index(self):
        out = {}
        for rec, m in self.multiplicities:
            idx = self.group_order // rec.order
            out[idx] = out.get(idx, 0) + m
        return dict(sorted(out.items()))


def degree_zero_recipe(Q: PermGroup) -> TelescopeRecipe | None:
    """Orbit multiplicities with ``|Q| n = 1 + sum m_P |Q:P|``, or None.

    Minimises ``n`` and then the number of orbits.  The search is exhaustive
    up to ``n = |Q| + 1``, beyond the Frobenius bound of the available orbit
    lengths, so None means no solution exists at all.
    """
    order = Q.order
    classes = [r for r in subgroup_classes(Q) if r.order < order]
    if not classes:
        return None
    coin_class = {}
    for rec in classes:
        coin_class.setdefault(order // rec.order, rec)
    coins = sorted(coin_class, reverse=True)
    n_max = order + 1
    top = order * n_max - 1
    inf = float("inf")
    best = [0] + [inf] * top
    pick = [0] * (top + 1)
    for t in range(1, top + 1):
        for c in coins:
            if c <= t and best[t - c] + 1 < best[t]:
                best[t] = best[t - c] + 1
                pick[t] = c
    for n in range(1, n_max + 1):
        t = order * n - 1
        if best[t] < inf:
            counts = {}
            while t:
                c = pick[t]
                counts[c] = counts.get(c, 0) + 1
                t -= c
            mult = tuple((coin_class[c], m) for c, m in sorted(counts.items()))
            return TelescopeRecipe(order, mult, n)
    return None
