"""Finite permutation groups, their subgroups, and simplicial actions.

Permutations are tuples of images on ``{0..degree-1}``; products compose
right to left, ``(p*q)(i) = p[q[i]]``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from ._limits import BoundExceeded, max_elements
from .complexes import SimplicialComplex, barycenter_name, barycentric_subdivision, full_subcomplex

SUBGROUP_ORDER_BOUND = 120


def identity_perm(n):
    return tuple(range(n))


def mul(p, q):
    return tuple(p[i] for i in q)


def inverse(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def perm_order(p):
    e = identity_perm(len(p))
    k, x = 1, p
    while x != e:
        x = mul(p, x)
        k += 1
    return k


def _check_perm(p, n):
    if len(p) != n or sorted(p) != list(range(n)):
        raise ValueError(f"{p} is not a permutation of degree {n}")


def is_prime(p):
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


def is_prime_power(n):
    """True for 1 and for p**k."""
    if n == 1:
        return True
    for p in range(2, n + 1):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
    return False


class PermGroup:
    """Group generated by permutations of ``{0..degree-1}``."""

    def __init__(self, degree, generators=(), name=None, bound=None):
        self.degree = degree
        gens = []
        for g in generators:
            g = tuple(g)
            _check_perm(g, degree)
            gens.append(g)
        self.generators = tuple(gens)
        self.name = name
        self._bound = bound

    def __repr__(self):
        label = self.name or f"<{len(self.generators)} generators>"
        return f"PermGroup({label}, degree={self.degree})"

    @cached_property
    def elements(self) -> tuple:
        """All elements, identity first, in breadth-first order."""
        bound = self._bound or max_elements()
        e = identity_perm(self.degree)
        seen = {e}
        out = [e]
        queue = deque([e])
        while queue:
            x = queue.popleft()
            for s in self.generators:
                y = mul(s, x)
                if y not in seen:
                    seen.add(y)
                    out.append(y)
                    if len(out) > bound:
                        raise BoundExceeded(f"group closure exceeds {bound} elements")
                    queue.append(y)
        return tuple(out)

    @cached_property
    def index(self) -> dict:
        return {g: i for i, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self):
        return identity_perm(self.degree)

    def __contains__(self, p):
        return tuple(p) in self.index

    @cached_property
    def table(self):
        """Multiplication table on element indices."""
        idx = self.index
        els = self.elements
        return [[idx[mul(a, b)] for b in els] for a in els]

    @cached_property
    def inverse_index(self):
        return [self.index[inverse(g)] for g in self.elements]

    def subgroup(self, generators, name=None) -> "PermGroup":
        for g in generators:
            if tuple(g) not in self:
                raise ValueError(f"{g} is not an element of the group")
        return PermGroup(self.degree, generators, name=name, bound=self._bound)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(g in other for g in self.generators)

    def is_abelian(self):
        return all(mul(a, b) == mul(b, a) for a, b in combinations(self.generators, 2))

    def is_cyclic(self):
        n = self.order
        return any(perm_order(g) == n for g in self.elements)

    @cached_property
    def conjugacy_classes(self) -> tuple:
        """Element classes (as tuples of perms), identity class first."""
        remaining = list(self.elements)
        seen = set()
        classes = []
        for g in remaining:
            if g in seen:
                continue
            cls = {mul(mul(h, g), inverse(h)) for h in self.elements}
            seen |= cls
            classes.append(tuple(sorted(cls)))
        classes.sort(key=lambda c: (perm_order(c[0]), len(c), c[0]))
        return tuple(classes)


# -- subgroups -------------------------------------------------------------

def _closure_indices(G: PermGroup, seed):
    tab = G.table
    group = {0}
    frontier = list(group)
    gens = list(seed)
    while frontier:
        new = []
        for x in frontier:
            for s in gens:
                y = tab[s][x]
                if y not in group:
                    group.add(y)
                    new.append(y)
        frontier = new
    return frozenset(group)


def _element_order_index(G, i):
    return perm_order(G.elements[i])


@dataclass(frozen=True)
class SubgroupRecord:
    order: int
    cyclic: bool
    elements: frozenset
    generators: tuple
    class_size: int

    def group(self, parent: PermGroup) -> PermGroup:
        return parent.subgroup(self.generators)

    def is_normal(self):
        return self.class_size == 1

    def label(self):
        return f"{'C' if self.cyclic else 'H'}{self.order}"


def _check_order_bound(G):
    if G.order > SUBGROUP_ORDER_BOUND:
        raise BoundExceeded(f"subgroup enumeration limited to order {SUBGROUP_ORDER_BOUND}")


def all_subgroups(G: PermGroup) -> list:
    """Every subgroup as a frozenset of element indices.

    Built by cyclic extension: start from the cyclic subgroups and keep
    adjoining single elements until nothing new appears.
    """
    _check_order_bound(G)
    n = G.order
    found: dict = {}
    for i in range(n):
        found.setdefault(_closure_indices(G, [i]), (i,))
    frontier = list(found)
    while frontier:
        new = []
        for H in frontier:
            gens = found[H]
            for i in range(n):
                if i in H:
                    continue
                K = _closure_indices(G, gens + (i,))
                if K not in found:
                    found[K] = gens + (i,)
                    new.append(K)
        frontier = new
    return sorted(found, key=lambda H: (len(H), sorted(H)))


def _conjugate_set(G, H, g):
    tab, inv = G.table, G.inverse_index
    return frozenset(tab[tab[g][h]][inv[g]] for h in H)


def _small_generators(G, H):
    """A short generating set for ``H`` (greedy by element order)."""
    gens = []
    current = frozenset([0])
    for i in sorted(H, key=lambda i: (-_element_order_index(G, i), i)):
        if i not in current:
            gens.append(i)
            current = _closure_indices(G, gens)
            if current == H:
                break
    return gens


def subgroup_classes(G: PermGroup) -> list:
    """One representative per conjugacy class of subgroups, by order."""
    subs = all_subgroups(G)
    done = set()
    out = []
    for H in subs:
        if H in done:
            continue
        conj = {_conjugate_set(G, H, g) for g in range(G.order)}
        done |= conj
        rep = min(conj, key=lambda S: sorted(S))
        gens = _small_generators(G, rep)
        els = frozenset(G.elements[i] for i in rep)
        cyc = any(_element_order_index(G, i) == len(rep) for i in rep)
        out.append(SubgroupRecord(len(rep), cyc, els, tuple(G.elements[i] for i in gens), len(conj)))
    out.sort(key=lambda r: (r.order, not r.cyclic, sorted(r.elements)))
    return out


def normal_subgroups(G: PermGroup) -> list:
    return [r for r in subgroup_classes(G) if r.class_size == 1]


def is_prime_power_order(G: PermGroup) -> bool:
    return is_prime_power(G.order)


def _quotient_is_cyclic(G, big: frozenset, small: frozenset) -> bool:
    k = len(big) // len(small)
    for g in big:
        x, m = g, 1
        while x not in small:
            x = mul(g, x)
            m += 1
        if m == k:
            return True
    return False


def pcq_tower(G: PermGroup):
    """Normal ``P <= P'`` with P a p-group, P'/P cyclic, G/P' a q-group, or None."""
    normals = normal_subgroups(G)
    n = G.order
    for P in normals:
        if not is_prime_power(P.order):
            continue
        for Pp in normals:
            if not (P.elements <= Pp.elements and is_prime_power(n // Pp.order)):
                continue
            if _quotient_is_cyclic(G, Pp.elements, P.elements):
                return P, Pp
    return None


def has_pcq_tower(G: PermGroup) -> bool:
    return pcq_tower(G) is not None


def cyclic_by_p_tower(G: PermGroup):
    """A normal cyclic subgroup with prime-power-order quotient, or None."""
    for C in normal_subgroups(G):
        if C.cyclic and is_prime_power(G.order // C.order):
            return C
    return None


def has_cyclic_by_p_tower(G: PermGroup) -> bool:
    return cyclic_by_p_tower(G) is not None


# -- actions on complexes ----------------------------------------------------

class ActionError(ValueError):
    pass


class GroupComplexAction:
    """A permutation group acting on a complex by simplicial automorphisms.

    ``images[i]`` is the vertex bijection assigned to ``group.generators[i]``.
    """

    def __init__(self, group: PermGroup, complex: SimplicialComplex, images):
        images = [dict(m) for m in images]
        if len(images) != len(group.generators):
            raise ActionError("need one vertex map per group generator")
        verts = set(complex.vertices)
        for m in images:
            if set(m) != verts or set(m.values()) != verts:
                raise ActionError("generator image is not a bijection of the vertices")
            for s in complex.maximal_simplices:
                if frozenset(m[v] for v in s) not in complex.maximal_simplices:
                    raise ActionError(f"generator image does not preserve simplex {sorted(s)}")
        self.group = group
        self.complex = complex
        self.images = tuple(images)
        self._element_maps()

    def _element_maps(self):
        verts = self.complex.vertices
        pos = self.complex.order
        gens = [tuple(pos[m[v]] for v in verts) for m in self.images]
        e = self.group.identity
        phi = {e: identity_perm(len(verts))}
        queue = deque([e])
        while queue:
            x = queue.popleft()
            for s, ps in zip(self.group.generators, gens):
                y = mul(s, x)
                py = mul(ps, phi[x])
                if y in phi:
                    if phi[y] != py:
                        raise ActionError("vertex maps do not respect the group relations")
                else:
                    phi[y] = py
                    queue.append(y)
        self._phi = phi

    def vertex_map(self, g) -> dict:
        p = self._phi[tuple(g)]
        verts = self.complex.vertices
        return {v: verts[p[i]] for i, v in enumerate(verts)}

    def act(self, g, simplex) -> frozenset:
        p = self._phi[tuple(g)]
        verts, pos = self.complex.vertices, self.complex.order
        return frozenset(verts[p[pos[v]]] for v in simplex)

    def is_invariant(self, simplex, subgroup_gens) -> bool:
        s = frozenset(simplex)
        return all(self.act(h, s) == s for h in subgroup_gens)

    def preserves_order(self) -> bool:
        """Every element keeps the vertex order inside each simplex."""
        pos = self.complex.order
        for g in self.group.elements:
            p = self._phi[g]
            for m in self.complex.maximal_simplices:
                img = [p[pos[v]] for v in self.complex.sort(m)]
                if img != sorted(img):
                    return False
        return True


def _as_generators(action, H):
    if H is None:
        return action.group.generators
    if isinstance(H, PermGroup):
        gens = H.generators
    elif isinstance(H, SubgroupRecord):
        gens = H.generators
    else:
        gens = tuple(tuple(h) for h in H)
    for h in gens:
        if h not in action.group:
            raise ActionError(f"{h} is not an element of the acting group")
    return gens


def invariant_simplices(action: GroupComplexAction, H=None) -> list:
    """Simplices setwise fixed by the subgroup ``H`` (default: whole group)."""
    gens = _as_generators(action, H)
    K = action.complex
    return [s for d in range(K.dimension + 1) for s in K.simplices(d)
            if action.is_invariant(s, gens)]


def fixed_subcomplex(action: GroupComplexAction, H=None) -> SimplicialComplex:
    """Combinatorial model of ``L^H``: the full subcomplex of the barycentric
    subdivision spanned by barycentres of H-invariant simplices."""
    K = action.complex
    inv = invariant_simplices(action, H)
    sd = barycentric_subdivision(K)
    return full_subcomplex(sd, [barycenter_name(K, s) for s in inv])


def min_invariant_dimension(action: GroupComplexAction, H=None):
    inv = invariant_simplices(action, H)
    return min((len(s) - 1 for s in inv), default=None)


@dataclass(frozen=True)
class SimplexOrbit:
    dim: int
    representative: tuple
    size: int
    stabilizer: frozenset

    @property
    def is_free(self):
        return len(self.stabilizer) == 1


def simplex_orbits(action: GroupComplexAction) -> list:
    K = action.complex
    G = action.group
    out = []
    for d in range(K.dimension + 1):
        seen = set()
        for s in K.simplices(d):
            fs = frozenset(s)
            if fs in seen:
                continue
            orbit = set()
            stab = []
            for g in G.elements:
                img = action.act(g, fs)
                orbit.add(img)
                if img == fs:
                    stab.append(g)
            seen |= orbit
            out.append(SimplexOrbit(d, s, len(orbit), frozenset(stab)))
    return out


# -- SL_n(F_p) ----------------------------------------------------------------

@dataclass(frozen=True)
class FpMatrixGroup:
    n: int
    p: int
    generators: tuple

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        for m in self.generators:
            if len(m) != self.n or any(len(r) != self.n for r in m):
                raise ValueError("generator has the wrong shape")
            if det_mod_p(m, self.p) != 1:
                raise ValueError("generator does not have determinant 1")

    @cached_property
    def vectors(self):
        from itertools import product
        return [v for v in product(range(self.p), repeat=self.n) if any(v)]

    def as_perm_group(self, generators=None, bound=None) -> PermGroup:
        """Permutation group of the action on nonzero column vectors."""
        gens = self.generators if generators is None else generators
        vecs = self.vectors
        pos = {v: i for i, v in enumerate(vecs)}
        perms = [tuple(pos[matvec(m, v, self.p)] for v in vecs) for m in gens]
        return PermGroup(len(vecs), perms, name=f"SL({self.n},{self.p})", bound=bound)


def matvec(m, v, p):
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) % p for i in range(len(m)))


def det_mod_p(m, p):
    a = [[x % p for x in row] for row in m]
    n = len(a)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c] % p
        inv = pow(a[c][c], -1, p)
        for r in range(c + 1, n):
            f = a[r][c] * inv % p
            if f:
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[c])]
    return det % p


def sl_tau_generators(n, p) -> FpMatrixGroup:
    """The cyclically symmetric generators: tau_i fixes e_j (j != i) and sends
    e_i to e_i + e_{i+1}, indices mod n.  Matrices act on column vectors."""
    if n < 2:
        raise ValueError("need n >= 2")
    gens = []
    for i in range(n):
        m = [[int(r == c) for c in range(n)] for r in range(n)]
        m[(i + 1) % n][i] = (m[(i + 1) % n][i] + 1) % p
        gens.append(tuple(tuple(r) for r in m))
    return FpMatrixGroup(n, p, tuple(gens))


def sl_order(n, p):
    out = 1
    for k in range(n):
        out *= p ** n - p ** k
    return out // (p - 1)


def matrix_group_order(g: FpMatrixGroup, generators=None) -> int:
    return g.as_perm_group(generators).order


# -- catalogue ------------------------------------------------------------------

def cyclic(n) -> PermGroup:
    if n == 1:
        return PermGroup(1, [], name="C1")
    return PermGroup(n, [tuple((i + 1) % n for i in range(n))], name=f"C{n}")


def trivial() -> PermGroup:
    return PermGroup(1, [], name="1")


def dihedral(n) -> PermGroup:
    """Symmetries of the n-gon (order 2n)."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return PermGroup(n, [rot, ref], name=f"D{n}")


def symmetric(n) -> PermGroup:
    if n == 1:
        return PermGroup(1, [], name="S1")
    if n == 2:
        return PermGroup(2, [(1, 0)], name="S2")
    cyc = tuple((i + 1) % n for i in range(n))
    tr = (1, 0) + tuple(range(2, n))
    return PermGroup(n, [tr, cyc], name=f"S{n}")


def alternating(n) -> PermGroup:
    gens = []
    for i in range(2, n):
        p = list(range(n))
        p[0], p[1], p[i] = p[1], p[i], p[0]
        gens.append(tuple(p))
    return PermGroup(n, gens, name=f"A{n}")


def quaternion() -> PermGroup:
    """Q8 in its regular representation."""
    # elements 1,-1,i,-i,j,-j,k,-k as 0..7; left multiplication by i and j
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    table = {
        ("i", "1"): "i", ("i", "i"): "-1", ("i", "j"): "k", ("i", "k"): "-j",
        ("j", "1"): "j", ("j", "i"): "-k", ("j", "j"): "-1", ("j", "k"): "i",
    }

    def left(a, b):
        sign = -1 if b.startswith("-") else 1
        base = b.lstrip("-")
        r = table[(a, base)]
        if sign < 0:
            r = r[1:] if r.startswith("-") else "-" + r
        return r

    gi = tuple(names.index(left("i", b)) for b in names)
    gj = tuple(names.index(left("j", b)) for b in names)
    return PermGroup(8, [gi, gj], name="Q8")


def direct_product(G: PermGroup, H: PermGroup, name=None) -> PermGroup:
    n, m = G.degree, H.degree
    gens = [g + tuple(range(n, n + m)) for g in G.generators]
    gens += [tuple(range(n)) + tuple(x + n for x in h) for h in H.generators]
    return PermGroup(n + m, gens, name=name or f"{G.name}x{H.name}")


def klein_four() -> PermGroup:
    return direct_product(cyclic(2), cyclic(2), name="C2xC2")


CATALOG = {
    **{f"C{n}": (lambda n=n: cyclic(n)) for n in range(1, 13)},
    **{f"D{n}": (lambda n=n: dihedral(n)) for n in range(3, 7)},
    "S3": lambda: symmetric(3),
    "S4": lambda: symmetric(4),
    "S5": lambda: symmetric(5),
    "A4": lambda: alternating(4),
    "A5": lambda: alternating(5),
    "Q8": quaternion,
    "C2xC2": klein_four,
    "1": trivial,
}


def named_group(name: str) -> PermGroup:
    try:
        return CATALOG[name]()
    except KeyError:
        raise ValueError(f"unknown group {name!r}; known: {', '.join(sorted(CATALOG))}")
