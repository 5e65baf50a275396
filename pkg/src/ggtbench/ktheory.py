"""Rational group algebras of finite permutation groups and Hattori-Stallings
traces.  Arithmetic is exact throughout."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._limits import BoundExceeded
from .fingroups import PermGroup, SUBGROUP_ORDER_BOUND, mul, subgroup_classes
from .homology import rational_rank


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GroupAlgebraElement:
    group: PermGroup
    coefficients: dict   # perm tuple -> Fraction, zero entries dropped

    def __post_init__(self):
        clean = {}
        for g, c in self.coefficients.items():
            g = tuple(g)
            if g not in self.group:
                raise AlgebraError(f"{g} is not a group element")
            c = Fraction(c)
            if c:
                clean[g] = clean.get(g, 0) + c
        object.__setattr__(self, "coefficients", {g: c for g, c in clean.items() if c})

    def __eq__(self, other):
        return (isinstance(other, GroupAlgebraElement) and self.group is other.group
                and self.coefficients == other.coefficients)

    def __hash__(self):
        return hash(frozenset(self.coefficients.items()))

    def __add__(self, other):
        _same(self, other)
        out = dict(self.coefficients)
        for g, c in other.coefficients.items():
            out[g] = out.get(g, 0) + c
        return GroupAlgebraElement(self.group, out)

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraElement):
            return multiply(self, other)
        return GroupAlgebraElement(self.group, {g: c * other for g, c in self.coefficients.items()})

    __rmul__ = lambda self, k: self * k

    def __repr__(self):
        return f"GroupAlgebraElement({len(self.coefficients)} terms)"

    @classmethod
    def zero(cls, G):
        return cls(G, {})

    @classmethod
    def one(cls, G):
        return cls(G, {G.identity: 1})


def _same(a, b):
    if a.group is not b.group and a.group.elements != b.group.elements:
        raise AlgebraError("elements of different group algebras")


def multiply(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    _same(a, b)
    out: dict = {}
    for g, x in a.coefficients.items():
        for h, y in b.coefficients.items():
            k = mul(g, h)
            out[k] = out.get(k, 0) + x * y
    return GroupAlgebraElement(a.group, out)


def is_idempotent(a: GroupAlgebraElement) -> bool:
    return multiply(a, a) == a


@dataclass(frozen=True)
class ClassFunction:
    group: PermGroup
    values: tuple   # one Fraction per conjugacy class, identity class first

    def as_dict(self) -> dict:
        return {i: v for i, v in enumerate(self.values) if v}

    def __add__(self, other):
        return ClassFunction(self.group, tuple(x + y for x, y in zip(self.values, other.values)))

    def __sub__(self, other):
        return ClassFunction(self.group, tuple(x - y for x, y in zip(self.values, other.values)))


def _class_index(G):
    idx = {}
    for i, cls in enumerate(G.conjugacy_classes):
        for g in cls:
            idx[g] = i
    return idx


def hs_trace(M) -> ClassFunction:
    """Sum of the diagonal, with coefficients of conjugate elements added."""
    rows = [list(r) for r in M]
    if not rows or any(len(r) != len(rows) for r in rows):
        raise AlgebraError("trace needs a non-empty square matrix")
    G = rows[0][0].group
    idx = _class_index(G)
    vals = [Fraction(0)] * len(G.conjugacy_classes)
    for i in range(len(rows)):
        for g, c in rows[i][i].coefficients.items():
            vals[idx[g]] += c
    return ClassFunction(G, tuple(vals))


def matmul(A, B):
    n, m, k = len(A), len(B), len(B[0])
    if any(len(r) != m for r in A):
        raise AlgebraError("shape mismatch")
    G = A[0][0].group
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            acc = GroupAlgebraElement.zero(G)
            for t in range(m):
                acc = acc + multiply(A[i][t], B[t][j])
            row.append(acc)
        out.append(row)
    return out


def cyclic_idempotent(G: PermGroup, C) -> GroupAlgebraElement:
    """``(1/|C|) sum_{c in C} c`` for a cyclic subgroup ``C``."""
    gens = C.generators if hasattr(C, "generators") else tuple(C)
    for g in gens:
        if tuple(g) not in G:
            raise AlgebraError("C is not a subgroup of G")
    H = G.subgroup(gens)
    if not H.is_cyclic():
        raise AlgebraError("C is not cyclic")
    w = Fraction(1, H.order)
    return GroupAlgebraElement(G, {h: w for h in H.elements})


@dataclass(frozen=True)
class RankWitness:
    rank: int
    subgroups: tuple    # cyclic subgroup class representatives (SubgroupRecord)
    rows: tuple         # their trace rows

    @property
    def classes(self):
        return len(self.subgroups)


def k0_rank_lower_bound(G: PermGroup) -> RankWitness:
    """Rank of the trace rows of ``e_C`` over cyclic-subgroup class representatives."""
    if G.order > SUBGROUP_ORDER_BOUND:
        raise BoundExceeded(f"group order {G.order} exceeds {SUBGROUP_ORDER_BOUND}")
    cyc = [r for r in subgroup_classes(G) if r.cyclic]
    rows = tuple(hs_trace([[cyclic_idempotent(G, r.generators or [G.identity])]]).values
                 for r in cyc)
    return RankWitness(rational_rank([list(r) for r in rows]), tuple(cyc), rows)
