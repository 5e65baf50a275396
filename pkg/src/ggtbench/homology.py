"""Exact simplicial homology.

Boundary matrices are sparse integer matrices with rows indexed by
``(k-1)``-simplices and columns by ``k``-simplices, both in lexicographic
vertex order.  Integral homology uses Smith normal form; field coefficients
use exact Gaussian elimination (``Fraction`` for Q, residues for F_p).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .complexes import SimplicialComplex, SimplicialMap


# -- sparse integer matrices --------------------------------------------------

@dataclass
class IntegerMatrix:
    rows: int
    cols: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        for (r, c), v in list(self.entries.items()):
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            if v == 0:
                del self.entries[(r, c)]

    @classmethod
    def from_dense(cls, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols,
                   {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v})

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def transpose(self):
        return IntegerMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def row_dicts(self):
        rows: dict = {}
        for (r, c), v in self.entries.items():
            rows.setdefault(r, {})[c] = v
        return rows


def _invariant_chain(diag):
    """Turn a list of nonzero diagonal entries into a divisibility chain."""
    d = [abs(x) for x in diag]
    n = len(d)
    for i in range(n):
        for j in range(i + 1, n):
            g = gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] * d[j] // g
    return d


def smith_normal_form(M: IntegerMatrix) -> tuple:
    """Nonzero invariant factors ``d_1 | d_2 | ...`` of an integer matrix.

    Pivots are always a smallest-magnitude entry, preferring sparse rows and
    columns.  Arithmetic is exact.
    """
    rows = {r: dict(d) for r, d in M.row_dicts().items()}
    cols: dict = {}
    for r, d in rows.items():
        for c in d:
            cols.setdefault(c, set()).add(r)

    def set_entry(r, c, v):
        if v:
            rows.setdefault(r, {})[c] = v
            cols.setdefault(c, set()).add(r)
        else:
            rows[r].pop(c, None)
            if not rows[r]:
                del rows[r]
            cols[c].discard(r)
            if not cols[c]:
                del cols[c]

    def add_row(dst, src, q):
        # row_dst -= q * row_src
        for c, v in list(rows[src].items()):
            set_entry(dst, c, rows.get(dst, {}).get(c, 0) - q * v)

    def add_col(dst, src, q):
        # col_dst -= q * col_src
        for r in list(cols[src]):
            v = rows[r][src]
            set_entry(r, dst, rows.get(r, {}).get(dst, 0) - q * v)

    def choose_global():
        best = None
        for r, d in rows.items():
            for c, v in d.items():
                key = (abs(v), (len(d) - 1) * (len(cols[c]) - 1))
                if best is None or key < best[0]:
                    best = (key, r, c)
                    if key == (1, 0):
                        return r, c
        return best[1], best[2]

    diag = []
    while rows:
        r, c = choose_global()
        while True:
            a = rows[r][c]
            for i in [i for i in cols[c] if i != r]:
                add_row(i, r, rows[i][c] // a)
            for j in [j for j in rows[r] if j != c]:
                add_col(j, c, rows[r][j] // a)
            # remainders smaller than |a| may be left in row r / column c
            rest = [(abs(rows[i][c]), i, c) for i in cols[c] if i != r]
            rest += [(abs(rows[r][j]), r, j) for j in rows[r] if j != c]
            if not rest:
                break
            _, r, c = min(rest)
        diag.append(rows[r][c])
        set_entry(r, c, 0)
    return tuple(_invariant_chain(diag))


# -- field ranks ----------------------------------------------------------------

def _rank_over_field(row_dicts, p=None):
    """Rank of a sparse matrix over Q (``p=None``) or F_p."""
    if p is None:
        work = [{c: Fraction(v) for c, v in r.items() if v} for r in row_dicts]
    else:
        work = [{c: v % p for c, v in r.items() if v % p} for r in row_dicts]
    pivots: dict = {}
    rank = 0
    for row in work:
        while row:
            c = min(row)
            if c not in pivots:
                v = row[c]
                if p is None:
                    row = {k: x / v for k, x in row.items()}
                else:
                    inv = pow(v, -1, p)
                    row = {k: x * inv % p for k, x in row.items()}
                pivots[c] = row
                rank += 1
                break
            prow = pivots[c]
            f = row[c]
            for k, x in prow.items():
                nv = row.get(k, 0) - f * x
                if p is not None:
                    nv %= p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return rank


def rational_rank(rows) -> int:
    """Exact rank over Q of a dense list-of-rows matrix."""
    return _rank_over_field([{j: Fraction(v) for j, v in enumerate(r) if v} for r in rows])


def rank(M: IntegerMatrix, p=None) -> int:
    return _rank_over_field(list(M.row_dicts().values()), p)


def _is_prime(p):
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


# -- chain complexes --------------------------------------------------------

def _index(K: SimplicialComplex, dim):
    return {frozenset(s): i for i, s in enumerate(K.simplices(dim))}


def boundary_matrix(K: SimplicialComplex, dim: int) -> IntegerMatrix:
    """Matrix of the boundary map C_dim -> C_{dim-1}."""
    cols = K.simplices(dim)
    if dim <= 0:
        return IntegerMatrix(0, len(cols))
    rows = _index(K, dim - 1)
    entries = {}
    for j, s in enumerate(cols):
        for i in range(len(s)):
            face = frozenset(s[:i] + s[i + 1:])
            entries[(rows[face], j)] = -1 if i % 2 else 1
    return IntegerMatrix(len(rows), len(cols), entries)


def parse_ring(ring) -> tuple:
    """Normalise a coefficient tag to ``("Z", 0)``, ``("Q", 0)`` or ``("F", p)``."""
    if isinstance(ring, int):
        if not _is_prime(ring):
            raise ValueError(f"{ring} is not prime")
        return ("F", ring)
    tag = str(ring).strip().upper()
    if tag in ("Z", "ZZ"):
        return ("Z", 0)
    if tag in ("Q", "QQ"):
        return ("Q", 0)
    if tag.startswith("F") or tag.startswith("GF"):
        p = int(tag.lstrip("GF"))
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        return ("F", p)
    raise ValueError(f"unknown coefficient ring {ring!r}")


def ring_label(ring) -> str:
    kind, p = parse_ring(ring)
    return f"F{p}" if kind == "F" else kind


@dataclass(frozen=True)
class HomologyProfile:
    ring: str
    ranks: tuple
    torsion: tuple = ()

    def betti(self, dim):
        return self.ranks[dim] if 0 <= dim < len(self.ranks) else 0

    def torsion_in(self, dim):
        return self.torsion[dim] if 0 <= dim < len(self.torsion) else ()

    def reduced_ranks(self):
        if not self.ranks:
            return ()
        return (self.ranks[0] - 1,) + self.ranks[1:]

    def describe(self):
        parts = []
        for d, r in enumerate(self.ranks):
            tors = self.torsion_in(d)
            if self.ring == "Z":
                pieces = (["Z^%d" % r] if r > 1 else ["Z"] if r else []) + [f"Z/{t}" for t in tors]
            else:
                pieces = [f"{self.ring}^{r}"] if r else []
            parts.append(f"H{d}=" + (" + ".join(pieces) if pieces else "0"))
        return ", ".join(parts) if parts else "empty"


def homology(K: SimplicialComplex, ring="Z") -> HomologyProfile:
    kind, p = parse_ring(ring)
    top = K.dimension
    if top < 0:
        return HomologyProfile(ring_label(ring), ())
    sizes = [len(K.simplices(d)) for d in range(top + 1)]
    if kind == "Z":
        snf = [()] + [smith_normal_form(boundary_matrix(K, d)) for d in range(1, top + 1)] + [()]
        ranks = [len(x) for x in snf]
        torsion = tuple(tuple(t for t in snf[d + 1] if t > 1) for d in range(top + 1))
    else:
        ranks = [0] + [rank(boundary_matrix(K, d), p if kind == "F" else None)
                       for d in range(1, top + 1)] + [0]
        torsion = ()
    betti = tuple(sizes[d] - ranks[d] - ranks[d + 1] for d in range(top + 1))
    return HomologyProfile(ring_label(ring), betti, torsion if kind == "Z" else ())


def is_acyclic(K: SimplicialComplex, ring="Z") -> bool:
    """Reduced homology vanishes (the empty complex is not acyclic)."""
    h = homology(K, ring)
    if not h.ranks:
        return False
    return all(r == 0 for r in h.reduced_ranks()) and not any(h.torsion)


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** d * n for d, n in enumerate(K.f_vector))


# -- chains, cycles and degrees ---------------------------------------------

def _sort_sign(seq, key):
    """Sign of the permutation sorting ``seq``; 0 if ``seq`` has repeats."""
    idx = [key(x) for x in seq]
    if len(set(idx)) != len(idx):
        return 0
    sign = 1
    idx = list(idx)
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign


def push_chain(chain: dict, vertex_map, target: SimplicialComplex) -> dict:
    """Image of a simplicial chain under a vertex map, in ``target``'s orientation.

    ``chain`` maps ordered simplex tuples to integer coefficients; degenerate
    images vanish.
    """
    out: dict = {}
    for s, coef in chain.items():
        img = [vertex_map(v) for v in s]
        sign = _sort_sign(img, target.order.__getitem__)
        if not sign:
            continue
        t = target.sort(img)
        out[t] = out.get(t, 0) + sign * coef
        if not out[t]:
            del out[t]
    return out


def _kernel_basis(M: IntegerMatrix):
    """Basis of the rational null space of ``M`` (column vectors)."""
    pivots: dict = {}
    rows = [{c: Fraction(v) for c, v in r.items()} for r in M.row_dicts().values()]
    # reduced row echelon form
    echelon = []
    for row in rows:
        for c, prow in pivots.items():
            if c in row:
                f = row[c]
                for k, x in prow.items():
                    nv = row.get(k, 0) - f * x
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        if not row:
            continue
        c = min(row)
        v = row[c]
        row = {k: x / v for k, x in row.items()}
        for pc, prow in pivots.items():
            if c in prow:
                f = prow[c]
                for k, x in row.items():
                    nv = prow.get(k, 0) - f * x
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        pivots[c] = row
        echelon.append(c)
    free = [j for j in range(M.cols) if j not in pivots]
    basis = []
    for fcol in free:
        vec = {fcol: Fraction(1)}
        for c, prow in pivots.items():
            if fcol in prow:
                vec[c] = -prow[fcol]
        basis.append(vec)
    return basis


def _primitive(vec: dict) -> dict:
    den = 1
    for x in vec.values():
        den = den * x.denominator // gcd(den, x.denominator)
    ints = {k: int(x * den) for k, x in vec.items() if x}
    g = 0
    for x in ints.values():
        g = gcd(g, x)
    first = min(ints)
    if ints[first] < 0:
        g = -g
    return {k: x // g for k, x in ints.items()}


class DegreeError(ValueError):
    pass


def fundamental_cycle(K: SimplicialComplex) -> dict:
    """Generator of the top homology ``H_d(K; Z)`` when it is infinite cyclic.

    Returned as ``{simplex tuple: coefficient}``, normalised so the first
    nonzero coefficient (lexicographic order) is positive.
    """
    d = K.dimension
    if d < 1:
        raise DegreeError("need a complex of dimension >= 1")
    basis = _kernel_basis(boundary_matrix(K, d))
    if len(basis) != 1:
        raise DegreeError(f"top homology has rank {len(basis)}, expected 1")
    cols = K.simplices(d)
    return {cols[j]: c for j, c in _primitive(basis[0]).items()}


def induced_degree(f: SimplicialMap) -> int:
    """Integer by which ``f`` acts on top homology (lexicographic orientations)."""
    if f.domain.dimension != f.codomain.dimension:
        raise DegreeError("domain and codomain dimensions differ")
    z_dom = fundamental_cycle(f.domain)
    z_cod = fundamental_cycle(f.codomain)
    img = push_chain(z_dom, f, f.codomain)
    if not img:
        return 0
    s, c = next(iter(z_cod.items()))
    lam = Fraction(img.get(s, 0), c)
    if lam.denominator != 1 or any(img.get(t, 0) != lam * v for t, v in z_cod.items()) \
            or set(img) - set(z_cod):
        raise DegreeError("image of the fundamental cycle is not a multiple of the generator")
    return int(lam)


def homology_ratio(K: SimplicialComplex, dim: int, z: dict, ref: dict) -> Fraction:
    """The rational ``lam`` with ``[z] = lam [ref]`` in ``H_dim(K; Q)``.

    Requires ``H_dim(K; Q)`` one-dimensional and ``[ref]`` nonzero.
    """
    h = homology(K, "Q")
    if h.betti(dim) != 1:
        raise DegreeError(f"H_{dim} has rank {h.betti(dim)}, expected 1")
    # cocycles: functionals killing the image of the next boundary map
    cocycles = _kernel_basis(boundary_matrix(K, dim + 1).transpose())
    idx = _index(K, dim)

    def pair(phi, chain):
        return sum(phi.get(idx[frozenset(s)], 0) * c for s, c in chain.items())

    for phi in cocycles:
        r = pair(phi, ref)
        if r:
            return Fraction(pair(phi, z)) / r
    raise DegreeError("reference chain is null-homologous")
