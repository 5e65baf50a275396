"""The fourteen acceptance checks, shared by the test suite and the CLI.

Each check returns a :class:`Result`; ``detail`` says what was compared.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from . import fixtures as fx
from .classify import BOUND, INFINITE, SINGLE, conjugacy_report
from .complexes import SimplicialMap, barycentric_subdivision, is_flag, simplex
from .cubes import double, glued_link, npc_certificate
from .fingroups import (has_cyclic_by_p_tower, has_pcq_tower, inverse, is_prime_power, mul, named_group,
                        simplex_orbits, sl_tau_generators)
from .homology import IntegerMatrix, homology, induced_degree, smith_normal_form
from .ktheory import k0_rank_lower_bound
from .periodic import (degree_zero_recipe, min_flag_quotient_period, periodic_line,
                       quotient_by_shift, stage_inclusion_degree, telescope)
from .raag import (ascending_link, count_homs, descending_link, hnn_presentation,
                   level_census, raag_presentation, vertex_link_XL)


@dataclass(frozen=True)
class Result:
    number: int
    title: str
    ok: bool
    detail: str
    seconds: float = 0.0

    def line(self):
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.number:2d}. {self.title}: {self.detail}"


def _det(rows):
    """Exact determinant by fraction elimination."""
    a = [[Fraction(x) for x in r] for r in rows]
    n, det = len(a), Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return int(det)


def determinantal_divisors(rows):
    """``d_k`` = gcd of all k x k minors, until it vanishes."""
    m, n = len(rows), len(rows[0])
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for R in combinations(range(m), k):
            for C in combinations(range(n), k):
                g = gcd(g, _det([[rows[i][j] for j in C] for i in R]))
        if g == 0:
            break
        out.append(g)
    return out


def flag_fixtures():
    out = [fx.named_complex(n) for n in sorted(fx.COMPLEXES)]
    out += [fx.cycle(3), fx.cycle(7), fx.path(5), fx.points(3), fx.boundary_simplex(2)]
    return out[:22]


def census_fixtures():
    return {"point": simplex(["a"]), "edge": simplex(["a", "b"]), "triangle": simplex(["a", "b", "c"]),
            "hexagon": fx.cycle(6), "sd-triangle": barycentric_subdivision(simplex(["a", "b", "c"]))}


def check_1():
    hollow = fx.hollow_triangle()
    w = is_flag(hollow)
    ok = (not w.ok) and w.witness == ("a", "b", "c")
    fixtures = flag_fixtures()[:20]
    bad = [K for K in fixtures if not is_flag(barycentric_subdivision(K))]
    return ok and not bad and len(fixtures) == 20, \
        f"hollow triangle witness {w.witness}; {20 - len(bad)}/20 subdivisions flag"


def sphere_expected(n, ring):
    """Homology of the boundary of the n-simplex (an (n-1)-sphere)."""
    if n == 1:
        return (2,)
    ranks = [0] * n
    ranks[0] += 1
    ranks[n - 1] += 1
    return tuple(ranks)


def check_2(samples=500, seed=1):
    bad = []
    for n in range(1, 6):
        K = fx.boundary_simplex(n)
        for ring in ("Z", "Q", "F2", "F3"):
            h = homology(K, ring)
            if tuple(h.ranks) != sphere_expected(n, ring) or any(h.torsion):
                bad.append((n, ring))
    rp2 = fx.projective_plane()
    q, f2, z = homology(rp2, "Q"), homology(rp2, "F2"), homology(rp2, "Z")
    rp_ok = (tuple(q.ranks) == (1, 0, 0) and tuple(f2.ranks) == (1, 1, 1)
             and z.torsion_in(1) == (2,) and z.betti(2) == 0)
    rng = random.Random(seed)
    snf_bad = 0
    for _ in range(samples):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        rows = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
        inv = smith_normal_form(IntegerMatrix.from_dense(rows))
        chain_ok = all(inv[i + 1] % inv[i] == 0 for i in range(len(inv) - 1)) and all(x > 0 for x in inv)
        dd = determinantal_divisors(rows)
        prods, acc = [], 1
        for x in inv:
            acc *= x
            prods.append(acc)
        if not chain_ok or prods != dd:
            snf_bad += 1
    ok = not bad and rp_ok and snf_bad == 0
    return ok, (f"spheres n<=5 over Z,Q,F2,F3 {'ok' if not bad else bad}; "
                f"RP2 Q{tuple(q.ranks)} F2{tuple(f2.ranks)}; SNF {samples - snf_bad}/{samples}")


def check_3():
    bad = []
    for name, L in census_fixtures().items():
        a = level_census(L)
        b = level_census(L, c=Fraction(3, 2))
        ok = all(a.level_cells[n - 1] == n * a.cube_orbits[n] for n in range(1, len(a.cube_orbits)))
        ok = ok and a.cube_orbits == b.cube_orbits and a.level_cells == b.level_cells
        ok = ok and a.cube_orbits[1:] == tuple(len(L.simplices(d)) for d in range(L.dimension + 1))
        if not ok:
            bad.append(name)
    return not bad, f"{5 - len(bad)}/5 fixtures satisfy levelCells(n-1) = n*cubeOrbits(n)"


def _isomorphic_by_strip(sub, L, suffix):
    return sub.relabel({v: v[:-len(suffix)] for v in sub.vertices}).same_simplices(L)


def check_4():
    bad = []
    for name, L in census_fixtures().items():
        link = vertex_link_XL(L)
        if not link.same_simplices(double(L)):
            bad.append((name, "double"))
        if not _isomorphic_by_strip(ascending_link(L), L, "'"):
            bad.append((name, "ascending"))
        if not _isomorphic_by_strip(descending_link(L), L, "''"):
            bad.append((name, "descending"))
    fv = double(simplex(["a", "b", "c"])).f_vector
    oct_ok = fv == (6, 12, 8) and double(simplex(["a", "b", "c"])).relabel(
        {"a'": "x+", "a''": "x-", "b'": "y+", "b''": "y-", "c'": "z+", "c''": "z-"}
    ).same_simplices(fx.octahedron())
    return not bad and oct_ok, f"links {'match' if not bad else bad}; double(triangle) f-vector {fv}"


RECIPE_CATALOG = ["C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12",
                  "D4", "D5", "D6", "Q8", "C2xC2", "S3", "A4", "S4"]


def check_5():
    bad = []
    for name in RECIPE_CATALOG:
        G = named_group(name)
        r = degree_zero_recipe(G)
        pp = is_prime_power(G.order)
        if pp != (r is None):
            bad.append(name)
        elif r is not None:
            lhs = G.order * r.free_count
            rhs = 1 + sum(G.order // rec.order * m for rec, m in r.multiplicities)
            if lhs != rhs or r.degree() != 0 or any(rec.order >= G.order for rec, _ in r.multiplicities):
                bad.append(name)
    return not bad, f"{len(RECIPE_CATALOG) - len(bad)}/{len(RECIPE_CATALOG)} groups: INFEASIBLE iff prime power"


def degree_maps():
    S = fx.boundary_simplex(3)
    ident = SimplicialMap.identity(S)
    swap = SimplicialMap(S, S, {"v0": "v1", "v1": "v0", "v2": "v2", "v3": "v3"})
    const = SimplicialMap(S, S, {v: "v0" for v in S.vertices})
    return {"identity": ident, "swap": swap, "constant": const}


def check_6():
    seen = {}
    ok = True
    for name, f in degree_maps().items():
        deg = induced_degree(f)
        P = telescope(f)
        stages = [stage_inclusion_degree(P, k) for k in range(3)]
        seen[name] = (deg, stages[0])
        ok = ok and all(s == deg for s in stages)
    ok = ok and sorted(d for d, _ in seen.values()) == [-1, 0, 1]
    return ok, ", ".join(f"{k}: deg {d}, stage {s}" for k, (d, s) in seen.items())


PRIME_POWER_FIXTURES = ["C2", "C3", "C4", "C5", "C7", "C8", "C9", "C11", "D4", "Q8", "C2xC2"]


def check_7():
    pcq = {n: has_pcq_tower(named_group(n)) for n in ["S3", "S4", "A5"] + PRIME_POWER_FIXTURES}
    cbp = has_cyclic_by_p_tower(named_group("A4"))
    ok = pcq["S3"] and pcq["S4"] and not pcq["A5"] and all(pcq[n] for n in PRIME_POWER_FIXTURES) and not cbp
    return ok, f"pcq S3={pcq['S3']} S4={pcq['S4']} A5={pcq['A5']}; cyclic-by-p A4={cbp}"


def check_8():
    def verdict(action, order):
        rep = conjugacy_report(action)
        return [e for e in rep.entries if e.order == order][0]

    a = verdict(fx.hexagon_rotation(), 3)
    b = verdict(fx.edge_swap(), 2)
    c = verdict(fx.hexagon_reflection(), 2)
    ok = a.verdict == INFINITE and (b.verdict, b.bound) == (BOUND, 2) and c.verdict == SINGLE
    return ok, f"hexagon/C3 {a.describe()}; edge/C2 {b.describe()}; hexagon/C2 {c.describe()}"


SMALL_TARGETS = ["1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "S3", "D4", "Q8", "C2xC2"]


def check_9():
    one = hnn_presentation(periodic_line(1))
    two = hnn_presentation(periodic_line(2, shift=1))
    diffs = []
    for name in SMALL_TARGETS:
        T = named_group(name)
        a, b = count_homs(one, T), count_homs(two, T)
        if a != b:
            diffs.append((name, a, b))
    z2 = count_homs(raag_presentation(simplex(["a", "b"])), named_group("S3"))
    return not diffs and z2 == 18, \
        f"{len(SMALL_TARGETS) - len(diffs)}/{len(SMALL_TARGETS)} targets agree; Hom(Z^2, S3) = {z2}"


def gluing_fixtures():
    tri = simplex(["a", "b", "c"])
    sd = barycentric_subdivision(tri)
    return [
        (simplex(["a", "b"]), ["a"], ["b"], {"a": "b"}),
        (simplex(["a"]), ["a"], ["a"], {"a": "a"}),
        (tri, [], [], {}),
        (fx.path(3), ["0"], ["3"], {"0": "3"}),
        (fx.path(3), ["0", "1"], ["2", "3"], {"0": "2", "1": "3"}),
        (fx.cycle(6), ["0"], ["3"], {"0": "3"}),
        (fx.cycle(6), ["0", "1"], ["3", "4"], {"0": "3", "1": "4"}),
        (fx.cycle(4), ["0"], ["2"], {"0": "2"}),
        (sd, ["[a]"], ["[b]"], {"[a]": "[b]"}),
        (fx.octahedron(), ["x+", "y+"], ["x-", "y-"], {"x+": "x-", "y+": "y-"}),
        (fx.full_simplex(3), ["v0", "v1"], ["v2", "v3"], {"v0": "v2", "v1": "v3"}),
    ]


def check_10():
    fixtures = gluing_fixtures()[:10]
    passed = sum(bool(npc_certificate(glued_link(*f))) for f in fixtures)
    # a glued link over a non-flag base: the doubled hollow triangle
    planted = npc_certificate(glued_link(fx.hollow_triangle(), ["a"], ["b"], {"a": "b"}))
    ok = passed == 10 and not planted.ok and planted.witness == ("a'", "b'", "c'")
    return ok, f"{passed}/10 glued links flag; planted link witness {planted.witness}"


def check_11():
    L = periodic_line(1)
    k = min_flag_quotient_period(L)
    q3, q4 = quotient_by_shift(L, 3), quotient_by_shift(L, 4)
    ok = k == 4 and not q3.passes and q4.passes
    return ok, f"min period {k}; k=3 flag={q3.flag}; k=4 flag={q4.flag}"


def check_12():
    orders = []
    subsets_ok = True
    for n, p in ((2, 2), (2, 3), (3, 2)):
        g = sl_tau_generators(n, p)
        full = g.as_perm_group()
        orders.append(full.order)
        for r in range(len(g.generators)):
            for sub in combinations(g.generators, r):
                o = g.as_perm_group(sub).order if sub else 1
                if not (o & (o - 1) == 0 if p == 2 else _is_power_of(o, p)):
                    subsets_ok = False
    ok = tuple(orders) == (6, 24, 168) and subsets_ok
    return ok, f"orders {tuple(orders)}; proper subsets p-power: {subsets_ok}"


def _is_power_of(n, p):
    while n % p == 0:
        n //= p
    return n == 1


def check_13():
    got = {}
    for name in ("C6", "S3", "C2xC2"):
        G = named_group(name)
        w = k0_rank_lower_bound(G)
        # oracle: brute-force classes of cyclic subgroups, generated elementwise
        cyc = set()
        for g in G.elements:
            cyc.add(frozenset(G.subgroup([g]).elements))
        classes = set()
        for H in cyc:
            classes.add(min(tuple(sorted(frozenset(mul(mul(x, h), inverse(x)) for h in H)))
                            for x in G.elements))
        got[name] = (w.rank, len(classes))
    ok = all(a == b for a, b in got.values()) and got["C6"][0] == 4 and got["S3"][0] == 3
    return ok, ", ".join(f"{k}: rank {a} vs {b} classes" for k, (a, b) in got.items())


def check_14():
    action = fx.join_sign_action()
    Z = action.complex
    h = homology(Z, "Q")
    orbits = simplex_orbits(action)
    free_off_vertices = all(o.is_free for o in orbits if o.dim > 0)
    ok = tuple(h.ranks) == (1, 0, 25) and free_off_vertices
    return ok, f"Q-Betti {tuple(h.ranks)}; free above dimension 0: {free_off_vertices}"


CHECKS = [
    (1, "flag machinery", check_1),
    (2, "homology engine", check_2),
    (3, "level census", check_3),
    (4, "links", check_4),
    (5, "recipe iff not prime power", check_5),
    (6, "telescope degree action", check_6),
    (7, "Oliver-type towers", check_7),
    (8, "conjugacy classification", check_8),
    (9, "HNN and amalgam evidence", check_9),
    (10, "NPC certificates", check_10),
    (11, "flag quotients", check_11),
    (12, "SL_n(F_p) generators", check_12),
    (13, "K-theory ranks", check_13),
    (14, "join and freeness", check_14),
]


def run(numbers=None) -> list:
    out = []
    for num, title, fn in CHECKS:
        if numbers and num not in numbers:
            continue
        t = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # reported as a failing criterion
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(Result(num, title, bool(ok), detail, time.perf_counter() - t))
    return out
