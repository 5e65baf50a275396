"""Command-line front end.

Exit status: 0 success, 1 a verified negative answer (not flag, infeasible,
failed certificate...), 2 bad input or an exceeded bound.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from fractions import Fraction

from . import io
from ._limits import BoundExceeded

OK, NEGATIVE, USAGE = 0, 1, 2


class Report:
    """Ordered key/value report rendered as text or JSON."""

    def __init__(self, command, cite=None):
        self.raw = None     # plain text that replaces the text rendering
        self.items = {"command": command}
        if cite:
            self.items["cites"] = cite

    def __setitem__(self, key, value):
        self.items[key] = value

    def render(self, fmt):
        if fmt == "json":
            return io.dumps(self.items)
        if self.raw is not None:
            return self.raw
        lines = []
        for k, v in self.items.items():
            if isinstance(v, (list, tuple)) and v and (isinstance(v[0], (dict, list, tuple))
                                                      or isinstance(v[0], str) and " " in v[0]):
                lines.append(f"{k}:")
                lines.extend(f"  {_fmt(x)}" for x in v)
            else:
                lines.append(f"{k}: {_fmt(v)}")
        return "\n".join(lines) + "\n"


def _fmt(v):
    if isinstance(v, dict):
        return ", ".join(f"{k}={_fmt(x)}" for k, x in v.items())
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    return str(v)


def _need(args, name):
    val = getattr(args, name)
    if val in (None, []):
        raise io.InputError(f"--{name} is required for {args.command}")
    return val


# -- subcommands ------------------------------------------------------------------

def cmd_flag_check(args, rep):
    from .complexes import is_flag
    K = io.load_complex(_need(args, "input"))
    check = is_flag(K)
    rep["flag"] = check.ok
    if not check.ok:
        rep["witness"] = list(check.witness)
    return OK if check.ok else NEGATIVE


def cmd_homology(args, rep):
    from .homology import euler_characteristic, homology, ring_label
    K = io.load_complex(_need(args, "input"))
    h = homology(K, args.ring)
    rep["ring"] = ring_label(args.ring)
    rep["f_vector"] = list(K.f_vector)
    rep["ranks"] = list(h.ranks)
    rep["torsion"] = [list(t) for t in h.torsion]
    rep["euler_characteristic"] = euler_characteristic(K)
    return OK


def cmd_census(args, rep):
    from .raag import level_census
    c = Fraction(args.level)
    if args.periodic:
        data = io.load_periodic(args.periodic)
        cen = level_census(data, c=c)
    else:
        action = io.load_action(args.action[0]) if args.action else None
        K = action.complex if action else io.load_complex(_need(args, "input"))
        cen = level_census(K, action, c=c)
    rep["level"] = str(cen.level)
    rep["cube_orbits"] = list(cen.cube_orbits)
    rep["level_cells"] = list(cen.level_cells)
    ok = all(cen.level_cells[n - 1] == n * cen.cube_orbits[n] for n in range(1, len(cen.cube_orbits)))
    rep["identity_holds"] = ok
    return OK if ok else NEGATIVE


def cmd_ball(args, rep):
    from .raag import cube_ball
    K = io.load_complex(_need(args, "input"))
    cells = cube_ball(K, _need(args, "radius"))
    counts = Counter(c.dim for c in cells)
    rep["radius"] = args.radius
    rep["cells_by_dimension"] = [counts.get(d, 0) for d in range(max(counts) + 1)]
    return OK


def cmd_links(args, rep):
    from .cubes import double
    from .raag import ascending_link, descending_link, vertex_link_XL
    K = io.load_complex(_need(args, "input"))
    link = vertex_link_XL(K)
    rep["link_f_vector"] = list(link.f_vector)
    rep["equals_double"] = link.same_simplices(double(K))
    asc = ascending_link(K).relabel({v + "'": v for v in K.vertices})
    desc = descending_link(K).relabel({v + "''": v for v in K.vertices})
    rep["ascending_is_L"] = asc.same_simplices(K)
    rep["descending_is_L"] = desc.same_simplices(K)
    ok = rep.items["equals_double"] and rep.items["ascending_is_L"] and rep.items["descending_is_L"]
    return OK if ok else NEGATIVE


def cmd_recipe(args, rep):
    from .periodic import degree_zero_recipe
    G = io.load_group(_need(args, "group"))
    r = degree_zero_recipe(G)
    rep["group_order"] = G.order
    if r is None:
        rep["recipe"] = "INFEASIBLE"
        return NEGATIVE
    rep["recipe"] = {**{f"index{k}": v for k, v in r.by_index().items()}, "n": r.free_count}
    rep["degree"] = r.degree()
    return OK


def cmd_telescope(args, rep):
    from .homology import homology, induced_degree
    from .periodic import stage_inclusion_degree, telescope
    f, action = io.map_from_json(io._read(_need(args, "input")))
    P = telescope(f, action)
    a, b = args.window or (0, 2)
    rep["map_degree"] = induced_degree(f)
    rep["stage_degrees"] = [stage_inclusion_degree(P, k) for k in range(max(a, 0), max(b, 1))]
    W = P.window(a, b)
    h = homology(W, "Q")
    rep["window"] = [a, b]
    rep["window_f_vector"] = list(W.f_vector)
    rep["window_ranks"] = list(h.ranks)
    return OK


def cmd_quotient(args, rep):
    from .periodic import min_flag_quotient_period, quotient_by_shift
    P = io.load_periodic(_need(args, "input"))
    k = args.period or min_flag_quotient_period(P)
    q = quotient_by_shift(P, k)
    rep["period"] = k
    rep["degenerate"] = q.degenerate
    rep["simplicial"] = q.simplicial
    rep["flag"] = q.flag
    if q.complex is not None:
        rep["f_vector"] = list(q.complex.f_vector)
    if q.witness:
        rep["witness"] = list(q.witness)
    if args.period is None:
        rep["minimal"] = True
    return OK if q.passes else NEGATIVE


def cmd_hnn(args, rep):
    from .raag import hnn_presentation
    P = io.load_periodic(_need(args, "input"))
    pres = hnn_presentation(P)
    rep.raw = pres.to_text()
    rep["presentation"] = rep.raw.splitlines()
    return OK


def cmd_homs(args, rep):
    from .raag import count_homs
    pres = io.load_presentation(_need(args, "input"))
    T = io.load_group(_need(args, "target"))
    rep["target_order"] = T.order
    rep["homomorphisms"] = count_homs(pres, T, bound=args.bound or 10 ** 7)
    return OK


def cmd_npc(args, rep):
    from .cubes import glued_link, npc_certificate
    doc = io._read(_need(args, "input"))
    if "M" in doc:
        M = io.complex_from_json(doc["M"])
        vl = glued_link(M, doc.get("N0", []), doc.get("N1", []), doc.get("gamma", {}))
        link = vl.link
    else:
        link = io.complex_from_json(doc)
    cert = npc_certificate(link)
    rep["link_f_vector"] = list(link.f_vector)
    rep["npc"] = cert.ok
    if not cert.ok:
        rep["witness"] = list(cert.witness)
    return OK if cert.ok else NEGATIVE


def _conj_rows(report):
    return [{"factor": report.factors[e.factor] if e.factor is not None else "*",
             "subgroup": e.subgroup, "order": e.order,
             "verdict": f"BOUND({e.bound})" if e.verdict == "BOUND" else e.verdict}
            for e in report.entries]


def cmd_conjclass(args, rep):
    from .classify import conjugacy_report
    if args.input:
        data = io.load_periodic(args.input)
    else:
        data = io.load_action(_need(args, "action")[0])
    rep["verdicts"] = _conj_rows(conjugacy_report(data))
    return OK


def cmd_freeprod(args, rep):
    from .classify import conjugacy_report, free_product_aggregate
    reports = [conjugacy_report(io.load_action(a)) for a in _need(args, "action")]
    agg = free_product_aggregate(reports)
    rep["factors"] = list(agg.factors)
    rep["verdicts"] = _conj_rows(agg)
    return OK


def cmd_finiteness(args, rep):
    from .classify import (FAILED, bundle_from_line_product, bundle_from_telescope,
                           finiteness_report)
    from .periodic import periodic_line, subdivide
    P = io.load_periodic(_need(args, "input"))
    if args.template == "F":
        bundle = bundle_from_telescope(P)
    else:
        bundle = bundle_from_line_product(subdivide(P) if args.subdivide else P,
                                          periodic_line(1).window(0, 3))
    s = finiteness_report(bundle)
    rep["template"] = {"F": "type F", "FPQ": "FP over Q"}[s.kind]
    rep["claims"] = [{"claim": c.name, "status": c.status, "detail": c.detail} for c in s.claims]
    rep["template_status"] = s.template
    rep["infinitely_many_classes_of_Q"] = s.conjugacy
    rep["dimensions"] = s.dims
    return NEGATIVE if s.template == FAILED else OK


def cmd_ktheory(args, rep):
    from .ktheory import k0_rank_lower_bound
    G = io.load_group(_need(args, "group"))
    w = k0_rank_lower_bound(G)
    rep["group_order"] = G.order
    rep["cyclic_subgroup_classes"] = w.classes
    rep["rank"] = w.rank
    rep["rows"] = [[str(x) for x in r] for r in w.rows]
    return OK if w.rank == w.classes else NEGATIVE


def cmd_slnp(args, rep):
    from itertools import combinations
    from .fingroups import is_prime_power, sl_order, sl_tau_generators
    n, p = _need(args, "n"), _need(args, "p")
    g = sl_tau_generators(n, p)
    order = g.as_perm_group().order
    rep["n"], rep["p"] = n, p
    rep["generated_order"] = order
    rep["sl_order"] = sl_order(n, p)
    proper = []
    for r in range(len(g.generators)):
        for sub in combinations(range(len(g.generators)), r):
            o = g.as_perm_group([g.generators[i] for i in sub]).order if sub else 1
            proper.append(o)
    ok_sub = all(is_prime_power(o) and (o == 1 or o % p == 0) for o in proper)
    rep["proper_subsets_p_power"] = ok_sub
    return OK if ok_sub and order == rep.items["sl_order"] else NEGATIVE


def cmd_dimbound(args, rep):
    from .classify import dimension_lower_bound
    b = dimension_lower_bound(_need(args, "n"), _need(args, "p"))
    rep["lower_bound"] = b.value
    rep["hypothesis"] = b.hypothesis
    return OK


def cmd_acceptance(args, rep):
    from .acceptance import run
    results = run(args.only or None)
    rep["criteria"] = [r.line() for r in results]
    rep["passed"] = sum(r.ok for r in results)
    rep["total"] = len(results)
    return OK if all(r.ok for r in results) else NEGATIVE


COMMANDS = {
    "flag-check": (cmd_flag_check, "flag test with a minimal missing-simplex witness", None),
    "homology": (cmd_homology, "simplicial homology over Z, Q or F_p", None),
    "census": (cmd_census, "cube and level-set orbit census", "level-set census"),
    "ball": (cmd_ball, "cells of a finite ball in the cube complex", None),
    "links": (cmd_links, "vertex, ascending and descending links", "vertex link is the double"),
    "recipe": (cmd_recipe, "orbit arithmetic for a degree-zero equivariant map", "degree-zero sphere map"),
    "telescope": (cmd_telescope, "mapping telescope of a self-map", "doubly infinite mapping telescope"),
    "quotient": (cmd_quotient, "quotient of a periodic complex by a shift", "flag quotient lemma"),
    "hnn": (cmd_hnn, "HNN presentation of a periodic complex", "HNN decomposition"),
    "homs": (cmd_homs, "count homomorphisms into a finite group", None),
    "npc": (cmd_npc, "nonpositive curvature certificate of a vertex link", "Gromov link condition"),
    "conjclass": (cmd_conjclass, "conjugacy-class verdicts", "conjugacy class theorem"),
    "finiteness": (cmd_finiteness, "finiteness template summary", "finiteness templates"),
    "freeprod": (cmd_freeprod, "conjugacy data of a free product", "free product lemma"),
    "ktheory": (cmd_ktheory, "Hattori-Stallings rank bound", "Bass rank bound"),
    "slnp": (cmd_slnp, "cyclic generators of SL_n(F_p)", "generating set lemma"),
    "dimbound": (cmd_dimbound, "dimension lower bound from SL_n(F_p) classes", "dimension bound"),
    "acceptance": (cmd_acceptance, "run the acceptance checks", None),
}


def build_parser():
    parser = argparse.ArgumentParser(prog="ggtbench", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text, _) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", help="file path or fixture:NAME")
        p.add_argument("--group", help="catalog name (S3, C6, ...) or JSON file")
        p.add_argument("--action", action="append", help="action file or fixture:NAME (repeatable)")
        p.add_argument("--periodic", help="periodic complex for census")
        p.add_argument("--radius", type=int)
        p.add_argument("--window", type=int, nargs=2, metavar=("A", "B"))
        p.add_argument("--period", type=int)
        p.add_argument("--target", help="target group for homs")
        p.add_argument("--ring", default="Z")
        p.add_argument("--level", default="1/2")
        p.add_argument("--bound", type=int)
        p.add_argument("--template", choices=("F", "FPQ"), default="F")
        p.add_argument("--subdivide", action="store_true", help="subdivide before the FPQ summary")
        p.add_argument("--n", type=int)
        p.add_argument("--p", type=int)
        p.add_argument("--only", type=int, nargs="*", help="acceptance criteria to run")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", help="write the report here instead of stdout")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    fn, _, cite = COMMANDS[args.command]
    rep = Report(args.command, cite)
    try:
        status = fn(args, rep)
    except (BoundExceeded, io.InputError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    text = rep.render(args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
