"""Report logic: fixed sets, conjugacy-class verdicts, free products and
finiteness summaries with explicit evidence levels."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .complexes import SimplicialComplex, is_flag
from .fingroups import (GroupComplexAction, SubgroupRecord, invariant_simplices,
                        is_prime, simplex_orbits, subgroup_classes)
from .homology import DegreeError, homology, is_acyclic
from .periodic import PeriodicComplex, PeriodicError, stage_inclusion_degree

INFINITE = "INFINITE"
BOUND = "BOUND"
SINGLE = "SINGLE"

PROVED = "PROVED"
EVIDENCE = "EVIDENCE"
FAILED = "FAILED"


class ReportError(ValueError):
    pass


def _action_of(data) -> GroupComplexAction:
    if isinstance(data, GroupComplexAction):
        return data
    if isinstance(data, PeriodicComplex):
        if data.symmetry is None:
            raise ReportError("periodic complex carries no group action")
        # the symmetry was checked against the shift when P was built;
        # fixed sets of the infinite complex are unions of translates of slab fixed sets
        return data.symmetry
    raise ReportError(f"expected an action or a periodic complex, got {type(data).__name__}")


# -- fixed points ----------------------------------------------------------------

@dataclass(frozen=True)
class FixedPointEntry:
    subgroup: SubgroupRecord
    empty: bool
    min_dim: int | None
    has_fixed_vertex: bool


def fixed_point_report(data) -> list:
    action = _action_of(data)
    out = []
    for rec in subgroup_classes(action.group):
        inv = invariant_simplices(action, rec)
        m = min((len(s) - 1 for s in inv), default=None)
        out.append(FixedPointEntry(rec, not inv, m, m == 0))
    return out


# -- conjugacy classes ---------------------------------------------------------------

@dataclass(frozen=True)
class ConjugacyEntry:
    factor: int | None     # index into ConjugacyReport.factors; None for the shared trivial entry
    subgroup: str
    order: int
    verdict: str
    bound: int | None
    note: str = ""

    def describe(self):
        v = f"BOUND({self.bound})" if self.verdict == BOUND else self.verdict
        return f"{self.subgroup} (order {self.order}): {v}"


@dataclass(frozen=True)
class ConjugacyReport:
    factors: tuple      # group names, one per free factor
    entries: tuple

    def verdicts(self) -> dict:
        return {(e.factor, e.subgroup): e.verdict for e in self.entries}

    def nontrivial(self):
        return [e for e in self.entries if e.order > 1]


def conjugacy_report(data, name: str | None = None) -> ConjugacyReport:
    """Verdict per subgroup class ``P`` of the acting group.

    Empty fixed set: infinitely many classes (each such subgroup fixes a
    unique vertex of the cube complex, and heights separate them).  A
    fixed vertex: one class.  Otherwise at most ``m + 1`` classes, ``m``
    the least dimension of a ``P``-invariant simplex.
    """
    action = _action_of(data)
    label = name or action.group.name or "Q"
    entries = []
    for fp in fixed_point_report(action):
        rec = fp.subgroup
        if fp.empty:
            e = ConjugacyEntry(0, rec.label(), rec.order, INFINITE, None,
                               "fixed set empty; classes separated by height of the fixed cube vertex")
        elif fp.has_fixed_vertex:
            e = ConjugacyEntry(0, rec.label(), rec.order, SINGLE, 1, "fixes a vertex")
        else:
            e = ConjugacyEntry(0, rec.label(), rec.order, BOUND, fp.min_dim + 1,
                               f"least invariant simplex has dimension {fp.min_dim}")
        entries.append(e)
    return ConjugacyReport((label,), tuple(entries))


def free_product_aggregate(reports) -> ConjugacyReport:
    """Conjugacy data of a free product: nontrivial entries of the factors
    side by side, one shared entry for the trivial subgroup."""
    reports = list(reports)
    if not reports:
        raise ReportError("need at least one report")
    factors, entries, trivial = [], [], None
    for rep in reports:
        off = len(factors)
        factors.extend(rep.factors)
        for e in rep.entries:
            if e.order == 1:
                if trivial is None:
                    trivial = replace(e, factor=None)
            else:
                entries.append(replace(e, factor=e.factor + off))
    if trivial is not None:
        entries.insert(0, trivial)
    if len(reports) == 1:
        return reports[0]
    return ConjugacyReport(tuple(factors), tuple(entries))


# -- finiteness summaries ---------------------------------------------------------

@dataclass(frozen=True)
class Claim:
    name: str
    status: str
    detail: str = ""


@dataclass
class FinitenessBundle:
    """Inputs for a finiteness summary.

    ``kind`` is ``"F"`` (contractible telescope input) or ``"FPQ"``
    (rationally acyclic input).  ``orbits`` is the simplex-orbit scan of the
    slab; ``stage_degree`` the action of stage inclusion on top homology;
    ``acyclic_input`` a finite complex whose rational acyclicity is
    required; ``dimension`` the dimension of the complex the template is
    applied to.
    """
    kind: str
    periodic: PeriodicComplex
    orbits: list | None = None
    stage_degree: int | None = None
    acyclic_input: SimplicialComplex | None = None
    dimension: int | None = None
    notes: list = field(default_factory=list)


@dataclass(frozen=True)
class FinitenessSummary:
    kind: str
    group: str
    claims: tuple
    template: str           # status of the main finiteness template
    conjugacy: str          # status of "infinitely many classes of Q"
    dims: dict

    def claim(self, name) -> Claim:
        for c in self.claims:
            if c.name == name:
                return c
        raise KeyError(name)


def bundle_from_telescope(P: PeriodicComplex) -> FinitenessBundle:
    """Gather evidence for the type F template from a telescope."""
    orbits = simplex_orbits(P.symmetry) if P.symmetry is not None else None
    try:
        degree = stage_inclusion_degree(P, 0)
    except (DegreeError, PeriodicError):
        degree = None   # reported as missing by finiteness_report
    return FinitenessBundle("F", P, orbits=orbits, stage_degree=degree, dimension=P.slab.dimension)


def bundle_from_line_product(P: PeriodicComplex, line_window: SimplicialComplex,
                             dimension: int = 3) -> FinitenessBundle:
    """Gather evidence for the FP over Q template from the 2-skeleton of
    ``R x Z``.  ``dimension`` is that of the finished rationally acyclic
    complex; the sphere and ball attachments raising it are not built."""
    orbits = simplex_orbits(P.symmetry) if P.symmetry is not None else None
    return FinitenessBundle("FPQ", P, orbits=orbits, acyclic_input=line_window,
                            dimension=dimension,
                            notes=["attachments after the 2-skeleton are not constructed"])


def _flag_window(P):
    try:
        span = max(P._canonical(0, v)[0] for v in P.slab.vertices)
    except PeriodicError:
        span = 1
    return is_flag(P.window(0, 2 * span + 2))


def finiteness_report(bundle: FinitenessBundle) -> FinitenessSummary:
    P = bundle.periodic
    if bundle.kind not in ("F", "FPQ"):
        raise ReportError(f"unknown template {bundle.kind!r}")
    if bundle.orbits is None or P.symmetry is None:
        raise ReportError("missing orbit data")
    if bundle.dimension is None:
        raise ReportError("missing dimension")
    claims = []
    flag = _flag_window(P)
    claims.append(Claim("flag", PROVED if flag else FAILED,
                        "" if flag else f"missing simplex {flag.witness}"))
    claims.append(Claim("cocompact", PROVED, f"slab has {P.slab.num_simplices} cells"))
    try:
        P.self_distances(1)
        free_shift = True
    except PeriodicError:
        free_shift = False
    claims.append(Claim("finite stabilizers", PROVED if free_shift else FAILED,
                        f"largest slab stabilizer {max(len(o.stabilizer) for o in bundle.orbits)}"
                        if free_shift else "shift fixes a vertex"))
    Q = P.symmetry.group
    fp = fixed_point_report(P)
    empty_top = [e for e in fp if e.subgroup.order == Q.order][0].empty
    proper_ok = all(not e.empty for e in fp if e.subgroup.order < Q.order)
    claims.append(Claim("no global fixed point", PROVED if empty_top else FAILED))
    claims.append(Claim("proper subgroups have fixed points", PROVED if proper_ok else FAILED))

    if bundle.kind == "F":
        if bundle.stage_degree is None:
            raise ReportError("missing stage degree")
        ok = bundle.stage_degree == 0
        claims.append(Claim("contractible", EVIDENCE if ok else FAILED,
                            f"stage inclusion acts by {bundle.stage_degree} on top homology"))
        needed = ["flag", "cocompact", "finite stabilizers", "contractible"]
    else:
        if bundle.acyclic_input is None:
            raise ReportError("missing acyclicity input")
        ok = is_acyclic(bundle.acyclic_input, "Q")
        claims.append(Claim("rationally acyclic input", PROVED if ok else FAILED,
                            homology(bundle.acyclic_input, "Q").describe()))
        z1 = homology(P.interface, "Z")
        sc = z1.betti(0) == 1 and z1.betti(1) == 0 and not z1.torsion_in(1)
        claims.append(Claim("Z has trivial H1", PROVED if sc else FAILED, z1.describe()))
        claims.append(Claim("later attachments", EVIDENCE, "; ".join(bundle.notes)))
        needed = ["flag", "cocompact", "finite stabilizers", "rationally acyclic input",
                  "Z has trivial H1", "later attachments"]
    by_name = {c.name: c for c in claims}
    statuses = [by_name[n].status for n in needed]
    template = FAILED if FAILED in statuses else (EVIDENCE if EVIDENCE in statuses else PROVED)
    conj = template if empty_top and proper_ok else FAILED
    d = bundle.dimension
    dims = {"L": d, "level_set": d, "cube_complex": d + 1,
            "rational_cd_bound": d + 1, "integral_cd_bound": d + 2}
    return FinitenessSummary(bundle.kind, Q.name or "Q", tuple(claims), template, conj, dims)


@dataclass(frozen=True)
class DimensionBound:
    value: int
    hypothesis: str


def dimension_lower_bound(n: int, p: int) -> DimensionBound:
    """Least dimension of a mod-p acyclic complex carrying a cocompact action
    with finite stabilizers of a group with infinitely many classes of
    ``SL_n(F_p)`` subgroups."""
    if n < 1:
        raise ReportError("n must be positive")
    if not is_prime(p):
        raise ReportError(f"{p} is not prime")
    return DimensionBound(n - 1, f"infinitely many conjugacy classes of SL_{n}(F_{p})")
