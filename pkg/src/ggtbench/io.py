"""JSON formats for complexes, groups, actions, maps and periodic complexes.

Every loader accepts either a parsed document or a reference string:
``fixture:NAME`` for a built-in object, a catalog group name, or a path.
"""

from __future__ import annotations

import json
from pathlib import Path

from .complexes import SimplicialComplex, SimplicialMap, from_maximal_simplices
from .fingroups import FpMatrixGroup, GroupComplexAction, PermGroup, named_group


class InputError(ValueError):
    pass


def _read(ref):
    if isinstance(ref, (dict, list)):
        return ref
    path = Path(ref)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {ref}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{ref} is not valid JSON: {exc}") from exc


def _fixture_name(ref):
    if isinstance(ref, str) and ref.startswith("fixture:"):
        return ref.split(":", 1)[1]
    return None


# -- complexes -------------------------------------------------------------------

def complex_to_json(K: SimplicialComplex) -> dict:
    return {"vertices": list(K.vertices), "simplices": [list(s) for s in K.sorted_maximal()]}


def complex_from_json(doc) -> SimplicialComplex:
    if "simplices" not in doc:
        raise InputError("complex needs a 'simplices' list")
    return from_maximal_simplices([[str(v) for v in s] for s in doc["simplices"]],
                                  vertices=[str(v) for v in doc["vertices"]] if "vertices" in doc else None)


def load_complex(ref) -> SimplicialComplex:
    from .fixtures import named_complex
    name = _fixture_name(ref)
    if name is not None:
        return named_complex(name)
    return complex_from_json(_read(ref))


# -- groups ----------------------------------------------------------------------

def group_to_json(G: PermGroup) -> dict:
    return {"degree": G.degree, "generators": [list(g) for g in G.generators], "name": G.name}


def group_from_json(doc) -> PermGroup:
    if isinstance(doc, str):
        return named_group(doc)
    if "matrix" in doc:
        m = doc["matrix"]
        return FpMatrixGroup(m["n"], m["p"], tuple(tuple(tuple(r) for r in g) for g in m["generators"])
                             ).as_perm_group()
    return PermGroup(doc["degree"], [tuple(g) for g in doc["generators"]], name=doc.get("name"))


def load_group(ref) -> PermGroup:
    if isinstance(ref, str) and not Path(ref).suffix and not Path(ref).exists():
        return named_group(ref)
    return group_from_json(_read(ref))


# -- actions and maps ---------------------------------------------------------------

def action_to_json(a: GroupComplexAction) -> dict:
    return {"group": group_to_json(a.group), "complex": complex_to_json(a.complex),
            "images": [dict(m) for m in a.images]}


def action_from_json(doc) -> GroupComplexAction:
    G = group_from_json(doc["group"])
    K = load_complex(doc["complex"]) if isinstance(doc["complex"], str) else complex_from_json(doc["complex"])
    return GroupComplexAction(G, K, doc["images"])


def load_action(ref) -> GroupComplexAction:
    from .fixtures import named_action
    name = _fixture_name(ref)
    if name is not None:
        return named_action(name)
    return action_from_json(_read(ref))


def map_to_json(f: SimplicialMap) -> dict:
    doc = {"domain": complex_to_json(f.domain), "assignment": dict(f.assignment)}
    if f.codomain is not f.domain:
        doc["codomain"] = complex_to_json(f.codomain)
    return doc


def map_from_json(doc) -> tuple:
    """Returns ``(map, action or None)``; an ``action`` block makes the map
    equivariant input for a telescope."""
    action = None
    if "action" in doc:
        action = action_from_json(doc["action"]) if isinstance(doc["action"], dict) \
            else load_action(doc["action"])
        dom = action.complex
    else:
        dom = complex_from_json(doc["domain"])
    cod = complex_from_json(doc["codomain"]) if "codomain" in doc else dom
    return SimplicialMap(dom, cod, doc["assignment"]), action


# -- periodic complexes ------------------------------------------------------------

def periodic_to_json(P) -> dict:
    doc = {"slab": complex_to_json(P.slab), "interface": complex_to_json(P.interface),
           "bottom": dict(P.bottom), "top": dict(P.top)}
    if P.symmetry is not None:
        doc["symmetry"] = {"group": group_to_json(P.symmetry.group),
                           "images": [dict(m) for m in P.symmetry.images]}
    return doc


def periodic_from_json(doc):
    from .periodic import PeriodicComplex
    slab = complex_from_json(doc["slab"])
    sym = None
    if "symmetry" in doc:
        s = doc["symmetry"]
        sym = GroupComplexAction(group_from_json(s["group"]), slab, s["images"])
    return PeriodicComplex(slab, complex_from_json(doc["interface"]), dict(doc["bottom"]),
                           dict(doc["top"]), sym)


def load_periodic(ref):
    from .fixtures import periodic_fixture
    name = _fixture_name(ref)
    if name is not None:
        return periodic_fixture(name)
    return periodic_from_json(_read(ref))


def load_presentation(ref):
    from .raag import Presentation
    try:
        return Presentation.from_text(Path(ref).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {ref}: {exc}") from exc


def dumps(doc) -> str:
    """Deterministic JSON text."""
    return json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n"
