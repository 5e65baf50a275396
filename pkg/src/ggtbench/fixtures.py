"""Named complexes, actions and periodic complexes used by tests and the CLI."""

from __future__ import annotations

from .complexes import (SimplicialComplex, SimplicialMap, barycentric_subdivision, cone,
                        from_maximal_simplices, join, simplex)
from .fingroups import GroupComplexAction, PermGroup, cyclic, symmetric


def boundary_simplex(n: int) -> SimplicialComplex:
    """Boundary of the n-simplex on vertices ``v0..vn``."""
    verts = [f"v{i}" for i in range(n + 1)]
    if n == 0:
        return from_maximal_simplices([], vertices=[])
    return from_maximal_simplices([[v for v in verts if v != w] for w in verts], vertices=verts)


def full_simplex(n: int) -> SimplicialComplex:
    return simplex([f"v{i}" for i in range(n + 1)])


def cycle(n: int) -> SimplicialComplex:
    verts = [str(i) for i in range(n)]
    return from_maximal_simplices([[verts[i], verts[(i + 1) % n]] for i in range(n)], vertices=verts)


def path(n: int) -> SimplicialComplex:
    verts = [str(i) for i in range(n + 1)]
    return from_maximal_simplices([[verts[i], verts[i + 1]] for i in range(n)], vertices=verts)


def points(n: int, prefix="p") -> SimplicialComplex:
    verts = [f"{prefix}{i}" for i in range(n)]
    return from_maximal_simplices([[v] for v in verts], vertices=verts)


def octahedron() -> SimplicialComplex:
    pairs = [("x+", "x-"), ("y+", "y-"), ("z+", "z-")]
    fams = [[a, b, c] for a in pairs[0] for b in pairs[1] for c in pairs[2]]
    return from_maximal_simplices(fams, vertices=[v for p in pairs for v in p])


RP2_TRIANGLES = [[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 2],
                 [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4]]


def projective_plane() -> SimplicialComplex:
    """Six-vertex real projective plane."""
    return from_maximal_simplices([[str(v) for v in t] for t in RP2_TRIANGLES])


def hollow_triangle() -> SimplicialComplex:
    return from_maximal_simplices([["a", "b"], ["b", "c"], ["a", "c"]])


def bipyramid() -> SimplicialComplex:
    """Suspension of a triangle: poles ``N``, ``S`` over ``1, 2, 3``."""
    fams = [[p, a, b] for p in ("N", "S") for a, b in (("1", "2"), ("2", "3"), ("1", "3"))]
    return from_maximal_simplices(fams, vertices=["N", "S", "1", "2", "3"])


COMPLEXES = {
    "point": lambda: simplex(["a"]),
    "edge": lambda: simplex(["a", "b"]),
    "two-points": lambda: points(2),
    "triangle": lambda: simplex(["a", "b", "c"]),
    "tetrahedron": lambda: full_simplex(3),
    "hollow-triangle": hollow_triangle,
    "square": lambda: cycle(4),
    "pentagon": lambda: cycle(5),
    "hexagon": lambda: cycle(6),
    "path3": lambda: path(3),
    "cone-hexagon": lambda: cone(cycle(6), "c"),
    "sphere2": lambda: boundary_simplex(3),
    "sphere3": lambda: boundary_simplex(4),
    "octahedron": octahedron,
    "rp2": projective_plane,
    "bipyramid": bipyramid,
    "sd-triangle": lambda: barycentric_subdivision(simplex(["a", "b", "c"])),
}


def named_complex(name: str) -> SimplicialComplex:
    try:
        return COMPLEXES[name]()
    except KeyError:
        raise ValueError(f"unknown complex {name!r}; known: {', '.join(sorted(COMPLEXES))}")


# -- actions --------------------------------------------------------------------

def hexagon_rotation() -> GroupComplexAction:
    """C3 rotating the hexagon by two steps (no invariant simplex)."""
    H = cycle(6)
    return GroupComplexAction(cyclic(3), H, [{str(i): str((i + 2) % 6) for i in range(6)}])


def hexagon_reflection() -> GroupComplexAction:
    """C2 reflecting the hexagon through vertices 0 and 3."""
    H = cycle(6)
    return GroupComplexAction(cyclic(2), H, [{str(i): str(-i % 6) for i in range(6)}])


def edge_swap() -> GroupComplexAction:
    return GroupComplexAction(cyclic(2), simplex(["a", "b"]), [{"a": "b", "b": "a"}])


def triangle_rotation() -> GroupComplexAction:
    """C3 rotating a filled triangle; the only invariant simplex is the 2-cell."""
    return GroupComplexAction(cyclic(3), simplex(["a", "b", "c"]), [{"a": "b", "b": "c", "c": "a"}])


def bipyramid_s3() -> GroupComplexAction:
    """S3 permuting the equator of the bipyramid, odd permutations swapping
    the poles.  No point is fixed by the whole group."""
    K = bipyramid()
    G = symmetric(3)
    images = []
    for g in G.generators:
        m = {str(i + 1): str(g[i] + 1) for i in range(3)}
        odd = _parity(g)
        m["N"], m["S"] = ("S", "N") if odd else ("N", "S")
        images.append(m)
    return GroupComplexAction(G, K, images)


def _parity(p):
    seen, odd = set(), 0
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        odd ^= (length - 1) & 1
    return odd


def subdivided_action(action: GroupComplexAction) -> GroupComplexAction:
    """Induced action on the barycentric subdivision; it keeps the vertex order."""
    from .complexes import barycenter_name
    K = action.complex
    sd = barycentric_subdivision(K)
    images = []
    for img in action.images:
        m = {}
        for d in range(K.dimension + 1):
            for s in K.simplices(d):
                m[barycenter_name(K, s)] = barycenter_name(K, [img[v] for v in s])
        images.append(m)
    return GroupComplexAction(action.group, sd, images)


def sphere_s3_fixed() -> GroupComplexAction:
    """S3 permuting three vertices of the tetrahedron boundary, subdivided.
    The fourth vertex is fixed by everything."""
    K = boundary_simplex(3)
    G = symmetric(3)
    images = []
    for g in G.generators:
        m = {f"v{i}": f"v{g[i]}" for i in range(3)}
        m["v3"] = "v3"
        images.append(m)
    return subdivided_action(GroupComplexAction(G, K, images))


def regular_join_action(Q: PermGroup, delta_images=None) -> GroupComplexAction:
    """``Q * Q * Delta`` with ``Q`` acting on both copies of itself by left
    multiplication (vertices ``a<i>``, ``b<i>``) and on ``Delta`` (``d<i>``).

    ``Delta`` defaults to a free orbit; otherwise ``delta_images`` lists, per
    generator of ``Q``, the permutation it induces on the points of ``Delta``.
    """
    from .fingroups import mul
    els = Q.elements
    pos = {g: i for i, g in enumerate(els)}
    if delta_images is None:
        delta_images = [[pos[mul(s, g)] for g in els] for s in Q.generators]
    n = len(delta_images[0])
    Z = join(points(len(els), "a"), points(len(els), "b"), points(n, "d"))
    images = []
    for s, dimg in zip(Q.generators, delta_images):
        m = {}
        for g in els:
            for pre in "ab":
                m[f"{pre}{pos[g]}"] = f"{pre}{pos[mul(s, g)]}"
        for i in range(n):
            m[f"d{i}"] = f"d{dimg[i]}"
        images.append(m)
    return GroupComplexAction(Q, Z, images)


def join_sign_action() -> GroupComplexAction:
    """S3 on ``S3 * S3 * Delta``, ``Delta`` two points swapped by odd elements."""
    G = symmetric(3)
    return regular_join_action(G, [[1, 0] if _parity(g) else [0, 1] for g in G.generators])


ACTIONS = {
    "hexagon-c3": hexagon_rotation,
    "hexagon-c2": hexagon_reflection,
    "edge-c2": edge_swap,
    "triangle-c3": triangle_rotation,
    "bipyramid-s3": bipyramid_s3,
    "sd-bipyramid-s3": lambda: subdivided_action(bipyramid_s3()),
    "sphere-s3-fixed": sphere_s3_fixed,
    "join-c2": lambda: regular_join_action(cyclic(2)),
    "join-s3": lambda: join_sign_action(),
}


def named_action(name: str) -> GroupComplexAction:
    try:
        return ACTIONS[name]()
    except KeyError:
        raise ValueError(f"unknown action {name!r}; known: {', '.join(sorted(ACTIONS))}")


def periodic_fixture(name: str):
    from .periodic import line_product_2skeleton, periodic_line, telescope
    if name == "line":
        return periodic_line(1)
    if name == "line2":
        return periodic_line(2, shift=1)
    if name == "line3":
        return periodic_line(3)
    if name == "hexagon-telescope":
        return telescope(SimplicialMap.identity(cycle(6)))
    if name == "sphere-telescope":
        return telescope(SimplicialMap.identity(octahedron()))
    if name == "ladder":
        return line_product_2skeleton(points(2))
    if name == "join-c2-line":
        return line_product_2skeleton(regular_join_action(cyclic(2)))
    if name == "s3-identity-telescope":
        a = subdivided_action(bipyramid_s3())
        return telescope(SimplicialMap.identity(a.complex), a)
    if name == "s3-fixed-constant-telescope":
        a = sphere_s3_fixed()
        K = a.complex
        return telescope(SimplicialMap(K, K, {v: "[v3]" for v in K.vertices}), a)
    raise ValueError(f"unknown periodic fixture {name!r}")


PERIODIC = ("line", "line2", "line3", "hexagon-telescope", "sphere-telescope", "ladder", "join-c2-line")
# the truncated product over the octahedron is not flag; flag quotients need a flag input
PERIODIC_FLAG = PERIODIC[:-1]
# equivariant telescopes on S3-spheres, for the type F summary
EQUIVARIANT_TELESCOPES = ("s3-identity-telescope", "s3-fixed-constant-telescope")
