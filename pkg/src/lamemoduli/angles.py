"""Angle-space combinatorics: faces, nerve graph, and independent counts.

The parameter triangle of angle triples (a1,a2,a3), sum 2m+1, is cut by the
integer lines into up/down triangular faces identified by their floor vectors.
A face meets the admissible region exactly when all floors are <= m (the
integer form of a_j <= m + 1/2; this rule is validated wholesale against the
closed-form tallies).  The nerve graph has the faces as vertices and joins
vertically-opposite faces at interior integer vertices; its per-component
tallies reproduce the Euler characteristics independently of the closed
forms in `topology`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .topology import epsilons, invariants

__all__ = [
    "FaceId",
    "AngleSpace",
    "NerveGraph",
    "build_angle_space",
    "build_nerve",
    "component_analysis",
    "euler_from_graph",
    "lw_curve_count",
    "orbifold_points",
    "closed_form_tallies",
]


@dataclass(frozen=True, order=True)
class FaceId:
    orientation: str  # "up" | "down"
    floors: tuple[int, int, int]

    def face_type(self) -> str:
        """'I' or 'II1'/'II2'/'II3' from the parities of the bounding segments."""
        parities = [p % 2 for p in self.floors]
        if self.orientation == "up":
            # sides lie on the segments a_j = p_j
            evens = [i for i, p in enumerate(parities) if p == 0]
        else:
            # sides lie on a_j = p_j + 1
            evens = [i for i, p in enumerate(parities) if p == 1]
        if len(evens) == 3:
            return "I"
        if len(evens) == 1:
            return f"II{evens[0] + 1}"
        raise AssertionError(f"impossible parity pattern for {self}")

    def rotate(self) -> "FaceId":
        p = self.floors
        return FaceId(self.orientation, (p[2], p[0], p[1]))


@dataclass(frozen=True)
class AngleSpace:
    m: int
    faces: tuple[FaceId, ...]
    vertices: tuple[tuple[int, int, int], ...]
    face_types: dict  # FaceId -> type string


@dataclass(frozen=True)
class NerveGraph:
    m: int
    faces: tuple[FaceId, ...]
    edges: tuple[tuple[FaceId, FaceId], ...]
    components: tuple[frozenset, ...]

    def component_of_type(self, face_type: str) -> frozenset:
        for comp in self.components:
            if any(f.face_type() == face_type for f in comp):
                return comp
        raise KeyError(face_type)

    def tallies(self, comp: frozenset) -> dict[str, int]:
        deg = {f: 0 for f in comp}
        e = 0
        for u, v in self.edges:
            if u in comp:
                deg[u] += 1
                deg[v] += 1
                e += 1
        counts = {1: 0, 2: 0, 3: 0}
        for d in deg.values():
            if d:
                counts[d] += 1
        return {
            "V": len(comp),
            "E": e,
            "V1": counts[1],
            "V2": counts[2],
            "V3": counts[3],
        }


def build_angle_space(m: int) -> AngleSpace:
    if m < 0:
        raise ValueError("m must be non-negative")
    faces = []
    # up faces: floors sum to 2m, down faces: floors sum to 2m-1; all floors <= m
    for orientation, total in (("up", 2 * m), ("down", 2 * m - 1)):
        if total < 0:
            continue
        for p1 in range(0, min(m, total) + 1):
            for p2 in range(0, min(m, total - p1) + 1):
                p3 = total - p1 - p2
                if 0 <= p3 <= m:
                    faces.append(FaceId(orientation, (p1, p2, p3)))
    vertices = []
    target = 2 * m + 1
    for v1 in range(1, m + 1):
        for v2 in range(1, m + 1):
            v3 = target - v1 - v2
            if 1 <= v3 <= m:
                vertices.append((v1, v2, v3))
    faces.sort()
    vertices.sort()
    types = {f: f.face_type() for f in faces}
    return AngleSpace(m, tuple(faces), tuple(vertices), types)


def _vertical_partners(face: FaceId, m: int) -> list[FaceId]:
    """Down-faces sharing a vertex with an up-face at vertical angles."""
    p1, p2, p3 = face.floors
    cands = [
        (p1 + 1, p2 - 1, p3 - 1),
        (p1 - 1, p2 + 1, p3 - 1),
        (p1 - 1, p2 - 1, p3 + 1),
    ]
    return [
        FaceId("down", c)
        for c in cands
        if all(0 <= q <= m for q in c)
    ]


def build_nerve(m: int) -> NerveGraph:
    space = build_angle_space(m)
    face_set = set(space.faces)
    edges = []
    for f in space.faces:
        if f.orientation != "up":
            continue
        for partner in _vertical_partners(f, m):
            if partner in face_set:
                edges.append((f, partner))
    # connected components via union-find
    parent = {f: f for f in space.faces}

    def find(x):
        while parent[x] is not x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru is not rv:
            parent[ru] = rv
    groups: dict = {}
    for f in space.faces:
        groups.setdefault(find(f), set()).add(f)
    components = tuple(frozenset(g) for g in groups.values())
    for u, v in edges:
        if u.face_type() != v.face_type():
            raise AssertionError(f"edge across types: {u} -- {v}")
    return NerveGraph(m, space.faces, tuple(edges), components)


def closed_form_tallies(m: int, component: str) -> dict[str, int]:
    """The reference tallies for one nerve component."""
    if component == "I":
        if m % 2 == 1:
            out = {
                "E": 3 * (m * m - 1) // 8,
                "V1": 3 * (m - 1) // 2,
                "V2": 0,
                "V": (m * m + 4 * m - 5) // 4,
            }
        else:
            # V2 here is 3(m-2)/2: the even-m reference tables and the
            # constructed graph agree on 0,3,6,... while the displayed
            # formula 3(m-1)/2 is not even an integer for even m.
            out = {
                "E": 3 * (m * m + 2 * m) // 8,
                "V1": 3,
                "V2": 3 * (m - 2) // 2,
                "V": (m // 2 + 1) ** 2,
            }
    else:
        if m % 2 == 1:
            out = {
                "E": (3 * m * m + 4 * m + 1) // 8,
                "V1": (m + 3) // 2,
                "V2": m - 1,
                "V": (m * m + 4 * m + 3) // 4,
            }
        else:
            out = {
                "E": (3 * m * m + 2 * m) // 8,
                "V1": m,
                "V2": m // 2,
                "V": (m // 2 + 1) ** 2 - 1,
            }
    out["V3"] = out["V"] - out["V1"] - out["V2"]
    return out


@dataclass(frozen=True)
class ComponentReport:
    m: int
    n_components: int
    rotation_fixes_I: bool
    rotation_permutes_II: bool
    tallies_I: dict | None
    tallies_II: dict | None
    matches_closed_forms: bool


def component_analysis(m: int) -> ComponentReport:
    nerve = build_nerve(m)
    n = len(nerve.components)
    expected = 1 if m == 0 else (3 if m == 1 else 4)
    if n != expected:
        raise AssertionError(f"m={m}: {n} components, expected {expected}")
    rot = {f: f.rotate() for f in nerve.faces}
    comp_of = {}
    for i, comp in enumerate(nerve.components):
        for f in comp:
            comp_of[f] = i
    fixes_i = True
    permutes_ii = True
    ii_images = {}
    for comp in nerve.components:
        sample_type = next(iter(comp)).face_type()
        image = frozenset(rot[f] for f in comp)
        if sample_type == "I":
            fixes_i = fixes_i and (image in nerve.components) and image == comp
        else:
            if image not in nerve.components:
                permutes_ii = False
            ii_images[comp] = image
    # the three II components must be permuted cyclically (a 3-cycle for m>=1)
    if m >= 1:
        ii_comps = [c for c in nerve.components if next(iter(c)).face_type() != "I"]
        permutes_ii = permutes_ii and all(
            ii_images[c] in ii_comps and ii_images[c] != c for c in ii_comps
        )
    else:
        permutes_ii = True

    tallies_i = tallies_ii = None
    matches = True
    if m >= 2 or m == 0:
        comp_i = nerve.component_of_type("I")
        tallies_i = nerve.tallies(comp_i)
        if m >= 2:
            matches = matches and tallies_i == closed_form_tallies(m, "I")
    if m >= 1:
        comp_ii = nerve.component_of_type("II1")
        tallies_ii = nerve.tallies(comp_ii)
        matches = matches and tallies_ii == closed_form_tallies(m, "II")
        # the three II components are pairwise isomorphic under rotation
        for t in ("II2", "II3"):
            other = nerve.tallies(nerve.component_of_type(t))
            matches = matches and other == tallies_ii
    return ComponentReport(m, n, fixes_i, permutes_ii, tallies_i, tallies_ii, matches)


def euler_from_graph(m: int, component: str) -> Fraction:
    """Euler characteristic from the constructed talliesMapped through the
    identification formula; must equal the closed-form value."""
    nerve = build_nerve(m)
    eps0, eps1, eps2 = epsilons(m)
    if component == "I":
        # identification formula: the corner classes contribute V^b/6 - eps2/2
        # and the side-midpoint classes V^c/6 + eps1/2, so the correction is
        # (eps1 - eps2)/2 (the displayed formula halves eps1 once too often,
        # which already fails against the m=3 table row).
        t = nerve.tallies(nerve.component_of_type("I"))
        chi = (
            Fraction(t["V3"], 3)
            + Fraction(t["V1"], 6)
            + Fraction(t["V2"], 6)
            - Fraction(t["E"], 3)
            + Fraction(2 * eps0, 3)
            + Fraction(eps1 - eps2, 2)
        )
    else:
        t = nerve.tallies(nerve.component_of_type("II1"))
        chi = (
            Fraction(t["V3"])
            + Fraction(t["V1"], 2)
            + Fraction(t["V2"], 2)
            - Fraction(t["E"])
            + Fraction(eps2 - eps1, 2)
        )
    return chi


def lw_curve_count(m: int) -> int:
    """Number of period-collinearity curves: orbits of integer points under
    the cyclic rotation, the central orbit counting once and every other
    orbit three times.  Must equal m(m+1)/2."""
    if m < 1:
        raise ValueError("m must be >= 1")
    space = build_angle_space(m)
    seen = set()
    total = 0
    for v in space.vertices:
        if v in seen:
            continue
        orbit = {v, (v[2], v[0], v[1]), (v[1], v[2], v[0])}
        seen |= orbit
        total += 1 if len(orbit) == 1 else 3
    expected = m * (m + 1) // 2
    if total != expected:
        raise AssertionError(f"m={m}: counted {total}, expected {expected}")
    return total


@dataclass(frozen=True)
class OrbifoldReport:
    m: int
    center_in_cell: bool
    center_face: FaceId | None
    midpoint_face: FaceId
    order2_component: str
    corner_face_type: str


def orbifold_points(m: int) -> OrbifoldReport:
    """Locate the hexagonal (order 3) and square (order 2) orbifold points.

    The center ((2m+1)/3,...) of the triangle lies inside a face exactly when
    eps0 = 1; that face is always type I and carries the order-3 point.  The
    midpoint of a side of the triangle (on the marginal line a_1 = m + 1/2)
    lies on the boundary of the face with floors (m, q, q), q = (2m+1)//4,
    whose type is I exactly when eps1 = 1; that face owns the order-2 point.
    The corner faces (m, m, 0) are type I exactly when eps2 = 1.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    eps0, eps1, eps2 = epsilons(m)
    center_in_cell = (2 * m + 1) % 3 != 0
    assert center_in_cell == (eps0 == 1)
    center_face = None
    if center_in_cell:
        fl = (2 * m + 1) // 3
        orientation = "up" if 3 * fl == 2 * m else "down"
        center_face = FaceId(orientation, (fl, fl, fl))
        assert sum(center_face.floors) == (2 * m if orientation == "up" else 2 * m - 1)
        assert center_face.face_type() == "I"

    q = (2 * m + 1) // 4
    orientation = "up" if m + 2 * q == 2 * m else "down"
    midpoint_face = FaceId(orientation, (m, q, q))
    assert sum(midpoint_face.floors) == (2 * m if orientation == "up" else 2 * m - 1)
    mid_type = midpoint_face.face_type()
    assert (mid_type == "I") == (eps1 == 1)
    order2 = "I" if eps1 == 1 else "II"

    corner_face = FaceId("up", (m, m, 0))
    corner_type = corner_face.face_type()
    assert (corner_type == "I") == (eps2 == 1)
    return OrbifoldReport(m, center_in_cell, center_face, midpoint_face, order2, corner_type)
