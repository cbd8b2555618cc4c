"""Implicit-curve extraction on the tau half-plane and mapping to the J-plane.

Zero curves of each condition are pulled out of the sampled sign field by
marching squares with linear interpolation.  Crossing points are keyed by the
grid edge they sit on, so joining segments into polylines needs no floating
fuzz.  Component counting restricts to the modular fundamental domain; the
J-plane image merges polylines by directed Hausdorff distance (the three
tau-plane branches of one curve land on a single J-curve).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .elliptic import LatticeGrid, LWCondition, lattice_grid, lw_conditions

__all__ = [
    "GridSpec",
    "CurveSet",
    "trace_curves",
    "map_to_J",
    "fundamental_component_count",
    "write_csv",
    "write_svg",
]


@dataclass(frozen=True)
class GridSpec:
    re_min: float = -0.5
    re_max: float = 0.5
    im_min: float = 0.5
    im_max: float = 3.0
    nx: int = 800
    ny: int = 800

    def __post_init__(self):
        if self.nx < 16 or self.ny < 16:
            raise ValueError("grid resolution must be at least 16")

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        return (
            np.linspace(self.re_min, self.re_max, self.nx),
            np.linspace(self.im_min, self.im_max, self.ny),
        )


@dataclass(frozen=True)
class Polyline:
    label: str
    points: list[tuple[float, float]]


@dataclass(frozen=True)
class CurveSet:
    plane: str  # "tau" | "J"
    m: int
    polylines: list[Polyline]
    grid: GridSpec | None = None
    merge_groups: list[list[int]] = field(default_factory=list)


# marching squares: corners c0=(i,j), c1=(i+1,j), c2=(i+1,j+1), c3=(i,j+1);
# bit k set when corner k is positive.  Edges: 0 bottom, 1 right, 2 top,
# 3 left.  Saddle cases 5 and 10 use a fixed consistent resolution.
_MS_TABLE = {
    1: [(3, 0)],
    2: [(0, 1)],
    3: [(3, 1)],
    4: [(1, 2)],
    5: [(3, 0), (1, 2)],
    6: [(0, 2)],
    7: [(3, 2)],
    8: [(2, 3)],
    9: [(0, 2)],
    10: [(0, 1), (2, 3)],
    11: [(1, 2)],
    12: [(3, 1)],
    13: [(0, 1)],
    14: [(3, 0)],
}


def _segments_for_cell(signs: tuple[int, int, int, int]) -> list[tuple[int, int]]:
    idx = sum(1 << k for k, s in enumerate(signs) if s > 0)
    if idx in (0, 15):
        return []
    return _MS_TABLE[idx]


def _edge_key(i: int, j: int, edge: int) -> tuple[int, int, int]:
    """Canonical key of a cell edge in global grid coordinates."""
    # horizontal edges keyed by their left node, vertical by their bottom node
    if edge == 0:
        return (i, j, 0)
    if edge == 2:
        return (i, j + 1, 0)
    if edge == 3:
        return (i, j, 1)
    return (i + 1, j, 1)


def _interp(p0, p1, v0, v1):
    t = v0 / (v0 - v1)
    t = min(max(t, 0.0), 1.0)
    return (p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1]))


def _trace_condition(values: np.ndarray, valid: np.ndarray, xs: np.ndarray, ys: np.ndarray,
                     label: str) -> tuple[list[Polyline], list[tuple]]:
    """Marching squares on one condition; returns polylines and raw segments
    as pairs of edge keys with coordinates."""
    ny, nx = values.shape
    crossings: dict[tuple, tuple[float, float]] = {}
    adjacency: dict[tuple, list[tuple]] = {}
    segments = []
    for j in range(ny - 1):
        for i in range(nx - 1):
            cell_valid = valid[j, i] and valid[j, i + 1] and valid[j + 1, i + 1] and valid[j + 1, i]
            if not cell_valid:
                continue
            v = (values[j, i], values[j, i + 1], values[j + 1, i + 1], values[j + 1, i])
            signs = tuple(1 if x > 0 else -1 for x in v)
            segs = _segments_for_cell(signs)
            if not segs:
                continue
            corners = [(xs[i], ys[j]), (xs[i + 1], ys[j]), (xs[i + 1], ys[j + 1]), (xs[i], ys[j + 1])]
            corner_pairs = {0: (0, 1), 1: (1, 2), 2: (3, 2), 3: (0, 3)}
            for e1, e2 in segs:
                pts = []
                keys = []
                for e in (e1, e2):
                    a, b = corner_pairs[e]
                    pt = _interp(corners[a], corners[b], v[a], v[b])
                    key = _edge_key(i, j, e)
                    crossings[key] = pt
                    pts.append(pt)
                    keys.append(key)
                segments.append((keys[0], keys[1]))
                adjacency.setdefault(keys[0], []).append(keys[1])
                adjacency.setdefault(keys[1], []).append(keys[0])
    # assemble chains
    visited = set()
    polylines = []
    for start in adjacency:
        if start in visited or len(adjacency[start]) != 1:
            continue
        chain = _walk(start, adjacency, visited)
        polylines.append(Polyline(label, [crossings[k] for k in chain]))
    # closed loops
    for start in adjacency:
        if start not in visited:
            chain = _walk(start, adjacency, visited)
            chain.append(chain[0])
            polylines.append(Polyline(label, [crossings[k] for k in chain]))
    return polylines, segments


def _walk(start, adjacency, visited):
    chain = [start]
    visited.add(start)
    current = start
    while True:
        nxt = [k for k in adjacency[current] if k not in visited]
        if not nxt:
            break
        current = nxt[0]
        visited.add(current)
        chain.append(current)
    return chain


def trace_curves(m: int, grid: GridSpec | None = None, conditions: list[LWCondition] | None = None) -> CurveSet:
    """Zero curves of every condition for this m on the tau-grid."""
    grid = grid or GridSpec()
    conditions = conditions if conditions is not None else lw_conditions(m)
    xs, ys = grid.axes()
    tau = xs[None, :] + 1j * ys[:, None]
    lat = lattice_grid(tau)
    polylines: list[Polyline] = []
    for cond in conditions:
        values, valid = cond.evaluate_grid(lat)
        pls, _ = _trace_condition(values, valid, xs, ys, cond.label)
        polylines.extend(pls)
    return CurveSet("tau", m, polylines, grid)


def _in_fundamental_domain(x: float, y: float, im_cap: float) -> bool:
    return abs(x) <= 0.5 + 1e-12 and x * x + y * y >= 1.0 - 1e-12 and y <= im_cap + 1e-12


def fundamental_component_count(curves: CurveSet, im_cap: float | None = None) -> int:
    """Connected zero-curve components inside |Re| <= 1/2, |tau| >= 1.

    Polylines are clipped to the fundamental domain; a clipped polyline can
    fall apart into several runs, and runs from different polylines never
    touch (crossing keys are per-condition), so counting runs per polyline
    suffices.
    """
    cap = im_cap if im_cap is not None else (curves.grid.im_max if curves.grid else np.inf)
    count = 0
    for pl in curves.polylines:
        inside = [
            _in_fundamental_domain(x, y, cap) for (x, y) in pl.points
        ]
        runs = 0
        prev = False
        for flag in inside:
            if flag and not prev:
                runs += 1
            prev = flag
        # a closed loop entirely inside is one component, not two
        if runs >= 2 and inside[0] and inside[-1] and pl.points[0] == pl.points[-1]:
            runs -= 1
        count += runs
    return count


def _clip_to_domain(pl: Polyline, cap: float, margin: float) -> list[list[tuple[float, float]]]:
    runs: list[list[tuple[float, float]]] = []
    current: list[tuple[float, float]] = []
    for (x, y) in pl.points:
        if abs(x) <= 0.5 + margin and x * x + y * y >= 1.0 - margin and y <= cap + margin:
            current.append((x, y))
        elif current:
            runs.append(current)
            current = []
    if current:
        runs.append(current)
    return runs


def _modular_partners(x: float, y: float, prox: float) -> list[tuple[float, float]]:
    """Boundary identifications applicable to a point, within ``prox`` of the
    respective boundary piece (interior points get none: a nearby would-be
    partner is a resolution-independent artifact, not an identification)."""
    z = x + 1j * y
    cands = []
    if abs(x + 0.5) < prox:
        cands.append(z + 1)
    if abs(x - 0.5) < prox:
        cands.append(z - 1)
    if abs(abs(z) - 1.0) < prox:
        cands.append(-1 / z)
    return [(c.real, c.imag) for c in cands]


def map_to_J(curves: CurveSet, junction_cells: float = 3.0, j_cap: float = 1e6,
             hausdorff_tol: float = 0.05) -> CurveSet:
    """Map the zero set to the J-plane with one group per geometric curve.

    The fundamental domain maps bijectively to the J-plane, so J-curves are
    exactly the components of the zero set in the quotient: polylines are
    clipped to the domain and runs are unioned when their endpoints meet,
    either directly (branch junctions, mask healing) or through a modular
    identification of the boundary (tau -> tau+-1 and tau -> -1/tau).  A
    directed-Hausdorff pass then merges any groups whose J-images coincide.
    ``merge_groups`` indexes the result's polylines per geometric curve.
    """
    if curves.plane != "tau":
        raise ValueError("expects a tau-plane curve set")
    grid = curves.grid or GridSpec()
    cell = max((grid.re_max - grid.re_min) / grid.nx, (grid.im_max - grid.im_min) / grid.ny)
    eps = junction_cells * cell
    cap = grid.im_max
    runs: list[tuple[str, list[tuple[float, float]]]] = []
    for pl in curves.polylines:
        for run in _clip_to_domain(pl, cap, margin=cell):
            if len(run) >= 2:
                runs.append((pl.label, run))
    n = len(runs)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        pi, pj = find(i), find(j)
        if pi != pj:
            parent[pi] = pj

    # endpoints at the artificial Im-cap are truncation artifacts: different
    # curves approach the same vertical cusp line and would falsely join
    endpoints = []
    for idx, (_, run) in enumerate(runs):
        for p in (run[0], run[-1]):
            if p[1] < cap - 2 * eps:
                endpoints.append((idx, p))
    prox = 1.5 * cell
    for a in range(len(endpoints)):
        ia, pa = endpoints[a]
        images = [pa] + _modular_partners(pa[0], pa[1], prox)
        for b in range(a + 1, len(endpoints)):
            ib, pb = endpoints[b]
            if ia == ib:
                continue
            for (qx, qy) in images:
                if abs(qx - pb[0]) < eps and abs(qy - pb[1]) < eps:
                    union(ia, ib)
                    break
    # J images
    mapped: list[Polyline] = []
    owners: list[int] = []
    for idx, (label, run) in enumerate(runs):
        tau = np.array([x + 1j * y for x, y in run])
        lat = lattice_grid(tau)
        pts = [(float(v.real), float(v.imag)) for v in lat.J if abs(v) <= j_cap]
        if pts:
            mapped.append(Polyline(label, pts))
            owners.append(find(idx))
    # secondary pass: merge groups whose J-images coincide as point sets
    group_ids = sorted(set(owners))
    gparent = {g: g for g in group_ids}

    def gfind(g):
        while gparent[g] != g:
            gparent[g] = gparent[gparent[g]]
            g = gparent[g]
        return g

    arrays = {
        g: np.concatenate([np.array(mapped[i].points) for i in range(len(mapped)) if owners[i] == g])
        for g in group_ids
    }
    for a in range(len(group_ids)):
        for b in range(a + 1, len(group_ids)):
            ga, gb = group_ids[a], group_ids[b]
            if _directed_hausdorff_min(arrays[ga], arrays[gb]) < hausdorff_tol:
                ra, rb = gfind(ga), gfind(gb)
                if ra != rb:
                    gparent[ra] = rb
    groups: dict[int, list[int]] = {}
    for i, g in enumerate(owners):
        groups.setdefault(gfind(g), []).append(i)
    return CurveSet("J", curves.m, mapped, curves.grid, sorted(groups.values()))


def _directed_hausdorff_min(a: np.ndarray, b: np.ndarray) -> float:
    """min of the two directed Hausdorff distances between point arrays."""
    d2 = ((a[:, None, :] - b[None, :, :]) ** 2).sum(axis=2)
    d_ab = np.sqrt(d2.min(axis=1).max())
    d_ba = np.sqrt(d2.min(axis=0).max())
    return float(min(d_ab, d_ba))


def write_csv(curves: CurveSet, stream=None) -> str:
    """`condition_label,segment_id,point_index,re,im` rows."""
    out = stream or io.StringIO()
    writer = csv.writer(out)
    writer.writerow(["condition_label", "segment_id", "point_index", "re", "im"])
    for seg_id, pl in enumerate(curves.polylines):
        for k, (x, y) in enumerate(pl.points):
            writer.writerow([pl.label, seg_id, k, f"{x:.12g}", f"{y:.12g}"])
    return out.getvalue() if stream is None else ""


_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
           "#17becf", "#e377c2", "#7f7f7f", "#bcbd22"]


def write_svg(curves: CurveSet, width: int = 800) -> str:
    """Deterministic standalone SVG with one path per polyline."""
    pts = [p for pl in curves.polylines for p in pl.points]
    if not pts:
        return '<svg xmlns="http://www.w3.org/2000/svg" width="10" height="10"/>'
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    pad = 0.05 * max(x1 - x0, y1 - y0, 1e-9)
    x0, x1, y0, y1 = x0 - pad, x1 + pad, y0 - pad, y1 + pad
    height = int(width * (y1 - y0) / (x1 - x0)) or width
    sx = width / (x1 - x0)
    sy = height / (y1 - y0)
    labels = sorted({pl.label for pl in curves.polylines})
    color_of = {lab: _COLORS[i % len(_COLORS)] for i, lab in enumerate(labels)}
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<title>{curves.plane}-plane curves, m={curves.m}</title>',
    ]
    for pl in curves.polylines:
        d = " ".join(
            f"{'M' if k == 0 else 'L'}{(x - x0) * sx:.2f},{(y1 - y) * sy:.2f}"
            for k, (x, y) in enumerate(pl.points)
        )
        parts.append(
            f'<path d="{d}" fill="none" stroke="{color_of[pl.label]}" '
            f'stroke-width="1" data-label="{pl.label}"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts)
