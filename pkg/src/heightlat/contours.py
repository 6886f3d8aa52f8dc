"""Level-set contours of 2D height configurations on the dual lattice.

The level-a contour set consists of the dual edges crossing primal edges
whose endpoint heights are {a-1, a}. Each dual edge is oriented so the
higher endpoint lies on its left; at saddle plaquettes, where four contour
edges meet, incoming and outgoing strands are paired through the shared
high corner, which keeps strands from crossing. Contours are either closed
loops or open paths ending where the domain runs out of plaquettes.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionError
from .heights import HeightFunction


@dataclass
class Contour:
    """One traced contour. Dual vertex (x, y) sits at lattice point (x+.5, y+.5)."""

    id: int
    kind: str  # "loop" or "path"
    dual_vertices: list
    outermost: bool = False

    @property
    def segments(self):
        return list(zip(self.dual_vertices[:-1], self.dual_vertices[1:]))

    def __len__(self):
        return len(self.dual_vertices) - 1


def _directed_edges(h: HeightFunction, a: int):
    """Directed dual edges as (from_plaquette, to_plaquette, high_corner)."""
    vals = {v: int(x) for v, x in zip(h.domain.extension, h.values)}
    edges = []
    for (x, y), hv in vals.items():
        east = vals.get((x + 1, y))
        if east is not None and {hv, east} == {a - 1, a}:
            # vertical dual segment between plaquettes (x, y-1) and (x, y)
            if hv == a:  # west endpoint high: travel north
                edges.append(((x, y - 1), (x, y), (x, y)))
            else:
                edges.append(((x, y), (x, y - 1), (x + 1, y)))
        north = vals.get((x, y + 1))
        if north is not None and {hv, north} == {a - 1, a}:
            # horizontal dual segment between plaquettes (x-1, y) and (x, y)
            if north == a:  # north endpoint high: travel east
                edges.append(((x - 1, y), (x, y), (x, y + 1)))
            else:
                edges.append(((x, y), (x - 1, y), (x, y)))
    return sorted(edges)


def _trace(edges):
    """Decompose directed dual edges into loops and open paths."""
    outgoing = {}
    for e in edges:
        outgoing.setdefault(e[0], []).append(e)

    def successor(e):
        cands = outgoing.get(e[1], [])
        if not cands:
            return None
        if len(cands) == 1:
            return cands[0]
        matching = [c for c in cands if c[2] == e[2]]  # saddle: keep the high corner
        return matching[0] if matching else None

    succ = {e: successor(e) for e in edges}
    has_pred = {s for s in succ.values() if s is not None}

    contours = []
    used = set()

    def walk(start, kind):
        verts = [start[0], start[1]]
        used.add(start)
        e = succ.get(start)
        while e is not None and e not in used:
            used.add(e)
            verts.append(e[1])
            e = succ.get(e)
        contours.append((kind, verts))

    for e in edges:  # open paths start at edges nothing maps into
        if e not in used and e not in has_pred:
            walk(e, "path")
    for e in edges:  # what remains are cycles
        if e not in used:
            walk(e, "loop")
    return contours


def _encloses(loop_vertices, point_q):
    """Ray-cast parity in quarter-integer units; point never hits a segment."""
    px, py = point_q
    crossings = 0
    for p, q in zip(loop_vertices[:-1], loop_vertices[1:]):
        if p[0] == q[0]:  # vertical dual segment centered at lattice y
            seg_x = 4 * p[0] + 2
            seg_cy = 4 * max(p[1], q[1])
            if seg_x > px and abs(py - seg_cy) < 2:
                crossings += 1
    return crossings % 2 == 1


def _representative_q(verts):
    """Quarter-unit midpoint of the first segment, offset off the dual grid."""
    p, q = verts[0], verts[1]
    if p[0] == q[0]:  # vertical segment: midpoint at integer lattice y
        return (4 * p[0] + 2, 4 * max(p[1], q[1]) + 1)
    return (4 * max(p[0], q[0]), 4 * p[1] + 2 + 1)


def level_set_edges(h: HeightFunction, a: int):
    """Contours of level a, grouped and flagged outermost.

    Outermost means not enclosed by any other same-level loop, decided by
    crossing parity of a ray cast toward the domain's exterior.
    """
    if h.domain.dimension != 2:
        raise DimensionError("level sets require d=2")
    traced = _trace(_directed_edges(h, a))
    contours = [
        Contour(id=i, kind=kind, dual_vertices=verts)
        for i, (kind, verts) in enumerate(traced)
    ]
    loops = [c for c in contours if c.kind == "loop"]
    for c in contours:
        point = _representative_q(c.dual_vertices)
        c.outermost = not any(
            other.id != c.id and _encloses(other.dual_vertices, point) for other in loops
        )
    return contours
