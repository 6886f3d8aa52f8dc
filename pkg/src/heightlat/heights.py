"""Height configurations on a finite domain, their validation and bijections.

A valid configuration assigns an integer to every vertex of the extension,
matching the vertex parity and changing by exactly one across every edge.
Boundary data lives on the outer boundary alone; the cone formulas give its
pointwise maximal and minimal valid extensions, which sandwich every other
extension.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    DimensionError,
    InfeasibleBoundary,
    InvalidHeightFunction,
)
from .lattice import LatticeDomain


class ParityViolation(NamedTuple):
    vertex: tuple

    def __str__(self):
        return f"parity violated at {self.vertex}"


class GradientViolation(NamedTuple):
    u: tuple
    v: tuple

    def __str__(self):
        return f"|h({self.u}) - h({self.v})| != 1"


@dataclass
class HeightFunction:
    """Integer heights over the extension array of a domain."""

    domain: LatticeDomain
    values: np.ndarray  # int16, indexed like domain.extension

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.int16)
        if self.values.shape != (self.domain.n_extension,):
            raise ValueError("values must cover the extension exactly")

    def value_at(self, v) -> int:
        return int(self.values[self.domain.index[tuple(v)]])

    def boundary_values(self) -> np.ndarray:
        return self.values[self.domain.boundary_idx]

    def interior_values(self) -> np.ndarray:
        return self.values[self.domain.interior_idx]

    def copy(self) -> "HeightFunction":
        return HeightFunction(self.domain, self.values.copy())

    def negate(self) -> "HeightFunction":
        return HeightFunction(self.domain, -self.values)

    def as_tuple(self) -> tuple:
        return tuple(int(x) for x in self.values)

    def __eq__(self, other):
        return (
            isinstance(other, HeightFunction)
            and self.domain == other.domain
            and np.array_equal(self.values, other.values)
        )

    def __le__(self, other):
        return bool(np.all(self.values <= other.values))

    def to_json(self) -> dict:
        return {"domain": self.domain.to_json(), "values": [int(x) for x in self.values]}

    @staticmethod
    def from_json(obj) -> "HeightFunction":
        dom = LatticeDomain.from_json(obj["domain"])
        return validate(dom, obj["values"])


def find_violations(domain: LatticeDomain, values) -> list:
    """Every parity and gradient violation of a candidate assignment."""
    vals = np.asarray(values, dtype=np.int64)
    report = []
    bad_parity = np.flatnonzero((vals % 2).astype(np.uint8) != domain.parity)
    report.extend(ParityViolation(domain.extension[i]) for i in bad_parity)
    nbr = domain.neighbor_idx
    for i, v in enumerate(domain.extension):
        for k in nbr[i]:
            if k > i:  # each edge once
                if abs(int(vals[i]) - int(vals[k])) != 1:
                    report.append(GradientViolation(v, domain.extension[k]))
    return report


def validate(domain: LatticeDomain, values) -> HeightFunction:
    """Return the configuration if valid, else raise with the full report."""
    report = find_violations(domain, values)
    if report:
        raise InvalidHeightFunction(report)
    return HeightFunction(domain, np.asarray(values, dtype=np.int16))


def is_valid(domain: LatticeDomain, values) -> bool:
    vals = np.asarray(values, dtype=np.int64)
    if np.any((vals % 2).astype(np.uint8) != domain.parity):
        return False
    nbr = domain.neighbor_idx
    present = nbr >= 0
    diffs = vals[np.where(present, nbr, 0)] - vals[:, None]
    return bool(np.all(np.abs(np.where(present, diffs, 1)) == 1))


# -- boundary conditions -----------------------------------------------------


@dataclass
class BoundaryCondition:
    """Heights on the outer boundary only."""

    domain: LatticeDomain
    values: np.ndarray  # int16, indexed like domain.outer_boundary

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.int16)
        if self.values.shape != (len(self.domain.outer_boundary),):
            raise ValueError("boundary values must cover the outer boundary")

    def value_at(self, v) -> int:
        return int(self.values[self.domain.outer_boundary.index(tuple(v))])

    def is_zero(self) -> bool:
        return bool(np.all(self.values == 0))

    def check_feasible(self):
        """Parity plus pairwise l1-Lipschitz compatibility, else raise.

        These two conditions are exactly what extendability requires: any
        compatible boundary extends to the whole lattice through the cone
        construction below.
        """
        dom = self.domain
        bpar = dom.parity[dom.boundary_idx]
        bad = np.flatnonzero((self.values % 2).astype(np.uint8) != bpar)
        if bad.size:
            v = dom.extension[dom.boundary_idx[bad[0]]]
            raise InfeasibleBoundary(f"parity violated at boundary vertex {v}")
        coords = dom.coords[dom.boundary_idx].astype(np.int64)
        vals = self.values.astype(np.int64)
        dist = np.abs(coords[:, None, :] - coords[None, :, :]).sum(axis=2)
        gap = np.abs(vals[:, None] - vals[None, :])
        bad_pair = np.argwhere(gap > dist)
        if bad_pair.size:
            i, j = bad_pair[0]
            u = dom.extension[dom.boundary_idx[i]]
            w = dom.extension[dom.boundary_idx[j]]
            raise InfeasibleBoundary(f"|tau({u}) - tau({w})| exceeds their l1 distance")


def zero_boundary(domain: LatticeDomain) -> BoundaryCondition:
    bc = BoundaryCondition(domain, np.zeros(len(domain.outer_boundary), dtype=np.int16))
    bc.check_feasible()
    return bc


def boundary_of(h: HeightFunction) -> BoundaryCondition:
    return BoundaryCondition(h.domain, h.boundary_values())


def _cone_bounds(tau: BoundaryCondition):
    """Pointwise (min, max) over the extension of all valid extensions of tau."""
    dom = tau.domain
    bc = dom.coords[dom.boundary_idx].astype(np.int64)
    dist = np.abs(dom.coords[:, None, :].astype(np.int64) - bc[None, :, :]).sum(axis=2)
    vals = tau.values.astype(np.int64)
    upper = (vals[None, :] + dist).min(axis=1)
    lower = (vals[None, :] - dist).max(axis=1)
    return lower, upper


def extend_max(tau: BoundaryCondition) -> HeightFunction:
    """Pointwise largest valid extension: min over boundary of value plus distance."""
    tau.check_feasible()
    _, upper = _cone_bounds(tau)
    return HeightFunction(tau.domain, upper.astype(np.int16))


def extend_min(tau: BoundaryCondition) -> HeightFunction:
    """Pointwise smallest valid extension, mirror image of extend_max."""
    tau.check_feasible()
    lower, _ = _cone_bounds(tau)
    return HeightFunction(tau.domain, lower.astype(np.int16))


def envelope(tau: BoundaryCondition):
    """(extend_min, extend_max) computed in one pass."""
    tau.check_feasible()
    lower, upper = _cone_bounds(tau)
    dom = tau.domain
    return (
        HeightFunction(dom, lower.astype(np.int16)),
        HeightFunction(dom, upper.astype(np.int16)),
    )


# -- bijections and single-configuration statistics --------------------------


def to_three_coloring(h: HeightFunction) -> np.ndarray:
    """Heights mod 3; adjacent vertices always receive distinct colors."""
    return np.mod(h.values, 3).astype(np.int8)


def is_proper_coloring(domain: LatticeDomain, colors) -> bool:
    colors = np.asarray(colors)
    nbr = domain.neighbor_idx
    present = nbr >= 0
    same = (colors[np.where(present, nbr, 0)] == colors[:, None]) & present
    return not bool(same.any())


_SIX_VERTEX_TYPES = {
    frozenset(("N", "E")): 1,
    frozenset(("N", "S")): 2,
    frozenset(("N", "W")): 3,
    frozenset(("E", "S")): 4,
    frozenset(("E", "W")): 5,
    frozenset(("S", "W")): 6,
}


@dataclass
class SixVertexConfig:
    """Arrow configuration on dual edges of a 2D domain.

    ``horizontal_arrows`` maps a horizontal primal edge, keyed by its west
    endpoint, to +1 when the crossing dual arrow points north (west endpoint
    higher) and -1 when south. ``vertical_arrows`` maps a vertical primal
    edge, keyed by its south endpoint, to +1 for east (north endpoint higher)
    and -1 for west. ``plaquette_types`` classifies every interior dual
    vertex, keyed by the southwest corner of its plaquette, into the six
    two-in-two-out patterns; ``type_counts`` tallies them.
    """

    horizontal_arrows: dict
    vertical_arrows: dict
    plaquette_types: dict
    type_counts: Counter


def to_six_vertex(h: HeightFunction) -> SixVertexConfig:
    """Orient dual edges so the higher endpoint sits on the arrow's left."""
    dom = h.domain
    if dom.dimension != 2:
        raise DimensionError("six-vertex conversion requires d=2")
    vals = {v: int(x) for v, x in zip(dom.extension, h.values)}
    horiz = {}
    vert = {}
    for (x, y), hv in vals.items():
        e = vals.get((x + 1, y))
        if e is not None:
            horiz[(x, y)] = 1 if hv > e else -1
        n = vals.get((x, y + 1))
        if n is not None:
            vert[(x, y)] = 1 if n > hv else -1

    types = {}
    counts = Counter()
    for (x, y) in vals:
        corners = ((x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1))
        if not all(c in vals for c in corners):
            continue
        # Outgoing dual half-edges at the plaquette center (x+.5, y+.5).
        out = set()
        if horiz[(x, y + 1)] == 1:  # crossing the top primal edge, pointing north
            out.add("N")
        if horiz[(x, y)] == -1:  # bottom edge, pointing south
            out.add("S")
        if vert[(x + 1, y)] == 1:  # right edge, pointing east
            out.add("E")
        if vert[(x, y)] == -1:  # left edge, pointing west
            out.add("W")
        if len(out) != 2:
            raise AssertionError(f"ice rule broken at plaquette {(x, y)}: out={out}")
        t = _SIX_VERTEX_TYPES[frozenset(out)]
        types[(x, y)] = t
        counts[t] += 1
    return SixVertexConfig(horiz, vert, types, counts)


def diagonal_disagreements(h: HeightFunction) -> int:
    """Count of unordered diagonally adjacent pairs with unequal heights."""
    dom = h.domain
    if dom.dimension != 2:
        raise DimensionError("diagonal adjacency requires d=2")
    vals = {v: int(x) for v, x in zip(dom.extension, h.values)}
    n = 0
    for (x, y), hv in vals.items():
        for dx, dy in ((1, 1), (1, -1)):  # each unordered pair once
            other = vals.get((x + dx, y + dy))
            if other is not None and other != hv:
                n += 1
    return n
