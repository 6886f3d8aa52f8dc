"""Finite sub-domains of the Z^d lattice.

Vertices are plain integer tuples. A domain knows its interior, its external
vertex boundary (the vertices outside that touch the interior), their union,
and a fixed lexicographic ordering used everywhere for indexing, enumeration
and reproducible sweeps.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError

Vertex = tuple


def l1_norm(v) -> int:
    return sum(abs(c) for c in v)


def vertex_parity(v) -> int:
    """0 for the even sublattice, 1 for the odd one."""
    return l1_norm(v) % 2


def neighbors(v):
    """The 2d lattice neighbors of v, axis by axis, minus step before plus."""
    out = []
    for i in range(len(v)):
        for step in (-1, 1):
            w = list(v)
            w[i] += step
            out.append(tuple(w))
    return out


def outer_boundary_of(vertices, d):
    """External vertex boundary of a finite set: outside vertices adjacent to it."""
    vset = set(vertices)
    for v in vset:
        if len(v) != d:
            raise DimensionError(f"vertex {v} is not {d}-dimensional")
    bdry = {w for v in vset for w in neighbors(v) if w not in vset}
    return sorted(bdry)


@dataclass(frozen=True)
class Grid2D:
    """Dense bounding-box embedding of a 2-dimensional domain.

    Cell (i, j) of the ``shape`` array corresponds to lattice coordinate
    ``(i + offset[0], j + offset[1])``. The box pads the extension by one cell
    on every side so four-neighbor stencils never leave the array.
    """

    offset: tuple
    shape: tuple
    cell_of_ext: np.ndarray       # flat cell id of each extension vertex
    interior_mask: np.ndarray     # (H, W) bool
    extension_mask: np.ndarray    # (H, W) bool
    parity_grid: np.ndarray       # (H, W) uint8, parity of the lattice coordinate

    def cell(self, v):
        return (v[0] - self.offset[0], v[1] - self.offset[1])


class LatticeDomain:
    """A finite interior, its computed boundary, and array indexing for both.

    The interior, boundary and their union ("extension") are each kept in
    lexicographic order; ``index`` maps a vertex to its slot in the extension
    array. Instances are immutable after construction and safe to share
    between workers.
    """

    def __init__(self, dimension: int, interior):
        if dimension < 1:
            raise DimensionError("dimension must be >= 1")
        self.dimension = dimension
        self.interior = tuple(sorted(set(map(tuple, interior))))
        if not self.interior:
            raise ValueError("interior must be non-empty")
        self.outer_boundary = tuple(outer_boundary_of(self.interior, dimension))
        self.extension = tuple(sorted(self.interior + self.outer_boundary))
        self.index = {v: i for i, v in enumerate(self.extension)}

        n_ext = len(self.extension)
        self.coords = np.array(self.extension, dtype=np.int32).reshape(n_ext, dimension)
        self.parity = (np.abs(self.coords).sum(axis=1) % 2).astype(np.uint8)
        self.is_interior = np.zeros(n_ext, dtype=bool)
        for v in self.interior:
            self.is_interior[self.index[v]] = True
        self.interior_idx = np.flatnonzero(self.is_interior).astype(np.int32)
        self.boundary_idx = np.flatnonzero(~self.is_interior).astype(np.int32)

        # Neighbor table over the extension; -1 where the neighbor leaves it.
        # Interior rows never contain -1 by construction of the boundary.
        nbr = np.full((n_ext, 2 * dimension), -1, dtype=np.int32)
        for i, v in enumerate(self.extension):
            for j, w in enumerate(neighbors(v)):
                k = self.index.get(w)
                if k is not None:
                    nbr[i, j] = k
        self.neighbor_idx = nbr
        self._grid2d = None
        self._ball_radius = None

    # -- basic queries ---------------------------------------------------

    @property
    def n_interior(self):
        return len(self.interior)

    @property
    def n_extension(self):
        return len(self.extension)

    def __contains__(self, v):
        return tuple(v) in self.index

    def __eq__(self, other):
        return (
            isinstance(other, LatticeDomain)
            and self.dimension == other.dimension
            and self.interior == other.interior
        )

    def __hash__(self):
        return hash((self.dimension, self.interior))

    def __repr__(self):
        return (
            f"LatticeDomain(d={self.dimension}, |interior|={self.n_interior}, "
            f"|boundary|={len(self.outer_boundary)})"
        )

    def interior_neighbors_idx(self):
        """Neighbor table restricted to interior rows, shape (n_interior, 2d)."""
        return self.neighbor_idx[self.interior_idx]

    def grid2d(self) -> Grid2D:
        """Dense 2D embedding, built on first use."""
        if self.dimension != 2:
            raise DimensionError("grid embedding requires d=2")
        if self._grid2d is None:
            lo = self.coords.min(axis=0) - 1
            hi = self.coords.max(axis=0) + 1
            shape = (int(hi[0] - lo[0] + 1), int(hi[1] - lo[1] + 1))
            ii = self.coords[:, 0] - lo[0]
            jj = self.coords[:, 1] - lo[1]
            cell_of_ext = (ii * shape[1] + jj).astype(np.int64)
            interior_mask = np.zeros(shape, dtype=bool)
            extension_mask = np.zeros(shape, dtype=bool)
            extension_mask.flat[cell_of_ext] = True
            interior_mask.flat[cell_of_ext[self.is_interior]] = True
            gi, gj = np.meshgrid(
                np.arange(shape[0]) + lo[0], np.arange(shape[1]) + lo[1], indexing="ij"
            )
            parity_grid = ((np.abs(gi) + np.abs(gj)) % 2).astype(np.uint8)
            self._grid2d = Grid2D(
                offset=(int(lo[0]), int(lo[1])),
                shape=shape,
                cell_of_ext=cell_of_ext,
                interior_mask=interior_mask,
                extension_mask=extension_mask,
                parity_grid=parity_grid,
            )
        return self._grid2d

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        if getattr(self, "_ball_radius", None) is not None:
            return {"dimension": self.dimension, "kind": "ball", "L": self._ball_radius}
        return {
            "dimension": self.dimension,
            "kind": "explicit",
            "vertices": [list(v) for v in self.interior],
        }

    @staticmethod
    def from_json(obj) -> "LatticeDomain":
        kind = obj.get("kind", "explicit")
        if kind == "ball":
            return ball_domain(obj["dimension"], obj["L"])
        return LatticeDomain(obj["dimension"], [tuple(v) for v in obj["vertices"]])

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def ball_domain(d: int, L: int) -> LatticeDomain:
    """The graph ball of radius L: all vertices with l1 norm at most L."""
    if d < 1:
        raise DimensionError("dimension must be >= 1")
    if L < 0:
        raise ValueError("radius must be >= 0")
    rng = range(-L, L + 1)
    interior = [v for v in itertools.product(rng, repeat=d) if l1_norm(v) <= L]
    dom = LatticeDomain(d, interior)
    dom._ball_radius = L
    return dom


def box_domain(d: int, lo, hi) -> LatticeDomain:
    """Axis-aligned box with inclusive corners, handy for window-style tests."""
    ranges = [range(lo[i], hi[i] + 1) for i in range(d)]
    return LatticeDomain(d, itertools.product(*ranges))
