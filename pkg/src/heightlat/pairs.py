"""Transformations on ordered pairs of height functions.

The central observation: on any edge leaving a connected component of
{f > g} (or of {f != g}) the two functions agree, because f - g is even and
changes by at most 2 across an edge. Swapping or equalizing the pair on a
union of whole components therefore yields another valid pair. These maps
are the combinatorial engine behind stochastic comparison of the uniform
measures; here they are implemented verbatim on finite domains, where
"infinite component" becomes "component touching the outer boundary".
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidSwap, PreconditionViolation, WindowTooSmall
from .heights import HeightFunction, find_violations, is_valid
from .lattice import LatticeDomain

PREDICATES = ("f>g", "f<g", "f!=g", "f>=g+2k")


@dataclass
class HomPair:
    """An ordered pair of valid height functions on one domain."""

    f: HeightFunction
    g: HeightFunction

    def __post_init__(self):
        if self.f.domain != self.g.domain:
            raise PreconditionViolation("pair members live on different domains")
        if np.any((self.f.values - self.g.values) % 2 != 0):
            raise PreconditionViolation("f - g must be even everywhere")

    @property
    def domain(self) -> LatticeDomain:
        return self.f.domain

    def as_tuple(self):
        return (self.f.as_tuple(), self.g.as_tuple())

    def __eq__(self, other):
        return isinstance(other, HomPair) and self.f == other.f and self.g == other.g


@dataclass
class Cluster:
    """One connected component of a predicate set."""

    id: int
    key_vertex: tuple  # smallest member in domain order; addresses the component
    vertices: tuple    # extension indices
    anchored: bool     # touches the outer boundary


@dataclass
class ClusterLabeling:
    predicate: str
    k: int
    labels: np.ndarray  # extension-indexed component id, -1 outside the set
    clusters: list

    def anchored(self):
        return [c for c in self.clusters if c.anchored]

    def finite(self):
        return [c for c in self.clusters if not c.anchored]

    def to_json(self) -> dict:
        return {
            "predicate": self.predicate,
            "k": self.k,
            "clusters": [
                {
                    "key_vertex": list(c.key_vertex),
                    "size": len(c.vertices),
                    "anchored": c.anchored,
                }
                for c in self.clusters
            ],
        }


def _member_mask(pair: HomPair, predicate: str, k: int) -> np.ndarray:
    diff = pair.f.values.astype(np.int32) - pair.g.values.astype(np.int32)
    if predicate == "f>g":
        return diff > 0
    if predicate == "f<g":
        return diff < 0
    if predicate == "f!=g":
        return diff != 0
    if predicate == "f>=g+2k":
        return diff >= 2 * k
    raise ValueError(f"unknown predicate {predicate!r}; use one of {PREDICATES}")


def components(pair: HomPair, predicate: str, k: int = 0) -> ClusterLabeling:
    """Connected components of the predicate set, flagged if they touch the boundary."""
    dom = pair.domain
    member = _member_mask(pair, predicate, k)
    labels = np.full(dom.n_extension, -1, dtype=np.int32)
    clusters = []
    nbr = dom.neighbor_idx
    for start in range(dom.n_extension):
        if not member[start] or labels[start] >= 0:
            continue
        cid = len(clusters)
        stack = [start]
        labels[start] = cid
        comp = []
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in nbr[i]:
                if j >= 0 and member[j] and labels[j] < 0:
                    labels[j] = cid
                    stack.append(j)
        comp.sort()
        anchored = bool(np.any(~dom.is_interior[comp]))
        clusters.append(
            Cluster(cid, dom.extension[comp[0]], tuple(comp), anchored)
        )
    return ClusterLabeling(predicate, k, labels, clusters)


def _apply_on_mask(pair: HomPair, mask: np.ndarray, mode: str) -> HomPair:
    f, g = pair.f.values, pair.g.values
    if mode == "swap":
        new_f = np.where(mask, g, f)
        new_g = np.where(mask, f, g)
    elif mode == "to_f":
        new_f, new_g = f.copy(), np.where(mask, f, g)
    elif mode == "to_g":
        new_f, new_g = np.where(mask, g, f), g.copy()
    else:  # pragma: no cover
        raise ValueError(mode)
    dom = pair.domain
    for vals in (new_f, new_g):
        if not is_valid(dom, vals):
            raise InvalidSwap(
                f"transform '{mode}' broke validity: {find_violations(dom, vals)[:3]}"
            )
    return HomPair(HeightFunction(dom, new_f), HeightFunction(dom, new_g))


def swap_anchored(pair: HomPair, predicate: str = "f>g") -> HomPair:
    """Exchange f and g on every boundary-anchored component of the predicate set."""
    lab = components(pair, predicate)
    mask = np.zeros(pair.domain.n_extension, dtype=bool)
    for c in lab.anchored():
        mask[list(c.vertices)] = True
    return _apply_on_mask(pair, mask, "swap")


def _epsilon_bit(eps, cluster: Cluster):
    if isinstance(eps, int):
        return eps & 1
    if callable(eps):
        return int(eps(cluster)) & 1
    try:
        return int(eps[cluster.key_vertex]) & 1
    except KeyError:
        raise PreconditionViolation(
            f"epsilon undefined for component keyed by {cluster.key_vertex}"
        ) from None


def swap_finite(pair: HomPair, eps) -> HomPair:
    """Exchange f and g on the non-anchored disagreement components with bit 1.

    eps may be a constant 0/1, a map keyed by the component's smallest vertex,
    or a callable on Cluster. For fixed eps this is an involution, and it
    pushes the uniform pair measure to itself.
    """
    lab = components(pair, "f!=g")
    mask = np.zeros(pair.domain.n_extension, dtype=bool)
    for c in lab.finite():
        if _epsilon_bit(eps, c):
            mask[list(c.vertices)] = True
    return _apply_on_mask(pair, mask, "swap")


def equalize(pair: HomPair, eps) -> HomPair:
    """Collapse each non-anchored disagreement component to f (bit 0) or g (bit 1).

    Preserves each coordinate's marginal law. With eps identically 0 and no
    anchored {f<g} component the result is ordered: first coordinate above
    the second everywhere.
    """
    lab = components(pair, "f!=g")
    mask_f = np.zeros(pair.domain.n_extension, dtype=bool)
    mask_g = np.zeros(pair.domain.n_extension, dtype=bool)
    for c in lab.finite():
        (mask_g if _epsilon_bit(eps, c) else mask_f)[list(c.vertices)] = True
    out = _apply_on_mask(pair, mask_f, "to_f")
    return _apply_on_mask(out, mask_g, "to_g")


# -- the log-concavity injection ----------------------------------------------


def _component_of(dom: LatticeDomain, member: np.ndarray, start: int):
    stack = [start]
    seen = {start}
    while stack:
        i = stack.pop()
        for j in dom.neighbor_idx[i]:
            j = int(j)
            if j >= 0 and member[j] and j not in seen:
                seen.add(j)
                stack.append(j)
    return seen


def lc_inject(h_plus: HeightFunction, h_minus: HeightFunction, v, m: int, k: int):
    """Map a pair with heights (m+2k, m-2k) at v to a pair with height m at both.

    Shifts h_plus down by 2k on the connected region around v where
    h_plus > h_minus + 2k, splicing in h_minus outside it, and symmetrically
    for the second output. The region is recoverable from the output (see
    :func:`lc_recover_region`), so the map is injective; its existence is
    exactly why single-site marginals are log-concave along a parity class.
    """
    dom = h_plus.domain
    if h_minus.domain != dom:
        raise PreconditionViolation("inputs live on different domains")
    if k < 1:
        raise PreconditionViolation("k must be >= 1")
    i = dom.index[tuple(v)]
    if int(h_plus.values[i]) != m + 2 * k:
        raise PreconditionViolation(f"h_plus must equal m+2k at {v}")
    if int(h_minus.values[i]) != m - 2 * k:
        raise PreconditionViolation(f"h_minus must equal m-2k at {v}")
    if not np.array_equal(
        h_plus.values[dom.boundary_idx], h_minus.values[dom.boundary_idx]
    ):
        raise PreconditionViolation("inputs must share boundary values")

    member = h_plus.values.astype(np.int32) - h_minus.values.astype(np.int32) > 2 * k
    region = _component_of(dom, member, i)
    mask = np.zeros(dom.n_extension, dtype=bool)
    mask[list(region)] = True

    h = np.where(mask, h_plus.values - 2 * k, h_minus.values).astype(np.int16)
    h_prime = np.where(mask, h_minus.values + 2 * k, h_plus.values).astype(np.int16)
    for vals in (h, h_prime):
        if not is_valid(dom, vals):
            raise InvalidSwap(f"injection output invalid: {find_violations(dom, vals)[:3]}")
    return HeightFunction(dom, h), HeightFunction(dom, h_prime)


def lc_recover_region(h: HeightFunction, h_prime: HeightFunction, v, k: int):
    """The region used by lc_inject, recovered from its output pair."""
    dom = h.domain
    i = dom.index[tuple(v)]
    member = h.values.astype(np.int32) - h_prime.values.astype(np.int32) > -2 * k
    return frozenset(dom.extension[j] for j in _component_of(dom, member, i))


# -- trifurcation diagnostics on binary windows --------------------------------


def comb_window(halfwidth: int):
    """The comb counterexample on a square window around the origin.

    Cell (x, y) is occupied iff x is even or y is zero. Returns the occupancy
    array and the coordinate of its [0, 0] cell.
    """
    n = 2 * halfwidth + 1
    xs = np.arange(-halfwidth, halfwidth + 1)
    omega = (np.abs(xs[:, None]) % 2 == 0) | (xs[None, :] == 0)
    assert omega.shape == (n, n)
    return omega, (-halfwidth, -halfwidth)


def _window_components(omega: np.ndarray):
    """Label 4-connected components; flag the ones touching the window edge."""
    A, B = omega.shape
    labels = np.full((A, B), -1, dtype=np.int32)
    comps = []
    for sx in range(A):
        for sy in range(B):
            if not omega[sx, sy] or labels[sx, sy] >= 0:
                continue
            cid = len(comps)
            stack = [(sx, sy)]
            labels[sx, sy] = cid
            cells = []
            touches = False
            while stack:
                x, y = stack.pop()
                cells.append((x, y))
                if x in (0, A - 1) or y in (0, B - 1):
                    touches = True
                for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                    a, b = x + dx, y + dy
                    if 0 <= a < A and 0 <= b < B and omega[a, b] and labels[a, b] < 0:
                        labels[a, b] = cid
                        stack.append((a, b))
            comps.append((cells, touches))
    return labels, comps


def _connected_subsets(cells, adjacency):
    """Every non-empty connected subset of the given cells, each exactly once."""
    order = sorted(cells)
    rank = {c: i for i, c in enumerate(order)}
    for i, root in enumerate(order):
        # subsets whose smallest cell is root
        def rec(sub, frontier, excluded):
            if not frontier:
                yield frozenset(sub)
                return
            c = frontier[0]
            rest = frontier[1:]
            yield from rec(sub, rest, excluded | {c})
            grown = sub | {c}
            new_front = rest + [
                w for w in adjacency[c]
                if rank.get(w, -1) > i and w not in grown
                and w not in excluded and w not in rest
            ]
            yield from rec(grown, new_front, excluded)

        start_front = sorted(w for w in adjacency[root] if rank.get(w, -1) > i)
        yield from rec({root}, start_front, set())


def _count_boundary_components(comp_cells, boundary_flags, adjacency, removed):
    """Boundary-touching components of the cell set minus `removed`; stops at 3."""
    seen = set(removed)
    found = 0
    for c in comp_cells:
        if c in seen:
            continue
        stack = [c]
        seen.add(c)
        touches = False
        while stack:
            x = stack.pop()
            if boundary_flags[x]:
                touches = True
            for w in adjacency[x]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if touches:
            found += 1
            if found >= 3:
                return found
    return found


def is_trifurcation_ball(omega: np.ndarray, origin, v, M: int, *,
                         alternative: bool = False, max_m: int = 3) -> bool:
    """Whether the ball v + Lambda(M) trifurcates some spanning cluster of omega.

    A spanning cluster is a component touching the window edge (the finite
    stand-in for an infinite cluster). Under the real definition some
    connected subset D of the cluster's trace in the ball must leave at least
    three spanning pieces behind; the alternative definition removes the
    whole trace instead, which is the reading the comb example defeats.
    """
    if M > max_m and not alternative:
        raise ValueError(f"exhaustive subset search is capped at M={max_m}")
    A, B = omega.shape
    ox, oy = origin
    ball = [
        (v[0] + dx - ox, v[1] + dy - oy)
        for dx in range(-M, M + 1)
        for dy in range(-M + abs(dx), M - abs(dx) + 1)
    ]
    if any(not (1 <= x < A - 1 and 1 <= y < B - 1) for x, y in ball):
        raise WindowTooSmall("the window must contain v + Lambda(M) with margin 1")
    ball_set = set(ball)

    _, comps = _window_components(omega)
    for cells, touches in comps:
        if not touches:
            continue
        trace = sorted(set(cells) & ball_set)
        if not trace:
            continue
        cell_set = set(cells)
        adjacency = {
            c: [w for w in ((c[0] + 1, c[1]), (c[0] - 1, c[1]),
                            (c[0], c[1] + 1), (c[0], c[1] - 1)) if w in cell_set]
            for c in cells
        }
        flags = {c: (c[0] in (0, A - 1) or c[1] in (0, B - 1)) for c in cells}
        if alternative:
            if _count_boundary_components(cells, flags, adjacency, set(trace)) >= 3:
                return True
            continue
        trace_adj = {c: [w for w in adjacency[c] if w in ball_set] for c in trace}
        for d_set in _connected_subsets(trace, trace_adj):
            if _count_boundary_components(cells, flags, adjacency, d_set) >= 3:
                return True
    return False
