"""Ground truth by exhaustive enumeration on small domains.

Everything here is exact: counts are big integers, probabilities are
rationals. The enumeration walks interior vertices in domain order, branching
over the at most two values admissible given already-assigned neighbors and
pruning with the envelope of the boundary condition. Streams are emitted in
lexicographic order of the value vector.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainTooLarge, NotInterior
from .heights import BoundaryCondition, HeightFunction, envelope
from .lattice import LatticeDomain

DEFAULT_CEILING = 10**8


@dataclass
class ExactDistribution:
    """Probability mass function with exact rational weights."""

    counts: dict
    total_count: int

    def __post_init__(self):
        assert all(c > 0 for c in self.counts.values())
        assert sum(self.counts.values()) == self.total_count

    @property
    def support(self):
        return [(v, Fraction(c, self.total_count)) for v, c in sorted(self.counts.items())]

    def prob(self, value) -> Fraction:
        return Fraction(self.counts.get(value, 0), self.total_count)

    def mean(self) -> Fraction:
        return sum((Fraction(v * c, self.total_count) for v, c in self.counts.items()),
                   Fraction(0))

    def variance(self) -> Fraction:
        mu = self.mean()
        ex2 = sum((Fraction(v * v * c, self.total_count) for v, c in self.counts.items()),
                  Fraction(0))
        return ex2 - mu * mu

    def abs_counts(self) -> dict:
        out = {}
        for v, c in self.counts.items():
            out[abs(v)] = out.get(abs(v), 0) + c
        return out


def _interior_plan(dom: LatticeDomain, tau: BoundaryCondition):
    """Per-vertex assigned-neighbor lists and envelope bounds, in domain order."""
    lo_h, hi_h = envelope(tau)
    lo = lo_h.values.astype(np.int64)
    hi = hi_h.values.astype(np.int64)
    assigned_before = set(int(i) for i in dom.boundary_idx)
    plan = []
    for i in dom.interior_idx:
        nbrs = [int(k) for k in dom.neighbor_idx[i] if k >= 0 and int(k) in assigned_before]
        plan.append((int(i), nbrs, int(lo[i]), int(hi[i])))
        assigned_before.add(int(i))
    return plan


def _estimate_leaves(plan) -> int:
    est = 1
    for _, nbrs, lo, hi in plan:
        est *= 2 if nbrs else (hi - lo) // 2 + 1
        if est > 10**18:
            break
    return est


def count_extensions(dom: LatticeDomain, tau: BoundaryCondition,
                     ceiling: int = DEFAULT_CEILING) -> int:
    """Number of valid extensions of tau, via the same pruned search."""
    n = 0
    for _ in _enumerate_values(dom, tau, ceiling):
        n += 1
    return n


def enumerate_all(dom: LatticeDomain, tau: BoundaryCondition,
                  ceiling: int = DEFAULT_CEILING):
    """Stream every valid extension of tau exactly once, lexicographically."""
    for vals in _enumerate_values(dom, tau, ceiling):
        yield HeightFunction(dom, np.array(vals, dtype=np.int16))


def _enumerate_values(dom, tau, ceiling):
    tau.check_feasible()
    plan = _interior_plan(dom, tau)
    est = _estimate_leaves(plan)
    if est > ceiling:
        raise DomainTooLarge(est, ceiling)

    vals = [0] * dom.n_extension
    for pos, i in enumerate(dom.boundary_idx):
        vals[int(i)] = int(tau.values[pos])

    n_int = len(plan)

    def rec(step):
        if step == n_int:
            yield tuple(vals)
            return
        i, nbrs, lo, hi = plan[step]
        if nbrs:
            mx = max(vals[k] for k in nbrs)
            mn = min(vals[k] for k in nbrs)
            if mx - mn > 2:
                return
            cands = (mx - 1,) if mx - mn == 2 else (mn - 1, mn + 1)
        else:
            cands = range(lo, hi + 1, 2)
        for c in cands:
            if lo <= c <= hi:
                vals[i] = c
                yield from rec(step + 1)

    yield from rec(0)


def enumerate_matrix(dom: LatticeDomain, tau: BoundaryCondition,
                     ceiling: int = DEFAULT_CEILING) -> np.ndarray:
    """All valid extensions as one (count, n_extension) int16 array.

    Same order as :func:`enumerate_all`; materialized for vectorized
    statistics over the whole configuration space.
    """
    tau.check_feasible()
    plan = _interior_plan(dom, tau)
    est = _estimate_leaves(plan)
    if est > ceiling:
        raise DomainTooLarge(est, ceiling)

    mat = np.zeros((1, dom.n_extension), dtype=np.int16)
    for pos, i in enumerate(dom.boundary_idx):
        mat[0, int(i)] = int(tau.values[pos])

    for i, nbrs, lo, hi in plan:
        if nbrs:
            sub = mat[:, nbrs].astype(np.int32)
            mx = sub.max(axis=1)
            mn = sub.min(axis=1)
            low_c = np.where(mx - mn == 2, mx - 1, mn - 1)
            high_c = np.where(mx - mn == 2, mx - 1, mn + 1)
            feas = mx - mn <= 2
        else:
            cands = np.arange(lo, hi + 1, 2, dtype=np.int16)
            if len(cands) != 2:  # unconstrained vertex: expand prefix-major
                rep = np.repeat(np.arange(mat.shape[0]), len(cands))
                mat = mat[rep]
                mat[:, i] = np.tile(cands, rep.size // max(len(cands), 1))
                if mat.shape[0] > ceiling:
                    raise DomainTooLarge(mat.shape[0], ceiling)
                continue
            low_c = np.full(mat.shape[0], lo, dtype=np.int32)
            high_c = np.full(mat.shape[0], hi, dtype=np.int32)
            feas = np.ones(mat.shape[0], dtype=bool)

        ok_lo = feas & (low_c >= lo) & (low_c <= hi)
        ok_hi = feas & (high_c >= lo) & (high_c <= hi) & (high_c != low_c)
        counts = ok_lo.astype(np.int64) + ok_hi.astype(np.int64)
        new_n = int(counts.sum())
        if new_n > ceiling:
            raise DomainTooLarge(new_n, ceiling)
        rep = np.repeat(np.arange(mat.shape[0]), counts)
        new_mat = mat[rep]
        first_slot = np.cumsum(counts) - counts
        col = np.zeros(new_n, dtype=np.int16)
        col[first_slot[ok_lo]] = low_c[ok_lo].astype(np.int16)
        col[(first_slot + ok_lo)[ok_hi]] = high_c[ok_hi].astype(np.int16)
        new_mat[:, i] = col
        mat = new_mat
    return mat


def marginal_at(dom: LatticeDomain, tau: BoundaryCondition, v,
                ceiling: int = DEFAULT_CEILING) -> ExactDistribution:
    """Exact law of the height at one vertex under the uniform measure."""
    i = dom.index[tuple(v)]
    mat = enumerate_matrix(dom, tau, ceiling)
    values, counts = np.unique(mat[:, i], return_counts=True)
    return ExactDistribution(
        {int(a): int(c) for a, c in zip(values, counts)}, int(mat.shape[0])
    )


def conditional_site_law(h: HeightFunction, v) -> ExactDistribution:
    """Heat-bath target: uniform over values compatible with the neighbors."""
    dom = h.domain
    i = dom.index[tuple(v)]
    if not dom.is_interior[i]:
        raise NotInterior(f"{tuple(v)} is not an interior vertex")
    nb = h.values[dom.neighbor_idx[i]]
    lo = int(nb.max()) - 1
    hi = int(nb.min()) + 1
    support = {lo: 1} if lo == hi else {lo: 1, hi: 1}
    return ExactDistribution(support, len(support))


def enumerate_pairs(dom: LatticeDomain, tau_f: BoundaryCondition,
                    tau_g: BoundaryCondition, ceiling: int = DEFAULT_CEILING):
    """Cartesian product of the two single-boundary enumerations, as HomPairs."""
    from .pairs import HomPair

    fs = list(enumerate_all(dom, tau_f, ceiling))
    gs = list(enumerate_all(dom, tau_g, ceiling))
    if len(fs) * len(gs) > ceiling:
        raise DomainTooLarge(len(fs) * len(gs), ceiling)
    for f in fs:
        for g in gs:
            yield HomPair(f, g)


def count_pairs(dom, tau_f, tau_g, ceiling: int = DEFAULT_CEILING) -> int:
    return count_extensions(dom, tau_f, ceiling) * count_extensions(dom, tau_g, ceiling)
