"""Exact and empirical statistical checks for the uniform height measure.

Exact modes work on the full enumeration matrix with rational arithmetic, so
a reported violation is a genuine counterexample, never rounding. Empirical
modes wrap the same functionals around sampled batches with explicit
tolerance policy: three standard errors for covariances, a
Dvoretzky-Kiefer-Wolfowitz band for distribution-function comparisons.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import BoundaryNotEven, NotNested, ParityMixedSupport
from .heights import HeightFunction, zero_boundary
from .lattice import LatticeDomain
from .oracle import DEFAULT_CEILING, enumerate_matrix, marginal_at


@dataclass
class EmpiricalDistribution:
    """Observed counts per value with their sampling provenance."""

    counts: dict
    n: int
    seed_info: tuple = ()

    def __post_init__(self):
        assert sum(self.counts.values()) == self.n

    @staticmethod
    def from_values(values, seed_info=()):
        counts = {}
        for x in values:
            counts[int(x)] = counts.get(int(x), 0) + 1
        return EmpiricalDistribution(counts, len(values), tuple(seed_info))

    def prob(self, value) -> Fraction:
        return Fraction(self.counts.get(value, 0), self.n)


def _require_even_boundary(domain: LatticeDomain):
    if np.any(domain.parity[domain.boundary_idx] != 0):
        raise BoundaryNotEven("the outer boundary must lie on the even sublattice")


# -- monotone test functions ---------------------------------------------------


@dataclass(frozen=True)
class MonotoneIndicatorMax:
    """max over terms of weight * 1{x >= thresholds pointwise}; nondecreasing."""

    terms: tuple  # ((weight, vertex_indices, thresholds), ...)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(x)
        acc = np.zeros(x.shape[0], dtype=np.int64)
        for w, idx, th in self.terms:
            fired = (x[:, list(idx)] >= np.array(th)).all(axis=1)
            np.maximum(acc, w * fired, out=acc)
        return acc


def random_monotone_pairs(domain: LatticeDomain, count: int, seed: int):
    """Seeded generator of monotone function pairs on nonnegative fields."""
    r = random.Random(seed)
    n = domain.n_extension

    def one():
        terms = []
        for _ in range(r.randint(1, 3)):
            size = r.randint(1, min(4, n))
            idx = tuple(sorted(r.sample(range(n), size)))
            th = tuple(r.randint(1, 3) for _ in idx)
            terms.append((r.randint(1, 3), idx, th))
        return MonotoneIndicatorMax(tuple(terms))

    return [(one(), one()) for _ in range(count)]


@dataclass
class FkgReport:
    covariances: list           # Fraction (exact) or float (empirical)
    standard_errors: list       # empty in exact mode
    mode: str
    all_nonnegative: bool


def fkg_check_abs(domain: LatticeDomain, fn_pairs=None, *, count: int = 100,
                  seed: int = 0, mode: str = "exact", samples: np.ndarray = None,
                  ceiling: int = DEFAULT_CEILING) -> FkgReport:
    """Covariances of monotone functions of |f| under the zero-boundary measure.

    Positive association says every such covariance is nonnegative. Exact
    mode enumerates; empirical mode takes a (n, n_extension) matrix of
    sampled heights and flags only violations beyond three standard errors.
    """
    _require_even_boundary(domain)
    if fn_pairs is None:
        fn_pairs = random_monotone_pairs(domain, count, seed)

    if mode == "exact":
        mat = np.abs(enumerate_matrix(domain, zero_boundary(domain), ceiling))
        n = mat.shape[0]
        covs = []
        for phi, psi in fn_pairs:
            a = phi(mat)
            b = psi(mat)
            num = n * int(np.dot(a, b)) - int(a.sum()) * int(b.sum())
            covs.append(Fraction(num, n * n))
        return FkgReport(covs, [], "exact", all(c >= 0 for c in covs))

    if samples is None:
        raise ValueError("empirical mode needs a samples matrix")
    mat = np.abs(np.asarray(samples))
    n = mat.shape[0]
    covs, ses, ok = [], [], True
    for phi, psi in fn_pairs:
        a = phi(mat).astype(float)
        b = psi(mat).astype(float)
        prod = (a - a.mean()) * (b - b.mean())
        cov = prod.mean()
        se = prod.std(ddof=1) / math.sqrt(n)
        covs.append(cov)
        ses.append(se)
        ok &= cov >= -3 * se
    return FkgReport(covs, ses, "empirical", ok)


# -- stochastic domination of |f| ----------------------------------------------


@dataclass
class DominationReport:
    vertices: list
    violations: list  # (vertex, threshold, cdf_outer, cdf_inner)
    mode: str

    @property
    def ok(self) -> bool:
        return not self.violations


def _abs_cdf_counts(mat_col: np.ndarray, tmax: int) -> np.ndarray:
    """counts of |value| <= t for t = 0..tmax."""
    a = np.abs(mat_col.astype(np.int64))
    return np.array([(a <= t).sum() for t in range(tmax + 1)], dtype=np.int64)


def domination_check_abs(inner: LatticeDomain, outer: LatticeDomain, *,
                         mode: str = "exact", inner_samples=None, outer_samples=None,
                         alpha: float = 1e-3,
                         ceiling: int = DEFAULT_CEILING) -> DominationReport:
    """Check |f_outer| restricted to the inner extension dominates |f_inner|.

    Pointwise in the vertex and the threshold: the outer measure's chance of
    staying below any level never exceeds the inner measure's.
    """
    if not set(inner.interior) <= set(outer.interior):
        raise NotNested("the first domain must sit inside the second")
    if not set(inner.extension) <= set(outer.extension):
        raise NotNested("the inner extension must be covered by the outer one")
    _require_even_boundary(inner)
    _require_even_boundary(outer)

    if mode == "exact":
        in_mat = enumerate_matrix(inner, zero_boundary(inner), ceiling)
        out_mat = enumerate_matrix(outer, zero_boundary(outer), ceiling)
    else:
        in_mat = np.asarray(inner_samples)
        out_mat = np.asarray(outer_samples)
    n_in = in_mat.shape[0]
    n_out = out_mat.shape[0]
    band = 0.0
    if mode != "exact":
        band = math.sqrt(math.log(2 / alpha) / (2 * n_in)) + math.sqrt(
            math.log(2 / alpha) / (2 * n_out)
        )

    violations = []
    for v in inner.extension:
        ci = inner.index[v]
        co = outer.index[v]
        tmax = int(max(np.abs(in_mat[:, ci]).max(), np.abs(out_mat[:, co]).max()))
        cdf_in = _abs_cdf_counts(in_mat[:, ci], tmax)
        cdf_out = _abs_cdf_counts(out_mat[:, co], tmax)
        for t in range(tmax + 1):
            if mode == "exact":
                bad = int(cdf_out[t]) * n_in > int(cdf_in[t]) * n_out
            else:
                bad = cdf_out[t] / n_out > cdf_in[t] / n_in + band
            if bad:
                violations.append(
                    (v, t, Fraction(int(cdf_out[t]), n_out), Fraction(int(cdf_in[t]), n_in))
                )
    return DominationReport(list(inner.extension), violations, mode)


# -- single-site distribution shape --------------------------------------------


@dataclass
class LogConcavityResult:
    holds: bool
    worst_ratio: object  # Fraction, float or None when no comparison applies
    witness: tuple = ()


def log_concavity_check(dist) -> LogConcavityResult:
    """P(m)^2 >= P(m+2k) P(m-2k) along the parity class of the support."""
    counts = dist.counts
    values = sorted(counts)
    if len({v % 2 for v in values}) > 1:
        raise ParityMixedSupport(f"support mixes parities: {values}")
    if len(values) == 1:
        return LogConcavityResult(True, None)
    lo, hi = values[0], values[-1]
    total = sum(counts.values())

    def p(v):
        return Fraction(counts.get(v, 0), total)

    holds = True
    worst = Fraction(0)
    witness = ()
    for m in range(lo, hi + 1, 2):
        for k in range(1, (hi - lo) // 2 + 1):
            lhs = p(m) ** 2
            rhs = p(m + 2 * k) * p(m - 2 * k)
            if rhs == 0:
                continue
            if lhs == 0:
                return LogConcavityResult(False, math.inf, (m, k))
            ratio = rhs / lhs
            if ratio > worst:
                worst, witness = ratio, (m, k)
            if ratio > 1:
                holds = False
    return LogConcavityResult(holds, worst if worst > 0 else None, witness)


@dataclass
class DelocalizationSummary:
    theta: Fraction          # mass at zero
    m_hat: int               # half the first even level lighter than theta/2
    tail: list               # (M, P(|f| > M))


def delocalization_quantities(dist) -> DelocalizationSummary:
    """theta, the half-level index m_hat, and the absolute-value tail profile.

    The bound m_hat < 2 / theta always holds for these marginals; it is
    asserted and a violation raises, since it would mean the input is not a
    zero-boundary marginal (or is too noisy to use).
    """
    counts = dist.counts
    total = sum(counts.values())
    theta = Fraction(counts.get(0, 0), total)
    if theta == 0:
        raise ValueError("P(0) vanishes; not a zero-boundary site marginal")
    n = 2
    while Fraction(counts.get(n, 0), total) >= theta / 2:
        n += 2
    m_hat = n // 2
    if not m_hat < 2 / theta:
        raise ValueError(f"m_hat={m_hat} is not below 2/theta={float(2 / theta):.3f}")
    mmax = max(abs(v) for v in counts)
    tail = []
    for M in range(mmax + 1):
        mass = sum(c for v, c in counts.items() if abs(v) > M)
        tail.append((M, Fraction(mass, total)))
    return DelocalizationSummary(theta, m_hat, tail)


def value_frequencies(h: HeightFunction) -> dict:
    """Fraction of interior vertices at each height; the fractions sum to one."""
    vals, counts = np.unique(h.interior_values(), return_counts=True)
    n = h.domain.n_interior
    return {int(v): Fraction(int(c), n) for v, c in zip(vals, counts)}


# -- variance growth across domain sizes ----------------------------------------


@dataclass
class VarianceRow:
    L: int
    var: float
    se: float
    n: int
    seed_group: int
    exact: bool = False


@dataclass
class VarianceCurve:
    rows: list = field(default_factory=list)
    slope: float = math.nan
    intercept: float = math.nan
    r_squared: float = math.nan

    def sampled_rows(self):
        return [r for r in self.rows if not r.exact]

    def check_invariants(self):
        ls = [r.L for r in self.rows]
        assert ls == sorted(ls) and len(set(ls)) == len(ls)
        assert all(L % 2 == 1 for L in ls)


def variance_se(values: np.ndarray) -> float:
    """Asymptotic standard error of the sample variance."""
    x = np.asarray(values, dtype=float)
    n = len(x)
    c = x - x.mean()
    m2 = float(np.mean(c**2))
    m4 = float(np.mean(c**4))
    return math.sqrt(max(m4 - m2 * m2, 0.0) / n)


def fit_log_growth(ls, variances):
    """Least squares of variance against ln L; returns slope, intercept, R^2."""
    x = np.log(np.asarray(ls, dtype=float))
    y = np.asarray(variances, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    pred = slope * x + intercept
    ss_res = float(np.sum((y - pred) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else math.nan
    return float(slope), float(intercept), r2


def variance_growth(ls, d: int, *, n: int, seed: int, workers: int = 1,
                    t_max: int = 2**24, anchor: bool = True) -> VarianceCurve:
    """Estimate Var(f_L(0)) by exact sampling at each odd L and fit it to ln L.

    The fit uses the sampled rows only. With ``anchor`` an exact L=1 row from
    the enumeration oracle is prepended for reference.
    """
    from .lattice import ball_domain
    from .rng import derive_seed
    from .sampling import sample_batch

    ls = sorted(int(L) for L in ls)
    if any(L % 2 == 0 for L in ls):
        raise ValueError("zero-boundary variance needs odd L")
    origin = (0,) * d
    curve = VarianceCurve()
    if anchor and 1 not in ls:
        dom1 = ball_domain(d, 1)
        dist = marginal_at(dom1, zero_boundary(dom1), origin)
        curve.rows.append(VarianceRow(1, float(dist.variance()), 0.0, 0, seed, True))
    for j, L in enumerate(ls):
        dom = ball_domain(d, L)
        group_seed = derive_seed(seed, 1000 + j)
        vals = sample_batch(dom, zero_boundary(dom), n, seed=group_seed,
                            workers=workers, t_max=t_max, probe=origin)
        curve.rows.append(
            VarianceRow(L, float(np.var(vals, ddof=1)), variance_se(vals), n, group_seed)
        )
    sampled = curve.sampled_rows()
    if len(sampled) >= 2:
        curve.slope, curve.intercept, curve.r_squared = fit_log_growth(
            [r.L for r in sampled], [r.var for r in sampled]
        )
    curve.check_invariants()
    return curve
