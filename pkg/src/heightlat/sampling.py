"""Heat-bath dynamics and exact sampling by coupling from the past.

A sweep resamples every interior vertex from its single-site conditional
law, visiting the even-parity sites in domain order and then the odd-parity
sites. Sites of equal parity never interact, so each parity phase may be
applied simultaneously; the vectorized engines exploit that while remaining
update-for-update identical to the scalar reference.

The single-site rule, with u uniform on [0, 1): if the neighbors force one
value, take it; otherwise take the larger admissible value exactly when
u >= 1/2. The rule is monotone, which is what makes the sandwich coupling
(and hence coupling from the past) work: two states ordered pointwise stay
ordered under a shared randomness stream.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoCoalescence, NotInterior
from .heights import BoundaryCondition, HeightFunction, envelope
from .lattice import LatticeDomain
from .rng import RandomSource, derive_seed, mix64, _GOLD, _M64

DEFAULT_T_MAX = 2**24


@dataclass
class ChainState:
    """A chain position: current configuration plus a sweep counter."""

    current: HeightFunction
    sweep_count: int = 0


def _as_rng(rng) -> RandomSource:
    return rng if isinstance(rng, RandomSource) else RandomSource(int(rng))


def heat_bath_update(state: ChainState, v, u: float) -> ChainState:
    """Resample one interior site from its conditional law, driven by u."""
    dom = state.current.domain
    i = dom.index[tuple(v)]
    if not dom.is_interior[i]:
        raise NotInterior(f"{tuple(v)} is not interior")
    vals = state.current.values.copy()
    nb = vals[dom.neighbor_idx[i]]
    lo = int(nb.max()) - 1
    hi = int(nb.min()) + 1
    vals[i] = hi if u >= 0.5 else lo
    return ChainState(HeightFunction(dom, vals), state.sweep_count)


def _scan_order(dom: LatticeDomain):
    """Interior extension indices: even-parity sites first, each in domain order."""
    even = [int(i) for i in dom.interior_idx if dom.parity[i] == 0]
    odd = [int(i) for i in dom.interior_idx if dom.parity[i] == 1]
    return even, odd


def _reference_sweep(dom: LatticeDomain, vals: np.ndarray, coin_at) -> np.ndarray:
    """One sweep on a copy of vals; coin_at(ext_index) -> bool picks the upper value."""
    out = vals.copy()
    even, odd = _scan_order(dom)
    nbr = dom.neighbor_idx
    for phase in (even, odd):
        for i in phase:
            nb = out[nbr[i]]
            lo = int(nb.max()) - 1
            hi = int(nb.min()) + 1
            out[i] = hi if coin_at(i) else lo
    return out


def sweep(state: ChainState, t: int, rng) -> ChainState:
    """Apply the heat-bath update at every interior vertex, keyed to epoch t."""
    rng = _as_rng(rng)
    vals = _reference_sweep(
        state.current.domain, state.current.values, lambda i: rng.coin(t, i)
    )
    return ChainState(HeightFunction(state.current.domain, vals), state.sweep_count + 1)


# -- engines -----------------------------------------------------------------


class _ScalarEngine:
    """Plain-python engine; fastest for tiny domains, works in any dimension."""

    def __init__(self, dom: LatticeDomain, tau: BoundaryCondition):
        self.dom = dom
        lo, hi = envelope(tau)
        self._lo = [int(x) for x in lo.values]
        self._hi = [int(x) for x in hi.values]
        even, odd = _scan_order(dom)
        nbr = dom.neighbor_idx
        self._sites = [
            (i, (_GOLD * (i + 1)) & _M64, [int(k) for k in nbr[i]]) for i in even + odd
        ]

    def initial_pair(self):
        return list(self._lo), list(self._hi)

    def sweep_many(self, states, t: int, rng: RandomSource):
        key = rng.epoch_key(t)
        for i, vkey, nbs in self._sites:
            coin = mix64((key + vkey) & _M64) >> 63
            for vals in states:
                acc_lo = acc_hi = vals[nbs[0]]
                for k in nbs[1:]:
                    x = vals[k]
                    if x < acc_lo:
                        acc_lo = x
                    elif x > acc_hi:
                        acc_hi = x
                vals[i] = acc_lo + 1 if coin else acc_hi - 1
        return states

    @staticmethod
    def equal(a, b) -> bool:
        return a == b

    def extract(self, vals) -> np.ndarray:
        return np.array(vals, dtype=np.int16)

    def value_at(self, vals, i: int) -> int:
        return vals[i]


class _DenseEngine2D:
    """Vectorized engine on the bounding-box grid of a 2D domain."""

    def __init__(self, dom: LatticeDomain, tau: BoundaryCondition):
        self.dom = dom
        grid = dom.grid2d()
        self.grid = grid
        H, W = grid.shape
        lo, hi = envelope(tau)
        self._lo_grid = self._bake(lo.values)
        self._hi_grid = self._bake(hi.values)
        inner_int = grid.interior_mask[1:-1, 1:-1]
        inner_par = grid.parity_grid[1:-1, 1:-1]
        self._phase_masks = [inner_int & (inner_par == p) for p in (0, 1)]
        # Per-cell rng keys: extension cells use their extension index, so the
        # coins agree bit for bit with the scalar engine; other cells never
        # contribute but still need distinct keys.
        key_ids = np.full(H * W, 0, dtype=np.uint64)
        key_ids[grid.cell_of_ext] = np.arange(1, dom.n_extension + 1, dtype=np.uint64)
        filler = key_ids == 0
        key_ids[filler] = (
            np.arange(int(filler.sum()), dtype=np.uint64) + np.uint64(dom.n_extension + 1)
        )
        self._vkeys_inner = (key_ids.reshape(H, W)[1:-1, 1:-1] * np.uint64(_GOLD)).copy()

    def _bake(self, ext_values) -> np.ndarray:
        g = np.zeros(self.grid.shape, dtype=np.int16)
        g.flat[self.grid.cell_of_ext] = ext_values
        return g

    def initial_pair(self):
        return self._lo_grid.copy(), self._hi_grid.copy()

    def sweep_many(self, states, t: int, rng: RandomSource):
        coins = rng.coins_for_epoch(t, self._vkeys_inner).astype(np.int16)
        for a in states:
            inner = a[1:-1, 1:-1]
            for mask in self._phase_masks:
                up = a[:-2, 1:-1]
                down = a[2:, 1:-1]
                left = a[1:-1, :-2]
                right = a[1:-1, 2:]
                mn = np.minimum(np.minimum(up, down), np.minimum(left, right))
                mx = np.maximum(np.maximum(up, down), np.maximum(left, right))
                val = (mx - np.int16(1)) + (mn + np.int16(2) - mx) * coins
                np.copyto(inner, val, where=mask)
        return states

    @staticmethod
    def equal(a, b) -> bool:
        return np.array_equal(a, b)

    def extract(self, grid_vals) -> np.ndarray:
        return grid_vals.flat[self.grid.cell_of_ext].astype(np.int16)

    def value_at(self, grid_vals, i: int) -> int:
        return int(grid_vals.flat[self.grid.cell_of_ext[i]])


def _make_engine(dom: LatticeDomain, tau: BoundaryCondition):
    if dom.dimension == 2 and dom.n_interior > 64:
        return _DenseEngine2D(dom, tau)
    return _ScalarEngine(dom, tau)


# -- coupling from the past ---------------------------------------------------


def cftp_sample(dom: LatticeDomain, tau: BoundaryCondition, rng, *,
                t_max: int = DEFAULT_T_MAX, t_start: int = 1,
                on_round=None, stats: dict | None = None,
                _engine=None) -> HeightFunction:
    """One exact sample from the uniform measure with boundary tau.

    Runs the sandwich pair (minimal and maximal extensions of tau) from time
    -T to 0 under shared randomness, doubling T until the pair coalesces at
    time 0, and reusing the same per-epoch randomness across rounds. The
    returned state is an exact draw; its law does not depend on the starting
    horizon, so ``t_start`` is purely a performance hint.
    """
    rng = _as_rng(rng)
    tau.check_feasible()
    engine = _engine if _engine is not None else _make_engine(dom, tau)

    T = 1
    while T < max(1, t_start):
        T *= 2
    sweeps_done = 0
    while True:
        bot, top = engine.initial_pair()
        pair = [bot, top]
        coalesced_at = None
        for t in range(-T, 0):
            if coalesced_at is None:
                engine.sweep_many(pair, t, rng)
                sweeps_done += 1
                if engine.equal(pair[0], pair[1]):
                    coalesced_at = t
            else:
                engine.sweep_many(pair[:1], t, rng)
                sweeps_done += 1
        done = coalesced_at is not None or engine.equal(pair[0], pair[1])
        if on_round is not None:
            on_round(T, done)
        if done:
            if stats is not None:
                stats["horizon"] = T
                stats["sweeps"] = sweeps_done
                stats["coalesced_at"] = coalesced_at if coalesced_at is not None else 0
            return HeightFunction(dom, engine.extract(pair[0]))
        if 2 * T > t_max:
            raise NoCoalescence(t_max)
        T *= 2


def glauber_chain(dom: LatticeDomain, tau: BoundaryCondition, sweeps: int, rng, *,
                  start: str = "min") -> ChainState:
    """Forward heat-bath run, an approximate sampler for comparison work."""
    rng = _as_rng(rng)
    tau.check_feasible()
    engine = _make_engine(dom, tau)
    bot, top = engine.initial_pair()
    state = [bot if start == "min" else top]
    for t in range(sweeps):
        engine.sweep_many(state, t, rng)
    return ChainState(HeightFunction(dom, engine.extract(state[0])), sweeps)


# -- batches -------------------------------------------------------------------


def _batch_seeds(n: int, seeds, seed):
    if seeds is not None:
        seeds = [int(s) for s in seeds]
        if len(seeds) != n:
            raise ValueError("need exactly n seeds")
        return seeds
    if seed is None:
        raise ValueError("provide either seeds or a master seed")
    return [derive_seed(int(seed), i) for i in range(n)]


def _run_slice(dom, tau, seed_list, t_max, probe):
    engine = _make_engine(dom, tau)
    out = []
    t_hint = 1
    for s in seed_list:
        st: dict = {}
        h = cftp_sample(dom, tau, RandomSource(s), t_max=t_max,
                        t_start=t_hint, stats=st, _engine=engine)
        t_hint = max(1, st["horizon"] // 2)
        if probe is None:
            out.append(h.values)
        else:
            out.append(h.values[probe])
    return out


def _pool_worker(args):
    dom, tau, seed_list, t_max, probe = args
    return _run_slice(dom, tau, seed_list, t_max, probe)


def sample_batch(dom: LatticeDomain, tau: BoundaryCondition, n: int, seeds=None, *,
                 seed=None, workers: int = 1, t_max: int = DEFAULT_T_MAX,
                 probe=None):
    """n independent exact samples from distinct seeds, in seed order.

    ``probe`` may name a vertex; then only its height is returned, as an int
    array, which keeps large batches cheap. Workers split the seed list into
    contiguous slices; results do not depend on the split.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    seed_list = _batch_seeds(n, seeds, seed)
    probe_idx = dom.index[tuple(probe)] if probe is not None else None

    if workers <= 1 or n < 4:
        raw = _run_slice(dom, tau, seed_list, t_max, probe_idx)
    else:
        import multiprocessing as mp

        k = min(workers, n)
        bounds = np.linspace(0, n, k + 1).astype(int)
        jobs = [
            (dom, tau, seed_list[bounds[j]: bounds[j + 1]], t_max, probe_idx)
            for j in range(k)
            if bounds[j] < bounds[j + 1]
        ]
        ctx = mp.get_context("fork")
        with ctx.Pool(len(jobs)) as pool:
            parts = pool.map(_pool_worker, jobs)
        raw = [x for part in parts for x in part]

    if probe_idx is not None:
        return np.array(raw, dtype=np.int64)
    return [HeightFunction(dom, v) for v in raw]
