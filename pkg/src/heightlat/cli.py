"""Reproducible experiment runner.

Usage: ``heightlat <subcommand> --config <file> [--seed N] [--out DIR]``.

Every experiment is driven by a JSON config plus a mandatory seed; outputs
are a deterministic function of (config, seed). Artifacts land in the output
directory: binary height dumps, CSV tables, and ``manifest.json`` with the
config hash, the resolved configuration and per-check results. Wall-clock
timing goes to a separate ``run_info.json`` so the deterministic artifacts
stay bit-identical across reruns.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ConfigError, HeightLatError
from .contours import level_set_edges
from .heights import (
    BoundaryCondition,
    is_proper_coloring,
    to_six_vertex,
    to_three_coloring,
    zero_boundary,
)
from .lattice import LatticeDomain, ball_domain
from .oracle import count_extensions, enumerate_all, enumerate_pairs, marginal_at
from .pairs import comb_window, equalize, is_trifurcation_ball, swap_finite
from .rng import RandomSource, derive_seed
from .sampling import ChainState, cftp_sample, glauber_chain, heat_bath_update
from .serialize import (
    distribution_csv,
    domination_csv,
    fkg_csv,
    heights_to_json,
    levelset_csv,
    read_heights,
    variance_csv,
    write_heights,
)
from .stats import (
    domination_check_abs,
    fkg_check_abs,
    log_concavity_check,
    variance_growth,
)

KINDS = (
    "sample",
    "enumerate",
    "verify",
    "variance-growth",
    "levelset",
    "convert",
    "trifurcation-demo",
)


@dataclass
class ExperimentConfig:
    kind: str
    seed: int
    dimension: int = 2
    ls: list = field(default_factory=lambda: [1])
    boundary: str = "zero"
    boundary_file: str = None
    sampler: str = "cftp"
    sweeps: int = 0
    samples: int = 1
    workers: int = 1
    level: int = 1
    ceiling: int = 10**8
    out: str = None
    input: str = None
    to: str = "json"
    window: int = 20
    radius: int = 3
    probes: list = field(default_factory=lambda: [[0, 5], [0, 0]])


def _field(raw, name, types, default=None, required=False):
    if name not in raw:
        if required:
            raise ConfigError(name, "is required")
        return default
    val = raw[name]
    if not isinstance(val, types):
        raise ConfigError(name, f"expected {types}, got {type(val).__name__}")
    return val


def load_config(path, kind=None, seed=None, out=None) -> ExperimentConfig:
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise ConfigError("<file>", f"invalid JSON: {e}") from None
    if not isinstance(raw, dict):
        raise ConfigError("<file>", "top level must be an object")
    known = set(ExperimentConfig.__dataclass_fields__) | {"L", "boundary"}
    for key in raw:
        if key not in known:
            raise ConfigError(key, "unknown field")

    cfg_kind = _field(raw, "kind", str, kind)
    if cfg_kind is None:
        raise ConfigError("kind", "is required (in the config or as the subcommand)")
    if kind is not None and cfg_kind != kind:
        raise ConfigError("kind", f"config says {cfg_kind!r} but subcommand is {kind!r}")
    if cfg_kind not in KINDS:
        raise ConfigError("kind", f"must be one of {KINDS}")

    if seed is None:
        seed = _field(raw, "seed", int, required=True)
    dimension = _field(raw, "dimension", int, 2)
    if dimension < 1:
        raise ConfigError("dimension", "must be >= 1")

    ls_raw = raw.get("L", raw.get("ls", [1]))
    if isinstance(ls_raw, int):
        ls_raw = [ls_raw]
    if not isinstance(ls_raw, list) or not all(isinstance(x, int) for x in ls_raw):
        raise ConfigError("L", "must be an integer or list of integers")

    boundary = raw.get("boundary", "zero")
    boundary_file = None
    if isinstance(boundary, dict):
        boundary_file = _field(boundary, "file", str, required=True)
        boundary = "file"
    if boundary not in ("zero", "file"):
        raise ConfigError("boundary", "must be 'zero' or {'file': path}")
    if boundary == "zero":
        for L in ls_raw:
            if L % 2 == 0:
                raise ConfigError("L", f"L={L} is even; zero boundary needs odd L")

    sampler = _field(raw, "sampler", str, "cftp")
    if sampler not in ("cftp", "glauber"):
        raise ConfigError("sampler", "must be 'cftp' or 'glauber'")
    samples = _field(raw, "samples", int, 1)
    if samples < 1:
        raise ConfigError("samples", "must be >= 1")
    workers = _field(raw, "workers", int, 1)
    if workers < 1:
        raise ConfigError("workers", "must be >= 1")

    return ExperimentConfig(
        kind=cfg_kind,
        seed=int(seed),
        dimension=dimension,
        ls=ls_raw,
        boundary=boundary,
        boundary_file=boundary_file,
        sampler=sampler,
        sweeps=_field(raw, "sweeps", int, 0),
        samples=samples,
        workers=workers,
        level=_field(raw, "level", int, 1),
        ceiling=_field(raw, "ceiling", int, 10**8),
        out=out or _field(raw, "out", str),
        input=_field(raw, "input", str),
        to=_field(raw, "to", str, "json"),
        window=_field(raw, "window", int, 20),
        radius=_field(raw, "radius", int, 3),
        probes=_field(raw, "probes", list, [[0, 5], [0, 0]]),
    )


def _boundary_for(cfg: ExperimentConfig, dom: LatticeDomain) -> BoundaryCondition:
    if cfg.boundary == "zero":
        return zero_boundary(dom)
    obj = json.loads(Path(cfg.boundary_file).read_text())
    vals = np.array(obj["values"], dtype=np.int16)
    bc = BoundaryCondition(dom, vals)
    bc.check_feasible()
    return bc


def _semantic_config(cfg: ExperimentConfig) -> dict:
    # everything that determines the outputs; the output directory is not part of it
    d = dict(cfg.__dict__)
    d.pop("out")
    return d


def _config_hash(cfg: ExperimentConfig) -> str:
    blob = json.dumps(_semantic_config(cfg), sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()


class Runner:
    def __init__(self, cfg: ExperimentConfig):
        self.cfg = cfg
        self.out = Path(cfg.out or f"heightlat-{cfg.kind}-{cfg.seed}")
        self.out.mkdir(parents=True, exist_ok=True)
        self.checks = []
        self.artifacts = []
        self.summary = {}

    def check(self, name, ok, detail=""):
        self.checks.append({"name": name, "pass": bool(ok), "detail": str(detail)})

    def path(self, name) -> Path:
        p = self.out / name
        self.artifacts.append(name)
        return p

    def finish(self, wall: float) -> int:
        ok = all(c["pass"] for c in self.checks)
        manifest = {
            "version": __version__,
            "kind": self.cfg.kind,
            "seed": self.cfg.seed,
            "config": _semantic_config(self.cfg),
            "config_sha256": _config_hash(self.cfg),
            "checks": self.checks,
            "artifacts": sorted(self.artifacts),
            "summary": self.summary,
            "all_passed": ok,
        }
        (self.out / "manifest.json").write_text(
            json.dumps(manifest, indent=2, sort_keys=True, default=str) + "\n"
        )
        (self.out / "run_info.json").write_text(
            json.dumps({"wall_clock_seconds": wall}, indent=2) + "\n"
        )
        return 0 if ok else 1


def _run_sample(r: Runner):
    cfg = r.cfg
    coalescence = {}
    for L in cfg.ls:
        dom = ball_domain(cfg.dimension, L)
        tau = _boundary_for(cfg, dom)
        group = derive_seed(cfg.seed, L)
        if cfg.sampler == "cftp":
            heights, horizons = [], []
            t_hint = 1
            for i in range(cfg.samples):
                info = {}
                heights.append(
                    cftp_sample(dom, tau, RandomSource(derive_seed(group, i)),
                                t_start=t_hint, stats=info)
                )
                horizons.append(info["horizon"])
                t_hint = max(1, info["horizon"] // 2)
            coalescence[str(L)] = horizons
        else:
            sweeps = cfg.sweeps or 4 * L * L
            heights = [
                glauber_chain(dom, tau, sweeps, RandomSource(derive_seed(group, i))).current
                for i in range(cfg.samples)
            ]
        write_heights(r.path(f"heights_L{L}.hf"), dom, heights)
        r.check(f"sample_L{L}", True, f"{len(heights)} samples")
    if coalescence:
        r.summary["coalescence_horizons"] = coalescence


def _run_enumerate(r: Runner):
    cfg = r.cfg
    for L in cfg.ls:
        dom = ball_domain(cfg.dimension, L)
        tau = _boundary_for(cfg, dom)
        heights = list(enumerate_all(dom, tau, cfg.ceiling))
        write_heights(r.path(f"enumeration_L{L}.hf"), dom, heights)
        origin = (0,) * cfg.dimension
        dist = marginal_at(dom, tau, origin, cfg.ceiling)
        distribution_csv(r.path(f"marginal_origin_L{L}.csv"), dist)
        r.summary[f"count_L{L}"] = len(heights)
        r.check(f"enumerate_L{L}", len(heights) > 0, f"{len(heights)} configurations")


def _run_levelset(r: Runner):
    cfg = r.cfg
    by_l = {}
    for L in cfg.ls:
        dom = ball_domain(cfg.dimension, L)
        tau = _boundary_for(cfg, dom)
        h = cftp_sample(dom, tau, RandomSource(derive_seed(cfg.seed, L)))
        by_l[L] = level_set_edges(h, cfg.level)
        r.check(f"levelset_L{L}", True,
                f"{len(by_l[L])} contours at level {cfg.level}")
    levelset_csv(r.path("levelsets.csv"), by_l)
    r.summary["contours"] = {str(L): len(cs) for L, cs in by_l.items()}


def _run_variance_growth(r: Runner):
    cfg = r.cfg
    curve = variance_growth(cfg.ls, cfg.dimension, n=cfg.samples, seed=cfg.seed,
                            workers=cfg.workers)
    variance_csv(r.path("variance_curve.csv"), curve)
    sampled = curve.sampled_rows()
    increasing = all(b.var > a.var for a, b in zip(sampled, sampled[1:]))
    r.summary["fit"] = {
        "slope": curve.slope, "intercept": curve.intercept, "r_squared": curve.r_squared,
    }
    r.check("variance_rows", len(sampled) == len(cfg.ls), f"{len(sampled)} sampled rows")
    if len(sampled) >= 2:
        r.check("variance_increasing", increasing,
                " -> ".join(f"{row.var:.3f}" for row in sampled))


def _run_convert(r: Runner):
    cfg = r.cfg
    if not cfg.input:
        raise ConfigError("input", "is required for convert")
    dom, heights = read_heights(cfg.input)
    if cfg.to == "json":
        r.path("heights.json").write_text(
            json.dumps(heights_to_json(dom, heights), sort_keys=True) + "\n"
        )
    elif cfg.to == "coloring":
        rows = [[int(c) for c in to_three_coloring(h)] for h in heights]
        ok = all(is_proper_coloring(dom, row) for row in rows)
        r.path("colorings.json").write_text(
            json.dumps({"domain": dom.to_json(), "colorings": rows}, sort_keys=True) + "\n"
        )
        r.check("colorings_proper", ok, f"{len(rows)} configurations")
    elif cfg.to == "sixvertex":
        counts = [sorted(to_six_vertex(h).type_counts.items()) for h in heights]
        r.path("sixvertex_types.json").write_text(
            json.dumps({"type_counts": counts}, sort_keys=True) + "\n"
        )
        r.check("ice_rule", True, f"{len(counts)} configurations")
    else:
        raise ConfigError("to", "must be 'json', 'coloring' or 'sixvertex'")
    r.summary["converted"] = len(heights)


def _run_trifurcation_demo(r: Runner):
    cfg = r.cfg
    omega, origin = comb_window(cfg.window)
    report = {}
    for probe in cfg.probes:
        v = tuple(probe)
        real = is_trifurcation_ball(omega, origin, v, cfg.radius)
        alt = is_trifurcation_ball(omega, origin, v, cfg.radius, alternative=True)
        report[str(v)] = {"real": real, "alternative": alt}
        r.check(f"trifurcation_{v}", True, f"real={real} alternative={alt}")
    r.path("trifurcation.json").write_text(json.dumps(report, sort_keys=True) + "\n")
    r.summary["trifurcation"] = report


def _run_verify(r: Runner):
    """Oracle-backed verification suite; exit 0 only if everything passes."""
    cfg = r.cfg
    seed = cfg.seed

    # exact counts in d=1 against the closed-form bridge numbers
    bridge = {1: 6, 3: 70, 5: 924}
    for L, expect in bridge.items():
        dom = ball_domain(1, L)
        got = count_extensions(dom, zero_boundary(dom))
        r.check(f"count_d1_L{L}", got == expect, f"{got} vs {expect}")

    dom1 = ball_domain(2, 1)
    tau1 = zero_boundary(dom1)
    configs = list(enumerate_all(dom1, tau1))
    r.check("count_d2_L1", len(configs) == 18, len(configs))
    dist = marginal_at(dom1, tau1, (0, 0))
    r.check(
        "marginal_origin",
        dist.prob(0) == Fraction(8, 9)
        and dist.prob(2) == Fraction(1, 18)
        and dist.prob(-2) == Fraction(1, 18),
        dist.support,
    )
    r.check("variance_origin", dist.variance() == Fraction(4, 9), dist.variance())

    # monotonicity of the single-site update across all ordered pairs
    mono_ok = True
    for u in (0.25, 0.75):
        for a in configs:
            for b in configs:
                if np.all(a.values <= b.values):
                    for v in dom1.interior:
                        na = heat_bath_update(ChainState(a), v, u).current.values
                        nb = heat_bath_update(ChainState(b), v, u).current.values
                        mono_ok &= bool(np.all(na <= nb))
    r.check("heat_bath_monotone", mono_ok)

    # pair transforms preserve the uniform pair measure
    pairs = list(enumerate_pairs(dom1, tau1, tau1))
    originals = sorted(p.as_tuple() for p in pairs)
    swapped = sorted(swap_finite(p, 1).as_tuple() for p in pairs)
    r.check("swap_finite_bijection", swapped == originals, f"{len(pairs)} pairs")
    inv_ok = all(swap_finite(swap_finite(p, 1), 1) == p for p in pairs)
    r.check("swap_finite_involution", inv_ok)
    first = {}
    for p in pairs:
        t = equalize(p, 0).f.as_tuple()
        first[t] = first.get(t, 0) + 1
    r.check("equalize_marginal", set(first.values()) == {18}, sorted(first.values())[:3])

    # log-concavity of exact marginals
    lc_ok = True
    for d, L in ((1, 3), (2, 1)):
        dom = ball_domain(d, L)
        tau = zero_boundary(dom)
        for v in dom.interior:
            lc_ok &= log_concavity_check(marginal_at(dom, tau, v)).holds
    r.check("log_concavity", lc_ok)

    # positive association and domination, exact, reduced pair count
    rep = fkg_check_abs(dom1, count=max(5, cfg.samples // 100), seed=seed)
    fkg_csv(r.path("fkg_report.csv"), rep)
    r.check("fkg_nonnegative", rep.all_nonnegative,
            f"{len(rep.covariances)} covariances")
    dom3 = ball_domain(2, 3)
    drep = domination_check_abs(dom1, dom3)
    domination_csv(r.path("domination_report.csv"), drep)
    r.check("abs_domination", drep.ok, f"{len(drep.violations)} violations")

    # exact sampler agrees with the oracle on the full configuration law
    n = max(cfg.samples, 100)
    exact = {h.as_tuple(): Fraction(1, 18) for h in configs}
    counts = {}
    for i in range(n):
        h = cftp_sample(dom1, tau1, RandomSource(derive_seed(seed, i)))
        t = h.as_tuple()
        counts[t] = counts.get(t, 0) + 1
    from scipy.stats import chi2

    stat = sum(
        (counts.get(t, 0) - n / 18) ** 2 / (n / 18) for t in exact
    )
    pval = float(chi2.sf(stat, 17))
    r.check("cftp_chi_square", pval > 1e-3, f"chi2={stat:.1f} p={pval:.4f} n={n}")


_RUNNERS = {
    "sample": _run_sample,
    "enumerate": _run_enumerate,
    "verify": _run_verify,
    "variance-growth": _run_variance_growth,
    "levelset": _run_levelset,
    "convert": _run_convert,
    "trifurcation-demo": _run_trifurcation_demo,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="heightlat", description=__doc__)
    sub = parser.add_subparsers(dest="kind", required=True)
    for kind in KINDS:
        p = sub.add_parser(kind)
        p.add_argument("--config", required=True)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", default=None)
    args = parser.parse_args(argv)

    t0 = time.perf_counter()
    try:
        cfg = load_config(args.config, kind=args.kind, seed=args.seed, out=args.out)
        runner = Runner(cfg)
        _RUNNERS[cfg.kind](runner)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except HeightLatError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    status = runner.finish(time.perf_counter() - t0)
    for c in runner.checks:
        print(f"[{'PASS' if c['pass'] else 'FAIL'}] {c['name']} {c['detail']}")
    print(f"manifest: {runner.out / 'manifest.json'}")
    return status


if __name__ == "__main__":
    sys.exit(main())
