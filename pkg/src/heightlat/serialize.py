"""File formats: binary height dumps, JSON descriptors, CSV tables.

Binary layout (little endian): magic ``HLHF``, format version u16, dimension
u16, u32 length-prefixed JSON domain descriptor, u64 configuration count,
then each configuration as consecutive int32 heights in domain order.
"""
from __future__ import annotations

import csv
import json
import struct

import numpy as np

from .heights import HeightFunction, validate
from .lattice import LatticeDomain

MAGIC = b"HLHF"
FORMAT_VERSION = 1


def write_heights(path, domain: LatticeDomain, heights) -> int:
    """Dump configurations to the binary format; returns the count written."""
    heights = list(heights)
    desc = domain.dumps().encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<HHI", FORMAT_VERSION, domain.dimension, len(desc)))
        fh.write(desc)
        fh.write(struct.pack("<Q", len(heights)))
        for h in heights:
            fh.write(h.values.astype("<i4").tobytes())
    return len(heights)


def read_heights(path, check: bool = True):
    """Read a binary dump back; returns (domain, list of HeightFunction)."""
    with open(path, "rb") as fh:
        if fh.read(4) != MAGIC:
            raise ValueError(f"{path} is not a height dump")
        version, dim, desc_len = struct.unpack("<HHI", fh.read(8))
        if version != FORMAT_VERSION:
            raise ValueError(f"unsupported format version {version}")
        domain = LatticeDomain.from_json(json.loads(fh.read(desc_len).decode("utf-8")))
        if domain.dimension != dim:
            raise ValueError("descriptor dimension mismatch")
        (count,) = struct.unpack("<Q", fh.read(8))
        n = domain.n_extension
        out = []
        for _ in range(count):
            vals = np.frombuffer(fh.read(4 * n), dtype="<i4").astype(np.int16)
            out.append(validate(domain, vals) if check else HeightFunction(domain, vals))
    return domain, out


def heights_to_json(domain: LatticeDomain, heights) -> dict:
    return {
        "domain": domain.to_json(),
        "heights": [[int(x) for x in h.values] for h in heights],
    }


def heights_from_json(obj):
    domain = LatticeDomain.from_json(obj["domain"])
    return domain, [validate(domain, row) for row in obj["heights"]]


def distribution_csv(path, dist) -> None:
    """Rows of (value, count, probability)."""
    total = sum(dist.counts.values())
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["value", "count", "probability"])
        for v in sorted(dist.counts):
            c = dist.counts[v]
            w.writerow([v, c, repr(c / total)])


def variance_csv(path, curve) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["L", "var", "se", "n", "seed_group", "exact"])
        for r in curve.rows:
            w.writerow([r.L, repr(r.var), repr(r.se), r.n, r.seed_group, int(r.exact)])


def levelset_csv(path, contours_by_l) -> None:
    """Dual-edge segments with contour ids; endpoints in half-integer coordinates."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["L", "contour", "kind", "outermost", "x1", "y1", "x2", "y2"])
        for L, contours in sorted(contours_by_l.items()):
            for c in contours:
                for (p, q) in c.segments:
                    w.writerow([
                        L, c.id, c.kind, int(c.outermost),
                        p[0] + 0.5, p[1] + 0.5, q[0] + 0.5, q[1] + 0.5,
                    ])


def fkg_csv(path, report) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["pair", "covariance", "se", "nonnegative"])
        for i, cov in enumerate(report.covariances):
            se = report.standard_errors[i] if report.standard_errors else 0.0
            ok = cov >= 0 if report.mode == "exact" else cov >= -3 * se
            w.writerow([i, repr(float(cov)), repr(float(se)), int(ok)])


def domination_csv(path, report) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["vertex", "threshold", "cdf_outer", "cdf_inner"])
        for v, t, po, pi in report.violations:
            w.writerow([" ".join(map(str, v)), t, repr(float(po)), repr(float(pi))])
