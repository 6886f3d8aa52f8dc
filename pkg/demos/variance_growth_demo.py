"""Desk-scale look at delocalization: Var of the center height vs domain size.

In two dimensions the center-height variance keeps growing with the domain,
consistent with logarithmic growth; this script fits a line in ln L at
small sizes. Larger experiments run through the command line interface
(variance-growth kind) with the same machinery.
"""
import math

import heightlat as hl

curve = hl.variance_growth([3, 5, 9, 17], d=2, n=600, seed=11, workers=2)

print(" L    var     se      n")
for r in curve.rows:
    tag = "exact" if r.exact else ""
    print(f"{r.L:3d}  {r.var:6.3f}  {r.se:5.3f}  {r.n:4d}  {tag}")

print(f"\nfit against ln L: slope {curve.slope:.3f}, "
      f"intercept {curve.intercept:.3f}, R^2 {curve.r_squared:.3f}")

rows = curve.sampled_rows()
gaps = [
    f"{a.L}->{b.L}: +{b.var - a.var:.3f} (se {math.hypot(a.se, b.se):.3f})"
    for a, b in zip(rows, rows[1:])
]
print("growth between consecutive sizes:", "; ".join(gaps))
