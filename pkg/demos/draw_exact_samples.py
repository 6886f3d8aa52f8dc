"""Exact sampling by coupling from the past.

The sandwich pair starts from the two extreme extensions of the boundary
data and runs under shared randomness from ever earlier times; once the pair
meets, the common state at time zero is an exact uniform draw. No burn-in
tuning, no mixing-time guesswork.
"""
import numpy as np

import heightlat as hl

L = 15
dom = hl.ball_domain(2, L)
tau = hl.zero_boundary(dom)

stats = {}
h = hl.cftp_sample(dom, tau, 2024, stats=stats)
print(f"L={L}: coalesced from horizon {stats['horizon']} "
      f"after {stats['sweeps']} sweeps total")
print(f"height at the center: {h.value_at((0, 0))}")

freqs = hl.value_frequencies(h)
print("value frequencies over the interior:")
for k in sorted(freqs):
    bar = "#" * int(60 * freqs[k])
    print(f"  {k:+3d} {float(freqs[k]):6.3f} {bar}")

values = hl.sample_batch(dom, tau, 200, seed=7, workers=2, probe=(0, 0))
print(f"\n200 independent draws of the center height:")
print(f"  mean {values.mean():+.3f} (symmetry makes it 0 in the limit)")
print(f"  variance {values.var(ddof=1):.3f}")
print(f"  range {values.min()} .. {values.max()}")

# identical seeds reproduce identical samples, worker count does not matter
again = hl.sample_batch(dom, tau, 200, seed=7, workers=1, probe=(0, 0))
print(f"  reproducible: {np.array_equal(values, again)}")
