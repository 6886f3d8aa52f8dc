"""Why the trifurcation test must remove a connected set, not a whole ball.

The comb (every even column plus the horizontal axis) is one connected
cluster. Removing its full trace inside a ball centered on a tooth leaves
three or more pieces reaching the window edge, so the sloppy "remove the
ball" reading marks every center as a trifurcation point. The correct
reading, removing one connected subset, marks only genuine branch points
like the comb's spine.
"""
import heightlat as hl

omega, origin = hl.comb_window(20)
print("comb on a 41 x 41 window, omega[x, y] = 1 iff x is even or y = 0")

for v in ((0, 5), (0, 0), (1, 4)):
    real = hl.is_trifurcation_ball(omega, origin, v, 3)
    alt = hl.is_trifurcation_ball(omega, origin, v, 3, alternative=True)
    print(f"  ball around {v}: connected-subset definition {real!s:5}  "
          f"remove-everything definition {alt!s:5}")

print("\nsanity check on the fully occupied window (no branch points anywhere):")
import numpy as np

full = np.ones((13, 13), dtype=bool)
for m in (1, 2):
    print(f"  M={m}: {hl.is_trifurcation_ball(full, (-6, -6), (0, 0), m)}")
