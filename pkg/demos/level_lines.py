"""Outermost level lines separating heights 0 and 1 of an exact sample.

Writes the contour segments of one uniform sample to CSV for external
plotting, and sketches the outermost loops as ASCII art.
"""
import heightlat as hl
from heightlat.serialize import levelset_csv

L = 39
dom = hl.ball_domain(2, L)
h = hl.cftp_sample(dom, hl.zero_boundary(dom), 99)

contours = hl.level_set_edges(h, 1)
loops = [c for c in contours if c.kind == "loop"]
outer = [c for c in contours if c.outermost]
print(f"L={L}: {len(contours)} level-1 contours, {len(loops)} closed, "
      f"{len(outer)} outermost")
print(f"longest contour: {max(len(c) for c in contours)} dual edges")

levelset_csv("level_lines.csv", {L: contours})
print("wrote level_lines.csv (columns: L, contour, kind, outermost, x1, y1, x2, y2)")

# coarse picture of the outermost lines
size = 2 * L + 3
grid = [[" "] * size for _ in range(size)]
for c in contours:
    if not c.outermost:
        continue
    for (p, q) in c.segments:
        x = (p[0] + q[0] + 1) / 2 + L + 1
        y = (p[1] + q[1] + 1) / 2 + L + 1
        grid[int(round(y))][int(round(x))] = "#" if len(c) > 8 else "o"
for row in reversed(grid[:: max(1, size // 39)]):
    print("".join(row[:size]))
