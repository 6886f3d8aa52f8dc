"""Two classical faces of the same configuration.

Heights mod 3 give a proper 3-coloring; in two dimensions, orienting each
dual edge with the higher endpoint on its left gives a six-vertex (square
ice) arrow field, two in and two out everywhere.
"""
import heightlat as hl

dom = hl.ball_domain(2, 9)
h = hl.cftp_sample(dom, hl.zero_boundary(dom), 5)

colors = hl.to_three_coloring(h)
print(f"proper 3-coloring: {hl.is_proper_coloring(dom, colors)}")
counts = [int((colors == c).sum()) for c in (0, 1, 2)]
print(f"color counts over the extension: {counts}")

sv = hl.to_six_vertex(h)
print(f"\nsix-vertex types at {sum(sv.type_counts.values())} plaquettes:")
for t in range(1, 7):
    print(f"  type {t}: {sv.type_counts.get(t, 0)}")

n_diag = hl.diagonal_disagreements(h)
print(f"\ndiagonally adjacent disagreements: {n_diag}")
print("(the uniform model weights all configurations equally; a general")
print(" six-vertex weighting would reweight by this statistic)")

frozen = hl.validate(dom, [x + y for x, y in dom.extension])
sv_frozen = hl.to_six_vertex(frozen)
print(f"\nfully tilted plane for contrast: single type {set(sv_frozen.type_counts)}")
