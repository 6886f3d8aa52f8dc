"""Exhaustive enumeration on small domains and exact site laws.

The one-dimensional counts are binomial bridge numbers, a handy closed-form
cross-check on the search. In two dimensions the radius-1 ball with zero
boundary has exactly 18 configurations.
"""
import math

import heightlat as hl

for L in (1, 3, 5):
    dom = hl.ball_domain(1, L)
    count = hl.count_extensions(dom, hl.zero_boundary(dom))
    print(f"d=1, L={L}: {count} configurations (binomial {math.comb(2*L+2, L+1)})")

dom = hl.ball_domain(2, 1)
tau = hl.zero_boundary(dom)
print(f"\nd=2, L=1: {hl.count_extensions(dom, tau)} configurations")

dist = hl.marginal_at(dom, tau, (0, 0))
print("law of the center height:")
for value, p in dist.support:
    print(f"  P(h = {value:+d}) = {p}")
print(f"  mean {dist.mean()}, variance {dist.variance()}")

dom3 = hl.ball_domain(2, 3)
mat = hl.enumerate_matrix(dom3, hl.zero_boundary(dom3))
print(f"\nd=2, L=3: {mat.shape[0]} configurations")
dist3 = hl.marginal_at(dom3, hl.zero_boundary(dom3), (0, 0))
print(f"  P(h(0) = 0) drops to {dist3.prob(0)} ~ {float(dist3.prob(0)):.4f}")
print(f"  variance grows to {float(dist3.variance()):.4f}")

summary = hl.delocalization_quantities(dist3)
print(f"  theta = {float(summary.theta):.4f}, m_hat = {summary.m_hat} "
      f"(always below 2/theta = {float(2 / summary.theta):.2f})")
