import math
from fractions import Fraction

import numpy as np
import pytest

import heightlat as hl


@pytest.mark.parametrize("L,expect", [(1, 6), (3, 70), (5, 924)])
def test_d1_counts_match_bridge_numbers(L, expect):
    # closed form: paths of 2L+2 unit steps from 0 back to 0
    assert expect == math.comb(2 * L + 2, L + 1)
    dom = hl.ball_domain(1, L)
    assert hl.count_extensions(dom, hl.zero_boundary(dom)) == expect


def test_d2_lambda1_count(lambda1_configs):
    assert len(lambda1_configs) == 18
    assert len({h.as_tuple() for h in lambda1_configs}) == 18


def test_stream_is_sorted_and_valid(lambda1_configs):
    tuples = [h.as_tuple() for h in lambda1_configs]
    assert tuples == sorted(tuples)
    for h in lambda1_configs:
        assert hl.is_valid(h.domain, h.values)


def test_matrix_agrees_with_stream(lambda1, lambda1_configs):
    dom, tau = lambda1
    mat = hl.enumerate_matrix(dom, tau)
    assert mat.shape == (18, dom.n_extension)
    assert [tuple(int(x) for x in row) for row in mat] == [
        h.as_tuple() for h in lambda1_configs
    ]


def test_matrix_agrees_on_lambda3_d1():
    dom = hl.ball_domain(1, 3)
    tau = hl.zero_boundary(dom)
    mat = hl.enumerate_matrix(dom, tau)
    stream = [h.as_tuple() for h in hl.enumerate_all(dom, tau)]
    assert [tuple(int(x) for x in row) for row in mat] == stream


def test_marginals_origin():
    dom = hl.ball_domain(2, 1)
    tau = hl.zero_boundary(dom)
    dist = hl.marginal_at(dom, tau, (0, 0))
    assert dist.prob(0) == Fraction(8, 9)
    assert dist.prob(2) == dist.prob(-2) == Fraction(1, 18)
    assert dist.variance() == Fraction(4, 9)
    assert dist.mean() == 0

    d1 = hl.ball_domain(1, 1)
    dist1 = hl.marginal_at(d1, hl.zero_boundary(d1), (0,))
    assert dist1.prob(0) == Fraction(2, 3)
    assert dist1.prob(2) == dist1.prob(-2) == Fraction(1, 6)


def test_marginal_odd_site_symmetric():
    dom = hl.ball_domain(2, 1)
    dist = hl.marginal_at(dom, hl.zero_boundary(dom), (1, 0))
    assert dist.prob(1) == dist.prob(-1) == Fraction(1, 2)


def test_marginal_reflection_symmetry(lambda3_d2_matrix):
    dom, mat = lambda3_d2_matrix
    i = dom.index[(0, 0)]
    vals, counts = np.unique(mat[:, i], return_counts=True)
    tally = dict(zip(vals.tolist(), counts.tolist()))
    for v, c in tally.items():
        assert tally.get(-v) == c  # law of f equals law of -f under zero boundary


def test_counts_invariant_under_negation_and_reflection():
    dom = hl.ball_domain(1, 3)
    base = hl.count_extensions(dom, hl.zero_boundary(dom))
    up = hl.BoundaryCondition(dom, np.array([2, 2], dtype=np.int16))
    down = hl.BoundaryCondition(dom, np.array([-2, -2], dtype=np.int16))
    skew = hl.BoundaryCondition(dom, np.array([-2, 2], dtype=np.int16))
    mirror = hl.BoundaryCondition(dom, np.array([2, -2], dtype=np.int16))
    assert hl.count_extensions(dom, up) == hl.count_extensions(dom, down)
    assert hl.count_extensions(dom, skew) == hl.count_extensions(dom, mirror)
    assert base >= hl.count_extensions(dom, skew)


def test_conditional_site_law():
    dom = hl.ball_domain(2, 1)
    tau = hl.zero_boundary(dom)
    ring_plus = {v: 1 if hl.vertex_parity(v) else 0 for v in dom.extension}
    h = hl.validate(dom, [ring_plus[v] for v in dom.extension])
    law = hl.conditional_site_law(h, (0, 0))
    assert law.counts == {0: 1, 2: 1}

    mixed = dict(ring_plus)
    mixed[(0, 1)] = -1
    h2 = hl.validate(dom, [mixed[v] for v in dom.extension])
    law2 = hl.conditional_site_law(h2, (0, 0))
    assert law2.counts == {0: 1}

    with pytest.raises(hl.NotInterior):
        hl.conditional_site_law(h, (2, 0))


def test_conditional_law_never_empty(lambda1_configs):
    for h in lambda1_configs:
        for v in h.domain.interior:
            law = hl.conditional_site_law(h, v)
            assert 1 <= len(law.counts) <= 2


def test_enumerate_pairs_product(lambda1, lambda1_pairs):
    assert len(lambda1_pairs) == 324
    assert len({p.as_tuple() for p in lambda1_pairs}) == 324
    dom, tau = lambda1
    assert hl.count_pairs(dom, tau, tau) == 324


def test_enumerate_pairs_infeasible_propagates():
    dom = hl.ball_domain(1, 1)
    tau = hl.zero_boundary(dom)
    bad = hl.BoundaryCondition(dom, np.array([6, 0], dtype=np.int16))
    with pytest.raises(hl.InfeasibleBoundary):
        list(hl.enumerate_pairs(dom, tau, bad))


def test_domain_too_large_guard():
    dom = hl.ball_domain(2, 5)
    with pytest.raises(hl.DomainTooLarge) as e:
        hl.count_extensions(dom, hl.zero_boundary(dom), ceiling=1000)
    assert e.value.ceiling == 1000
    assert e.value.estimate > 1000


def test_lambda3_d2_reference_count(lambda3_d2_matrix):
    _, mat = lambda3_d2_matrix
    # frozen once from this oracle; guards against enumeration regressions
    assert mat.shape[0] == 230274
