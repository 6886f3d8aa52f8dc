import itertools
from collections import Counter

import numpy as np
import pytest

import heightlat as hl


def make_pair(dom, f_vals, g_vals):
    return hl.HomPair(hl.validate(dom, f_vals), hl.validate(dom, g_vals))


class TestComponents:
    def test_equal_pair_no_components(self, lambda1_configs):
        h = lambda1_configs[0]
        lab = hl.components(hl.HomPair(h, h.copy()), "f!=g")
        assert lab.clusters == []

    def test_single_center_component(self):
        dom = hl.ball_domain(1, 1)
        pair = make_pair(dom, [0, 1, 2, 1, 0], [0, 1, 0, 1, 0])
        lab = hl.components(pair, "f>g")
        assert len(lab.clusters) == 1
        c = lab.clusters[0]
        assert c.key_vertex == (0,) and not c.anchored
        assert [dom.extension[i] for i in c.vertices] == [(0,)]

    def test_shifted_predicate_covers_everything(self, lambda1_configs):
        pair = hl.HomPair(lambda1_configs[0], lambda1_configs[1])
        lab = hl.components(pair, "f>=g+2k", k=-10)
        assert len(lab.clusters) == 1
        assert lab.clusters[0].anchored
        assert len(lab.clusters[0].vertices) == pair.domain.n_extension

    def test_sign_constant_per_component(self, lambda1_pairs):
        for pair in lambda1_pairs:
            diff = pair.f.values.astype(int) - pair.g.values.astype(int)
            lab = hl.components(pair, "f!=g")
            for c in lab.clusters:
                signs = {int(np.sign(diff[i])) for i in c.vertices}
                assert len(signs) == 1

    def test_component_report_json(self):
        dom = hl.ball_domain(1, 1)
        pair = make_pair(dom, [0, 1, 2, 1, 0], [0, 1, 0, 1, 0])
        rep = hl.components(pair, "f>g").to_json()
        assert rep == {
            "predicate": "f>g",
            "k": 0,
            "clusters": [{"key_vertex": [0], "size": 1, "anchored": False}],
        }

    def test_walk_separation(self, lambda1_pairs):
        # any path from {f>g} to {f<g} passes through {f=g}: equivalently no
        # edge joins the two strict regions
        for pair in lambda1_pairs:
            diff = pair.f.values.astype(int) - pair.g.values.astype(int)
            nbr = pair.domain.neighbor_idx
            for i in range(pair.domain.n_extension):
                for j in nbr[i]:
                    if j >= 0:
                        assert not (diff[i] > 0 and diff[j] < 0)


class TestSwapAnchored:
    def test_identity_without_anchored_components(self, lambda1_pairs):
        for pair in lambda1_pairs[:40]:
            assert hl.swap_anchored(pair) == pair

    def test_involution_on_all_zero_boundary_pairs(self, lambda1_pairs):
        for pair in lambda1_pairs:
            assert hl.swap_anchored(hl.swap_anchored(pair)) == pair

    def test_anchored_swap_d1(self):
        # different boundaries: f runs above g and their gap region is anchored
        dom = hl.ball_domain(1, 3)
        f_vals = [0, 1, 2, 3, 2, 3, 2, 1, 0]
        g_vals = [-2, -1, 0, 1, 0, 1, 0, -1, -2]
        pair = make_pair(dom, f_vals, g_vals)
        lab = hl.components(pair, "f>g")
        assert [c.anchored for c in lab.clusters] == [True]
        swapped = hl.swap_anchored(pair)
        assert np.all(swapped.f.values <= swapped.g.values)
        assert list(swapped.f.values) == g_vals
        assert list(swapped.g.values) == f_vals
        # the mirrored map undoes it, exchanging the roles of the predicates
        assert hl.swap_anchored(swapped, "f<g") == pair

    def test_partial_anchored_swap(self):
        # f > g only on an anchored left region; values exchanged exactly there
        dom = hl.ball_domain(1, 3)
        f_vals = [2, 1, 0, 1, 0, -1, 0, -1, 0]
        g_vals = [0, -1, 0, -1, 0, -1, 0, -1, 0]
        pair = make_pair(dom, f_vals, g_vals)
        lab = hl.components(pair, "f>g")
        anchored = [c for c in lab.clusters if c.anchored]
        assert len(anchored) == 1
        swapped = hl.swap_anchored(pair)
        region = set(anchored[0].vertices)
        for i, v in enumerate(dom.extension):
            if i in region:
                assert swapped.f.values[i] == g_vals[i]
                assert swapped.g.values[i] == f_vals[i]
            else:
                assert swapped.f.values[i] == f_vals[i]
                assert swapped.g.values[i] == g_vals[i]


class TestSwapFinite:
    def test_constant_zero_is_identity(self, lambda1_pairs):
        for pair in lambda1_pairs[:30]:
            assert hl.swap_finite(pair, 0) == pair

    def test_single_component_swap_d1(self):
        dom = hl.ball_domain(1, 1)
        pair = make_pair(dom, [0, 1, 2, 1, 0], [0, 1, 0, 1, 0])
        swapped = hl.swap_finite(pair, 1)
        assert list(swapped.f.values) == [0, 1, 0, 1, 0]
        assert list(swapped.g.values) == [0, 1, 2, 1, 0]

    def test_involution_and_bijection_all_eps(self, lambda1_pairs):
        keys = sorted(
            {c.key_vertex for p in lambda1_pairs for c in hl.components(p, "f!=g").clusters}
        )
        originals = sorted(p.as_tuple() for p in lambda1_pairs)
        for bits in itertools.product((0, 1), repeat=len(keys)):
            eps = dict(zip(keys, bits))
            images = []
            for p in lambda1_pairs:
                q = hl.swap_finite(p, eps)
                assert hl.swap_finite(q, eps) == p
                images.append(q.as_tuple())
            assert sorted(images) == originals  # uniform measure pushes to itself

    def test_missing_epsilon_raises(self):
        dom = hl.ball_domain(1, 1)
        pair = make_pair(dom, [0, 1, 2, 1, 0], [0, 1, 0, 1, 0])
        with pytest.raises(hl.PreconditionViolation):
            hl.swap_finite(pair, {})


class TestEqualize:
    def test_equal_pair_identity(self, lambda1_configs):
        h = lambda1_configs[0]
        pair = hl.HomPair(h, h.copy())
        assert hl.equalize(pair, 0) == pair

    def test_collapse_direction(self):
        dom = hl.ball_domain(1, 1)
        pair = make_pair(dom, [0, 1, 2, 1, 0], [0, 1, 0, 1, 0])
        to_f = hl.equalize(pair, 0)
        assert list(to_f.f.values) == list(to_f.g.values) == [0, 1, 2, 1, 0]
        to_g = hl.equalize(pair, 1)
        assert list(to_g.f.values) == list(to_g.g.values) == [0, 1, 0, 1, 0]

    def test_ordering_under_zero_eps(self, lambda1_pairs):
        # no anchored components here, so equalize(.., 0) always orders the pair
        for pair in lambda1_pairs:
            out = hl.equalize(pair, 0)
            assert np.all(out.f.values >= out.g.values)

    def test_marginals_preserved_exactly(self, lambda1_pairs):
        keys = sorted(
            {c.key_vertex for p in lambda1_pairs for c in hl.components(p, "f!=g").clusters}
        )
        for bits in ((0, 0, 0, 0, 0), (1, 1, 1, 1, 1), (0, 1, 0, 1, 0)):
            eps = dict(zip(keys, bits))
            f_push = Counter(hl.equalize(p, eps).f.as_tuple() for p in lambda1_pairs)
            g_push = Counter(hl.equalize(p, eps).g.as_tuple() for p in lambda1_pairs)
            assert set(f_push.values()) == {18}
            assert set(g_push.values()) == {18}
            assert len(f_push) == len(g_push) == 18


class TestLcInject:
    def test_worked_example_d1(self):
        dom = hl.ball_domain(1, 1)
        h_plus = hl.validate(dom, [0, 1, 2, 1, 0])
        h_minus = hl.validate(dom, [0, -1, -2, -1, 0])
        h, h_prime = hl.lc_inject(h_plus, h_minus, (0,), 0, 1)
        assert h.as_tuple() == (0, -1, 0, -1, 0)
        assert h_prime.as_tuple() == (0, 1, 0, 1, 0)
        assert h.value_at((0,)) == h_prime.value_at((0,)) == 0

    def test_region_recoverable(self):
        dom = hl.ball_domain(1, 3)
        tau = hl.zero_boundary(dom)
        h2 = [h for h in hl.enumerate_all(dom, tau) if h.value_at((0,)) == 2]
        hm2 = [h for h in hl.enumerate_all(dom, tau) if h.value_at((0,)) == -2]
        for hp in h2[:4]:
            for hm in hm2[:4]:
                region = {
                    dom.extension[i]
                    for i in np.flatnonzero(
                        hp.values.astype(int) - hm.values.astype(int) > 2
                    )
                }
                # connected piece through the probe vertex
                out, out_p = hl.lc_inject(hp, hm, (0,), 0, 1)
                rec = hl.lc_recover_region(out, out_p, (0,), 1)
                assert (0,) in rec
                assert rec <= region

    def test_injective_exhaustive_lambda3_d1(self):
        dom = hl.ball_domain(1, 3)
        tau = hl.zero_boundary(dom)
        all_h = list(hl.enumerate_all(dom, tau))
        h2 = [h for h in all_h if h.value_at((0,)) == 2]
        hm2 = [h for h in all_h if h.value_at((0,)) == -2]
        h0 = {h.as_tuple() for h in all_h if h.value_at((0,)) == 0}
        assert len(h2) == len(hm2) == 16
        images = set()
        for hp in h2:
            for hm in hm2:
                a, b = hl.lc_inject(hp, hm, (0,), 0, 1)
                assert a.as_tuple() in h0 and b.as_tuple() in h0
                images.add((a.as_tuple(), b.as_tuple()))
        assert len(images) == len(h2) * len(hm2)  # injective

    def test_precondition_errors(self):
        dom = hl.ball_domain(1, 1)
        h_plus = hl.validate(dom, [0, 1, 2, 1, 0])
        h_minus = hl.validate(dom, [0, -1, -2, -1, 0])
        with pytest.raises(hl.PreconditionViolation):
            hl.lc_inject(h_plus, h_minus, (0,), 0, 2)  # wrong values at v for k=2
        with pytest.raises(hl.PreconditionViolation):
            hl.lc_inject(h_plus, h_minus, (0,), 0, 0)  # k must be positive
        shifted = hl.validate(dom, [2, 1, 2, 1, 2])
        with pytest.raises(hl.PreconditionViolation):
            hl.lc_inject(shifted, h_minus, (0,), 2, 0)
