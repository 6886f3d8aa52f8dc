import pytest

import heightlat as hl


def ring_config():
    """Zero boundary, odd ring at +1, center at 2."""
    dom = hl.ball_domain(2, 1)
    vals = {v: 0 for v in dom.extension}
    for v in dom.interior:
        if hl.vertex_parity(v) == 1:
            vals[v] = 1
    vals[(0, 0)] = 2
    return hl.validate(dom, [vals[v] for v in dom.extension])


def test_ring_single_loop():
    cs = hl.level_set_edges(ring_config(), 1)
    assert len(cs) == 1
    (c,) = cs
    assert c.kind == "loop" and len(c) == 12 and c.outermost
    assert c.dual_vertices[0] == c.dual_vertices[-1]


def test_nested_levels_of_ring():
    # level 2 separates the center peak from the ring: a 4-segment loop
    cs = hl.level_set_edges(ring_config(), 2)
    assert [(c.kind, len(c)) for c in cs] == [("loop", 4)]


def test_pyramid_levels_single_loop():
    dom = hl.ball_domain(2, 3)
    h = hl.extend_max(hl.zero_boundary(dom))  # cone of height 4 at the center
    for a in (1, 2, 3, 4):
        level = hl.level_set_edges(h, a)
        assert len(level) == 1 and level[0].kind == "loop" and level[0].outermost


def test_annulus_hole_not_outermost():
    # radial profile [0,1,2,1,0,1,0]: the heights >= 1 form a thick annulus
    # over norms 1..3 (whose hole boundary is enclosed by its outer boundary)
    # plus 20 isolated islands at norm 5
    dom = hl.ball_domain(2, 5)
    profile = [0, 1, 2, 1, 0, 1, 0]
    h = hl.validate(dom, [profile[hl.l1_norm(v)] for v in dom.extension])
    cs = hl.level_set_edges(h, 1)
    assert all(c.kind == "loop" for c in cs)
    assert len(cs) == 22
    enclosed = [c for c in cs if not c.outermost]
    assert len(enclosed) == 1 and len(enclosed[0]) == 4  # the hole around the center
    assert max(cs, key=len).outermost  # the annulus outer boundary, 28 segments


def test_two_bumps_not_nested():
    # two separated unit bumps above a flat floor: two loops, both outermost
    dom = hl.box_domain(2, (0, 0), (4, 2))
    vals = {v: ((v[0] + v[1]) % 2) * -1 for v in dom.extension}  # alternating 0 / -1
    vals[(1, 0)] = 1
    vals[(3, 2)] = 1
    h = hl.validate(dom, [vals[v] for v in dom.extension])
    cs = hl.level_set_edges(h, 1)
    loops = [c for c in cs if c.kind == "loop"]
    assert len(loops) == 2
    assert all(c.outermost for c in loops)
    assert all(len(c) == 4 for c in loops)


def test_frozen_plane_path():
    dom = hl.box_domain(2, (0, 0), (2, 2))
    h = hl.validate(dom, [x + y for x, y in dom.extension])
    cs = hl.level_set_edges(h, 1)
    assert [(c.kind, c.outermost) for c in cs] == [("path", True)]
    assert len(cs[0]) == 6


def test_empty_level():
    assert hl.level_set_edges(ring_config(), 9) == []
    assert hl.level_set_edges(ring_config(), -7) == []


def test_dimension_guard():
    dom = hl.ball_domain(1, 1)
    h = hl.validate(dom, [0, 1, 0, 1, 0])
    with pytest.raises(hl.DimensionError):
        hl.level_set_edges(h, 1)


def test_sampled_contours_close_or_end_on_rim():
    dom = hl.ball_domain(2, 7)
    h = hl.cftp_sample(dom, hl.zero_boundary(dom), 11)
    for a in (0, 1, 2):
        for c in hl.level_set_edges(h, a):
            if c.kind == "loop":
                assert c.dual_vertices[0] == c.dual_vertices[-1]
            else:
                assert c.dual_vertices[0] != c.dual_vertices[-1]
            # segments connect consecutive dual vertices
            for p, q in c.segments:
                assert abs(p[0] - q[0]) + abs(p[1] - q[1]) == 1


def test_level1_contour_census_lambda1(lambda1, lambda1_configs):
    # frozen from exhaustive enumeration: level-1 contour counts per config;
    # disjoint one-site islands legitimately produce several loops at once
    from collections import Counter

    census = Counter()
    for h in lambda1_configs:
        cs = hl.level_set_edges(h, 1)
        assert all(c.kind == "loop" for c in cs)
        census[len(cs)] += 1
    assert dict(census) == {0: 2, 1: 5, 2: 6, 3: 4, 4: 1}


def test_edge_count_conservation():
    # every crossing edge lands in exactly one contour
    h = ring_config()
    for a in (1, 2):
        cs = hl.level_set_edges(h, a)
        total = sum(len(c) for c in cs)
        vals = {v: h.value_at(v) for v in h.domain.extension}
        crossing = 0
        for (x, y), hv in vals.items():
            for w in ((x + 1, y), (x, y + 1)):
                if w in vals and {hv, vals[w]} == {a - 1, a}:
                    crossing += 1
        assert total == crossing
