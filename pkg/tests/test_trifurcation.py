import numpy as np
import pytest

import heightlat as hl
from heightlat.pairs import _connected_subsets, _window_components


def test_comb_window_shape():
    omega, origin = hl.comb_window(4)
    assert omega.shape == (9, 9) and origin == (-4, -4)
    # cell lookup: occupied iff x even or y == 0
    for x in range(-4, 5):
        for y in range(-4, 5):
            assert omega[x + 4, y + 4] == (x % 2 == 0 or y == 0)


def test_comb_is_connected_and_spanning():
    omega, _ = hl.comb_window(8)
    _, comps = _window_components(omega)
    assert len(comps) == 1 and comps[0][1]


def test_connected_subsets_of_path():
    # a path of n cells has n(n+1)/2 connected subsets (the intervals)
    cells = [(0, y) for y in range(5)]
    adj = {c: [w for w in ((c[0], c[1] - 1), (c[0], c[1] + 1)) if w in cells] for c in cells}
    subs = list(_connected_subsets(cells, adj))
    assert len(subs) == 15
    assert len(set(subs)) == 15


def test_connected_subsets_of_square():
    cells = [(0, 0), (0, 1), (1, 0), (1, 1)]
    adj = {
        c: [w for w in ((c[0] + 1, c[1]), (c[0] - 1, c[1]), (c[0], c[1] + 1), (c[0], c[1] - 1))
            if w in cells]
        for c in cells
    }
    subs = set(_connected_subsets(cells, adj))
    # 4 singletons + 4 edges + 4 ells + 1 square = 13 connected subsets
    assert len(subs) == 13


def test_comb_probes():
    omega, origin = hl.comb_window(20)
    assert hl.is_trifurcation_ball(omega, origin, (0, 5), 3, alternative=True)
    assert not hl.is_trifurcation_ball(omega, origin, (0, 5), 3)
    assert hl.is_trifurcation_ball(omega, origin, (0, 0), 3)


def test_full_window_never_trifurcates():
    full = np.ones((13, 13), dtype=bool)
    for m in (1, 2):
        assert not hl.is_trifurcation_ball(full, (-6, -6), (0, 0), m)


def test_window_margin_guard():
    omega, origin = hl.comb_window(3)
    with pytest.raises(hl.WindowTooSmall):
        hl.is_trifurcation_ball(omega, origin, (0, 0), 3)
    with pytest.raises(hl.WindowTooSmall):
        hl.is_trifurcation_ball(omega, origin, (2, 0), 2)


def test_search_cap():
    omega, origin = hl.comb_window(10)
    with pytest.raises(ValueError):
        hl.is_trifurcation_ball(omega, origin, (0, 0), 4)
    # the alternative definition needs no subset search, so it is not capped
    assert isinstance(
        hl.is_trifurcation_ball(omega, origin, (0, 0), 4, alternative=True), bool
    )


def test_empty_cluster_near_probe():
    omega = np.zeros((9, 9), dtype=bool)
    omega[0, :] = True  # a single spanning line far from the probe
    assert not hl.is_trifurcation_ball(omega, (-4, -4), (0, 0), 1)
