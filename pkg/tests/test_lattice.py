import numpy as np
import pytest

import heightlat as hl
from heightlat.lattice import LatticeDomain


def test_ball_d1():
    dom = hl.ball_domain(1, 1)
    assert dom.interior == ((-1,), (0,), (1,))
    assert dom.outer_boundary == ((-2,), (2,))


def test_ball_d2_sizes():
    dom = hl.ball_domain(2, 1)
    assert dom.n_interior == 5
    assert len(dom.outer_boundary) == 8
    assert hl.ball_domain(2, 3).n_interior == 25  # direct count of |v1|+|v2| <= 3


@pytest.mark.parametrize("L", [1, 3, 5])
def test_odd_ball_boundary_is_even(L):
    dom = hl.ball_domain(2, L)
    assert all(hl.vertex_parity(v) == 0 for v in dom.outer_boundary)


def test_neighbors():
    assert hl.neighbors((0,)) == [(-1,), (1,)]
    assert set(hl.neighbors((0, 0))) == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    assert len(hl.neighbors((1, 1, 1))) == 6
    assert all(
        sum(abs(a - b) for a, b in zip(w, (1, 1, 1))) == 1 for w in hl.neighbors((1, 1, 1))
    )


def test_outer_boundary_of():
    assert set(hl.outer_boundary_of([(0,)], 1)) == {(-1,), (1,)}
    ball1 = hl.ball_domain(2, 1).interior
    assert set(hl.outer_boundary_of(ball1, 2)) == {v for v in hl.ball_domain(2, 2).interior
                                                   if hl.l1_norm(v) == 2}
    assert hl.outer_boundary_of([], 2) == []


def test_boundary_disjoint_and_adjacent():
    for dom in (hl.ball_domain(2, 3), hl.box_domain(2, (0, 0), (3, 2))):
        inter = set(dom.interior)
        for b in dom.outer_boundary:
            assert b not in inter
            assert any(w in inter for w in hl.neighbors(b))


def test_interior_closed_in_extension():
    dom = hl.box_domain(3, (0, 0, 0), (1, 1, 1))
    ext = set(dom.extension)
    for v in dom.interior:
        assert all(w in ext for w in hl.neighbors(v))


def test_extension_monotone_in_radius():
    small = set(hl.ball_domain(2, 1).extension)
    assert small <= set(hl.ball_domain(2, 2).extension)


def test_parity_partition():
    dom = hl.ball_domain(2, 3)
    even = sum(1 for v in dom.interior if hl.vertex_parity(v) == 0)
    odd = sum(1 for v in dom.interior if hl.vertex_parity(v) == 1)
    assert even + odd == dom.n_interior


def test_ordering_lexicographic():
    dom = hl.ball_domain(2, 2)
    assert list(dom.extension) == sorted(dom.extension)
    assert list(dom.interior) == sorted(dom.interior)
    assert [dom.index[v] for v in dom.extension] == list(range(dom.n_extension))
    # boundary rows of the extension array line up with the boundary tuple
    assert [dom.extension[i] for i in dom.boundary_idx] == list(dom.outer_boundary)
    assert [dom.extension[i] for i in dom.interior_idx] == list(dom.interior)


def test_neighbor_table_interior_complete():
    dom = hl.ball_domain(2, 2)
    tbl = dom.interior_neighbors_idx()
    assert (tbl >= 0).all()
    i = list(dom.interior_idx).index(dom.index[(0, 0)])
    got = {dom.extension[k] for k in tbl[i]}
    assert got == set(hl.neighbors((0, 0)))


def test_json_round_trip():
    dom = hl.ball_domain(2, 3)
    again = LatticeDomain.from_json(dom.to_json())
    assert again == dom and again.to_json()["kind"] == "ball"
    exp = hl.box_domain(2, (0, 0), (1, 1))
    again = LatticeDomain.from_json(exp.to_json())
    assert again == exp and again.to_json()["kind"] == "explicit"


def test_grid2d_embedding():
    dom = hl.ball_domain(2, 2)
    grid = dom.grid2d()
    assert grid.extension_mask.sum() == dom.n_extension
    assert grid.interior_mask.sum() == dom.n_interior
    # every extension vertex lands on its own cell, parity agrees
    cells = grid.cell_of_ext
    assert len(set(cells.tolist())) == dom.n_extension
    par = grid.parity_grid.reshape(-1)[cells]
    assert np.array_equal(par, dom.parity)


def test_grid2d_rejects_other_dims():
    with pytest.raises(hl.DimensionError):
        hl.ball_domain(1, 2).grid2d()
