from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from wallcross import lp


def test_simple_maximum():
    # max x + y, x + 2y <= 4, 3x + y <= 6
    res = lp.maximize([1, 1], ub=[([1, 2], 4), ([3, 1], 6)])
    assert res.status == lp.OPTIMAL
    assert res.value == F(14, 5)
    assert res.x == (F(8, 5), F(6, 5))


def test_infeasible_and_unbounded():
    assert lp.maximize([1], ub=[([1], -1)]).status == lp.INFEASIBLE
    assert lp.maximize([1, 0], ub=[([0, 1], 1)]).status == lp.UNBOUNDED


def test_equalities_and_negative_rhs():
    res = lp.maximize([0, 1], ub=[([-1, 0], -1)], eq=[([1, 1], 3)])
    assert res.status == lp.OPTIMAL
    assert res.value == 2


def test_strict_point_margin():
    # 0 < x < 1 strictly: margin 1/2 at x = 1/2
    x, t = lp.strict_point([([-1], 0), ([1], 1)], nv=1)
    assert x == (F(1, 2),) and t == F(1, 2)
    assert lp.strict_point([([1], 0)], nv=1) is None


@pytest.mark.parametrize(
    "ub, eq, dim",
    [
        ([([1, 1, 1], 1)], [], 3),
        ([], [([1, 1, 1], 1)], 2),
        ([([1, 1], 0)], [], 0),
        ([([1, 0], 1), ([-1, 0], -1)], [], 1),
        ([([1], -1)], [], -1),
    ],
)
def test_affine_dimension(ub, eq, dim):
    nv = len((ub + eq)[0][0])
    assert lp.affine_dimension(nv, ub, eq) == dim


def test_rank():
    assert lp.rank([[1, 2], [2, 4]]) == 1
    assert lp.rank([[1, 0, 1], [0, 1, 1], [1, 1, 2]]) == 2
    assert lp.rank([]) == 0


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(-3, 3), min_size=2, max_size=2),
    st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-2, 6)), min_size=1, max_size=4),
)
def test_maximum_matches_grid_on_integer_box(c, rows):
    # inside the box 0 <= x, y <= 4 the optimum over a fine rational grid
    # can never beat the LP, and the LP optimum must be feasible
    ub = [([a, b], r) for a, b, r in rows] + [([1, 0], 4), ([0, 1], 4)]
    res = lp.maximize(c, ub)
    grid = [F(i, 4) for i in range(17)]
    feasible = [
        (x, y) for x, y in product(grid, grid) if all(a * x + b * y <= r for (a, b), r in ub)
    ]
    if res.status == lp.INFEASIBLE:
        assert not feasible
        return
    assert res.status == lp.OPTIMAL
    x = res.x
    assert all(x_ >= 0 for x_ in x)
    assert all(a * x[0] + b * x[1] <= r for (a, b), r in ub)
    for x_, y_ in feasible:
        assert c[0] * x_ + c[1] * y_ <= res.value
