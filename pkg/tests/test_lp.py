from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from linkadmit.lp import UnboundedError, maximize

F = Fraction


def test_textbook_instance():
    r = maximize([3, 5], [[1, 0], [0, 2], [3, 2]], [4, 12, 18])
    assert r.value == 36
    assert r.x == (2, 6)
    assert r.duals == (0, F(3, 2), 1)


def test_zero_objective_and_empty_rows():
    assert maximize([0, 0], [[1, 1]], [1]).value == 0
    with pytest.raises(UnboundedError):
        maximize([1], [], [])


def test_unbounded():
    with pytest.raises(UnboundedError):
        maximize([1, 1], [[1, -1]], [1])


def test_negative_rhs_rejected():
    with pytest.raises(ValueError):
        maximize([1], [[1]], [-1])


def test_degenerate_problem_terminates():
    # classic cycling example for the largest-coefficient rule
    c = [F(3, 4), -150, F(1, 50), -6]
    A = [[F(1, 4), -60, F(-1, 25), 9], [F(1, 2), -90, F(-1, 50), 3], [0, 0, 1, 0]]
    r = maximize(c, A, [0, 0, 1])
    assert r.value == F(1, 20)


matrices = st.integers(1, 5).flatmap(lambda n: st.tuples(
    st.lists(st.integers(-3, 6), min_size=n, max_size=n),
    st.lists(st.lists(st.integers(0, 5), min_size=n, max_size=n), min_size=1, max_size=5),
    st.lists(st.integers(0, 9), min_size=5, max_size=5)))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_matches_scipy_and_strong_duality(data):
    c, A, b = data
    b = b[:len(A)]
    # columns with no positive entry would be unbounded for positive c
    A = [[a if any(row[j] for row in A) else a for j, a in enumerate(row)] for row in A]
    ref = linprog([-x for x in c], A_ub=A, b_ub=b, bounds=(0, None), method="highs")
    if ref.status == 3:
        with pytest.raises(UnboundedError):
            maximize(c, A, b)
        return
    r = maximize(c, A, b)
    assert abs(float(r.value) + ref.fun) < 1e-7
    assert all(x >= 0 for x in r.x)
    for row, bi in zip(A, b):
        assert sum(a * x for a, x in zip(row, r.x)) <= bi
    assert all(y >= 0 for y in r.duals)
    assert sum(y * bi for y, bi in zip(r.duals, b)) == r.value
    for j, cj in enumerate(c):
        assert sum(y * row[j] for y, row in zip(r.duals, A)) >= cj
