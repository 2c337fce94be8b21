import itertools

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from foa.matching import solve_assignment


def brute(cost, maximize):
    n = len(cost)
    scored = [(sum(cost[i][p[i]] for i in range(n)), p) for p in itertools.permutations(range(n))]
    best = (max if maximize else min)(v for v, _ in scored)
    return best, min(p for v, p in scored if abs(v - best) < 1e-9)


@pytest.mark.parametrize("maximize", [False, True])
def test_agrees_with_enumeration(rng, maximize):
    for _ in range(300):
        n = int(rng.integers(1, 6))
        cost = rng.random((n, n))
        cols, total = solve_assignment(cost, maximize)
        best, lex = brute(cost, maximize)
        assert total == pytest.approx(best, abs=1e-12)
        assert tuple(cols) == lex


def test_ties_pick_lexicographically_smallest(rng):
    for _ in range(300):
        n = int(rng.integers(1, 6))
        cost = rng.integers(0, 3, (n, n)).astype(float)
        cols, total = solve_assignment(cost)
        best, lex = brute(cost, False)
        assert tuple(cols) == lex and total == best


def test_all_equal_entries_give_identity():
    cols, total = solve_assignment(np.ones((4, 4)), maximize=True)
    assert cols == [0, 1, 2, 3] and total == 4.0


def test_agrees_with_scipy_on_larger_matrices(rng):
    for n in (10, 40, 120):
        cost = rng.normal(size=(n, n))
        _, total = solve_assignment(cost)
        r, c = linear_sum_assignment(cost)
        assert total == pytest.approx(cost[r, c].sum(), abs=1e-9)


def test_empty_and_non_square():
    assert solve_assignment(np.zeros((0, 0))) == ([], 0.0)
    with pytest.raises(ValueError):
        solve_assignment(np.zeros((2, 3)))
