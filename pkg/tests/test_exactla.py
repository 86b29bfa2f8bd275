import random
from fractions import Fraction

import numpy as np
import pytest

from algtorsion.exactla import (
    UnboundedPolyhedron,
    enumerate_lattice_points,
    fm_feasible,
    fm_variable_bounds,
    gf2_in_span,
    gf2_matrix,
    gf2_nullspace,
    gf2_rank,
    gf2_row_reduce,
    gf2_solve,
    integer_diagonalize,
    integer_kernel,
    solve_integer,
)


def test_gf2_row_reduce_and_rank():
    m = gf2_matrix([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    rref, pivots = gf2_row_reduce(m)
    assert pivots == [0, 1]
    assert gf2_rank(m) == 2


def test_gf2_nullspace_annihilates():
    rng = random.Random(7)
    for _ in range(20):
        rows = rng.randrange(1, 8)
        cols = rng.randrange(1, 8)
        m = gf2_matrix([[rng.randrange(2) for _ in range(cols)] for _ in range(rows)])
        ns = gf2_nullspace(m)
        assert ns.shape[0] == cols - gf2_rank(m)
        if ns.size:
            assert not ((m.astype(np.int64) @ ns.T.astype(np.int64)) % 2).any()


def test_gf2_solve():
    m = gf2_matrix([[1, 0, 1], [0, 1, 1]])
    b = np.array([1, 0], dtype=np.uint8)
    x = gf2_solve(m, b)
    assert x is not None
    assert (((m.astype(np.int64) @ x.astype(np.int64)) % 2) == b).all()
    assert gf2_solve(gf2_matrix([[1, 1], [1, 1]]), np.array([1, 0], dtype=np.uint8)) is None


def test_gf2_in_span():
    rows = gf2_matrix([[1, 1, 0], [0, 0, 1]])
    assert gf2_in_span(rows, np.array([1, 1, 1], dtype=np.uint8))
    assert not gf2_in_span(rows, np.array([1, 0, 0], dtype=np.uint8))
    assert gf2_in_span(gf2_matrix([]), np.zeros(0, dtype=np.uint8))


def _int_rank(vectors):
    if not vectors:
        return 0
    _, s, _ = integer_diagonalize(vectors)
    return sum(1 for t in range(min(len(s), len(s[0]))) if s[t][t] != 0)


def test_integer_diagonalize_transforms():
    rng = random.Random(11)
    for _ in range(25):
        m = rng.randrange(1, 5)
        n = rng.randrange(1, 5)
        a = [[rng.randrange(-6, 7) for _ in range(n)] for _ in range(m)]
        u, s, v = integer_diagonalize(a)
        ua = [[sum(u[i][k] * a[k][j] for k in range(m)) for j in range(n)] for i in range(m)]
        uav = [[sum(ua[i][k] * v[k][j] for k in range(n)) for j in range(n)] for i in range(m)]
        assert uav == s
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert s[i][j] == 0
        # unimodular transforms have full rank over the integers
        assert _int_rank(u) == m
        assert _int_rank(v) == n


def test_solve_integer_particular_and_kernel():
    x, kernel = solve_integer([[2, 4], [1, 3]], [2, 1])
    assert x == [1, 0]
    assert kernel == []

    x, _ = solve_integer([[2, 0], [0, 2]], [1, 0])
    assert x is None

    a = [[1, 2, 3]]
    x, kernel = solve_integer(a, [6])
    assert x is not None
    assert sum(c * v for c, v in zip(a[0], x)) == 6
    assert len(kernel) == 2
    for vec in kernel:
        assert sum(c * v for c, v in zip(a[0], vec)) == 0
    assert _int_rank(kernel) == 2


def test_integer_kernel_of_full_rank_matrix():
    assert integer_kernel([[1, 0], [0, 1]]) == []


def test_fm_feasibility():
    tri = [([1, 0], 0), ([0, 1], 0), ([-1, -1], 1)]
    assert fm_feasible(tri, 2)
    assert not fm_feasible([([1], -1), ([-1], 0)], 1)
    assert fm_feasible([], 0)


def test_fm_bounds():
    tri = [([1, 0], 0), ([0, 1], 0), ([-1, -1], 1)]
    lo, hi = fm_variable_bounds(tri, 2, 0)
    assert lo == 0 and hi == 1
    lo, hi = fm_variable_bounds([([1], 0)], 1, 0)
    assert lo == 0 and hi is None


def test_fm_bounds_fractional():
    lo, hi = fm_variable_bounds([([2], -1), ([-3], 2)], 1, 0)
    assert lo == Fraction(1, 2) and hi == Fraction(2, 3)


def test_enumerate_lattice_points():
    tri = [([1, 0], 0), ([0, 1], 0), ([-1, -1], 2)]
    pts = sorted(map(tuple, enumerate_lattice_points(tri, 2)))
    assert pts == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]


def test_enumerate_lattice_points_unbounded():
    with pytest.raises(UnboundedPolyhedron):
        enumerate_lattice_points([([1], 0)], 1)


def test_enumerate_lattice_points_empty():
    assert enumerate_lattice_points([([1], -5), ([-1], 2)], 1) == []
    assert enumerate_lattice_points([], 0) == [[]]
