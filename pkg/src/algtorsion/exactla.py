"""Exact linear algebra kernels.

Three independent tool sets used across the package:

* dense GF(2) matrices on numpy uint8 (row reduction, rank, solve,
  nullspace, span membership);
* integer matrix diagonalization with unimodular transforms, for
  particular solutions and kernel lattices of integer linear systems;
* Fourier-Motzkin elimination over exact rationals, for feasibility,
  variable bounds, and bounded lattice-point enumeration.

No floating point anywhere; integer work uses Python ints, rational
work uses fractions.Fraction.
"""

from fractions import Fraction
from math import ceil, floor, gcd

import numpy as np


# ------------------------------------------------------------------ GF(2)

def gf2_matrix(rows, width=None):
    """Build a uint8 matrix mod 2 from an iterable of row iterables."""
    rows = [list(r) for r in rows]
    if not rows:
        return np.zeros((0, 0 if width is None else width), dtype=np.uint8)
    m = np.array(rows, dtype=np.int64) % 2
    return m.astype(np.uint8)


def gf2_mul(a, b):
    """Matrix product mod 2; widened before multiplying to avoid overflow."""
    prod = a.astype(np.int64) @ b.astype(np.int64)
    return (prod % 2).astype(np.uint8)


def gf2_row_reduce(mat):
    """Reduced row echelon form over GF(2).

    Returns (rref, pivot_columns).  The input is not modified.
    """
    m = np.array(mat, dtype=np.uint8, copy=True) % 2
    nrows, ncols = m.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        hits = np.nonzero(m[r:, c])[0]
        if hits.size == 0:
            continue
        pr = r + int(hits[0])
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        mask = m[:, c].astype(bool)
        mask[r] = False
        if mask.any():
            m[mask] ^= m[r]
        pivots.append(c)
        r += 1
    return m, pivots


def gf2_rank(mat):
    if mat.size == 0:
        return 0
    return len(gf2_row_reduce(mat)[1])


def gf2_nullspace(mat):
    """Basis of the right nullspace, returned as rows of a matrix."""
    m = np.asarray(mat, dtype=np.uint8)
    nrows, ncols = m.shape
    rref, pivots = gf2_row_reduce(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.uint8)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for row, p in enumerate(pivots):
            basis[k, p] = rref[row, f]
    return basis


def gf2_solve(mat, rhs):
    """One solution of mat @ x = rhs over GF(2), or None."""
    m = np.asarray(mat, dtype=np.uint8)
    b = np.asarray(rhs, dtype=np.uint8).reshape(-1, 1)
    aug = np.hstack([m, b])
    rref, pivots = gf2_row_reduce(aug)
    ncols = m.shape[1]
    if ncols in pivots:
        return None
    x = np.zeros(ncols, dtype=np.uint8)
    for row, p in enumerate(pivots):
        x[p] = rref[row, ncols]
    return x


def gf2_in_span(rows, vec):
    """Is vec in the row space of rows?"""
    rows = np.asarray(rows, dtype=np.uint8)
    v = np.asarray(vec, dtype=np.uint8).reshape(1, -1)
    if rows.size == 0:
        return not v.any()
    return gf2_rank(rows) == gf2_rank(np.vstack([rows, v]))


# -------------------------------------------- integer diagonalization

def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def integer_diagonalize(matrix):
    """Diagonalize an integer matrix by unimodular row/column operations.

    Returns (U, S, V) with U @ matrix @ V == S, S diagonal with the
    nonzero entries in the leading positions.  U and V are unimodular.
    The divisibility chain of Smith form is not enforced; solving and
    kernel extraction only need the diagonal shape.
    """
    S = [[int(x) for x in row] for row in matrix]
    m = len(S)
    n = len(S[0]) if m else 0
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row[dst] += q * row[src]
        S[dst] = [a + q * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in S:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(S[i][j])
                if v and (best is None or v < best):
                    best = v
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot[0] != t:
            swap_rows(t, pivot[0])
        if pivot[1] != t:
            swap_cols(t, pivot[1])
        dirty = False
        for i in range(m):
            if i == t or S[i][t] == 0:
                continue
            q = S[i][t] // S[t][t]
            add_row(i, t, -q)
            if S[i][t]:
                dirty = True
        for j in range(n):
            if j == t or S[t][j] == 0:
                continue
            q = S[t][j] // S[t][t]
            add_col(j, t, -q)
            if S[t][j]:
                dirty = True
        if dirty:
            continue
        t += 1
    return U, S, V


def _mat_vec(M, v):
    return [sum(a * b for a, b in zip(row, v)) for row in M]


def solve_integer(matrix, rhs):
    """Solve matrix @ x = rhs over the integers.

    Returns (particular, kernel_basis).  particular is None when no
    integer solution exists; kernel_basis is a list of integer vectors
    spanning the solution lattice of the homogeneous system.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    U, S, V = integer_diagonalize(matrix)
    rank = 0
    while rank < min(m, n) and S[rank][rank] != 0:
        rank += 1
    kernel = [[V[i][j] for i in range(n)] for j in range(rank, n)]
    c = _mat_vec(U, list(rhs))
    y = [0] * n
    ok = True
    for t in range(rank):
        d = S[t][t]
        if c[t] % d:
            ok = False
            break
        y[t] = c[t] // d
    if ok:
        for i in range(rank, m):
            if c[i] != 0:
                ok = False
                break
    if not ok:
        return None, kernel
    x = _mat_vec(V, y)
    return x, kernel


def integer_kernel(matrix):
    return solve_integer(matrix, [0] * len(matrix))[1]


# --------------------------------------------------- Fourier-Motzkin

class UnboundedPolyhedron(Exception):
    """Raised when an enumeration needs a bound that does not exist."""


def _normalize_ineq(coeffs, const):
    # scale (a . x + c >= 0) to a primitive integer vector
    vals = list(coeffs) + [const]
    fracs = [Fraction(v) for v in vals]
    denom = 1
    for f in fracs:
        denom = denom * f.denominator // gcd(denom, f.denominator)
    ints = [int(f * denom) for f in fracs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)


def fm_system(ineqs, nvars):
    """Normalize a list of (coeffs, const) pairs with coeffs length nvars."""
    out = set()
    for coeffs, const in ineqs:
        if len(coeffs) != nvars:
            raise ValueError("inequality arity mismatch")
        out.add(_normalize_ineq(coeffs, const))
    return out


def _eliminate(system, var):
    pos, neg, rest = [], [], set()
    for q in system:
        a = q[var]
        if a > 0:
            pos.append(q)
        elif a < 0:
            neg.append(q)
        else:
            rest.add(q)
    for p in pos:
        for ng in neg:
            combo = tuple(p[k] * (-ng[var]) + ng[k] * p[var] for k in range(len(p)))
            rest.add(_normalize_ineq(combo[:-1], combo[-1]))
    return rest


def fm_feasible(ineqs, nvars):
    """Is {x : a.x + c >= 0 for all given (a, c)} nonempty over the rationals?"""
    system = fm_system(ineqs, nvars)
    for v in range(nvars):
        system = _eliminate(system, v)
    return all(q[-1] >= 0 for q in system)


def fm_variable_bounds(ineqs, nvars, var):
    """Exact (lower, upper) bounds of x[var] over the polyhedron.

    Each side is a Fraction or None when unbounded.  Assumes the
    polyhedron is nonempty.
    """
    system = fm_system(ineqs, nvars)
    for v in range(nvars):
        if v != var:
            system = _eliminate(system, v)
    lo, hi = None, None
    for q in system:
        a, c = q[var], q[-1]
        if a > 0:
            bound = Fraction(-c, a)
            if lo is None or bound > lo:
                lo = bound
        elif a < 0:
            bound = Fraction(-c, a)
            if hi is None or bound < hi:
                hi = bound
    return lo, hi


def enumerate_lattice_points(ineqs, nvars):
    """All integer points of a rational polytope, by recursive bounding.

    Raises UnboundedPolyhedron when some coordinate is unbounded.
    Intended for the very small dimensions that arise here.
    """
    if nvars == 0:
        return [[]] if fm_feasible(ineqs, 0) else []
    system = [(list(c), k) for c, k in ineqs]
    out = []

    def recurse(fixed, remaining_system, remaining_vars):
        if remaining_vars == 0:
            consts_ok = all(k >= 0 for c, k in remaining_system)
            if consts_ok:
                out.append(list(fixed))
            return
        if not fm_feasible(remaining_system, remaining_vars):
            return
        lo, hi = fm_variable_bounds(remaining_system, remaining_vars, 0)
        if lo is None or hi is None:
            raise UnboundedPolyhedron("enumeration region is unbounded")
        for value in range(ceil(lo), floor(hi) + 1):
            substituted = []
            for coeffs, const in remaining_system:
                substituted.append((coeffs[1:], const + coeffs[0] * value))
            recurse(fixed + [value], substituted, remaining_vars - 1)

    recurse([], system, nvars)
    return out
