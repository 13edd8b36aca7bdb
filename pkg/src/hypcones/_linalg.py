"""Small linear-algebra toolkit used by subspaces, faces, and projections.

Two parallel tracks: exact Gaussian elimination over fractions.Fraction for
rational data (rank, solve, nullspace, subspace intersection), and
numpy/scipy routines for float data.  Exact nullspaces come out of the
reduced row echelon form, so their basis vectors are echelon structured
(one pivot coordinate per free column), which downstream face discovery
relies on for axis-aligned candidates.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

Row = list  # list[Fraction]


def rref(rows: list[Row]) -> tuple[list[Row], list[int]]:
    """Reduced row echelon form of a rational matrix; returns (rref, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    nrows, ncols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank_exact(rows: list[Row]) -> int:
    _, pivots = rref(rows)
    return len(pivots)


def nullspace_exact(rows: list[Row], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of {x : A x = 0}, one vector per free column of the RREF."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(tuple(v))
    return basis


def solve_exact(a_rows: list[Row], b: list[Fraction]) -> list[Fraction] | None:
    """Solve A x = b exactly; None when the system is inconsistent.

    For underdetermined consistent systems the free variables are set to zero.
    """
    if not a_rows:
        return [] if all(v == 0 for v in b) else None
    ncols = len(a_rows[0])
    aug = [list(r) + [bv] for r, bv in zip(a_rows, b)]
    red, pivots = rref(aug)
    if ncols in pivots:  # pivot in the augmented column
        return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return x


def in_rowspan_exact(basis_rows: list[Row], x: list[Fraction]) -> bool:
    if all(v == 0 for v in x):
        return True
    return rank_exact(basis_rows + [list(x)]) == rank_exact(basis_rows)


def coords_in_basis_exact(basis_rows: list[Row], x: list[Fraction]) -> list[Fraction] | None:
    """Coefficients c with sum_i c_i * basis_i = x, or None when x is outside the span."""
    n = len(x)
    a = [[basis_rows[j][i] for j in range(len(basis_rows))] for i in range(n)]
    return solve_exact(a, list(x))


def intersect_rowspans_exact(b1: list[Row], b2: list[Row], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of span(b1) /\\ span(b2), both given as row lists."""
    if not b1 or not b2:
        return []
    # v = B1^T a = B2^T b  <=>  [B1^T | -B2^T] (a, b) = 0
    r1, r2 = len(b1), len(b2)
    stacked = [[b1[j][i] for j in range(r1)] + [-b2[j][i] for j in range(r2)] for i in range(ncols)]
    vecs = []
    for nv in nullspace_exact(stacked, r1 + r2):
        v = [sum(nv[j] * b1[j][i] for j in range(r1)) for i in range(ncols)]
        if any(c != 0 for c in v):
            vecs.append(v)
    red, pivots = rref(vecs)
    return [tuple(red[i]) for i in range(len(pivots))]


# ---------------------------------------------------------------------------
# float track

def rank_float(a: np.ndarray, rtol: float = 1e-10) -> int:
    a = np.atleast_2d(np.asarray(a, dtype=float))
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0:
        return 0
    return int(np.sum(s > rtol * max(1.0, s[0])))


def nullspace_float(a: np.ndarray, rtol: float = 1e-10) -> np.ndarray:
    """Orthonormal basis (rows) of the kernel of a."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    _, s, vt = np.linalg.svd(a)
    tol = rtol * max(1.0, s[0] if s.size else 1.0)
    r = int(np.sum(s > tol))
    return vt[r:]


def orthonormal_rows(rows: np.ndarray, weights: np.ndarray | None = None) -> np.ndarray:
    """Orthonormalize row vectors, optionally under a diagonal metric.

    With weights w the inner product is <u, v> = sum_i w_i u_i v_i; the
    returned rows are orthonormal in that metric and span the same space.
    """
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    if rows.size == 0:
        return rows
    if weights is None:
        q, _ = np.linalg.qr(rows.T)
        return q.T[: rank_float(rows)]
    sw = np.sqrt(np.asarray(weights, dtype=float))
    q, _ = np.linalg.qr((rows * sw).T)
    return (q.T / sw)[: rank_float(rows)]


def coords_in_basis_float(basis_rows: np.ndarray, x: np.ndarray, rtol: float = 1e-8):
    """Least-squares coordinates of x in the rows, or None when x is not in the span."""
    basis_rows = np.atleast_2d(np.asarray(basis_rows, dtype=float))
    x = np.asarray(x, dtype=float)
    c, *_ = np.linalg.lstsq(basis_rows.T, x, rcond=None)
    resid = basis_rows.T @ c - x
    if np.linalg.norm(resid) > rtol * (1.0 + np.linalg.norm(x)):
        return None
    return c
