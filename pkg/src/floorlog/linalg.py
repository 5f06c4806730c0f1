"""Exact linear algebra over Q on integer and rational matrices."""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd

import numpy as np

__all__ = ["IncrementalRank", "rank_q", "rref_q", "nullspace_q", "solve_q"]

# products of two int64 entries must stay below this to skip the object path
_INT64_SAFE = 1 << 62


def _primitive(row: np.ndarray) -> np.ndarray:
    g = reduce(gcd, (int(x) for x in row if x), 0)
    if g > 1:
        row = row // g
    return row


class IncrementalRank:
    """Row-echelon basis over Q, grown block by block.

    Elimination is fraction-free: a row v is reduced by a basis row b with
    pivot column c as ``b[c]*v - v[c]*b`` and then divided by its content.
    Pivots are chosen by minimal absolute value to limit entry growth.  Blocks
    run in int64 while every update provably fits, else in Python ints.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: list[int] = []
        self.basis: list[np.ndarray] = []

    @property
    def rank(self) -> int:
        return len(self.basis)

    @staticmethod
    def _update(V: np.ndarray, b: np.ndarray, c: int) -> np.ndarray:
        col = V[:, c]
        hit = np.nonzero(col)[0]
        if hit.size == 0:
            return V
        sub = V[hit]
        f = col[hit]
        if V.dtype != object:
            bound = abs(int(b[c])) * int(np.abs(sub).max()) + int(np.abs(f).max()) * int(np.abs(b).max())
            if bound >= _INT64_SAFE:
                V = V.astype(object)
                sub, f, b = V[hit], f.astype(object), b.astype(object)
        V[hit] = b[c] * sub - np.outer(f, b)
        return V

    def add_rows(self, rows) -> int:
        """Insert rows (integer 2-D array-like); returns the new rank."""
        V = np.array(rows)
        if V.size == 0:
            return self.rank
        if V.dtype != object:
            V = V.astype(np.int64)
        if V.ndim != 2 or V.shape[1] != self.ncols:
            raise ValueError("row length mismatch")
        for c, b in zip(self.pivots, self.basis):
            if V.dtype == object and b.dtype != object:
                b = b.astype(object)
            V = self._update(V, b, c)
        V = V[np.any(V != 0, axis=1)]
        while V.shape[0]:
            nz = np.any(V != 0, axis=0)
            c = int(np.argmax(nz))
            col = V[:, c]
            cand = np.nonzero(col)[0]
            r = int(cand[np.argmin(np.abs(col[cand]))])
            b = _primitive(V[r].copy())
            if b[c] < 0:
                b = -b
            self.pivots.append(c)
            self.basis.append(b)
            V = np.delete(V, r, axis=0)
            V = self._update(V, b, c)
            V = V[np.any(V != 0, axis=1)]
            if not V.size:
                break
            if V.dtype == object:
                V = np.array([_primitive(row) for row in V], dtype=object)
                if np.abs(V).max() < (1 << 31):
                    V = V.astype(np.int64)
            else:
                V //= np.gcd.reduce(np.abs(V), axis=1)[:, None]
        return self.rank


def rank_q(rows) -> int:
    """Rank over Q of an integer matrix."""
    rows = np.array(rows)
    if rows.size == 0:
        return 0
    eng = IncrementalRank(rows.shape[1])
    return eng.add_rows(rows)


def rref_q(matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    M = [[Fraction(x) for x in row] for row in matrix]
    if not M:
        return M, []
    nrows, ncols = len(M), len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(nrows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return M, pivots


def nullspace_q(matrix, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : matrix @ x = 0} over Q."""
    matrix = [list(row) for row in matrix]
    if ncols is None:
        if not matrix:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(matrix[0])
    if not matrix:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref_q(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve_q(A, b) -> list[Fraction] | None:
    """One solution of A x = b over Q (free variables set to 0), or None."""
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    if not aug:
        return None
    n = len(aug[0]) - 1
    R, pivots = rref_q(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(R, pivots):
        x[pc] = row[n]
    return x
