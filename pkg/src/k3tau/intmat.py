"""Exact integer matrices: numpy object arrays holding Python ints, rows passed around as tuples."""
from __future__ import annotations
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence
import numpy as np
from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form

log = logging.getLogger(__name__)

IntRows = tuple[tuple[int, ...], ...]

def int_array(rows: Iterable[Sequence[int]], ncols: int | None = None) -> np.ndarray:
    rows = [[int(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    out = np.zeros((len(rows), ncols), dtype=object)
    for i, r in enumerate(rows):
        if len(r) != ncols:
            raise ValueError(f"ragged matrix: row {i} has {len(r)} entries, expected {ncols}")
        for j, x in enumerate(r):
            out[i, j] = x
    return out

def as_rows(a: np.ndarray) -> IntRows:
    return tuple(tuple(int(x) for x in row) for row in a)

def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=object)

def from_columns(columns: Sequence[Sequence[int]], nrows: int) -> np.ndarray:
    out = np.zeros((nrows, len(columns)), dtype=object)
    for j, col in enumerate(columns):
        if len(col) != nrows:
            raise ValueError(f"column {j} has {len(col)} entries, expected {nrows}")
        for i, x in enumerate(col):
            out[i, j] = int(x)
    return out

def columns_of(a: np.ndarray) -> list[tuple[int, ...]]:
    return [tuple(int(x) for x in a[:, j]) for j in range(a.shape[1])]

def to_fraction(x) -> Fraction:
    # sympy Integer/Rational expose p and q
    if hasattr(x, "p") and hasattr(x, "q"):
        return Fraction(int(x.p), int(x.q))
    return Fraction(x)

def determinant(rows: IntRows | np.ndarray) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 1
    return int(Matrix(rows).det(method="bareiss"))

def rational_inverse(rows: IntRows | np.ndarray) -> np.ndarray:
    inv = Matrix([list(r) for r in rows]).inv()
    out = np.zeros(inv.shape, dtype=object)
    for i in range(inv.rows):
        for j in range(inv.cols):
            out[i, j] = to_fraction(inv[i, j])
    return out

def is_integral(a: np.ndarray) -> bool:
    return all(Fraction(x).denominator == 1 for x in a.flat)

def integralize(a: np.ndarray) -> np.ndarray:
    out = np.zeros(a.shape, dtype=object)
    for idx, x in np.ndenumerate(a):
        f = Fraction(x)
        if f.denominator != 1:
            raise ValueError(f"entry {idx} = {f} is not an integer")
        out[idx] = int(f)
    return out

@dataclass(frozen=True)
class SmithForm:
    """D = U·A·V with U, V unimodular and d1 | d2 | ... on the diagonal."""

    diagonal: tuple[int, ...]
    left: IntRows
    right: IntRows

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x != 0)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(x for x in self.diagonal if x != 0)

def _pivot(a: np.ndarray, t: int) -> tuple[int, int] | None:
    # smallest nonzero |entry| of the trailing block; ties go to the lowest row, then column
    best = None
    best_abs = 0
    m, n = a.shape
    for i in range(t, m):
        for j in range(t, n):
            x = a[i, j]
            if x and (best is None or abs(x) < best_abs):
                best = (i, j)
                best_abs = abs(x)
    return best

def _non_divisible(a: np.ndarray, t: int) -> int | None:
    p = a[t, t]
    m, n = a.shape
    for i in range(t + 1, m):
        for j in range(t + 1, n):
            if a[i, j] % p:
                return i
    return None

def smith_normal_form(matrix: IntRows | np.ndarray, ncols: int | None = None) -> SmithForm:
    original = int_array(matrix, ncols)
    a = original.copy()
    m, n = a.shape
    left = identity(m)
    right = identity(n)
    if m == 0 or n == 0:
        return SmithForm(diagonal=(), left=as_rows(left), right=as_rows(right))

    for t in range(min(m, n)):
        pivot = _pivot(a, t)
        if pivot is None:
            break
        while True:
            i, j = pivot
            if i != t:
                a[[t, i]] = a[[i, t]]
                left[[t, i]] = left[[i, t]]
            if j != t:
                a[:, [t, j]] = a[:, [j, t]]
                right[:, [t, j]] = right[:, [j, t]]
            p = a[t, t]
            dirty = False
            for i in range(t + 1, m):
                q = a[i, t] // p
                if q:
                    a[i] -= q * a[t]
                    left[i] -= q * left[t]
                if a[i, t]:
                    dirty = True
            for j in range(t + 1, n):
                q = a[t, j] // p
                if q:
                    a[:, j] -= q * a[:, t]
                    right[:, j] -= q * right[:, t]
                if a[t, j]:
                    dirty = True
            if not dirty:
                row = _non_divisible(a, t)
                if row is None:
                    break
                a[t] += a[row]
                left[t] += left[row]
            pivot = _pivot(a, t)
        if a[t, t] < 0:
            a[t] = -a[t]
            left[t] = -left[t]

    assert np.array_equal(left @ original @ right, a)
    diagonal = tuple(int(a[k, k]) for k in range(min(m, n)))
    log.debug("smith form %dx%d -> %s", m, n, [x for x in diagonal if x not in (0, 1)])
    return SmithForm(diagonal=diagonal, left=as_rows(left), right=as_rows(right))

def integer_kernel(matrix: IntRows | np.ndarray, ncols: int) -> np.ndarray:
    """Columns spanning {x in Z^n : A x = 0}; the span is saturated."""
    a = int_array(matrix, ncols)
    if a.shape[0] == 0:
        return identity(ncols)
    snf = smith_normal_form(a)
    right = int_array(snf.right, ncols)
    return right[:, snf.rank:]

def hermite_columns(cols: np.ndarray) -> np.ndarray:
    """Hermite normal form basis of the column span of a full-column-rank matrix."""
    if cols.shape[1] == 0:
        return cols
    h = hermite_normal_form(Matrix(cols.tolist()))
    out = int_array(h.tolist(), h.cols)
    if out.shape != cols.shape:
        raise RuntimeError(f"Hermite form changed the rank: {cols.shape} -> {out.shape}")
    return out

class IntegralSolver:
    """Solves A·x = b over the integers, reusing one Smith form of A."""

    def __init__(self, matrix: IntRows | np.ndarray, ncols: int | None = None):
        self._a = int_array(matrix, ncols)
        snf = smith_normal_form(self._a)
        self._diag = snf.diagonal
        self._rank = snf.rank
        self._left = int_array(snf.left, self._a.shape[0])
        self._right = int_array(snf.right, self._a.shape[1])

    def solve(self, rhs: Sequence[int]) -> np.ndarray | None:
        m, n = self._a.shape
        if len(rhs) != m:
            raise ValueError(f"right-hand side has {len(rhs)} entries, expected {m}")
        b = np.zeros(m, dtype=object)
        for i, x in enumerate(rhs):
            b[i] = int(x)
        c = self._left @ b
        y = np.zeros(n, dtype=object)
        for i in range(m):
            if i < self._rank:
                if c[i] % self._diag[i]:
                    return None
                y[i] = c[i] // self._diag[i]
            elif c[i]:
                return None
        return self._right @ y

    def solve_columns(self, rhs: np.ndarray) -> np.ndarray | None:
        out = np.zeros((self._a.shape[1], rhs.shape[1]), dtype=object)
        for j in range(rhs.shape[1]):
            x = self.solve(list(rhs[:, j]))
            if x is None:
                return None
            out[:, j] = x
        return out
