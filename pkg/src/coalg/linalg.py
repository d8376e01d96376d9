"""Exact tensors over the rationals and the linear solver kernel.

Scalars are `fractions.Fraction` everywhere; tensors are numpy object
arrays of Fractions in row-major order. Nothing here ever rounds: every
operation is exact, pure and deterministic, so all values are safe to
share between threads.

All indices are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import DimensionError

Q = Fraction
QZERO = Fraction(0)
QONE = Fraction(1)


def qval(x) -> Fraction:
    """Coerce an int, a string like ``-3`` or ``2/7``, or a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def qarray(data) -> np.ndarray:
    """Build an object ndarray of Fractions from nested sequences."""
    arr = np.array(data, dtype=object)
    for idx in np.ndindex(arr.shape):
        arr[idx] = qval(arr[idx])
    return arr


def zeros(shape) -> np.ndarray:
    # Fraction is immutable, so one shared zero object is fine.
    return np.full(shape, QZERO, dtype=object)


def identity_matrix(n: int) -> np.ndarray:
    m = zeros((n, n))
    for i in range(n):
        m[i, i] = QONE
    return m


def tensors_equal(a, b) -> bool:
    return np.array_equal(np.asarray(a, dtype=object), np.asarray(b, dtype=object))


def _nonzero_indices(a: np.ndarray):
    if a.size == 0:
        return np.empty((0, a.ndim), dtype=int)
    return np.argwhere(a != QZERO)


def contract(a, b, pairs: Sequence[tuple[int, int]]) -> np.ndarray:
    """Contract `a` against `b` over the listed (axis-of-a, axis-of-b) pairs.

    The remaining axes of `a` precede the remaining axes of `b` in the
    result. Zero entries are skipped, so contractions of the sparse
    structure tensors used throughout this package stay cheap.
    """
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    a_axes = [p[0] for p in pairs]
    b_axes = [p[1] for p in pairs]
    if len(set(a_axes)) != len(a_axes) or len(set(b_axes)) != len(b_axes):
        raise DimensionError(f"repeated axis in contraction pairs {list(pairs)}")
    for ax_a, ax_b in pairs:
        if not (0 <= ax_a < a.ndim) or not (0 <= ax_b < b.ndim):
            raise DimensionError(
                f"contraction pair ({ax_a}, {ax_b}) out of range for "
                f"shapes {a.shape} and {b.shape}")
        if a.shape[ax_a] != b.shape[ax_b]:
            raise DimensionError(
                f"axis {ax_a} of left operand has dimension {a.shape[ax_a]} "
                f"but axis {ax_b} of right operand has dimension {b.shape[ax_b]}")
    a_free = [i for i in range(a.ndim) if i not in a_axes]
    b_free = [i for i in range(b.ndim) if i not in b_axes]
    out_shape = tuple(a.shape[i] for i in a_free) + tuple(b.shape[i] for i in b_free)
    out = zeros(out_shape)

    buckets: dict = {}
    for idx in _nonzero_indices(b):
        key = tuple(int(idx[ax]) for ax in b_axes)
        buckets.setdefault(key, []).append(tuple(int(i) for i in idx))
    for idx in _nonzero_indices(a):
        ia = tuple(int(i) for i in idx)
        key = tuple(ia[ax] for ax in a_axes)
        hits = buckets.get(key)
        if not hits:
            continue
        left = tuple(ia[i] for i in a_free)
        va = a[ia]
        for ib in hits:
            pos = left + tuple(ib[i] for i in b_free)
            out[pos] = out[pos] + va * b[ib]
    return out


def rref(m) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with exact arithmetic.

    Returns (R, pivot_columns). Pivots are chosen as the first nonzero
    entry in each column, making the output canonical for the row space.
    """
    m = np.asarray(m, dtype=object)
    if m.ndim != 2:
        raise DimensionError(f"expected a rank-2 tensor, got shape {m.shape}")
    rows, cols = m.shape
    r = m.copy()
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        piv_row = None
        for i in range(row, rows):
            if r[i, col] != QZERO:
                piv_row = i
                break
        if piv_row is None:
            continue
        if piv_row != row:
            r[[row, piv_row]] = r[[piv_row, row]]
        piv = r[row, col]
        if piv != QONE:
            r[row] = r[row] / piv
        for i in range(rows):
            f = r[i, col]
            if i != row and f != QZERO:
                r[i] = r[i] - f * r[row]
        pivots.append(col)
        row += 1
    return r, pivots


def rank(m) -> int:
    return len(rref(m)[1])


@dataclass(eq=False)
class SolutionSpace:
    """Echelon-normalized basis of {v : constraint_matrix @ v = 0}.

    Every basis vector is a flat object ndarray of length `ambient_dim`
    and satisfies the constraints exactly. Basis order follows the free
    columns of the reduced echelon form, ascending, so equal systems
    always produce byte-identical bases.
    """

    ambient_dim: int
    basis: list
    constraint_matrix: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        return coords_in_span(self, v) is not None


def nullspace_basis(m) -> SolutionSpace:
    """Exact nullspace of a rank-2 tensor (a matrix with zero rows is fine)."""
    m = np.asarray(m, dtype=object)
    if m.ndim != 2:
        raise DimensionError(f"expected a rank-2 tensor, got shape {m.shape}")
    rows, cols = m.shape
    r, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free_col in range(cols):
        if free_col in pivot_set:
            continue
        v = zeros((cols,))
        v[free_col] = QONE
        for i, p in enumerate(pivots):
            v[p] = -r[i, free_col]
        basis.append(v)
    return SolutionSpace(cols, basis, m)


def in_span(vectors: Sequence[np.ndarray], v: np.ndarray) -> Optional[np.ndarray]:
    """Coefficients c with sum c_s * vectors[s] = v, or None if v is outside."""
    v = np.asarray(v, dtype=object).reshape(-1)
    k = len(vectors)
    aug = zeros((v.shape[0], k + 1))
    for j, b in enumerate(vectors):
        b = np.asarray(b, dtype=object).reshape(-1)
        if b.shape[0] != v.shape[0]:
            raise DimensionError(
                f"spanning vector of length {b.shape[0]} does not match "
                f"vector of length {v.shape[0]}")
        aug[:, j] = b
    aug[:, k] = v
    r, pivots = rref(aug)
    if k in pivots:
        return None
    coeffs = zeros((k,))
    for i, p in enumerate(pivots):
        coeffs[p] = r[i, k]
    return coeffs


def coords_in_span(space: SolutionSpace, v) -> Optional[np.ndarray]:
    """Coordinates of `v` in the basis of `space`, or None if v is outside.

    `v` may have any shape; it is flattened row-major and must match the
    ambient dimension.
    """
    v = np.asarray(v, dtype=object).reshape(-1)
    if v.shape[0] != space.ambient_dim:
        raise DimensionError(
            f"vector length {v.shape[0]} does not match ambient dimension "
            f"{space.ambient_dim}")
    return in_span(space.basis, v)
