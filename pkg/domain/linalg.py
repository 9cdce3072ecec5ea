"""
Dense linear algebra over the prime field F_p on int64 numpy arrays.

Entries stay reduced to [0, p). Elimination picks the first nonzero row
in each column, scanning columns left to right, so pivots and every
derived basis are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from .errors import NotPrime, ShapeMismatch


@lru_cache(maxsize=64)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % k for k in range(2, int(p**0.5) + 1))


def require_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"{p!r} is not a prime")
    return p


def as_field(A, p: int) -> np.ndarray:
    return np.asarray(A, dtype=np.int64) % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def rref(A: np.ndarray, p: int) -> Tuple[np.ndarray, Tuple[int, ...]]:
    """Reduced row echelon form mod p and the pivot columns."""
    R = as_field(A, p).copy()
    rows, cols = R.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.flatnonzero(R[r:, c])
        if not nonzero.size:
            continue
        k = r + int(nonzero[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r, c:] = R[r, c:] * pow(int(R[r, c]), -1, p) % p
        # rows at or below r are zero left of c
        column = R[:, c].copy()
        column[r] = 0
        hit = np.flatnonzero(column)
        if hit.size:
            R[hit, c:] = (R[hit, c:] - np.outer(column[hit], R[r, c:])) % p
        pivots.append(c)
        r += 1
    return R, tuple(pivots)


def rank(A: np.ndarray, p: int) -> int:
    return len(pivot_columns(A, p))


def pivot_columns(A: np.ndarray, p: int) -> Tuple[int, ...]:
    """Pivot columns of rref(A): the columns outside the span of earlier ones.

    Computed by column reduction on lowest nonzero rows.
    """
    if A.size == 0:
        return ()
    A = as_field(A, p)
    reduced: Dict[int, np.ndarray] = {}
    pivots: List[int] = []
    for c in range(A.shape[1]):
        v = A[:, c].copy()
        nonzero = np.flatnonzero(v)
        while nonzero.size:
            low = int(nonzero[-1])
            basis = reduced.get(low)
            if basis is None:
                reduced[low] = v * pow(int(v[low]), -1, p) % p
                pivots.append(c)
                break
            v = (v - v[low] * basis) % p
            nonzero = np.flatnonzero(v)
    return tuple(pivots)


def nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Basis of {x : Ax = 0} as columns, one per free column in order."""
    cols = A.shape[1]
    if A.shape[0] == 0:
        return identity(cols)
    R, pivots = rref(A, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = zeros(cols, len(free))
    for k, c in enumerate(free):
        basis[c, k] = 1
        for row, pc in enumerate(pivots):
            basis[pc, k] = -R[row, c] % p
    return basis


def solve(A: np.ndarray, B: np.ndarray, p: int) -> Optional[np.ndarray]:
    """Some X with AX = B (free variables 0), or None if inconsistent."""
    rows, cols = A.shape
    if B.ndim == 1:
        B = B.reshape(-1, 1)
    if B.shape[0] != rows:
        raise ShapeMismatch(
            f"right-hand side has {B.shape[0]} rows, expected {rows}"
        )
    X = zeros(cols, B.shape[1])
    if rows == 0:
        return X
    R, pivots = rref(np.hstack([as_field(A, p), as_field(B, p)]), p)
    if any(c >= cols for c in pivots):
        return None
    for row, c in enumerate(pivots):
        X[c] = R[row, cols:]
    return X


def matmul(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    if A.shape[1] != B.shape[0]:
        raise ShapeMismatch(f"cannot multiply {A.shape} by {B.shape}")
    if A.shape[1] == 0:
        return zeros(A.shape[0], B.shape[1])
    return (A @ B) % p


def kron(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    shape = (A.shape[0] * B.shape[0], A.shape[1] * B.shape[1])
    if 0 in shape:
        return zeros(*shape)
    return np.kron(A, B).astype(np.int64)


def vec(X: np.ndarray) -> np.ndarray:
    """Column-major vectorization, so vec(AXB) = kron(B.T, A) vec(X)."""
    return X.reshape(-1, order="F")


def unvec(v: np.ndarray, rows: int, cols: int) -> np.ndarray:
    return v.reshape((rows, cols), order="F")


@dataclass(frozen=True, eq=False)
class FieldMatrix:
    """A matrix over F_p."""

    p: int
    entries: np.ndarray

    @classmethod
    def of(cls, entries, p: int) -> FieldMatrix:
        require_prime(p)
        array = as_field(entries, p)
        if array.ndim != 2:
            raise ShapeMismatch(f"expected a 2-d matrix, got {array.ndim}-d")
        return cls(p, array)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape  # type: ignore[return-value]

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def rank(self) -> int:
        return rank(self.entries, self.p)

    def __matmul__(self, other: FieldMatrix) -> FieldMatrix:
        if self.p != other.p:
            raise ShapeMismatch(f"primes differ: {self.p} and {other.p}")
        return FieldMatrix(self.p, matmul(self.entries, other.entries, self.p))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return (
            self.p == other.p
            and self.shape == other.shape
            and bool(np.array_equal(self.entries, other.entries))
        )

    def __repr__(self) -> str:
        return f"FieldMatrix(p={self.p}, {self.entries.tolist()})"
