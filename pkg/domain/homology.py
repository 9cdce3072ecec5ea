"""
Simplicial homology over F_p and persistence modules of persistence posets.

Homology is unreduced. Each index of a persistence poset is turned into the
order complex of its poset, truncated to dimension max_degree + 1, and the
steps become matrices with respect to fixed homology bases.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import linalg
from .errors import ArityMismatch, ShapeMismatch
from .linalg import FieldMatrix, require_prime
from .persistence import PersistencePoset
from .poset import FinitePoset
from .simplicial import (
    SimplicialComplex,
    SimplicialMap,
    induced_simplicial_map,
    order_complex,
)

logger = logging.getLogger(__name__)


def _boundary(K: SimplicialComplex, j: int, p: int) -> np.ndarray:
    columns = K.simplices_of_dim(j)
    if j == 0:
        return linalg.zeros(0, len(columns))
    rows = {face: r for r, face in enumerate(K.simplices_of_dim(j - 1))}
    D = linalg.zeros(len(rows), len(columns))
    for c, simplex in enumerate(columns):
        for k in range(len(simplex)):
            face = simplex[:k] + simplex[k + 1 :]
            D[rows[face], c] = (-1) ** k % p
    return D


def boundary_matrices(
    K: SimplicialComplex, p: int, max_dim: Optional[int] = None
) -> List[FieldMatrix]:
    """∂_0, ..., ∂_top with ∂_j mapping j-chains to (j-1)-chains.

    ∂_0 is the 0 x n_0 matrix (unreduced convention).
    """
    require_prime(p)
    top = K.dimension if max_dim is None else min(max_dim, K.dimension)
    return [FieldMatrix(p, _boundary(K, j, p)) for j in range(top + 1)]


def betti_numbers(
    K: SimplicialComplex, p: int, max_degree: int
) -> Tuple[int, ...]:
    require_prime(p)
    ranks = [
        linalg.rank(_boundary(K, j, p), p) for j in range(max_degree + 2)
    ]
    return tuple(
        len(K.simplices_of_dim(j)) - ranks[j] - ranks[j + 1]
        for j in range(max_degree + 1)
    )


@dataclass(frozen=True, eq=False)
class HomologyBasis:
    """Fixed basis of H_j(K; F_p).

    boundaries spans B_j; boundaries plus representatives span Z_j.
    """

    p: int
    degree: int
    simplices: Tuple[Tuple[str, ...], ...]
    boundaries: np.ndarray
    representatives: np.ndarray

    @property
    def rank(self) -> int:
        return self.representatives.shape[1]

    def coordinates(self, cycles: np.ndarray) -> np.ndarray:
        """Coordinates of the classes of the given cycle columns."""
        if self.rank == 0:
            return linalg.zeros(0, cycles.shape[1])
        basis = np.hstack([self.boundaries, self.representatives])
        solution = linalg.solve(basis, cycles, self.p)
        if solution is None:
            raise ShapeMismatch("chains given to coordinates are not cycles")
        return solution[self.boundaries.shape[1] :]


def homology_basis(K: SimplicialComplex, j: int, p: int) -> HomologyBasis:
    simplices = K.simplices_of_dim(j)
    return _basis(
        p, j, simplices, _boundary(K, j, p), _boundary(K, j + 1, p)
    )


def _basis(
    p: int,
    j: int,
    simplices: Tuple[Tuple[str, ...], ...],
    boundary: np.ndarray,
    next_boundary: np.ndarray,
) -> HomologyBasis:
    cycles = linalg.nullspace(boundary, p)
    independent = list(linalg.pivot_columns(next_boundary, p))
    boundaries = next_boundary[:, independent]
    stacked = np.hstack([boundaries, cycles])
    b = boundaries.shape[1]
    keep = [c for c in linalg.pivot_columns(stacked, p) if c >= b]
    return HomologyBasis(p, j, simplices, boundaries, stacked[:, keep])


def chain_map(phi: SimplicialMap, j: int, p: int) -> np.ndarray:
    """Matrix of C_j(dom) -> C_j(cod); degenerate images map to 0."""
    columns = phi.dom.simplices_of_dim(j)
    rows = {s: r for r, s in enumerate(phi.cod.simplices_of_dim(j))}
    C = linalg.zeros(len(rows), len(columns))
    for c, simplex in enumerate(columns):
        image = [phi(v) for v in simplex]
        if len(set(image)) < len(image):
            continue
        ordered = phi.cod.ordered(image)
        C[rows[ordered], c] = _permutation_sign(image, ordered) % p
    return C


def _permutation_sign(image: Sequence[str], ordered: Sequence[str]) -> int:
    position = {v: k for k, v in enumerate(ordered)}
    perm = [position[v] for v in image]
    inversions = sum(
        1
        for a in range(len(perm))
        for b in range(a + 1, len(perm))
        if perm[a] > perm[b]
    )
    return -1 if inversions % 2 else 1


def _induced_matrix(
    phi: SimplicialMap,
    j: int,
    p: int,
    dom_basis: HomologyBasis,
    cod_basis: HomologyBasis,
) -> np.ndarray:
    images = linalg.matmul(
        chain_map(phi, j, p), dom_basis.representatives, p
    )
    return cod_basis.coordinates(images)


def induced_homology_map(
    phi: SimplicialMap,
    j: int,
    p: int,
    dom_basis: Optional[HomologyBasis] = None,
    cod_basis: Optional[HomologyBasis] = None,
) -> FieldMatrix:
    """H_j(phi) with respect to homology_basis() of dom and cod."""
    require_prime(p)
    dom_basis = dom_basis or homology_basis(phi.dom, j, p)
    cod_basis = cod_basis or homology_basis(phi.cod, j, p)
    return FieldMatrix(p, _induced_matrix(phi, j, p, dom_basis, cod_basis))


@dataclass(frozen=True, eq=False)
class PersistenceModule:
    """Finite-type N-indexed persistence vector space over F_p.

    steps[i] is the dims[i+1] x dims[i] matrix of M_i -> M_{i+1};
    indices beyond T repeat M_T with identity steps.
    """

    p: int
    dims: Tuple[int, ...]
    steps: Tuple[np.ndarray, ...]

    @property
    def T(self) -> int:
        return len(self.dims) - 1

    def dim(self, i: int) -> int:
        return self.dims[min(i, self.T)]

    def step(self, i: int) -> np.ndarray:
        if i < self.T:
            return self.steps[i]
        return linalg.identity(self.dims[-1])

    def structure_matrix(self, i: int, j: int) -> np.ndarray:
        if i > j:
            raise ValueError(f"structure map needs i <= j, got {i} > {j}")
        i, j = min(i, self.T), min(j, self.T)
        result = linalg.identity(self.dims[i])
        for k in range(i, j):
            result = linalg.matmul(self.steps[k], result, self.p)
        return result

    @property
    def total_dimension(self) -> int:
        return sum(self.dims)

    def extended(self, T: int) -> PersistenceModule:
        if T <= self.T:
            return self
        pad = T - self.T
        last = self.dims[-1]
        return PersistenceModule(
            self.p,
            self.dims + (last,) * pad,
            self.steps + tuple(linalg.identity(last) for _ in range(pad)),
        )

    @classmethod
    def zero(cls, T: int, p: int = 2) -> PersistenceModule:
        return cls(
            p, (0,) * (T + 1), tuple(linalg.zeros(0, 0) for _ in range(T))
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PersistenceModule):
            return NotImplemented
        return (
            self.p == other.p
            and self.dims == other.dims
            and all(
                np.array_equal(a, b) for a, b in zip(self.steps, other.steps)
            )
        )

    def __repr__(self) -> str:
        return f"PersistenceModule(p={self.p}, dims={list(self.dims)})"


def validate_persistence_module(
    p: int, dims: Sequence[int], steps: Sequence
) -> PersistenceModule:
    """Reduce entries mod p and check every step has shape d_{i+1} x d_i."""
    require_prime(p)
    dims = tuple(int(d) for d in dims)
    if not dims:
        raise ArityMismatch("a persistence module needs at least one index")
    if any(d < 0 for d in dims):
        raise ShapeMismatch("dimensions must be natural numbers")
    if len(steps) != len(dims) - 1:
        raise ArityMismatch(
            f"{len(dims)} indices need {len(dims) - 1} steps, "
            f"got {len(steps)}"
        )
    matrices = []
    for i, raw in enumerate(steps):
        expected = (dims[i + 1], dims[i])
        array = np.asarray(raw, dtype=np.int64)
        empty = array.size == 0 and 0 in expected
        if array.shape != expected and not empty:
            raise ShapeMismatch(
                f"step needs shape {expected[0]}x{expected[1]}", index=i
            )
        matrices.append(array.reshape(expected) % p)
    return PersistenceModule(p, dims, tuple(matrices))


@lru_cache(maxsize=512)
def _poset_homology(
    P: FinitePoset, max_degree: int, p: int
) -> Tuple[SimplicialComplex, Tuple[HomologyBasis, ...]]:
    """Order complex of P and its bases in degrees 0..max_degree.

    Keyed on the poset itself, so indices and diagrams that share a poset
    share the work.
    """
    K = order_complex(P, max_degree + 1)
    boundaries = [_boundary(K, j, p) for j in range(max_degree + 2)]
    bases = tuple(
        _basis(p, j, K.simplices_of_dim(j), boundaries[j], boundaries[j + 1])
        for j in range(max_degree + 1)
    )
    return K, bases


def persistence_modules_of(
    X: PersistencePoset, max_degree: int, p: int
) -> List[PersistenceModule]:
    """H_0(X), ..., H_max_degree(X) sharing complexes and bases per index."""
    require_prime(p)
    computed = [_poset_homology(P, max_degree, p) for P in X.posets]
    complexes = [K for K, _ in computed]
    bases = [per_degree for _, per_degree in computed]
    steps: List[List[np.ndarray]] = [[] for _ in range(max_degree + 1)]
    for i, sigma in enumerate(X.steps):
        if sigma.is_identity():
            for j in range(max_degree + 1):
                steps[j].append(linalg.identity(bases[i][j].rank))
            continue
        phi = induced_simplicial_map(sigma, complexes[i], complexes[i + 1])
        for j in range(max_degree + 1):
            steps[j].append(
                _induced_matrix(phi, j, p, bases[i][j], bases[i + 1][j])
            )
    modules = [
        PersistenceModule(
            p,
            tuple(bases[i][j].rank for i in range(X.T + 1)),
            tuple(steps[j]),
        )
        for j in range(max_degree + 1)
    ]
    logger.debug(
        f"persistence modules up to degree {max_degree}: "
        f"{[list(m.dims) for m in modules]}"
    )
    return modules


def persistence_module_of(
    X: PersistencePoset, j: int, p: int
) -> PersistenceModule:
    return persistence_modules_of(X, j, p)[j]
