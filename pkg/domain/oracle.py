"""
Exhaustive interleaving search for small persistence modules.

An eps-map f: M -> N(eps) is a family f_i: M_i -> N_{i+eps}; after padding
both modules to a common T the family is determined by f_0..f_T, and the
commutation squares cut out a linear subspace of those matrices. The
search enumerates that subspace on one side and, for each candidate,
decides existence of the partner map by solving the (linear in the
partner) commutation and composite equations over F_p.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from . import linalg
from .errors import CapExceeded, ShapeMismatch
from .homology import PersistenceModule
from .persistence import INF, Extended

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleCaps:
    dim_cap: int = 6
    max_t: int = 5
    search_cap: int = 4096


class _ShiftedMaps:
    """Unknown families h_i: A_i -> B_{i+eps}, i = 0..T, as one vector."""

    def __init__(self, A: PersistenceModule, B: PersistenceModule, eps: int):
        self.A, self.B, self.eps = A, B, eps
        self.T = A.T
        self.shapes = [
            (B.dim(i + eps), A.dim(i)) for i in range(self.T + 1)
        ]
        sizes = [r * c for r, c in self.shapes]
        self.offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
        self.size = int(self.offsets[-1])

    def block(self, i: int) -> slice:
        i = min(i, self.T)
        return slice(self.offsets[i], self.offsets[i + 1])

    def unpack(self, vector: np.ndarray) -> List[np.ndarray]:
        return [
            linalg.unvec(vector[self.block(i)], *self.shapes[i])
            for i in range(self.T + 1)
        ]

    def squares(self) -> np.ndarray:
        """h_{i+1} A_i - B_{i+eps} h_i = 0 for i < T."""
        A, B, eps, p = self.A, self.B, self.eps, self.A.p
        rows = []
        for i in range(self.T):
            out_dim = B.dim(i + 1 + eps)
            system = linalg.zeros(out_dim * A.dim(i), self.size)
            system[:, self.block(i + 1)] += linalg.kron(
                A.step(i).T, linalg.identity(out_dim)
            )
            system[:, self.block(i)] -= linalg.kron(
                linalg.identity(A.dim(i)), B.step(i + eps)
            )
            rows.append(system % p)
        if not rows:
            return linalg.zeros(0, self.size)
        return np.vstack(rows)


def _partner_exists(
    forward: _ShiftedMaps,
    backward: _ShiftedMaps,
    f: List[np.ndarray],
    homogeneous: np.ndarray,
) -> bool:
    """Is there g: N -> M(eps) with g f = Id^2eps on M and f g on N?"""
    M, N, eps, p = forward.A, forward.B, forward.eps, forward.A.p
    T = forward.T
    rows = [homogeneous]
    rhs = [linalg.zeros(homogeneous.shape[0], 1)]
    for i in range(T + 1):
        k = min(i + eps, T)
        # g_k f_i = phi^M_{i, i+2eps}
        target = M.structure_matrix(i, i + 2 * eps)
        system = linalg.zeros(target.size, backward.size)
        system[:, backward.block(k)] = linalg.kron(
            f[i].T, linalg.identity(M.dim(i + 2 * eps))
        )
        rows.append(system)
        rhs.append(linalg.vec(target).reshape(-1, 1))
        # f_k g_i = phi^N_{i, i+2eps}
        target = N.structure_matrix(i, i + 2 * eps)
        system = linalg.zeros(target.size, backward.size)
        system[:, backward.block(i)] = linalg.kron(
            linalg.identity(N.dim(i)), f[k]
        )
        rows.append(system)
        rhs.append(linalg.vec(target).reshape(-1, 1))
    solution = linalg.solve(np.vstack(rows), np.vstack(rhs), p)
    return solution is not None


def _search_space(
    M: PersistenceModule, N: PersistenceModule, eps: int
) -> Tuple[_ShiftedMaps, np.ndarray]:
    maps = _ShiftedMaps(M, N, eps)
    return maps, linalg.nullspace(maps.squares(), M.p)


def brute_force_interleaving_check(
    M: PersistenceModule,
    N: PersistenceModule,
    eps: int,
    p: Optional[int] = None,
    caps: Optional[OracleCaps] = None,
) -> bool:
    """Decide whether M and N are eps-interleaved by exhaustive search.

    Raises:
        CapExceeded: a module is too large, T is too large, or the
            candidate space on the cheaper side exceeds the search cap.
    """
    caps = caps or OracleCaps()
    p = M.p if p is None else p
    if M.p != p or N.p != p:
        raise ShapeMismatch(f"modules must both be over F_{p}")
    for name, module in (("first", M), ("second", N)):
        if module.total_dimension > caps.dim_cap:
            raise CapExceeded(
                f"{name} module has total dimension "
                f"{module.total_dimension} > {caps.dim_cap}"
            )
    T = max(M.T, N.T)
    if T > caps.max_t:
        raise CapExceeded(f"stabilization index {T} > {caps.max_t}")
    M, N = M.extended(T), N.extended(T)

    forward, f_basis = _search_space(M, N, eps)
    backward, g_basis = _search_space(N, M, eps)
    if g_basis.shape[1] < f_basis.shape[1]:
        forward, backward = backward, forward
        f_basis, g_basis = g_basis, f_basis
    k = f_basis.shape[1]
    if p**k > caps.search_cap:
        raise CapExceeded(
            f"{p}^{k} candidate {eps}-maps exceed the search cap "
            f"{caps.search_cap}"
        )
    homogeneous = backward.squares()
    logger.debug(f"oracle eps={eps}: enumerating {p}^{k} candidate maps")
    for coefficients in itertools.product(range(p), repeat=k):
        vector = f_basis @ np.array(coefficients, dtype=np.int64) % p
        if _partner_exists(
            forward, backward, forward.unpack(vector), homogeneous
        ):
            return True
    return False


def least_interleaving_eps(
    M: PersistenceModule,
    N: PersistenceModule,
    caps: Optional[OracleCaps] = None,
) -> Extended:
    """Smallest eps accepted by brute_force_interleaving_check, or INF."""
    T = max(M.T, N.T)
    # acceptance is constant for eps > T
    for eps in range(T + 2):
        if brute_force_interleaving_check(M, N, eps, caps=caps):
            return eps
    return INF
