"""
Barcodes of finite-type persistence modules and integer interleaving
distances between them.

The interleaving distance of two modules is computed as the bottleneck
distance of their barcodes: a matched pair [b, d), [b', d') costs
max(|b - b'|, |d - d'|) and an unmatched bar costs ceil((d - b) / 2).
The exhaustive search in oracle.py cross-checks this convention.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from . import linalg
from .errors import NegativeMultiplicity, ShapeMismatch
from .homology import PersistenceModule, persistence_modules_of
from .persistence import INF, Extended, PersistencePoset

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Interval:
    """The interval module supported on {b, ..., d - 1}."""

    b: int
    d: Extended

    def __post_init__(self):
        if self.b < 0:
            raise ValueError(f"birth must be a natural number, got {self.b}")
        if not self.b < self.d:
            raise ValueError(f"empty interval [{self.b}, {self.d})")

    def contains(self, i: int) -> bool:
        return self.b <= i < self.d

    @property
    def length(self) -> Extended:
        return self.d - self.b

    @property
    def is_infinite(self) -> bool:
        return self.d == INF

    def __str__(self) -> str:
        death = "inf" if self.is_infinite else str(self.d)
        return f"[{self.b},{death})"


@dataclass(frozen=True)
class Barcode:
    T: int
    intervals: Tuple[Interval, ...]

    @classmethod
    def of(cls, T: int, intervals: Sequence[Interval]) -> Barcode:
        for bar in intervals:
            if not bar.is_infinite and bar.d > T:
                raise ValueError(
                    f"finite death {bar.d} beyond stabilization index {T}"
                )
        return cls(T, tuple(sorted(intervals)))

    def with_ambient(self, T: int) -> Barcode:
        return Barcode.of(max(T, self.T), self.intervals)

    def multiset(self) -> Counter:
        return Counter(self.intervals)

    def same_bars(self, other: Barcode) -> bool:
        return self.multiset() == other.multiset()

    def __len__(self) -> int:
        return len(self.intervals)

    def __str__(self) -> str:
        return "{" + ", ".join(str(bar) for bar in self.intervals) + "}"


def rank_invariant(M: PersistenceModule, i: int, j: int) -> int:
    """Rank of M_i -> M_j; indices clamp to T."""
    if i > j:
        raise ValueError(f"rank invariant needs i <= j, got {i} > {j}")
    return linalg.rank(M.structure_matrix(i, j), M.p)


def _rank_table(M: PersistenceModule) -> Dict[Tuple[int, int], int]:
    table = {}
    for i in range(M.T + 1):
        composite = linalg.identity(M.dims[i])
        table[i, i] = M.dims[i]
        for j in range(i + 1, M.T + 1):
            composite = linalg.matmul(M.steps[j - 1], composite, M.p)
            table[i, j] = linalg.rank(composite, M.p)
    return table


def interval_decomposition(M: PersistenceModule) -> Barcode:
    T = M.T
    table = _rank_table(M)

    def r(i: int, j: int) -> int:
        return 0 if i < 0 else table[i, min(j, T)]

    bars: List[Interval] = []
    for b in range(T + 1):
        for d in range(b + 1, T + 2):
            if d <= T:
                mult = r(b, d - 1) - r(b - 1, d - 1) - r(b, d) + r(b - 1, d)
                death: Extended = d
            else:
                mult = r(b, T) - r(b - 1, T)
                death = INF
            if mult < 0:
                raise NegativeMultiplicity(
                    f"interval [{b}, {death}) has multiplicity {mult}",
                    index=b,
                )
            bars.extend([Interval(b, death)] * mult)
    return Barcode.of(T, bars)


def module_from_barcode(barcode: Barcode, p: int = 2) -> PersistenceModule:
    """Direct sum of interval modules, bars ordered as in the barcode."""
    T = barcode.T
    alive = [
        [k for k, bar in enumerate(barcode.intervals) if bar.contains(i)]
        for i in range(T + 1)
    ]
    steps = []
    for i in range(T):
        step = linalg.zeros(len(alive[i + 1]), len(alive[i]))
        position = {k: row for row, k in enumerate(alive[i + 1])}
        for col, k in enumerate(alive[i]):
            if k in position:
                step[position[k], col] = 1
        steps.append(step)
    return PersistenceModule(p, tuple(map(len, alive)), tuple(steps))


def point_module(i: int, j: int, T: int, p: int = 2) -> PersistenceModule:
    """H_j of *^i: the interval [i, inf) in degree 0, zero otherwise."""
    T = max(T, i)
    if j > 0:
        return PersistenceModule.zero(T, p)
    return module_from_barcode(Barcode.of(T, [Interval(i, INF)]), p)


def deletion_cost(bar: Interval) -> Extended:
    if bar.is_infinite:
        return INF
    return math.ceil((bar.d - bar.b) / 2)


def matching_cost(a: Interval, b: Interval) -> Extended:
    if a.is_infinite != b.is_infinite:
        return INF
    deaths = 0 if a.is_infinite else abs(a.d - b.d)
    return max(abs(a.b - b.b), deaths)


def _feasible(A: Barcode, B: Barcode, eps: Extended) -> bool:
    graph = nx.Graph()
    left = [("a", k) for k in range(len(A))] + [
        ("a-diag", k) for k in range(len(B))
    ]
    right = [("b", k) for k in range(len(B))] + [
        ("b-diag", k) for k in range(len(A))
    ]
    graph.add_nodes_from(left, bipartite=0)
    graph.add_nodes_from(right, bipartite=1)
    for k, a in enumerate(A.intervals):
        for m, b in enumerate(B.intervals):
            if matching_cost(a, b) <= eps:
                graph.add_edge(("a", k), ("b", m))
        if deletion_cost(a) <= eps:
            graph.add_edge(("a", k), ("b-diag", k))
    for m, b in enumerate(B.intervals):
        if deletion_cost(b) <= eps:
            graph.add_edge(("a-diag", m), ("b", m))
        for k in range(len(A)):
            graph.add_edge(("a-diag", m), ("b-diag", k))
    matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=left)
    return len(matching) // 2 == len(left)


def bottleneck_distance(A: Barcode, B: Barcode) -> Extended:
    """Least eps admitting a matching with every cost at most eps."""
    candidates = {0}
    for a in A.intervals:
        candidates.add(deletion_cost(a))
        candidates.update(matching_cost(a, b) for b in B.intervals)
    candidates.update(deletion_cost(b) for b in B.intervals)
    values = sorted(c for c in candidates if c != INF)
    lo, hi = 0, len(values)
    while lo < hi:
        mid = (lo + hi) // 2
        if _feasible(A, B, values[mid]):
            hi = mid
        else:
            lo = mid + 1
    if lo == len(values):
        return INF
    return values[lo]


def min_interleaving_eps(
    M: PersistenceModule, N: PersistenceModule
) -> Extended:
    if M.p != N.p:
        raise ShapeMismatch(f"modules over F_{M.p} and F_{N.p}")
    T = max(M.T, N.T)
    return bottleneck_distance(
        interval_decomposition(M.extended(T)),
        interval_decomposition(N.extended(T)),
    )


def module_distances(
    first: Sequence[PersistenceModule], second: Sequence[PersistenceModule]
) -> Tuple[Extended, ...]:
    """Degree-wise min_interleaving_eps of two module sequences."""
    return tuple(min_interleaving_eps(a, b) for a, b in zip(first, second))


@dataclass(frozen=True)
class AcyclicityResult:
    eps: Extended
    per_degree: Tuple[Extended, ...]
    empty_input: bool = False


def acyclicity_measure(
    X: PersistencePoset,
    p: int = 2,
    max_degree: int = 2,
    start: Optional[int] = None,
) -> AcyclicityResult:
    """Least eps such that H_j(X) is eps-interleaved with H_j(*^start).

    start defaults to trh(X); a fiber over v is measured from trh(v),
    which may come before the fiber itself appears.
    """
    if X.is_empty():
        return AcyclicityResult(INF, (), empty_input=True)
    if start is None:
        start = int(X.threshold())
    modules = persistence_modules_of(X, max_degree, p)
    points = [point_module(start, j, X.T, p) for j in range(max_degree + 1)]
    per_degree = module_distances(modules, points)
    return AcyclicityResult(max(per_degree), per_degree)

