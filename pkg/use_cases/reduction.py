"""
Reduction engine for persistence poset maps.

Given f: P -> Q with Q a finite-type filtration, the engine measures the
fiber over every point of Q, then removes the points of Q from the mapping
cylinder M_f one at a time (minimal-first on the lower side, maximal-first
on the upper side) until only P is left. Every fiber is scored by its
eps-acyclicity; the ledger compares the measured homological distance
between P and Q with the uniform bound 2 eps_max |Q|.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import networkx as nx

from domain.barcodes import (
    AcyclicityResult,
    acyclicity_measure,
    interval_decomposition,
    module_distances,
)
from domain.errors import (
    EmptyFiber,
    FiberMismatch,
    PersistenceQMError,
    ShapeMismatch,
    TargetNotFiltration,
)
from domain.homology import PersistenceModule, persistence_modules_of
from domain.persistence import (
    INF,
    Extended,
    PersistencePoint,
    PersistencePoset,
    PersistencePosetMap,
    enumerate_persistence_points,
    persistence_fiber,
    persistence_mapping_cylinder,
    persistence_point,
    principal_subposet,
    remove_persistence_point,
)
from domain.poset import Side

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    HYPOTHESIS_FAILED = "hypothesis-failed"


def reducibility_measure(
    X: PersistencePoset,
    v: PersistencePoint,
    side: Side = Side.LOWER,
    p: int = 2,
    max_degree: int = 2,
) -> AcyclicityResult:
    """eps-acyclicity of the strict lower (or upper) set of v, from trh(v)."""
    v = persistence_point(X, v.anchor, v.threshold)
    strict = principal_subposet(X, v, Side(side), strict=True)
    return acyclicity_measure(strict, p, max_degree, start=v.threshold)


@dataclass
class StepCheck:
    passed: bool
    distances: Tuple[Extended, ...]


def _step_check(
    before: Sequence[PersistenceModule],
    after: Sequence[PersistenceModule],
    eps: Extended,
) -> StepCheck:
    distances = module_distances(before, after)
    return StepCheck(all(d <= 2 * eps for d in distances), distances)


def _require_single_removal(
    before: PersistencePoset, after: PersistencePoset
) -> None:
    if before.T != after.T:
        raise ShapeMismatch(
            f"stabilization indices differ: {before.T} and {after.T}"
        )
    for i, (big, small) in enumerate(zip(before.posets, after.posets)):
        if len(big) - len(small) not in (0, 1):
            raise ShapeMismatch(
                f"sizes {len(big)} and {len(small)} differ by more than one",
                index=i,
            )
        for x in small:
            if x not in big:
                raise ShapeMismatch("element appeared", index=i, element=x)


def verify_step_bound(
    before: PersistencePoset,
    after: PersistencePoset,
    eps: Extended,
    p: int = 2,
    max_degree: int = 2,
) -> StepCheck:
    """d_I(H_j(before), H_j(after)) <= 2 eps for every degree j."""
    _require_single_removal(before, after)
    return _step_check(
        persistence_modules_of(before, max_degree, p),
        persistence_modules_of(after, max_degree, p),
        eps,
    )


@dataclass
class LedgerEntry:
    anchor: str
    threshold: int
    fiber_sizes: Tuple[int, ...]
    eps: Extended
    per_degree: Tuple[Extended, ...]
    empty_fiber: bool
    step: Optional[StepCheck] = None


@dataclass
class ReductionLedger:
    side: Side
    p: int
    max_degree: int
    cardinality: int
    entries: List[LedgerEntry] = field(default_factory=list)
    measured: Tuple[Extended, ...] = ()

    @property
    def eps_max(self) -> Extended:
        return max((entry.eps for entry in self.entries), default=0)

    @property
    def sum2eps(self) -> Extended:
        return 2 * sum(entry.eps for entry in self.entries)

    @property
    def bound_main(self) -> Extended:
        if not self.cardinality:
            return 0
        return 2 * self.eps_max * self.cardinality

    @property
    def bound_prior(self) -> Extended:
        return 2 * self.bound_main

    @property
    def hypothesis_holds(self) -> bool:
        return all(entry.eps != INF for entry in self.entries)

    @property
    def steps_passed(self) -> bool:
        return all(e.step.passed for e in self.entries if e.step is not None)

    def raise_for_hypothesis(self) -> None:
        for entry in self.entries:
            if entry.empty_fiber:
                raise EmptyFiber(
                    "fiber is empty, the reduction hypothesis fails",
                    element=entry.anchor,
                )
            if entry.eps == INF:
                raise PersistenceQMError(
                    "fiber is not eps-acyclic for any eps",
                    element=entry.anchor,
                )


def removal_order(Q: PersistencePoset, side: Side) -> List[str]:
    """Linear extension of Q_T with ties broken by element identifier."""
    top = Q.at(Q.T)
    graph = nx.DiGraph()
    graph.add_nodes_from(top.elements)
    if Side(side) is Side.LOWER:
        graph.add_edges_from(top.covers())
    else:
        graph.add_edges_from((y, x) for x, y in top.covers())
    return list(nx.lexicographical_topological_sort(graph))


def _measure_fibers(
    fibers: Sequence[PersistencePoset],
    starts: Sequence[int],
    p: int,
    max_degree: int,
    workers: int,
) -> List[AcyclicityResult]:
    """Score each fiber against the point born with its point of Q."""

    def measure(fiber: PersistencePoset, start: int) -> AcyclicityResult:
        return acyclicity_measure(fiber, p, max_degree, start=start)

    if workers <= 1:
        return [measure(f, s) for f, s in zip(fibers, starts)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(measure, fibers, starts))


def reduction_schedule(
    f: PersistencePosetMap,
    side: Side = Side.LOWER,
    p: int = 2,
    max_degree: int = 2,
    verify_steps: bool = False,
    workers: int = 1,
) -> ReductionLedger:
    """Remove the points of Q from M_f and score every fiber on the way.

    Raises:
        TargetNotFiltration: Q has a non-injective step.
        FiberMismatch: a strict principal set in the running cylinder
            differs from the fiber, or the residue is not P.
    """
    side = Side(side)
    Q = f.target
    if not Q.is_filtration():
        raise TargetNotFiltration("target of the map must be a filtration")

    points = {v.anchor: v for v in enumerate_persistence_points(Q)}
    order = removal_order(Q, side)
    logger.info(
        f"reduction ({side.value} side) over {len(order)} points: {order}"
    )
    fibers = [persistence_fiber(f, points[q], side) for q in order]
    starts = [points[q].threshold for q in order]
    scores = _measure_fibers(fibers, starts, p, max_degree, workers)

    cylinder = persistence_mapping_cylinder(f, side)
    current = cylinder.diagram
    before_modules = (
        persistence_modules_of(current, max_degree, p)
        if verify_steps
        else None
    )
    ledger = ReductionLedger(side, p, max_degree, Q.cardinality())
    for q, fiber, score in zip(order, fibers, scores):
        v = points[q]
        tagged = persistence_point(current, cylinder.tag(q))
        strict = principal_subposet(current, tagged, side, strict=True)
        if not strict.agrees_with(fiber):
            raise FiberMismatch(
                "strict principal set differs from the fiber", element=q
            )
        after = remove_persistence_point(current, tagged)
        entry = LedgerEntry(
            anchor=q,
            threshold=v.threshold,
            fiber_sizes=fiber.sizes(),
            eps=score.eps,
            per_degree=score.per_degree,
            empty_fiber=score.empty_input,
        )
        if score.empty_input:
            logger.warning(f"empty fiber over {q!r}")
        elif score.eps == INF:
            logger.warning(f"fiber over {q!r} is not eps-acyclic")
        if before_modules is not None:
            after_modules = persistence_modules_of(after, max_degree, p)
            entry.step = _step_check(before_modules, after_modules, score.eps)
            before_modules = after_modules
        logger.info(f"removed {q!r}: eps={score.eps}")
        ledger.entries.append(entry)
        current = after

    if not current.agrees_with(f.source.extended(f.N)):
        raise FiberMismatch("residue of the reduction is not the source")

    ledger.measured = module_distances(
        persistence_modules_of(f.source, max_degree, p),
        persistence_modules_of(Q, max_degree, p),
    )
    return ledger


def cylinder_equivalence_check(
    f: PersistencePosetMap,
    p: int = 2,
    max_degree: int = 2,
    side: Side = Side.LOWER,
) -> bool:
    """Barcodes of H_j(M_f) and H_j(Q) agree as multisets."""
    cylinder = persistence_mapping_cylinder(f, side)
    target = f.target.extended(f.N)
    pairs = zip(
        persistence_modules_of(cylinder.diagram, max_degree, p),
        persistence_modules_of(target, max_degree, p),
    )
    return all(
        interval_decomposition(a).same_bars(interval_decomposition(b))
        for a, b in pairs
    )


@dataclass
class MainBoundReport:
    ledger: ReductionLedger
    cylinder_ok: bool
    verdict: Verdict

    @property
    def within_sum(self) -> bool:
        return all(d <= self.ledger.sum2eps for d in self.ledger.measured)


def verify_main_bound(
    f: PersistencePosetMap,
    side: Side = Side.LOWER,
    p: int = 2,
    max_degree: int = 2,
    verify_steps: bool = False,
    workers: int = 1,
) -> MainBoundReport:
    ledger = reduction_schedule(
        f, side, p, max_degree, verify_steps=verify_steps, workers=workers
    )
    cylinder_ok = cylinder_equivalence_check(f, p, max_degree, side)
    if not ledger.hypothesis_holds:
        verdict = Verdict.HYPOTHESIS_FAILED
    elif (
        all(d <= ledger.bound_main for d in ledger.measured)
        and ledger.steps_passed
        and cylinder_ok
    ):
        verdict = Verdict.PASS
    else:
        verdict = Verdict.FAIL
    level = logging.INFO if verdict is Verdict.PASS else logging.WARNING
    logger.log(
        level,
        f"verdict {verdict.value}: measured {list(ledger.measured)}, "
        f"bound {ledger.bound_main}",
    )
    return MainBoundReport(ledger, cylinder_ok, verdict)

