"""
Persistence posets: finite-type N-indexed diagrams of finite posets.

A diagram is stored as posets P_0..P_T with steps P_i -> P_{i+1}; every
index beyond T repeats P_T with identity steps, so finite type holds by
representation. Persistence points, point removal, fibers over points of
the target and the persistence mapping cylinder live here.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import (
    Dict,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from .errors import (
    ArityMismatch,
    NonCommutingSquare,
    NonMonotoneStep,
    NotAFiltration,
    NotAPersistencePoint,
)
from .poset import (
    FinitePoset,
    MonotoneMap,
    Side,
    compose,
    identity_map,
    mapping_cylinder,
    tagging_suffix,
    validate_monotone_map,
)

logger = logging.getLogger(__name__)

INF = math.inf

# Natural number or INF.
Extended = Union[int, float]


@dataclass(frozen=True)
class PersistenceSummary:
    stabilization: int
    is_filtration: bool
    threshold: Extended
    cardinality: int
    sizes: Tuple[int, ...]


@dataclass(frozen=True)
class PersistencePoset:
    posets: Tuple[FinitePoset, ...]
    steps: Tuple[MonotoneMap, ...]

    @property
    def T(self) -> int:
        return len(self.posets) - 1

    def at(self, i: int) -> FinitePoset:
        return self.posets[min(i, self.T)]

    def step(self, i: int) -> MonotoneMap:
        if i < self.T:
            return self.steps[i]
        return identity_map(self.posets[self.T])

    @cached_property
    def _composites(self) -> Dict[Tuple[int, int], MonotoneMap]:
        return {}

    def structure_map(self, i: int, j: int) -> MonotoneMap:
        """phi_{i,j}, memoized; indices clamp to T."""
        if i > j:
            raise ValueError(f"structure map needs i <= j, got {i} > {j}")
        i, j = min(i, self.T), min(j, self.T)
        key = (i, j)
        if key not in self._composites:
            if i == j:
                result = identity_map(self.posets[i])
            else:
                result = compose(
                    self.steps[j - 1], self.structure_map(i, j - 1)
                )
            self._composites[key] = result
        return self._composites[key]

    def fold_steps(self, i: int, j: int) -> MonotoneMap:
        """phi_{i,j} recomputed from the steps without memoization."""
        result = identity_map(self.at(i))
        for k in range(i, j):
            result = compose(self.step(k), result)
        return result

    def is_filtration(self) -> bool:
        return all(step.is_injective() for step in self.steps)

    def threshold(self) -> Extended:
        for i, poset in enumerate(self.posets):
            if len(poset):
                return i
        return INF

    def cardinality(self) -> int:
        return max(len(poset) for poset in self.posets)

    def is_empty(self) -> bool:
        return self.threshold() == INF

    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(poset) for poset in self.posets)

    def summary(self) -> PersistenceSummary:
        return PersistenceSummary(
            stabilization=self.T,
            is_filtration=self.is_filtration(),
            threshold=self.threshold(),
            cardinality=self.cardinality(),
            sizes=self.sizes(),
        )

    def extended(self, T: int) -> PersistencePoset:
        """Same diagram represented with stabilization index max(T, self.T)."""
        if T <= self.T:
            return self
        last = self.posets[-1]
        pad = T - self.T
        return PersistencePoset(
            self.posets + (last,) * pad,
            self.steps + (identity_map(last),) * pad,
        )

    def trimmed(self) -> PersistencePoset:
        """Drop trailing indices that only repeat P_T with identity steps."""
        T = self.T
        while T > 0 and self.steps[T - 1].is_identity():
            T -= 1
        return PersistencePoset(self.posets[: T + 1], self.steps[:T])

    def agrees_with(self, other: PersistencePoset) -> bool:
        """Index-wise equality of posets and steps."""
        return self.trimmed() == other.trimmed()

    def shifted(self, s: int) -> PersistencePoset:
        """The diagram Y with Y_i = X_{i+s}."""
        s = min(s, self.T)
        return PersistencePoset(self.posets[s:], self.steps[s:])

    def dual(self) -> PersistencePoset:
        return PersistencePoset(
            tuple(poset.dual() for poset in self.posets),
            tuple(step.dual() for step in self.steps),
        )

    def subdiagram(
        self, subsets: Sequence[Iterable[str]]
    ) -> PersistencePoset:
        """Index-wise induced subposets; steps must restrict."""
        if len(subsets) != len(self.posets):
            raise ArityMismatch(
                f"expected {len(self.posets)} subsets, got {len(subsets)}"
            )
        subsets = [tuple(s) for s in subsets]
        posets = tuple(
            poset.induced_subposet(subset)
            for poset, subset in zip(self.posets, subsets)
        )
        steps = tuple(
            self.steps[i].restrict(subsets[i], subsets[i + 1])
            for i in range(self.T)
        )
        return PersistencePoset(posets, steps)

    @classmethod
    def constant(cls, poset: FinitePoset) -> PersistencePoset:
        return cls((poset,), ())


def validate_persistence_poset(
    posets: Sequence[FinitePoset],
    steps: Sequence[Union[MonotoneMap, Mapping[str, str]]],
) -> PersistencePoset:
    """Validate a raw diagram.

    Steps may be given as assignments or as MonotoneMap objects.

    Raises:
        ArityMismatch: |steps| != |posets| - 1 or no posets at all.
        NonMonotoneStep: some step is not order preserving.
    """
    posets = tuple(posets)
    if not posets:
        raise ArityMismatch("a persistence poset needs at least one poset")
    if len(steps) != len(posets) - 1:
        raise ArityMismatch(
            f"{len(posets)} posets need {len(posets) - 1} steps, "
            f"got {len(steps)}"
        )
    validated = []
    for i, raw in enumerate(steps):
        if isinstance(raw, MonotoneMap):
            if raw.dom != posets[i] or raw.cod != posets[i + 1]:
                raise ArityMismatch(
                    "step domain/codomain do not match the posets", index=i
                )
            raw = raw.assignment
        validated.append(
            validate_monotone_map(
                posets[i],
                posets[i + 1],
                dict(raw),
                error=NonMonotoneStep,
                index=i,
            )
        )
    return PersistencePoset(posets, tuple(validated))


def is_filtration(X: PersistencePoset) -> bool:
    return X.is_filtration()


def threshold(X: PersistencePoset) -> Extended:
    return X.threshold()


def cardinality(X: PersistencePoset) -> int:
    return X.cardinality()


@dataclass(frozen=True)
class PersistencePoint:
    """A point x of a diagram, given by its threshold and its element at T.

    The track x_t, x_{t+1}, ... is rebuilt backwards from the anchor.
    """

    host: PersistencePoset
    threshold: int
    anchor: str

    @cached_property
    def track(self) -> Tuple[Optional[str], ...]:
        return _backward_track(self.host, self.anchor)[1]

    def at(self, i: int) -> Optional[str]:
        return self.track[min(i, self.host.T)]

    def __repr__(self) -> str:
        return f"PersistencePoint({self.anchor!r}, threshold={self.threshold})"


def _backward_track(
    host: PersistencePoset, anchor: str
) -> Tuple[int, Tuple[Optional[str], ...]]:
    T = host.T
    host.at(T).require(anchor)
    track: List[Optional[str]] = [None] * (T + 1)
    track[T] = anchor
    start = T
    for i in range(T - 1, -1, -1):
        preimage = host.steps[i].preimage([track[i + 1]])
        if len(preimage) > 1:
            raise NotAPersistencePoint(
                f"{len(preimage)} elements map onto {track[i + 1]!r}",
                index=i,
                element=anchor,
            )
        if not preimage:
            break
        track[i] = preimage[0]
        start = i
    return start, tuple(track)


def persistence_point(
    host: PersistencePoset, anchor: str, threshold: Optional[int] = None
) -> PersistencePoint:
    """Build the persistence point ending at anchor ∈ P_T.

    Raises:
        NotAPersistencePoint: the preimage condition fails, or the given
            threshold disagrees with the reconstructed track.
    """
    start, _ = _backward_track(host, anchor)
    if threshold is not None and threshold != start:
        raise NotAPersistencePoint(
            f"track of {anchor!r} starts at {start}, not {threshold}",
            element=anchor,
        )
    return PersistencePoint(host, start, anchor)


def enumerate_persistence_points(
    Q: PersistencePoset,
) -> List[PersistencePoint]:
    """One point per element of Q_T, in canonical order."""
    if not Q.is_filtration():
        raise NotAFiltration("points are enumerated on filtrations only")
    return [persistence_point(Q, x) for x in Q.at(Q.T)]


def remove_persistence_point(
    X: PersistencePoset, v: PersistencePoint
) -> PersistencePoset:
    """(X \\ v)_i = X_i \\ v_i with restricted steps."""
    point = persistence_point(X, v.anchor, v.threshold)
    subsets = [
        tuple(x for x in X.posets[i] if x != point.track[i])
        for i in range(X.T + 1)
    ]
    return X.subdiagram(subsets)


def principal_subposet(
    X: PersistencePoset,
    v: PersistencePoint,
    side: Side = Side.LOWER,
    strict: bool = False,
) -> PersistencePoset:
    """Persistence L_v, L̂_v, U_v or Û_v, empty before the threshold."""
    subsets = []
    for i in range(X.T + 1):
        vi = v.at(i)
        subsets.append(
            X.posets[i].principal_set(vi, side, strict)
            if vi is not None
            else ()
        )
    return X.subdiagram(subsets)


@dataclass(frozen=True)
class PersistencePosetMap:
    """Strictly commuting family f_i: P_i -> Q_i, i = 0..max(T_P, T_Q)."""

    source: PersistencePoset
    target: PersistencePoset
    components: Tuple[MonotoneMap, ...]

    @property
    def N(self) -> int:
        return len(self.components) - 1

    def component(self, i: int) -> MonotoneMap:
        return self.components[min(i, self.N)]

    def dual(self) -> PersistencePosetMap:
        return PersistencePosetMap(
            self.source.dual(),
            self.target.dual(),
            tuple(c.dual() for c in self.components),
        )

    @classmethod
    def identity(cls, X: PersistencePoset) -> PersistencePosetMap:
        return cls(X, X, tuple(identity_map(p) for p in X.posets))


def validate_persistence_map(
    source: PersistencePoset,
    target: PersistencePoset,
    components: Sequence[Union[MonotoneMap, Mapping[str, str]]],
) -> PersistencePosetMap:
    """Validate components index-wise and check every square commutes.

    A shorter component list is extended by repeating its last entry.

    Raises:
        ArityMismatch: no components, or more than max(T_P, T_Q) + 1.
        NonMonotoneMap / UnknownElement: a component is invalid.
        NonCommutingSquare: phi^Q f_i != f_{i+1} phi^P at some (i, x).
    """
    N = max(source.T, target.T)
    if not components or len(components) > N + 1:
        raise ArityMismatch(
            f"expected between 1 and {N + 1} components, "
            f"got {len(components)}"
        )
    raw = [
        c.assignment if isinstance(c, MonotoneMap) else dict(c)
        for c in components
    ]
    raw += [raw[-1]] * (N + 1 - len(raw))
    validated = tuple(
        validate_monotone_map(
            source.at(i), target.at(i), raw[i], index=i
        )
        for i in range(N + 1)
    )
    for i in range(N):
        step_p, step_q = source.step(i), target.step(i)
        for x in source.at(i):
            left = step_q(validated[i](x))
            right = validated[i + 1](step_p(x))
            if left != right:
                raise NonCommutingSquare(
                    f"square {i}->{i + 1} sends {x!r} to {left!r} "
                    f"and {right!r}",
                    index=i,
                    element=x,
                )
    return PersistencePosetMap(source, target, validated)


def persistence_fiber(
    f: PersistencePosetMap, v: PersistencePoint, side: Side = Side.LOWER
) -> PersistencePoset:
    """f^{-1}(L_v) (or f^{-1}(U_v)) as a persistence subposet of the source."""
    source = f.source.extended(f.N)
    subsets = []
    for i in range(f.N + 1):
        vi = v.at(i)
        if vi is None:
            subsets.append(())
            continue
        cone = f.target.at(i).principal_set(vi, side)
        subsets.append(f.component(i).preimage(cone))
    return source.subdiagram(subsets)


@dataclass(frozen=True)
class PersistenceCylinder:
    diagram: PersistencePoset
    dom_inclusion: PersistencePosetMap
    cod_inclusion: PersistencePosetMap
    retraction: PersistencePosetMap
    suffix: str
    side: Side

    def tag(self, y: str) -> str:
        return y + self.suffix


def persistence_mapping_cylinder(
    f: PersistencePosetMap, side: Side = Side.LOWER
) -> PersistenceCylinder:
    """(M_f)_i = M_{f_i} with steps phi^P ⊔ phi^Q."""
    side = Side(side)
    N = f.N
    source, target = f.source.extended(N), f.target.extended(N)
    suffix = tagging_suffix(
        {x for p in source.posets for x in p},
        {y for q in target.posets for y in q},
    )
    cylinders = [
        mapping_cylinder(f.component(i), side, suffix) for i in range(N + 1)
    ]
    steps = []
    for i in range(N):
        step_p, step_q = source.step(i), target.step(i)
        assignment = {x: step_p(x) for x in source.at(i)}
        assignment.update(
            {y + suffix: step_q(y) + suffix for y in target.at(i)}
        )
        steps.append(
            validate_monotone_map(
                cylinders[i].poset,
                cylinders[i + 1].poset,
                assignment,
                error=NonMonotoneStep,
                index=i,
            )
        )
    diagram = PersistencePoset(
        tuple(c.poset for c in cylinders), tuple(steps)
    )
    logger.debug(
        f"mapping cylinder ({side.value}) with sizes {diagram.sizes()}"
    )
    return PersistenceCylinder(
        diagram=diagram,
        dom_inclusion=PersistencePosetMap(
            source, diagram, tuple(c.dom_inclusion for c in cylinders)
        ),
        cod_inclusion=PersistencePosetMap(
            target, diagram, tuple(c.cod_inclusion for c in cylinders)
        ),
        retraction=PersistencePosetMap(
            diagram, target, tuple(c.retraction for c in cylinders)
        ),
        suffix=suffix,
        side=side,
    )
