"""
Finite posets, monotone maps and mapping cylinders.

A finite poset doubles as a finite T0-space (open sets are the upper sets),
so continuity of maps is exactly monotonicity. Relations are stored
reflexively and transitively closed; every subset and iteration order is
the canonical input order, which keeps all operations deterministic.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, Optional, Tuple

import networkx as nx

from .errors import (
    CycleDetected,
    DuplicateElement,
    NonMonotoneMap,
    UnknownElement,
)

TAG_SUFFIX = "'"

Pair = Tuple[str, str]


class Side(str, Enum):
    """Which principal sets a construction looks at."""

    LOWER = "lower"
    UPPER = "upper"

    @property
    def opposite(self) -> "Side":
        return Side.UPPER if self is Side.LOWER else Side.LOWER


class Extremity(str, Enum):
    MINIMAL = "minimal"
    MAXIMAL = "maximal"


@dataclass(frozen=True)
class FinitePoset:
    """Finite partial order on named elements.

    Construct through validate_poset() unless the relation is already
    known to be a closed partial order.
    """

    elements: Tuple[str, ...]
    leq: FrozenSet[Pair]

    @cached_property
    def _position(self) -> Dict[str, int]:
        return {x: i for i, x in enumerate(self.elements)}

    @cached_property
    def _down(self) -> Dict[str, Tuple[str, ...]]:
        below: Dict[str, list] = {x: [] for x in self.elements}
        for x, y in self.leq:
            below[y].append(x)
        return {
            y: tuple(sorted(xs, key=self._position.__getitem__))
            for y, xs in below.items()
        }

    @cached_property
    def _up(self) -> Dict[str, Tuple[str, ...]]:
        above: Dict[str, list] = {x: [] for x in self.elements}
        for x, y in self.leq:
            above[x].append(y)
        return {
            x: tuple(sorted(ys, key=self._position.__getitem__))
            for x, ys in above.items()
        }

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self._position

    def position(self, x: str) -> int:
        self.require(x)
        return self._position[x]

    def require(self, x: str) -> None:
        if x not in self._position:
            raise UnknownElement("element not in poset", element=x)

    def le(self, x: str, y: str) -> bool:
        return (x, y) in self.leq

    def lt(self, x: str, y: str) -> bool:
        return x != y and (x, y) in self.leq

    def comparable(self, x: str, y: str) -> bool:
        return self.le(x, y) or self.le(y, x)

    def principal_set(
        self, v: str, side: Side = Side.LOWER, strict: bool = False
    ) -> Tuple[str, ...]:
        """L_v / L̂_v (lower side) or U_v / Û_v (upper side)."""
        self.require(v)
        members = self._down[v] if Side(side) is Side.LOWER else self._up[v]
        if strict:
            return tuple(x for x in members if x != v)
        return members

    def extremal_elements(
        self, extremity: Extremity = Extremity.MINIMAL
    ) -> Tuple[str, ...]:
        side = (
            Side.LOWER
            if Extremity(extremity) is Extremity.MINIMAL
            else Side.UPPER
        )
        return tuple(
            v
            for v in self.elements
            if not self.principal_set(v, side, strict=True)
        )

    def induced_subposet(self, subset: Iterable[str]) -> FinitePoset:
        keep = set(subset)
        for x in keep:
            self.require(x)
        elements = tuple(x for x in self.elements if x in keep)
        leq = frozenset(
            (x, y) for (x, y) in self.leq if x in keep and y in keep
        )
        return FinitePoset(elements, leq)

    def dual(self) -> FinitePoset:
        return FinitePoset(
            self.elements, frozenset((y, x) for (x, y) in self.leq)
        )

    def covers(self) -> Tuple[Pair, ...]:
        """Hasse diagram edges, the smallest generating set of leq."""
        graph = nx.DiGraph()
        graph.add_nodes_from(self.elements)
        graph.add_edges_from((x, y) for (x, y) in self.leq if x != y)
        reduced = nx.transitive_reduction(graph)
        return tuple(
            sorted(
                reduced.edges,
                key=lambda e: (self._position[e[0]], self._position[e[1]]),
            )
        )

    @classmethod
    def empty(cls) -> FinitePoset:
        return cls((), frozenset())

    def __repr__(self) -> str:
        return (
            f"FinitePoset({list(self.elements)}, covers={list(self.covers())})"
        )


def validate_poset(
    elements: Iterable[str], leq_pairs: Iterable[Pair] = ()
) -> FinitePoset:
    """Close leq_pairs reflexively and transitively and check antisymmetry.

    Raises:
        DuplicateElement: an identifier appears twice.
        UnknownElement: a pair mentions an identifier not in elements.
        CycleDetected: the closure is not antisymmetric.
    """
    elements = tuple(elements)
    duplicates = [x for x, n in Counter(elements).items() if n > 1]
    if duplicates:
        raise DuplicateElement(
            "duplicate element identifier", element=duplicates[0]
        )
    known = set(elements)
    graph = nx.DiGraph()
    graph.add_nodes_from(elements)
    for x, y in leq_pairs:
        for z in (x, y):
            if z not in known:
                raise UnknownElement(
                    "relation mentions unknown element", element=z
                )
        if x != y:
            graph.add_edge(x, y)

    try:
        cycle = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        cycle = None
    if cycle:
        raise CycleDetected(
            [u for u, _ in cycle] + [cycle[0][0]], element=cycle[0][0]
        )

    closure = nx.transitive_closure_dag(graph)
    leq = set(closure.edges)
    leq.update((x, x) for x in elements)
    return FinitePoset(elements, frozenset(leq))


@dataclass(frozen=True)
class MonotoneMap:
    """Order-preserving assignment dom -> cod."""

    dom: FinitePoset
    cod: FinitePoset
    assignment: Dict[str, str]

    def __call__(self, x: str) -> str:
        try:
            return self.assignment[x]
        except KeyError:
            raise UnknownElement("element not in domain", element=x) from None

    def preimage(self, ys: Iterable[str]) -> Tuple[str, ...]:
        targets = set(ys)
        return tuple(x for x in self.dom if self.assignment[x] in targets)

    def image(self) -> Tuple[str, ...]:
        hit = set(self.assignment.values())
        return tuple(y for y in self.cod if y in hit)

    def is_injective(self) -> bool:
        return len(set(self.assignment.values())) == len(self.dom)

    def is_identity(self) -> bool:
        return self.dom == self.cod and all(
            self.assignment[x] == x for x in self.dom
        )

    def restrict(
        self, dom_subset: Iterable[str], cod_subset: Iterable[str]
    ) -> MonotoneMap:
        """Restriction to induced subposets; images must land in cod_subset."""
        dom = self.dom.induced_subposet(dom_subset)
        cod = self.cod.induced_subposet(cod_subset)
        assignment = {}
        for x in dom:
            y = self.assignment[x]
            if y not in cod:
                raise UnknownElement(
                    f"restriction sends {x!r} outside the target subset",
                    element=y,
                )
            assignment[x] = y
        return MonotoneMap(dom, cod, assignment)

    def dual(self) -> MonotoneMap:
        return MonotoneMap(
            self.dom.dual(), self.cod.dual(), dict(self.assignment)
        )


def validate_monotone_map(
    dom: FinitePoset,
    cod: FinitePoset,
    assignment: Dict[str, str],
    error: type = NonMonotoneMap,
    index: Optional[int] = None,
) -> MonotoneMap:
    """Check totality, codomain membership and order preservation."""
    for x in dom:
        if x not in assignment:
            raise UnknownElement(
                "assignment is missing a domain element",
                index=index,
                element=x,
            )
    for x, y in assignment.items():
        if x not in dom:
            raise UnknownElement(
                "assignment mentions an element outside the domain",
                index=index,
                element=x,
            )
        if y not in cod:
            raise UnknownElement(
                f"image of {x!r} is not in the codomain",
                index=index,
                element=y,
            )
    for x, y in dom.leq:
        if not cod.le(assignment[x], assignment[y]):
            raise error(
                f"{x!r} <= {y!r} but {assignment[x]!r} is not below "
                f"{assignment[y]!r}",
                index=index,
                element=x,
            )
    return MonotoneMap(dom, cod, {x: assignment[x] for x in dom})


def identity_map(poset: FinitePoset) -> MonotoneMap:
    return MonotoneMap(poset, poset, {x: x for x in poset})


def compose(g: MonotoneMap, f: MonotoneMap) -> MonotoneMap:
    """g after f."""
    return MonotoneMap(f.dom, g.cod, {x: g(f(x)) for x in f.dom})


def tagging_suffix(
    taken: Iterable[str], incoming: Iterable[str], base: str = TAG_SUFFIX
) -> str:
    """Shortest repetition of base keeping incoming names off taken."""
    taken = set(taken)
    incoming = tuple(incoming)
    suffix = base
    while any(y + suffix in taken for y in incoming):
        suffix += base
    return suffix


@dataclass(frozen=True)
class MappingCylinder:
    poset: FinitePoset
    dom_inclusion: MonotoneMap
    cod_inclusion: MonotoneMap
    retraction: MonotoneMap
    suffix: str
    side: Side = Side.LOWER

    def tag(self, y: str) -> str:
        return y + self.suffix


def mapping_cylinder(
    f: MonotoneMap, side: Side = Side.LOWER, suffix: Optional[str] = None
) -> MappingCylinder:
    """Mapping cylinder of f on dom ⊔ cod.

    The lower cylinder puts x ∈ dom below y ∈ cod iff f(x) <= y; the upper
    cylinder puts y ∈ cod below x ∈ dom iff y <= f(x). Cod identifiers are
    tagged with a suffix that avoids every dom identifier.
    """
    side = Side(side)
    if suffix is None:
        suffix = tagging_suffix(f.dom.elements, f.cod.elements)

    def tag(y: str) -> str:
        return y + suffix

    collisions = set(f.dom.elements) & {tag(y) for y in f.cod}
    if collisions:
        raise DuplicateElement(
            "tagged codomain element collides with domain element",
            element=sorted(collisions)[0],
        )

    elements = f.dom.elements + tuple(tag(y) for y in f.cod)
    leq = set(f.dom.leq)
    leq.update((tag(a), tag(b)) for (a, b) in f.cod.leq)
    for x in f.dom:
        fx = f(x)
        if side is Side.LOWER:
            above = f.cod.principal_set(fx, Side.UPPER)
            leq.update((x, tag(y)) for y in above)
        else:
            below = f.cod.principal_set(fx, Side.LOWER)
            leq.update((tag(y), x) for y in below)
    cylinder = FinitePoset(elements, frozenset(leq))

    dom_inclusion = MonotoneMap(f.dom, cylinder, {x: x for x in f.dom})
    cod_inclusion = MonotoneMap(f.cod, cylinder, {y: tag(y) for y in f.cod})
    retraction_assignment = {x: f(x) for x in f.dom}
    retraction_assignment.update({tag(y): y for y in f.cod})
    retraction = MonotoneMap(cylinder, f.cod, retraction_assignment)
    return MappingCylinder(
        cylinder, dom_inclusion, cod_inclusion, retraction, suffix, side
    )
