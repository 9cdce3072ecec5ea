"""
Seeded instance generators.

Every generator draws from its own random.Random(seed), so equal seeds and
parameters give identical instances (and identical emitted files).

Kinds:
    random-filtration  random order on n elements, inserted over T steps
    fibered-map        f: P -> Q whose fibers are cones up to `delay` steps
    cone-collapse      f: C -> *^t where C gets a top element after `delay`
    interval-pair      two modules that are direct sums of random intervals
    module-pair        two modules with random dimensions and step matrices
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from domain.barcodes import Barcode, Interval, module_from_barcode
from domain.errors import SizeCapExceeded
from domain.homology import PersistenceModule
from domain.persistence import (
    INF,
    PersistencePoset,
    PersistencePosetMap,
    validate_persistence_map,
    validate_persistence_poset,
)
from domain.poset import FinitePoset, validate_poset

logger = logging.getLogger(__name__)

KINDS = (
    "random-filtration",
    "fibered-map",
    "cone-collapse",
    "interval-pair",
    "module-pair",
)

Payload = Union[
    PersistencePoset,
    PersistencePosetMap,
    Tuple[PersistenceModule, PersistenceModule],
]


@dataclass
class GeneratedInstance:
    kind: str
    seed: int
    params: Dict[str, Any] = field(default_factory=dict)
    payload: Optional[Payload] = None


@dataclass
class _Births:
    """Birth index of every element and of every generating relation."""

    elements: Dict[str, int]
    relations: Dict[Tuple[str, str], int]

    @property
    def T(self) -> int:
        return max(
            list(self.elements.values()) + list(self.relations.values()),
            default=0,
        )

    def diagram(self, T: Optional[int] = None) -> PersistencePoset:
        """Index i holds the elements and relations born by i, closed."""
        T = self.T if T is None else T
        posets: List[FinitePoset] = []
        for i in range(T + 1):
            elements = [x for x, b in self.elements.items() if b <= i]
            pairs = [pair for pair, b in self.relations.items() if b <= i]
            posets.append(validate_poset(elements, pairs))
        steps = [{x: x for x in posets[i]} for i in range(T)]
        return validate_persistence_poset(posets, steps)


def _check_caps(
    elements: int, T: int, max_elements: int, max_t: int
) -> None:
    if elements > max_elements:
        raise SizeCapExceeded(
            f"{elements} elements requested, cap is {max_elements}"
        )
    if T > max_t:
        raise SizeCapExceeded(f"T = {T} requested, cap is {max_t}")


def _random_births(
    rng: random.Random,
    names: List[str],
    T: int,
    density: float,
) -> _Births:
    order = names[:]
    rng.shuffle(order)
    elements = {x: rng.randint(0, T) for x in names}
    # the last element to appear pins the stabilization index to T
    if names:
        elements[order[-1]] = T
    relations = {}
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            if rng.random() < density:
                x, y = order[a], order[b]
                born = max(elements[x], elements[y])
                relations[x, y] = rng.randint(born, T)
    return _Births(elements, relations)


def random_filtration(
    rng: random.Random, n: int, T: int, density: float = 0.4
) -> PersistencePoset:
    names = [f"x{k}" for k in range(n)]
    return _random_births(rng, names, T, density).diagram(T)


def _first_relation_times(Q: PersistencePoset) -> Dict[Tuple[str, str], int]:
    """Least index at which q <= q' holds, for pairs related at T."""
    times: Dict[Tuple[str, str], int] = {}
    for i, poset in enumerate(Q.posets):
        for pair in poset.leq:
            times.setdefault(pair, i)
    return times


def fibered_map(
    rng: random.Random,
    q_size: int,
    block_size: int,
    T: int,
    delay: int = 0,
    density: float = 0.4,
) -> PersistencePosetMap:
    """f: P -> Q where P replaces each q by a block of leaves under an apex.

    Blocks are stacked along Q's order, so both fibers over q have the
    apex of q's block as a cone point once it and its relations are born.
    The natural time of an element is the birth of its q, and of a
    relation the first index at which both ends exist and are related in
    Q. Every birth lies in [natural, natural + delay], so a class born at
    i is coned off by i + delay and every fiber is eps-acyclic from
    trh(q) with eps <= delay.
    """
    Q = random_filtration(rng, q_size, T, density)
    q_birth = {
        q: next(i for i, poset in enumerate(Q.posets) if q in poset)
        for q in Q.at(Q.T)
    }
    related = _first_relation_times(Q)
    blocks: Dict[str, List[str]] = {}
    owner: Dict[str, str] = {}
    elements: Dict[str, int] = {}
    for q in Q.at(Q.T):
        leaves = [f"{q}.{k}" for k in range(block_size - 1)]
        blocks[q] = leaves + [f"{q}.top"]
        for x in blocks[q]:
            owner[x] = q
            elements[x] = q_birth[q] + rng.randint(0, delay)
    relations: Dict[Tuple[str, str], int] = {}

    def relate(x: str, y: str, natural: int) -> None:
        natural = max(natural, q_birth[owner[x]], q_birth[owner[y]])
        born = natural + rng.randint(0, delay)
        relations[x, y] = max(born, elements[x], elements[y])

    for q, block in blocks.items():
        for leaf in block[:-1]:
            relate(leaf, block[-1], 0)
    for (q, r), born in sorted(related.items()):
        if q == r:
            continue
        for x in blocks[q]:
            for y in blocks[r]:
                relate(x, y, born)

    births = _Births(elements, relations)
    N = max(births.T, Q.T)
    P = births.diagram(N)
    components = [{x: owner[x] for x in P.at(i)} for i in range(N + 1)]
    return validate_persistence_map(P, Q.extended(N), components)


def cone_collapse(
    rng: random.Random,
    n: int,
    T: int,
    delay: int = 0,
    density: float = 0.4,
) -> PersistencePosetMap:
    """f: C -> *^t with C = X plus an apex born `delay` after trh(X)."""
    names = [f"x{k}" for k in range(n)]
    births = _random_births(rng, names, T, density)
    start = min(births.elements.values(), default=0)
    apex = "apex"
    births.elements[apex] = start + delay
    for x in names:
        births.relations[x, apex] = max(births.elements[x], start + delay)
    N = births.T
    C = births.diagram(N)
    point = FinitePoset(("pt",), frozenset({("pt", "pt")}))
    posets = [
        point if i >= start else FinitePoset.empty() for i in range(N + 1)
    ]
    steps = [{"pt": "pt"} if i >= start else {} for i in range(N)]
    target = validate_persistence_poset(posets, steps)
    components = [{x: "pt" for x in C.at(i)} for i in range(N + 1)]
    return validate_persistence_map(C, target, components)


def random_intervals(
    rng: random.Random, T: int, count: int
) -> Barcode:
    bars = []
    for _ in range(count):
        b = rng.randint(0, T)
        d = rng.randint(b + 1, T + 1)
        bars.append(Interval(b, INF if d > T else d))
    return Barcode.of(T, bars)


def interval_pair(
    rng: random.Random, T: int, max_bars: int, p: int = 2
) -> Tuple[PersistenceModule, PersistenceModule]:
    return (
        module_from_barcode(
            random_intervals(rng, T, rng.randint(0, max_bars)), p
        ),
        module_from_barcode(
            random_intervals(rng, T, rng.randint(0, max_bars)), p
        ),
    )


def random_module(
    rng: random.Random, T: int, max_dim: int, p: int = 2
) -> PersistenceModule:
    dims = tuple(rng.randint(0, max_dim) for _ in range(T + 1))
    return module_with_dims(rng, dims, p)


def small_module(
    rng: random.Random, T: int, max_total: int, p: int = 2
) -> PersistenceModule:
    """Random module on 0..T whose total dimension is at most max_total."""
    dims = [0] * (T + 1)
    for _ in range(rng.randint(0, max_total)):
        dims[rng.randint(0, T)] += 1
    return module_with_dims(rng, tuple(dims), p)


def module_with_dims(
    rng: random.Random, dims: Tuple[int, ...], p: int = 2
) -> PersistenceModule:
    """Module with the given dimensions and uniformly random steps."""
    T = len(dims) - 1
    steps = tuple(
        np.array(
            [
                [rng.randrange(p) for _ in range(dims[i])]
                for _ in range(dims[i + 1])
            ],
            dtype=np.int64,
        ).reshape(dims[i + 1], dims[i])
        for i in range(T)
    )
    return PersistenceModule(p, dims, steps)


def generate_instance(
    kind: str,
    seed: int,
    *,
    size: int = 4,
    block_size: int = 3,
    T: int = 3,
    delay: int = 0,
    density: float = 0.4,
    prime: int = 2,
    max_elements: int = 64,
    max_t: int = 16,
) -> GeneratedInstance:
    """Build one instance of the given kind.

    Raises:
        SizeCapExceeded: requested sizes exceed max_elements / max_t.
        ValueError: unknown kind.
    """
    rng = random.Random(seed)
    params: Dict[str, Any] = {"T": T}
    payload: Payload
    if kind == "random-filtration":
        _check_caps(size, T, max_elements, max_t)
        params.update(size=size, density=density)
        payload = random_filtration(rng, size, T, density)
    elif kind == "fibered-map":
        _check_caps(size * block_size, T + delay, max_elements, max_t)
        params.update(
            size=size, block_size=block_size, delay=delay, density=density
        )
        payload = fibered_map(rng, size, block_size, T, delay, density)
    elif kind == "cone-collapse":
        _check_caps(size + 1, T + delay, max_elements, max_t)
        params.update(size=size, delay=delay, density=density)
        payload = cone_collapse(rng, size, T, delay, density)
    elif kind == "interval-pair":
        _check_caps(size, T, max_elements, max_t)
        params.update(size=size, prime=prime)
        payload = interval_pair(rng, T, size, prime)
    elif kind == "module-pair":
        _check_caps(size, T, max_elements, max_t)
        params.update(size=size, prime=prime)
        payload = (
            random_module(rng, T, size, prime),
            random_module(rng, T, size, prime),
        )
    else:
        raise ValueError(
            f"unknown instance kind {kind!r}; choose from {KINDS}"
        )
    logger.debug(f"generated {kind} instance with seed {seed}: {params}")
    return GeneratedInstance(kind, seed, params, payload)
