"""
Seeded acceptance sweeps.

Each sweep runs one property over a family of generated instances and
returns a SweepResult counting checked cases and violations. The pytest
suite runs them under the `acceptance` marker and scripts/run_acceptance.py
runs them at full size with a summary table.
"""

import itertools
import logging
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Tuple

from adapters.instances import emit
from domain.barcodes import (
    Barcode,
    Interval,
    interval_decomposition,
    min_interleaving_eps,
    module_distances,
    module_from_barcode,
    rank_invariant,
)
from domain.errors import CapExceeded
from domain.homology import (
    PersistenceModule,
    betti_numbers,
    persistence_modules_of,
)
from domain.oracle import OracleCaps, least_interleaving_eps
from domain.persistence import INF
from domain.poset import validate_poset
from domain.simplicial import join, order_complex

from .generators import (
    KINDS,
    generate_instance,
    random_filtration,
    random_module,
    small_module,
)
from .reduction import (
    Verdict,
    cylinder_equivalence_check,
    verify_main_bound,
)

logger = logging.getLogger(__name__)

MAX_DETAILS = 5

# fibered-map sweeps draw |Q| <= 6 and |P| <= MAP_ELEMENTS
MAP_ELEMENTS = 16


@dataclass
class SweepResult:
    name: str
    checked: int = 0
    violations: int = 0
    skipped: int = 0
    seconds: float = 0.0
    details: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def record(self, passed: bool, detail: str) -> None:
        self.checked += 1
        if not passed:
            self.violations += 1
            if len(self.details) < MAX_DETAILS:
                self.details.append(detail)
            logger.warning(f"{self.name}: {detail}")


def _timed(name: str, body: Callable[[SweepResult], None]) -> SweepResult:
    result = SweepResult(name)
    started = time.perf_counter()
    body(result)
    result.seconds = time.perf_counter() - started
    logger.info(
        f"{name}: {result.checked} checked, {result.violations} violations"
    )
    return result


def _map_params(
    rng: random.Random, max_delay: int, max_elements: int
) -> Dict[str, int]:
    size = rng.randint(2, min(6, max_elements // 2))
    return {
        "size": size,
        "block_size": rng.randint(2, max_elements // size),
        "T": rng.randint(1, 4),
        "delay": rng.randint(0, max_delay),
    }


def _fibered_maps(
    count: int, seed: int, max_delay: int, max_elements: int
) -> Iterator[Tuple[int, int, object]]:
    rng = random.Random(seed)
    for k in range(count):
        params = _map_params(rng, max_delay, max_elements)
        prime = rng.choice((2, 3))
        instance = generate_instance(
            "fibered-map", seed + k, prime=prime, **params
        )
        yield seed + k, prime, instance.payload


def quillen_sanity(
    count: int = 100, seed: int = 0, max_elements: int = MAP_ELEMENTS
) -> SweepResult:
    """Undelayed fibered maps: every eps_v and every distance is 0."""

    def body(result: SweepResult) -> None:
        for k, prime, f in _fibered_maps(count, seed, 0, max_elements):
            report = verify_main_bound(f, p=prime)
            ledger = report.ledger
            passed = ledger.eps_max == 0 and all(
                d == 0 for d in ledger.measured
            )
            result.record(
                passed,
                f"seed {k}: eps_max {ledger.eps_max}, "
                f"measured {list(ledger.measured)}",
            )

    return _timed("quillen-sanity", body)


def main_bound(
    count: int = 200, seed: int = 1000, max_elements: int = MAP_ELEMENTS
) -> SweepResult:
    """Measured distance within 2 eps_max |Q| and within 2 sum eps_v."""

    def body(result: SweepResult) -> None:
        for k, prime, f in _fibered_maps(count, seed, 2, max_elements):
            report = verify_main_bound(f, p=prime)
            ledger = report.ledger
            if not ledger.hypothesis_holds:
                result.skipped += 1
                continue
            passed = report.verdict is Verdict.PASS and report.within_sum
            result.record(
                passed,
                f"seed {k}: measured {list(ledger.measured)}, "
                f"bound {ledger.bound_main}, sum {ledger.sum2eps}",
            )

    return _timed("main-bound", body)


def step_bound(
    count: int = 50, seed: int = 2000, max_elements: int = MAP_ELEMENTS
) -> SweepResult:
    """Every single removal moves homology by at most 2 eps_v."""

    def body(result: SweepResult) -> None:
        for k, prime, f in _fibered_maps(count, seed, 2, max_elements):
            report = verify_main_bound(f, p=prime, verify_steps=True)
            for entry in report.ledger.entries:
                if entry.step is None or entry.eps == INF:
                    continue
                result.record(
                    entry.step.passed,
                    f"seed {k}, point {entry.anchor!r}: distances "
                    f"{list(entry.step.distances)} > 2 * {entry.eps}",
                )

    return _timed("step-bound", body)


def cylinder_equivalence(
    count: int = 50, seed: int = 3000, size: int = 4
) -> SweepResult:
    """Barcodes of the mapping cylinder equal those of the target."""

    def body(result: SweepResult) -> None:
        for kind in ("fibered-map", "cone-collapse"):
            for k in range(count):
                f = generate_instance(
                    kind, seed + k, size=size, delay=k % 3
                ).payload
                result.record(
                    cylinder_equivalence_check(f),
                    f"{kind} seed {seed + k}: cylinder barcodes differ",
                )

    return _timed("cylinder-equivalence", body)


def _interval_barcodes(T: int, max_dim: int) -> List[Barcode]:
    """Every barcode on 0..T whose module has total dimension <= max_dim."""
    bars = [
        Interval(b, d)
        for b in range(T + 1)
        for d in list(range(b + 1, T + 1)) + [INF]
    ]

    def dimension(bar: Interval) -> int:
        return (T + 1 if bar.is_infinite else bar.d) - bar.b

    found = []
    for count in range(max_dim + 1):
        for combo in itertools.combinations_with_replacement(bars, count):
            if sum(map(dimension, combo)) <= max_dim:
                found.append(Barcode.of(T, combo))
    return found


def _oracle_pairs(
    max_t: int, half_dim: int, random_pairs: int, seed: int
) -> Iterator[Tuple[PersistenceModule, PersistenceModule]]:
    for T in range(max_t + 1):
        barcodes = _interval_barcodes(T, half_dim)
        for A, B in itertools.combinations_with_replacement(barcodes, 2):
            yield module_from_barcode(A), module_from_barcode(B)
    rng = random.Random(seed)
    for _ in range(random_pairs):
        T = rng.randint(0, max_t)
        yield (
            small_module(rng, T, half_dim),
            small_module(rng, T, half_dim),
        )


def oracle_agreement(
    max_t: int = 4,
    half_dim: int = 3,
    random_pairs: int = 100,
    seed: int = 4000,
) -> SweepResult:
    """The barcode formula equals the least eps found by the search.

    Every pair is sized to fit the search caps, so CapExceeded is a
    violation.
    """
    caps = OracleCaps(dim_cap=2 * half_dim, max_t=max(max_t, 4))

    def body(result: SweepResult) -> None:
        pairs = _oracle_pairs(max_t, half_dim, random_pairs, seed)
        for M, N in pairs:
            try:
                searched = least_interleaving_eps(M, N, caps)
            except CapExceeded as exc:
                result.record(False, f"dims {M.dims} / {N.dims}: {exc}")
                continue
            formula = min_interleaving_eps(M, N)
            result.record(
                searched == formula,
                f"dims {M.dims} / {N.dims}: formula {formula}, "
                f"search {searched}",
            )

    return _timed("oracle-agreement", body)


def barcode_correctness(count: int = 500, seed: int = 5000) -> SweepResult:
    """Rank-invariant reconstruction plus known Betti numbers."""

    def body(result: SweepResult) -> None:
        rng = random.Random(seed)
        for k in range(count):
            M = random_module(rng, rng.randint(0, 6), 5, rng.choice((2, 3)))
            rebuilt = module_from_barcode(interval_decomposition(M), M.p)
            passed = all(
                rank_invariant(M, i, j) == rank_invariant(rebuilt, i, j)
                for i in range(M.T + 1)
                for j in range(i, M.T + 1)
            )
            result.record(passed, f"module {k} dims {M.dims}")

        circle = validate_poset(
            list("abcd"), [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]
        )
        chain = validate_poset(list("abc"), [("a", "b"), ("b", "c")])
        antichains = join(
            order_complex(validate_poset(list("ab"))),
            order_complex(validate_poset(list("cd"))),
        )
        known = [
            ("circle", betti_numbers(order_complex(circle), 2, 1), (1, 1)),
            ("chain", betti_numbers(order_complex(chain), 2, 2), (1, 0, 0)),
            ("join", betti_numbers(antichains, 2, 2)[1:2], (1,)),
        ]
        for name, found, expected in known:
            result.record(found == expected, f"{name}: betti {found}")

    return _timed("barcode-correctness", body)


def functoriality(count: int = 50, seed: int = 6000) -> SweepResult:
    """A diagram and its shift by s are at most s apart in every degree."""

    def body(result: SweepResult) -> None:
        rng = random.Random(seed)
        for k in range(count):
            X = random_filtration(rng, rng.randint(2, 6), rng.randint(1, 5))
            s = rng.randint(1, 3)
            distances = module_distances(
                persistence_modules_of(X, 2, 2),
                persistence_modules_of(X.shifted(s), 2, 2),
            )
            result.record(
                all(d <= s for d in distances),
                f"diagram {k}, shift {s}: distances {list(distances)}",
            )

    return _timed("functoriality", body)


def determinism(count: int = 10, seed: int = 7000) -> SweepResult:
    """Equal seeds give identical instance text and identical ledgers."""

    def body(result: SweepResult) -> None:
        for kind, k in itertools.product(KINDS, range(count)):
            first = generate_instance(kind, seed + k)
            second = generate_instance(kind, seed + k)
            meta = {"kind": kind, "seed": seed + k}
            result.record(
                emit(first.payload, meta) == emit(second.payload, meta),
                f"{kind} seed {seed + k}: emitted text differs",
            )
            if kind == "fibered-map":
                a = verify_main_bound(first.payload)
                b = verify_main_bound(second.payload)
                result.record(
                    a.ledger == b.ledger and a.verdict == b.verdict,
                    f"{kind} seed {seed + k}: ledgers differ",
                )

    return _timed("determinism", body)


SWEEPS: Dict[str, Callable[..., SweepResult]] = {
    "quillen-sanity": quillen_sanity,
    "main-bound": main_bound,
    "step-bound": step_bound,
    "cylinder-equivalence": cylinder_equivalence,
    "oracle-agreement": oracle_agreement,
    "barcode-correctness": barcode_correctness,
    "functoriality": functoriality,
    "determinism": determinism,
}
