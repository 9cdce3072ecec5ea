"""
Command-line interface.

Usage:
  python main.py check data/examples/diamond_to_chain.json
  python main.py verify instance.json --side upper --verify-steps
  python main.py distance first.json second.json --format text
  python main.py gen fibered-map --seed 7 --delay 1 -o instance.json
  python main.py diagram instance.json --degree 1 -o h1.svg

Exit codes: 0 pass or success, 1 verdict fail, 2 hypothesis failed,
3 input error.
"""

import argparse
import dataclasses
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from adapters.instances import dumps, emit, parse_instance
from adapters.render import render_diagram
from config import settings
from domain.barcodes import (
    Barcode,
    acyclicity_measure,
    interval_decomposition,
    min_interleaving_eps,
    module_distances,
)
from domain.errors import InstanceValidationError, PersistenceQMError
from domain.homology import PersistenceModule, persistence_modules_of
from domain.linalg import require_prime
from domain.oracle import (
    OracleCaps,
    brute_force_interleaving_check,
    least_interleaving_eps,
)
from domain.persistence import (
    PersistencePoset,
    PersistencePosetMap,
    enumerate_persistence_points,
    persistence_fiber,
)
from domain.poset import Side
from use_cases.generators import KINDS, generate_instance
from use_cases.reduction import (
    ReductionLedger,
    Verdict,
    reduction_schedule,
    verify_main_bound,
)

from .models import Report, RunConfig, jsonable

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_HYPOTHESIS_FAILED = 2
EXIT_INPUT_ERROR = 3

VERDICT_EXIT = {
    Verdict.PASS: EXIT_OK,
    Verdict.FAIL: EXIT_FAIL,
    Verdict.HYPOTHESIS_FAILED: EXIT_HYPOTHESIS_FAILED,
}

Outcome = Tuple[Dict[str, Any], Optional[Verdict]]


def bars(barcode: Barcode) -> List[List[Any]]:
    return [[bar.b, bar.d] for bar in barcode.intervals]


def _summary(X: PersistencePoset) -> Dict[str, Any]:
    return dataclasses.asdict(X.summary())


def _module_summary(M: PersistenceModule) -> Dict[str, Any]:
    return {"prime": M.p, "T": M.T, "dims": list(M.dims)}


def _diagram_homology(
    X: PersistencePoset, args: argparse.Namespace
) -> List[PersistenceModule]:
    return persistence_modules_of(X, args.max_degree, args.prime)


def _modules_of(instance: Any, args: argparse.Namespace):
    """Homology modules (one per degree) of a diagram, or a lone module."""
    if isinstance(instance, PersistencePoset):
        return _diagram_homology(instance, args)
    if isinstance(instance, PersistenceModule):
        return [instance]
    raise InstanceValidationError(
        "expected a poset-diagram or module document"
    )


def _require_map(instance: Any) -> PersistencePosetMap:
    if not isinstance(instance, PersistencePosetMap):
        raise InstanceValidationError("expected a map document")
    return instance


def _module_pair(
    args: argparse.Namespace,
) -> Tuple[List[PersistenceModule], List[PersistenceModule]]:
    first = parse_instance(args.input)
    if args.other is None:
        if not isinstance(first, tuple):
            raise InstanceValidationError(
                "a single input must be a module-pair document"
            )
        return [first[0]], [first[1]]
    return _modules_of(first, args), _modules_of(
        parse_instance(args.other), args
    )


def ledger_dict(ledger: ReductionLedger) -> Dict[str, Any]:
    """Plain-data view of a reduction ledger."""
    return {
        "side": ledger.side.value,
        "prime": ledger.p,
        "max_degree": ledger.max_degree,
        "cardinality": ledger.cardinality,
        "eps_max": ledger.eps_max,
        "sum2eps": ledger.sum2eps,
        "bound_main": ledger.bound_main,
        "bound_prior": ledger.bound_prior,
        "hypothesis_holds": ledger.hypothesis_holds,
        "measured": list(ledger.measured),
        "entries": [
            {
                "anchor": entry.anchor,
                "threshold": entry.threshold,
                "fiber_sizes": list(entry.fiber_sizes),
                "eps": entry.eps,
                "per_degree": list(entry.per_degree),
                "empty_fiber": entry.empty_fiber,
                "step": (
                    None
                    if entry.step is None
                    else {
                        "passed": entry.step.passed,
                        "distances": list(entry.step.distances),
                    }
                ),
            }
            for entry in ledger.entries
        ],
    }


def cmd_check(args: argparse.Namespace) -> Outcome:
    instance = parse_instance(args.input)
    if isinstance(instance, PersistencePoset):
        return {"kind": "poset-diagram", **_summary(instance)}, None
    if isinstance(instance, PersistencePosetMap):
        return {
            "kind": "map",
            "N": instance.N,
            "source": _summary(instance.source),
            "target": _summary(instance.target),
        }, None
    if isinstance(instance, PersistenceModule):
        return {"kind": "module", **_module_summary(instance)}, None
    first, second = instance
    return {
        "kind": "module-pair",
        "first": _module_summary(first),
        "second": _module_summary(second),
    }, None


def _dims_by_degree(modules: Sequence[PersistenceModule]) -> Dict[str, Any]:
    return {f"H{j}": list(M.dims) for j, M in enumerate(modules)}


def cmd_homology(args: argparse.Namespace) -> Outcome:
    instance = parse_instance(args.input)
    if isinstance(instance, PersistencePosetMap):
        return {
            "source": _dims_by_degree(
                _diagram_homology(instance.source, args)
            ),
            "target": _dims_by_degree(
                _diagram_homology(instance.target, args)
            ),
        }, None
    return {"dims": _dims_by_degree(_modules_of(instance, args))}, None


def cmd_barcode(args: argparse.Namespace) -> Outcome:
    instance = parse_instance(args.input)
    if isinstance(instance, PersistencePosetMap):
        instance = instance.source
    modules = _modules_of(instance, args)
    return {
        "barcodes": {
            f"H{j}": bars(interval_decomposition(M))
            for j, M in enumerate(modules)
        }
    }, None


def cmd_distance(args: argparse.Namespace) -> Outcome:
    first, second = _module_pair(args)
    distances = module_distances(first, second)
    results: Dict[str, Any] = {"distances": list(distances)}
    results["max"] = max(distances, default=0)
    return results, None


def cmd_fibers(args: argparse.Namespace) -> Outcome:
    f = _require_map(parse_instance(args.input))
    rows = []
    for v in enumerate_persistence_points(f.target):
        fiber = persistence_fiber(f, v, Side(args.side))
        score = acyclicity_measure(fiber, args.prime, args.max_degree)
        rows.append(
            {
                "anchor": v.anchor,
                "threshold": v.threshold,
                "fiber_sizes": list(fiber.sizes()),
                "eps": score.eps,
                "per_degree": list(score.per_degree),
                "empty_fiber": score.empty_input,
            }
        )
    return {"side": args.side, "fibers": rows}, None


def cmd_reduce(args: argparse.Namespace) -> Outcome:
    f = _require_map(parse_instance(args.input))
    ledger = reduction_schedule(
        f,
        Side(args.side),
        args.prime,
        args.max_degree,
        verify_steps=args.verify_steps,
        workers=settings.workers,
    )
    if not ledger.hypothesis_holds:
        verdict = Verdict.HYPOTHESIS_FAILED
    elif ledger.steps_passed:
        verdict = Verdict.PASS
    else:
        verdict = Verdict.FAIL
    return {"ledger": ledger_dict(ledger)}, verdict


def cmd_verify(args: argparse.Namespace) -> Outcome:
    f = _require_map(parse_instance(args.input))
    report = verify_main_bound(
        f,
        Side(args.side),
        args.prime,
        args.max_degree,
        verify_steps=args.verify_steps,
        workers=settings.workers,
    )
    return {
        "ledger": ledger_dict(report.ledger),
        "cylinder_ok": report.cylinder_ok,
        "within_sum": report.within_sum,
    }, report.verdict


def cmd_oracle(args: argparse.Namespace) -> Outcome:
    first, second = _module_pair(args)
    caps = OracleCaps(
        dim_cap=settings.oracle_dim_cap,
        max_t=settings.oracle_max_t,
        search_cap=settings.oracle_search_cap,
    )
    rows = []
    agree = True
    for M, N in zip(first, second):
        formula = min_interleaving_eps(M, N)
        if args.eps is None:
            searched = least_interleaving_eps(M, N, caps)
            rows.append({"formula": formula, "search": searched})
            agree = agree and formula == searched
        else:
            accepted = brute_force_interleaving_check(
                M, N, args.eps, caps=caps
            )
            rows.append({"formula": formula, "accepted": accepted})
            agree = agree and accepted == (formula <= args.eps)
    results = {"eps": args.eps, "degrees": rows, "agree": agree}
    return results, Verdict.PASS if agree else Verdict.FAIL


def cmd_gen(args: argparse.Namespace) -> Outcome:
    generated = generate_instance(
        args.kind,
        args.seed,
        size=args.size,
        block_size=args.block_size,
        T=args.T,
        delay=args.delay,
        density=args.density,
        prime=args.prime,
        max_elements=settings.generator_max_elements,
        max_t=settings.generator_max_t,
    )
    meta = {
        "kind": generated.kind,
        "seed": generated.seed,
        "params": generated.params,
    }
    text = emit(generated.payload, meta)
    if args.output is None:
        sys.stdout.write(text)
        return {"meta": meta, "output": None}, None
    output = Path(args.output)
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(text, encoding="utf-8")
    logger.info(f"{generated.kind} instance written to {output}")
    return {"meta": meta, "output": str(output)}, None


def cmd_diagram(args: argparse.Namespace) -> Outcome:
    modules = _modules_of(parse_instance(args.input), args)
    if args.degree >= len(modules):
        raise InstanceValidationError(
            f"degree {args.degree} not computed "
            f"(max degree {len(modules) - 1})"
        )
    barcode = interval_decomposition(modules[args.degree])
    path = render_diagram(
        barcode, args.output or "diagram.svg", title=f"H{args.degree}"
    )
    results: Dict[str, Any] = {"degree": args.degree, "bars": bars(barcode)}
    results["output"] = str(path)
    return results, None


COMMANDS: Dict[str, Callable[[argparse.Namespace], Outcome]] = {
    "check": cmd_check,
    "homology": cmd_homology,
    "barcode": cmd_barcode,
    "distance": cmd_distance,
    "fibers": cmd_fibers,
    "reduce": cmd_reduce,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
    "gen": cmd_gen,
    "diagram": cmd_diagram,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, default=settings.prime)
    common.add_argument(
        "--max-degree", type=int, default=settings.max_degree
    )
    common.add_argument(
        "--side", choices=["lower", "upper"], default=settings.side
    )
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument(
        "--verify-steps",
        action="store_true",
        default=settings.verify_steps,
        help="Check the per-removal bound after every step",
    )
    common.add_argument("--report", help="Also write the report to a file")
    common.add_argument("--log-level", default=settings.log_level)

    parser = argparse.ArgumentParser(
        prog="pqm",
        description="Persistence posets, barcodes and fiber reductions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def single(name: str, help_text: str) -> argparse.ArgumentParser:
        command = sub.add_parser(name, parents=[common], help=help_text)
        command.add_argument("input", help="Instance file")
        return command

    single("check", "Validate an instance and summarize it")
    single("homology", "Homology dimensions per index and degree")
    single("barcode", "Barcodes per degree")
    single("fibers", "Fiber sizes and eps-acyclicity per point")
    single("reduce", "Run the reduction schedule and print the ledger")
    single("verify", "Check the interleaving bound for a map")
    for name, help_text in (
        ("distance", "Interleaving distance per degree"),
        ("oracle", "Cross-check distances by exhaustive search"),
    ):
        command = single(name, help_text)
        command.add_argument(
            "other", nargs="?", help="Second instance (omit for a pair)"
        )
        if name == "oracle":
            command.add_argument(
                "--eps", type=int, help="Decide a single eps only"
            )

    gen = sub.add_parser("gen", parents=[common], help="Generate an instance")
    gen.add_argument("kind", choices=KINDS)
    gen.add_argument("--size", type=int, default=4)
    gen.add_argument("--block-size", type=int, default=3)
    gen.add_argument("-T", type=int, default=3, dest="T")
    gen.add_argument("--delay", type=int, default=0)
    gen.add_argument("--density", type=float, default=0.4)
    gen.add_argument("-o", "--output", help="Instance file to write")

    diagram = single("diagram", "Render a persistence diagram as SVG")
    diagram.add_argument("--degree", type=int, default=0)
    diagram.add_argument("-o", "--output", help="SVG file to write")
    return parser


def _text(report: Report) -> str:
    lines = [f"command: {' '.join(report.command)}"]
    for key, value in sorted(report.results.items()):
        lines.append(f"{key}: {json.dumps(value, sort_keys=True)}")
    if report.verdict is not None:
        lines.append(f"verdict: {report.verdict}")
    return "\n".join(lines) + "\n"


def _configure_logging(level: str) -> None:
    logging.basicConfig(
        level=level.upper(),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def run_command(argv: Sequence[str]) -> int:
    """Run one subcommand and return its exit code."""
    try:
        args = build_parser().parse_args(list(argv))
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT_ERROR
    _configure_logging(args.log_level)

    started = time.perf_counter()
    try:
        config = RunConfig(
            prime=args.prime,
            max_degree=args.max_degree,
            side=args.side,
            seed=args.seed,
            verify_steps=args.verify_steps,
        )
        require_prime(args.prime)
        results, verdict = COMMANDS[args.command](args)
    except ValidationError as e:
        print(f"error: {e.errors()[0]['msg']}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (PersistenceQMError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    elapsed = time.perf_counter() - started

    report = Report(
        command=list(argv),
        config=config,
        results=jsonable(results),
        verdict=None if verdict is None else verdict.value,
        timing={"seconds": round(elapsed, 6)},
    )
    payload = report.model_dump(mode="json")
    if args.report:
        Path(args.report).write_text(dumps(payload), encoding="utf-8")
    # gen without -o already wrote the instance to stdout
    if not (args.command == "gen" and args.output is None):
        if args.format == "json":
            sys.stdout.write(dumps(payload))
        else:
            sys.stdout.write(_text(report))
    return EXIT_OK if verdict is None else VERDICT_EXIT[verdict]


def main() -> None:
    """Console entry point."""
    sys.exit(run_command(sys.argv[1:]))
