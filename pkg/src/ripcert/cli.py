"""Command-line surface: exact verdicts rendered as text or JSON reports.

Exit codes: 0 for YES verdicts and plain successes, 1 for NO verdicts,
2 for any error. JSON reports carry every rational as an exact string,
never as a decimal.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import TextIO

from .errors import (
    BudgetExceededError,
    DependentSubsetError,
    InputError,
    ReductionError,
)
from .generators import PLANTED, RANDOM, GeneratorSpec, gen_planted, gen_random
from .linalg import Matrix
from .matrixio import parse_matrix, parse_rational, qstr, serialize_matrix, sha256_hex
from .reduction import AuditReport, ReductionInstance, audit_theorem, build_reduction
from .rip import RipDecision, is_rip, rip_constant_bracket
from .spark import SparkResult, SubsetWitness, spark
from .subsets import DEFAULT_SUBSET_BUDGET


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ripcert",
        description="Exact spark and restricted-isometry certification for integer/rational matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, with_matrix: bool = True) -> None:
        if with_matrix:
            p.add_argument("matrix", help="matrix file path, or - for stdin")
        p.add_argument("--format", choices=["json", "text"], default="text")
        p.add_argument("--budget", type=int, default=DEFAULT_SUBSET_BUDGET,
                       help="maximum number of subsets any scan may enumerate")
        p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("spark", help="smallest dependent column set, with witness")
    add_common(p)

    p = sub.add_parser("rip-check", help="exact (K, delta)-RIP decision")
    add_common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--delta", required=True, help="exact rational: p/q or 1-2^-T")

    p = sub.add_parser("rip-constant", help="bracket the restricted isometry constant")
    add_common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--tol", required=True, help="bracket width, exact rational")

    p = sub.add_parser("reduce", help="build the spark-to-RIP gadget instance")
    add_common(p)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("audit", help="audit the reduction's equivalence and bound chain")
    add_common(p)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("gen", help="emit a deterministic instance matrix")
    add_common(p, with_matrix=False)
    p.add_argument("--kind", choices=[RANDOM, PLANTED], required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pmax", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default=None, help="write the matrix here instead of stdout")
    return parser


def _load_matrix(path: str, stdin: TextIO) -> tuple[Matrix, str]:
    if path == "-":
        text = stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    return parse_matrix(text), sha256_hex(text)


def _witness_dict(witness: SubsetWitness | None):
    if witness is None:
        return None
    return {
        "indices": list(witness.indices),
        "null_vector": [qstr(v) for v in witness.null_vector],
    }


def _violation_dict(decision: RipDecision | None):
    if decision is None or decision.violation is None:
        return None
    return {"subset": list(decision.violation.subset), "side": decision.violation.side.value}


def _spark_verdict(result: SparkResult) -> dict:
    return {"spark": result.reported, "full_column_rank": result.full_column_rank}


def _instance_verdict(instance: ReductionInstance) -> dict:
    return {
        "m": instance.source.rows,
        "n": instance.source.cols,
        "k": instance.k,
        "max_entry": instance.max_entry,
        "scale_exponent": instance.scale_exponent,
        "scale": instance.scale,
        "max_entry_bits": instance.max_entry_bits,
        "scaled_matrix": [[qstr(v) for v in row] for row in instance.scaled.data],
    }


def _instance_deltas(instance: ReductionInstance) -> dict:
    return {
        "delta_sharp": qstr(instance.delta_sharp),
        "delta_coarse": qstr(instance.delta_coarse) if instance.delta_coarse is not None else None,
    }


def _audit_verdict(report: AuditReport) -> dict:
    return {
        "spark": report.spark_result.reported,
        "full_column_rank": report.spark_result.full_column_rank,
        "is_rip_sharp": report.rip_at_sharp.is_rip,
        "is_rip_coarse": report.rip_at_coarse.is_rip if report.rip_at_coarse is not None else None,
        "equivalence_holds": report.equivalence_holds,
        "norm_certified": report.norm_certified,
        "cheap_norm_bound": report.norm_certificate.cheap_bound_holds,
        "det_audit": [
            {
                "subset": list(e.subset),
                "det": e.det,
                "entry_bound_ok": e.entry_bound_ok,
                "pass": e.passed,
            }
            for e in report.det_audit
        ],
        "lambda_min_audit": [
            {"subset": list(e.subset), "pass": e.passed} for e in report.lambda_min_audit
        ],
    }


def _render_text(command: str, verdict: dict, witnesses, deltas, out: TextIO) -> None:
    if command == "spark":
        suffix = " (full column rank)" if verdict["full_column_rank"] else ""
        print(f"spark: {verdict['spark']}{suffix}", file=out)
        if witnesses:
            print("subset: " + " ".join(str(i) for i in witnesses["indices"]), file=out)
            print("null vector: " + " ".join(witnesses["null_vector"]), file=out)
    elif command == "rip-check":
        print(f"is-rip: {str(verdict['is_rip']).lower()}", file=out)
        if witnesses:
            idx = " ".join(str(i) for i in witnesses["subset"])
            print(f"violation: subset {{{idx}}}, {witnesses['side']} side", file=out)
    elif command == "rip-constant":
        if verdict["no_valid_delta"]:
            print("no delta in (0,1) certifies RIP (delta_K >= 1)", file=out)
        else:
            print(f"delta_K bracket: [{deltas['lower']}, {deltas['upper']}]", file=out)
    elif command == "reduce":
        print(f"max entry P: {verdict['max_entry']}", file=out)
        print(f"scale C: 2^{verdict['scale_exponent']} = {verdict['scale']}", file=out)
        print(f"delta_sharp: {deltas['delta_sharp']}", file=out)
        coarse = deltas["delta_coarse"]
        print(f"delta_coarse: {coarse if coarse is not None else 'not defined (needs K <= M <= N)'}", file=out)
    elif command == "audit":
        suffix = " (full column rank)" if verdict["full_column_rank"] else ""
        print(f"spark: {verdict['spark']}{suffix}", file=out)
        print(f"is-rip at delta_sharp: {str(verdict['is_rip_sharp']).lower()}", file=out)
        coarse = verdict["is_rip_coarse"]
        print(
            "is-rip at delta_coarse: "
            + (str(coarse).lower() if coarse is not None else "not defined"),
            file=out,
        )
        det_n = len(verdict["det_audit"])
        lam_n = len(verdict["lambda_min_audit"])
        if det_n:
            det_ok = sum(1 for e in verdict["det_audit"] if e["pass"])
            lam_ok = sum(1 for e in verdict["lambda_min_audit"] if e["pass"])
            print(f"determinant audit: {det_ok}/{det_n} pass", file=out)
            print(f"lambda_min audit: {lam_ok}/{lam_n} pass", file=out)
        print(f"operator norm certified: {str(verdict['norm_certified']).lower()}", file=out)
        print(f"equivalence: {'holds' if verdict['equivalence_holds'] else 'VIOLATED'}", file=out)


def run_cli(argv, out: TextIO | None = None, err: TextIO | None = None, stdin: TextIO | None = None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    stdin = stdin if stdin is not None else sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        if exc.code is None:
            return 0
        return exc.code if isinstance(exc.code, int) else 2

    started = time.perf_counter()
    try:
        if args.command == "gen":
            return _run_gen(args, out)

        matrix, digest = _load_matrix(args.matrix, stdin)
        witnesses = None
        deltas = None
        if args.command == "spark":
            result = spark(matrix, threads=args.threads, budget=args.budget)
            verdict = _spark_verdict(result)
            witnesses = _witness_dict(result.witness)
            exit_code = 0 if not result.full_column_rank else 1
        elif args.command == "rip-check":
            delta = parse_rational(args.delta)
            decision = is_rip(matrix, args.k, delta, threads=args.threads, budget=args.budget)
            verdict = {"is_rip": decision.is_rip}
            witnesses = _violation_dict(decision)
            deltas = {"delta": qstr(delta)}
            exit_code = 0 if decision.is_rip else 1
        elif args.command == "rip-constant":
            tol = parse_rational(args.tol)
            bracket = rip_constant_bracket(
                matrix, args.k, tol, threads=args.threads, budget=args.budget
            )
            verdict = {"no_valid_delta": bracket.no_valid_delta}
            deltas = {"lower": qstr(bracket.lower), "upper": qstr(bracket.upper)}
            exit_code = 0
        elif args.command == "reduce":
            instance = build_reduction(matrix, args.k)
            verdict = _instance_verdict(instance)
            deltas = _instance_deltas(instance)
            exit_code = 0
        elif args.command == "audit":
            report = audit_theorem(matrix, args.k, threads=args.threads, budget=args.budget)
            verdict = _audit_verdict(report)
            witnesses = {
                "spark_witness": _witness_dict(report.spark_result.witness),
                "rip_sharp_violation": _violation_dict(report.rip_at_sharp),
                "rip_coarse_violation": _violation_dict(report.rip_at_coarse),
            }
            deltas = _instance_deltas(report.instance)
            exit_code = 0 if report.equivalence_holds else 1
        else:  # pragma: no cover - argparse enforces the choices
            raise InputError(f"unknown command {args.command!r}")
    except (InputError, DependentSubsetError, BudgetExceededError, ReductionError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=err)
        return 2

    report_doc = {
        "command": ["ripcert"] + list(argv),
        "input_sha256": digest,
        "verdict": verdict,
        "witnesses": witnesses,
        "deltas": deltas,
        "timing_ms": int(round((time.perf_counter() - started) * 1000)),
    }
    if args.format == "json":
        print(json.dumps(report_doc, indent=2), file=out)
    else:
        _render_text(args.command, verdict, witnesses, deltas, out)
    return exit_code


def _run_gen(args, out: TextIO) -> int:
    spec = GeneratorSpec(kind=args.kind, m=args.m, n=args.n, p_max=args.pmax, k=args.k, seed=args.seed)
    matrix = gen_random(spec) if args.kind == RANDOM else gen_planted(spec)
    text = serialize_matrix(matrix)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        out.write(text)
    return 0


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
