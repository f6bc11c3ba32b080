"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the summary lines.
"""

import io
import json
import time
from fractions import Fraction
from functools import lru_cache

from oracles import float_delta_k, psd_oracle_trials, to_numpy
from ripcert import (
    PLANTED,
    RANDOM,
    GeneratorSpec,
    Matrix,
    SplitMix64,
    audit_theorem,
    build_reduction,
    certify_operator_norm,
    decide_psd,
    det_bareiss,
    gen_planted,
    gen_random,
    gram,
    is_rip,
    rank_exact,
    rip_constant_bracket,
    spark,
    verify_witness,
)
from ripcert.cli import run_cli
from ripcert.subsets import iter_subsets

MASTER_SEED = 20260808
PLANTED_SEED = 31337
BRACKET_SEED = 777
STRESS_SEED = 99991


def report(criterion: str, ok: bool, detail: str = "") -> None:
    line = f"[acceptance] {criterion}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


@lru_cache(maxsize=1)
def suite1_matrices() -> tuple[Matrix, ...]:
    """500 random integer matrices, M in [2,5], N in [M,8], entries in [-3,3]."""
    driver = SplitMix64(MASTER_SEED)
    out = []
    while len(out) < 500:
        m = 2 + driver.below(4)
        n = m + driver.below(8 - m + 1)
        mat = gen_random(GeneratorSpec(RANDOM, m, n, 3, None, driver.next_u64()))
        if not mat.is_zero():
            out.append(mat)
    return tuple(out)


@lru_cache(maxsize=1)
def suite2_audits():
    """200 planted-dependence audits with k in [2,4]."""
    driver = SplitMix64(PLANTED_SEED)
    out = []
    while len(out) < 200:
        k = 2 + driver.below(3)
        m = 2 + driver.below(3)
        n = max(m, k) + driver.below(3)
        p = 1 + driver.below(3)
        mat = gen_planted(GeneratorSpec(PLANTED, m, n, p, k, driver.next_u64()))
        if mat.is_zero():
            continue
        out.append((mat, k, audit_theorem(mat, k)))
    return tuple(out)


def test_criterion_1_theorem_equivalence_suite():
    started = time.perf_counter()
    failures = 0
    cases = 0
    for mat in suite1_matrices():
        result = spark(mat)
        for k in range(1, mat.rows + 1):
            inst = build_reduction(mat, k)
            above = result.spark is None or result.spark > k
            sharp = is_rip(inst.scaled, k, inst.delta_sharp).is_rip
            coarse = is_rip(inst.scaled, k, inst.delta_coarse).is_rip
            cases += 1
            if not (above == sharp == coarse):
                failures += 1
    elapsed = time.perf_counter() - started
    report(
        "1 theorem equivalence",
        failures == 0 and elapsed < 120.0,
        f"{cases - failures}/{cases} cases, {elapsed:.1f}s",
    )


def test_criterion_2_planted_suite():
    failures = 0
    for mat, k, audit in suite2_audits():
        result = audit.spark_result
        ok = (
            result.spark is not None
            and result.spark <= k
            and not audit.rip_at_sharp.is_rip
            and audit.equivalence_holds
            and verify_witness(mat, result.witness)
        )
        if ok:
            image = audit.instance.scaled.columns(result.witness.indices).mul_vector(
                result.witness.null_vector
            )
            ok = all(v == 0 for v in image)
        if not ok:
            failures += 1
    report("2 planted suite", failures == 0, f"{200 - failures}/200 audits")


def test_criterion_3_bound_chain_audit():
    failures = 0
    checked = 0
    for mat in suite1_matrices():
        m = mat.rows
        p = int(mat.max_abs_entry())
        entry_bound = m * p * p
        for k in range(1, m + 1):
            inst = build_reduction(mat, k)
            floor = 1 - inst.delta_sharp
            for subset in iter_subsets(mat.cols, k):
                if rank_exact(mat.columns(subset)) < k:
                    continue
                checked += 1
                g = gram(mat, subset)
                ok = (
                    det_bareiss(g.to_matrix()) >= 1
                    and g.max_abs_entry() <= entry_bound
                    and decide_psd(gram(inst.scaled, subset).shifted(-floor))
                )
                if not ok:
                    failures += 1
    report("3 bound chain", failures == 0, f"{checked} independent subsets")


def test_criterion_4_norm_certificate():
    failures = 0
    total = 0
    for mat in suite1_matrices():
        # the scaled matrix does not depend on k, one certificate per matrix
        total += 1
        if not certify_operator_norm(build_reduction(mat, 1).scaled).norm_le_one:
            failures += 1
    for _, _, audit in suite2_audits():
        total += 1
        if not audit.norm_certified:
            failures += 1
    report("4 norm certificate", failures == 0, f"{total - failures}/{total} instances")


def test_criterion_5_worked_golden():
    psi = Matrix.from_rows([[1, 0, 1], [0, 1, 1]])
    inst = build_reduction(psi, 2)
    ok = (
        inst.max_entry == 1
        and inst.scale == 4
        and inst.delta_sharp == Fraction(63, 64)
        and inst.delta_coarse == 1 - Fraction(1, 2**30)
    )
    audit2 = audit_theorem(psi, 2)
    ok = ok and audit2.rip_at_sharp.is_rip and audit2.equivalence_holds
    audit3 = audit_theorem(psi, 3)
    ok = (
        ok
        and not audit3.rip_at_sharp.is_rip
        and audit3.equivalence_holds
        and audit3.spark_result.witness.indices == (0, 1, 2)
        and audit3.spark_result.witness.null_vector == (1, 1, -1)
    )
    report("5 worked golden", ok)


def test_criterion_6_exact_vs_float_brackets():
    driver = SplitMix64(BRACKET_SEED)
    failures = 0
    cases = 0
    for _ in range(100):
        mat = gen_random(GeneratorSpec(RANDOM, 4, 6, 3, None, driver.next_u64()))
        if mat.is_zero():
            raise AssertionError("seed produced a zero matrix; pick another seed")
        inst = build_reduction(mat, 2)
        scaled = inst.scaled
        array = to_numpy(scaled)
        for k in (2, 3):
            cases += 1
            bracket = rip_constant_bracket(scaled, k, Fraction(1, 10**9))
            observed = float_delta_k(array, k)
            if bracket.no_valid_delta:
                # a singular subset makes delta_K exactly 1; both sides must agree
                if observed < 1.0 - 1e-6:
                    failures += 1
            elif abs(float(bracket.lower) - observed) > 1e-6:
                failures += 1
    report("6 exact vs float delta_K", failures == 0, f"{cases - failures}/{cases} brackets")


def test_criterion_7_psd_oracle_equivalence():
    mismatches = psd_oracle_trials(1000, seed=4242)
    report("7 PSD oracle equivalence", mismatches == 0, f"{1000 - mismatches}/1000 agree")


def test_criterion_8_big_number_stress():
    started = time.perf_counter()
    mat = gen_random(GeneratorSpec(RANDOM, 3, 6, 10**6, None, STRESS_SEED))
    rows = [list(row) for row in mat.data]
    rows[0][0] = 10**6  # pin the largest entry to exactly P = 10^6
    mat = Matrix.from_rows(rows)
    inst = build_reduction(mat, 3)
    audit = audit_theorem(mat, 3)
    elapsed = time.perf_counter() - started

    k, m, p = 3, 3, inst.max_entry
    predicted = 2 * inst.scale_exponent + (k - 1) * ((k * m * p * p - 1).bit_length())
    den_bits = inst.delta_sharp.denominator.bit_length()
    ok = (
        p == 10**6
        and elapsed < 10.0
        and abs(den_bits - predicted) <= 2
        and audit.equivalence_holds
    )
    report(
        "8 big-number stress",
        ok,
        f"{elapsed:.2f}s, denominator bits {den_bits} vs predicted {predicted}",
    )


def _cli_capture(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli(argv, out=out, err=err, stdin=io.StringIO(""))
    return code, out.getvalue(), err.getvalue()


def _canonical_report(text: str, drop_command: bool) -> str:
    doc = json.loads(text)
    doc.pop("timing_ms")  # wall-clock time is the one nondeterministic field
    if drop_command:
        doc.pop("command")
    return json.dumps(doc, sort_keys=True)


def test_criterion_9_determinism(tmp_path):
    gen_args = ["gen", "--kind", "random", "--m", "3", "--n", "6", "--pmax", "3", "--seed", "11"]
    first = _cli_capture(gen_args)
    second = _cli_capture(gen_args)
    ok = first == second

    matrix_path = tmp_path / "det.txt"
    matrix_path.write_text(first[1])
    planted = _cli_capture(
        ["gen", "--kind", "planted", "--m", "3", "--n", "6", "--pmax", "2", "--k", "3", "--seed", "12"]
    )
    ok = ok and planted == _cli_capture(
        ["gen", "--kind", "planted", "--m", "3", "--n", "6", "--pmax", "2", "--k", "3", "--seed", "12"]
    )

    commands = [
        ["spark", str(matrix_path), "--format", "json"],
        ["rip-check", str(matrix_path), "--k", "2", "--delta", "1/2", "--format", "json"],
        ["audit", str(matrix_path), "--k", "2", "--format", "json"],
        ["rip-constant", str(matrix_path), "--k", "2", "--tol", "1/4096", "--format", "json"],
    ]
    for argv in commands:
        code_a, out_a, _ = _cli_capture(argv)
        code_b, out_b, _ = _cli_capture(argv)
        ok = ok and code_a == code_b
        ok = ok and _canonical_report(out_a, False) == _canonical_report(out_b, False)

        one = _cli_capture(argv + ["--threads", "1"])
        eight = _cli_capture(argv + ["--threads", "8"])
        ok = ok and one[0] == eight[0]
        ok = ok and _canonical_report(one[1], True) == _canonical_report(eight[1], True)
    report("9 determinism", ok)
