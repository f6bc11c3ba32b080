import random
from fractions import Fraction

import pytest

from ripcert import (
    DependentSubsetError,
    InputError,
    Matrix,
    audit_theorem,
    build_reduction,
    det_chain_audit,
    lambda_min_audit,
    verify_witness,
)

PSI = Matrix.from_rows([[1, 0, 1], [0, 1, 1]])


def random_int_matrix(rng, m, n, bound=3):
    rows = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)]
    if all(v == 0 for row in rows for v in row):
        rows[0][0] = 1
    return Matrix.from_rows(rows)


def test_build_worked_example():
    inst = build_reduction(PSI, 2)
    assert inst.max_entry == 1
    assert inst.scale_exponent == 2 and inst.scale == 4
    assert inst.scaled == PSI.scaled(Fraction(1, 4))
    assert inst.delta_sharp == Fraction(63, 64)
    assert inst.max_entry_bits == 1
    assert inst.delta_coarse == 1 - Fraction(1, 2**30)


def test_build_identity_example():
    inst = build_reduction(Matrix.identity(2), 1)
    assert inst.scale == 2
    assert inst.delta_sharp == Fraction(3, 4)
    assert inst.delta_coarse == 1 - Fraction(1, 2**20)


def test_build_input_contract():
    with pytest.raises(InputError):
        build_reduction(Matrix.from_rows([[0, 0], [0, 0]]), 1)
    with pytest.raises(InputError):
        build_reduction(PSI, 0)
    with pytest.raises(InputError):
        build_reduction(PSI, 4)
    with pytest.raises(InputError):
        build_reduction(PSI.scaled(Fraction(1, 2)), 1)
    # 1x1 unit matrix: the sharp delta would leave the open interval (0, 1)
    with pytest.raises(InputError):
        build_reduction(Matrix.from_rows([[1]]), 1)


def test_coarse_delta_needs_k_le_m_le_n():
    inst = build_reduction(PSI, 3)  # k = 3 > m = 2
    assert inst.delta_coarse is None
    assert inst.delta_sharp == Fraction(575, 576)

    tall = Matrix.from_rows([[1], [2], [3]])  # m = 3 > n = 1
    assert build_reduction(tall, 1).delta_coarse is None


def test_scale_is_minimal_power_of_two():
    rng = random.Random(220)
    for _ in range(60):
        mat = random_int_matrix(rng, rng.randint(1, 4), rng.randint(1, 5), bound=9)
        if mat.rows == 1 and mat.cols == 1 and mat.max_abs_entry() == 1:
            continue  # the 1x1 unit matrix is rejected by design
        inst = build_reduction(mat, 1)
        m, n, p = mat.rows, mat.cols, inst.max_entry
        assert inst.scale == 2**inst.scale_exponent
        assert inst.scale**2 >= m * n * p * p
        if inst.scale_exponent > 0:
            assert (inst.scale // 2) ** 2 < m * n * p * p


def test_delta_ordering_holds_when_defined():
    rng = random.Random(221)
    for _ in range(80):
        m = rng.randint(2, 5)
        n = rng.randint(m, 7)
        mat = random_int_matrix(rng, m, n, bound=rng.randint(1, 9))
        for k in range(1, m + 1):
            inst = build_reduction(mat, k)
            assert inst.delta_coarse is not None
            assert 0 < inst.delta_sharp <= inst.delta_coarse < 1


def test_instance_sizes_stay_polynomial():
    rng = random.Random(222)
    for _ in range(40):
        m = rng.randint(2, 4)
        n = rng.randint(m, 6)
        mat = random_int_matrix(rng, m, n, bound=rng.randint(1, 50))
        for k in (1, 2):
            inst = build_reduction(mat, k)
            p = inst.max_entry
            predicted = 2 * inst.scale_exponent + (k - 1) * ((k * m * p * p - 1).bit_length())
            assert abs(inst.delta_sharp.denominator.bit_length() - predicted) <= 2
            assert inst.delta_coarse.denominator.bit_length() == 5 * m * n * inst.max_entry_bits + 1
            for row in inst.scaled.data:
                for v in row:
                    assert Fraction(v).denominator.bit_length() <= inst.scale_exponent + 1


def test_det_chain_audit_examples():
    entries = det_chain_audit(PSI, 2)
    assert [(e.subset, e.det) for e in entries] == [((0, 1), 1), ((0, 2), 1), ((1, 2), 1)]
    assert all(e.passed and e.entry_bound_ok for e in entries)

    entries = det_chain_audit(Matrix.identity(3), 2)
    assert all(e.det == 1 and e.passed for e in entries)

    entries = det_chain_audit(Matrix.from_rows([[1, 2], [2, 1]]), 2)
    assert entries[0].det == 9 and entries[0].passed


def test_det_chain_audit_rejects_dependent_subsets():
    with pytest.raises(DependentSubsetError) as info:
        det_chain_audit(PSI, 3)
    assert info.value.subset == (0, 1, 2)


def test_lambda_min_audit_examples():
    inst = build_reduction(PSI, 2)
    entries = lambda_min_audit(inst)
    assert [e.subset for e in entries] == [(0, 1), (0, 2), (1, 2)]
    assert all(e.passed for e in entries)

    # boundary case: singleton Gram eigenvalue equals 1 - delta_sharp exactly
    inst = build_reduction(Matrix.identity(2), 1)
    assert all(e.passed for e in lambda_min_audit(inst))

    with pytest.raises(DependentSubsetError):
        lambda_min_audit(build_reduction(PSI, 3))


def test_audit_worked_examples():
    report = audit_theorem(PSI, 2)
    assert report.spark_result.spark == 3
    assert report.rip_at_sharp.is_rip and report.rip_at_coarse.is_rip
    assert report.equivalence_holds
    assert report.norm_certified and report.norm_certificate.cheap_bound_holds
    assert len(report.det_audit) == 3 and len(report.lambda_min_audit) == 3

    report = audit_theorem(PSI, 3)
    assert report.spark_result.spark == 3
    assert not report.rip_at_sharp.is_rip
    assert report.rip_at_coarse is None
    assert report.equivalence_holds
    assert report.spark_result.witness.null_vector == (1, 1, -1)
    assert report.det_audit == () and report.lambda_min_audit == ()

    report = audit_theorem(Matrix.identity(2), 1)
    assert report.spark_result.full_column_rank
    assert report.rip_at_sharp.is_rip and report.equivalence_holds


def test_audit_zero_norm_witness_is_exact():
    rng = random.Random(223)
    seen = 0
    for _ in range(40):
        m, n = rng.randint(2, 3), rng.randint(3, 6)
        mat = random_int_matrix(rng, m, n, bound=2)
        k = rng.randint(1, n)
        report = audit_theorem(mat, k)
        result = report.spark_result
        if result.spark is None or result.spark > k:
            continue
        seen += 1
        witness = result.witness
        assert verify_witness(mat, witness)
        image = report.instance.scaled.columns(witness.indices).mul_vector(witness.null_vector)
        assert all(v == 0 for v in image)
        assert not report.rip_at_sharp.is_rip
    assert seen >= 5


def test_norm_certified_on_random_instances():
    rng = random.Random(224)
    for _ in range(40):
        mat = random_int_matrix(rng, rng.randint(1, 4), rng.randint(1, 6), bound=5)
        inst = build_reduction(mat, 1)
        assert audit_theorem(mat, 1).norm_certified
        assert inst.scale**2 >= mat.rows * mat.cols * inst.max_entry**2
