"""The twelve acceptance criteria at their full ranges, one report line each."""

import pytest

from lcfano import verify


def check(capsys, result):
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.counterexample


def test_criterion_01_sequence_values(capsys):
    check(capsys, verify.sequence_values())


def test_criterion_02_identities(capsys):
    check(capsys, verify.identities(p_max=8, q_max=10))


def test_criterion_03_d3_q1_extremal(capsys):
    check(capsys, verify.d3_q1())


def test_criterion_04_dual_volume_equality(capsys):
    check(capsys, verify.equality_cases(ds=(3, 4, 5, 6), qs=(2, 3, 4)))


def test_criterion_05_volume_equality_witness(capsys):
    check(capsys, verify.thm13_witness(d_max=8, q_max=5))


@pytest.mark.slow
def test_criterion_06_ps_necessity(capsys):
    check(capsys, verify.ps_necessity(box2=4, samples3=10_000, box3=5, qs=(1, 2, 3)))


def test_criterion_07_exact_minima(capsys):
    check(capsys, verify.exact_minima(d_max=8, q_max=6))


def test_criterion_08_normal_form_map(capsys):
    check(capsys, verify.prop44(ds=range(3, 9), qs=range(2, 6)))


def test_criterion_09_product_identity(capsys):
    check(capsys, verify.product_identity(random_count=100))


def test_criterion_10_sandwich(capsys):
    check(capsys, verify.sandwich(qs=range(2, 11)))


def test_criterion_11_shape_sweep(capsys):
    check(capsys, verify.shape_sweep(d_max=10, q_max=6))


def test_criterion_12_two_simplex_bound(capsys):
    check(capsys, verify.two_simplex(per_q=6, qs=(1, 2)))
