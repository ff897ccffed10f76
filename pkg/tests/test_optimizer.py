from fractions import Fraction

import pytest
import sympy

from lcfano.barycentric import in_X
from lcfano.errors import GridTooCoarse, IndexOutOfRange
from lcfano.optimizer import (chain_inequalities, closed_form_minimum, grid_oracle,
                              minimize_candidates, verify_strict_chains, y_candidate)
from lcfano.sylvester import u


def sympy_candidate(d, q, l):
    """y[q](l) rebuilt from the recurrence with sympy rationals."""
    us = [sympy.Integer(q)]
    while len(us) < l:
        us.append(us[-1] * (us[-1] + 1))
    head = [sympy.Rational(q) / (1 + x) for x in us[: l - 1]]
    rest = d + 2 - l
    return head + [sympy.Rational(q) / (rest * us[l - 1])] * rest


def test_candidate_examples():
    c = y_candidate(3, 2, 1)
    assert c.x == (Fraction(1, 4),) * 4 and c.f_d_value == Fraction(1, 64) and c.f_d1_value == Fraction(1, 256)
    c = y_candidate(3, 2, 3)
    assert c.x == (Fraction(2, 3), Fraction(2, 7), Fraction(1, 42), Fraction(1, 42))
    assert c.f_d_value == Fraction(2, 441) == Fraction(16, 3528)
    assert y_candidate(3, 2, 4).f_d1_value == Fraction(8, 815409) == Fraction(32, 1806 ** 2)
    with pytest.raises(IndexOutOfRange):
        y_candidate(3, 2, 5)
    with pytest.raises(IndexOutOfRange):
        y_candidate(3, 2, 0)


@pytest.mark.parametrize("d", range(2, 7))
@pytest.mark.parametrize("q", range(1, 5))
def test_candidates_match_oracle_and_lie_in_X(d, q):
    for l in range(1, d + 2):
        c = y_candidate(d, q, l)
        ref = sympy_candidate(d, q, l)
        assert [sympy.Rational(x.numerator, x.denominator) for x in c.x] == ref
        assert in_X(c.x, d, q)
        assert c.f_d1_value == sympy.Mul(*ref)


@pytest.mark.parametrize("d", range(2, 9))
@pytest.mark.parametrize("q", range(1, 7))
def test_minima_closed_forms(d, q):
    r1 = minimize_candidates(d, q, "d1")
    assert r1.optimal_value == Fraction(q ** (d + 2), u(d + 1, q) ** 2)
    assert r1.optimal_l == d + 1 and r1.matches_closed_form
    r = minimize_candidates(d, q, "d")
    if (d, q) == (2, 1):
        assert r.optimal_value == Fraction(1, 9) and r.exception_flag and r.optimal_l == 1
    else:
        assert r.optimal_value == Fraction(q ** (d + 1), 2 * u(d, q) ** 2)
        assert r.optimal_l == d and not r.exception_flag
    assert r.matches_closed_form


def test_equality_case_note():
    r = minimize_candidates(3, 1, "d")
    assert r.optimal_value == Fraction(1, 72) and r.optimal_l == 3
    assert any("two equality tuples" in n for n in r.notes)
    assert any("[2, 3]" in n for n in r.notes)
    assert minimize_candidates(3, 2, "d1").optimal_value == Fraction(8, 815409)


def test_target_aliases():
    assert minimize_candidates(3, 2, "f_d").target == "f_d"
    with pytest.raises(ValueError):
        minimize_candidates(3, 2, "x")


def test_strict_chains():
    assert verify_strict_chains(3, 2)
    assert verify_strict_chains(8, 5)
    assert verify_strict_chains(3, 1)
    assert all(verify_strict_chains(d, q) for d in range(2, 9) for q in range(1, 7))
    assert all(chain_inequalities(5, 3).values())


@pytest.mark.parametrize("d,q,step,value", [
    (2, 1, Fraction(1, 1000), Fraction(1, 9)),
    (2, 2, Fraction(1, 1000), Fraction(1, 9)),
    (3, 2, Fraction(1, 200), Fraction(2, 441)),
])
def test_grid_oracle_examples(d, q, step, value):
    res = grid_oracle(d, q, "d", step)
    assert res.value >= value
    assert res.value <= value * Fraction(105, 100)
    assert in_X(res.argmin, d, q)


def test_grid_oracle_near_expected_points():
    res = grid_oracle(2, 1, "d", Fraction(1, 1000))
    assert all(abs(x - Fraction(1, 3)) < Fraction(1, 100) for x in res.argmin)
    # at (2, 2) y(1) and y(2) tie, so the grid may land near either
    res = grid_oracle(2, 2, "d", Fraction(1, 1000))
    near = [y_candidate(2, 2, l).x for l in (1, 2)]
    assert any(all(abs(a - b) < Fraction(1, 50) for a, b in zip(res.argmin, y)) for y in near)
    assert minimize_candidates(2, 2, "d").notes


def test_grid_oracle_never_undercuts():
    for d in (2, 3):
        for q in (1, 2, 3):
            for target in ("d", "d1"):
                step = Fraction(1, 120)
                assert grid_oracle(d, q, target, step).value >= closed_form_minimum(d, q, target)


def test_grid_oracle_errors():
    with pytest.raises(GridTooCoarse):
        grid_oracle(3, 1, "d", Fraction(1, 3))
    with pytest.raises(GridTooCoarse):
        grid_oracle(2, 1, "d", Fraction(2, 7))
    with pytest.raises(ValueError):
        grid_oracle(4, 1, "d", Fraction(1, 10))
