from fractions import Fraction

import pytest
import sympy

from lcfano import sylvester
from lcfano.errors import IndecisiveEnclosure
from lcfano.sylvester import approx_constant, u, verify_identities, verify_sandwich, volume_bound


def test_values():
    assert [u(n, 1) for n in range(1, 6)] == [1, 2, 6, 42, 1806]
    assert u(1, 2) == 2 and u(2, 2) == 6 and u(4, 2) == 1806
    assert u(3, 1) == 6


def test_rejects_bad_arguments():
    with pytest.raises(ValueError):
        u(0, 1)
    with pytest.raises(ValueError):
        u(1, 0)


def test_identities_examples():
    assert verify_identities(2, 1)
    assert Fraction(2, 3) + Fraction(2, 7) + Fraction(2, 42) == 1
    assert verify_identities(3, 2)
    assert verify_identities(5, 3)


def test_identities_sympy_oracle():
    q = sympy.Symbol("q", positive=True)
    seq = [q]
    for _ in range(4):
        seq.append(sympy.expand(seq[-1] * (seq[-1] + 1)))
    for p in range(2, 6):
        s = sum(q / (1 + x) for x in seq[: p - 1]) + q / seq[p - 1]
        assert sympy.simplify(s - 1) == 0
        prod = sympy.Mul(*[1 / (1 + x) for x in seq[: p - 1]])
        assert sympy.simplify(prod - q / seq[p - 1]) == 0
    for k, expr in enumerate(seq, start=1):
        for qv in (1, 2, 5):
            assert expr.subs(q, qv) == u(k, qv)


def test_all_identities_in_range():
    assert all(verify_identities(p, q) for p in range(1, 9) for q in range(1, 11))


def test_growth_bracket():
    for q in range(2, 11):
        for n in range(1, 7):
            e = 2 ** (n - 1)
            assert q ** e <= u(n, q) < (q + 1) ** e


def test_volume_bound_examples():
    assert volume_bound(3, 1) == 72
    assert volume_bound(2, 2) == 9
    assert volume_bound(3, 2) == Fraction(441, 2)
    assert volume_bound(2, 1) == 8
    assert sylvester.dual_volume_bound(2, 1) == 9
    for d in range(2, 7):
        for q in range(1, 5):
            assert volume_bound(d, q) * q ** (d + 1) == 2 * u(d, q) ** 2


def _k_oracle(q, n=8, digits=80):
    """K lies between u_n^(1/2^n) and (u_n + 1)^(1/2^n); evaluated by sympy."""
    un = u(n, q)
    lo = sympy.Integer(un) ** sympy.Rational(1, 2 ** n)
    hi = sympy.Integer(un + 1) ** sympy.Rational(1, 2 ** n)
    return lo.evalf(digits), hi.evalf(digits)


def test_approx_constant_q2():
    k = approx_constant(2, Fraction(1, 10 ** 6))
    assert k.width <= Fraction(1, 10 ** 6)
    assert k.bracket_holds()
    assert Fraction(159791021, 10 ** 8) <= k.lower <= k.upper <= Fraction(159791023, 10 ** 8)
    assert 2 < k.lower ** 2 and k.upper ** 2 < 3


@pytest.mark.parametrize("q", [2, 3, 5, 10])
def test_approx_constant_agrees_with_root_oracle(q):
    k = approx_constant(q, Fraction(1, 10 ** 20))
    lo, hi = _k_oracle(q)
    assert hi - lo < sympy.Rational(1, 10 ** 40)
    lower = sympy.Rational(k.lower.numerator, k.lower.denominator)
    upper = sympy.Rational(k.upper.numerator, k.upper.denominator)
    # both enclose K, so they must overlap
    assert lower <= hi and lo <= upper


def test_sandwich_examples():
    assert verify_sandwich(2, 3)
    assert verify_sandwich(3, 4)
    assert verify_sandwich(2, 6)
    assert all(verify_sandwich(q, 6) for q in range(2, 11))


def test_sandwich_bad_input():
    with pytest.raises(ValueError):
        verify_sandwich(1, 3)
    with pytest.raises(ValueError):
        approx_constant(2, 0)


def test_indecisive_is_typed():
    assert issubclass(IndecisiveEnclosure, Exception)


def test_memo_thread_safety():
    from concurrent.futures import ThreadPoolExecutor
    with ThreadPoolExecutor(8) as ex:
        vals = list(ex.map(lambda q: u(7, q), [7] * 32))
    assert len(set(vals)) == 1
