"""The generalized Sylvester sequence u(n, q) and the constant K.

``u(1, q) = q`` and ``u(k+1, q) = u(k, q) * (u(k, q) + 1)``. For ``q = 1`` the
shifted values ``1 + u(n, 1)`` are Sylvester's sequence 2, 3, 7, 43, 1807, ...

K is the unique real with ``u(n, q) < K**(2**n) < u(n, q) + 1`` for all n.
It is irrational, so every statement about it goes through rigorous interval
enclosures (``mpmath.iv``, outward rounding) whose endpoints are converted to
exact rationals before any comparison.
"""

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from mpmath import iv, libmp

from .errors import IndecisiveEnclosure

_memo = {}
_memo_lock = threading.Lock()

MAX_SERIES_TERMS = 40


def u(n, q):
    """Return u(n, q) exactly (memoized per q)."""
    if n < 1 or q < 1:
        raise ValueError(f"u(n, q) needs n >= 1 and q >= 1, got n={n}, q={q}")
    with _memo_lock:
        seq = _memo.setdefault(q, [q])
        while len(seq) < n:
            last = seq[-1]
            seq.append(last * (last + 1))
        return seq[n - 1]


def u_values(n, q):
    """Return [u(1, q), ..., u(n, q)]."""
    u(n, q)
    with _memo_lock:
        return list(_memo[q][:n])


def verify_identities(p, q):
    """Check the sum and product identities of the sequence exactly.

    sum_{i<p} q/(1+u_i) + q/u_p == 1  and  prod_{i<p} 1/(1+u_i) == q/u_p.
    """
    if p < 1:
        raise ValueError("p must be at least 1")
    us = u_values(p, q)
    total = sum(Fraction(q, 1 + x) for x in us[:-1]) + Fraction(q, us[-1])
    prod = Fraction(1)
    for x in us[:-1]:
        prod /= 1 + x
    return total == 1 and prod == Fraction(q, us[-1])


def volume_bound(d, q):
    """2 u(d, q)^2 / q^(d+1), exactly.

    No special case for d = 2, q = 1 (where the true surface bound is 9);
    callers that need it apply it themselves. d = 1 gives 2, the dual
    length of [-1, 1].
    """
    if d < 1 or q < 1:
        raise ValueError(f"volume_bound needs d >= 1 and q >= 1, got d={d}, q={q}")
    return Fraction(2 * u(d, q) ** 2, q ** (d + 1))


def dual_volume_bound(d, q):
    """Largest dual normalized volume of a d-dim 1/q-lc Fano simplex."""
    if d == 2 and q == 1:
        return Fraction(9)
    return volume_bound(d, q)


@dataclass(frozen=True)
class ApproxConstant:
    q: int
    lower: Fraction
    upper: Fraction
    terms_used: int

    @property
    def width(self):
        return self.upper - self.lower

    def bracket_holds(self):
        """sqrt(q) < lower and upper < q, checked by exact squaring."""
        return self.lower > 0 and self.lower ** 2 > self.q and self.upper < self.q


def _to_fraction(raw):
    p, r = libmp.to_rational(raw)
    return Fraction(int(p), int(r))


def _endpoints(x):
    a, b = x._mpi_
    return _to_fraction(a), _to_fraction(b)


def _log_k_enclosure(q, target_width, prec):
    """Interval containing log K of width about target_width, and terms used.

    log K = sum_{i>=0} 2^(-1-i) c_i with c_0 = log q, c_i = log(1 + 1/u_i).
    After N terms the remainder is 2^(-N) r_N with 0 < r_N < c_N <= 1/u_N.
    """
    n_terms = 1
    while n_terms < MAX_SERIES_TERMS:
        if Fraction(1, 2 ** n_terms * u(n_terms, q)) < target_width / 4:
            break
        n_terms += 1
    old = iv.prec
    iv.prec = prec
    try:
        total = iv.log(iv.mpf(q)) / 2
        for i in range(1, n_terms):
            c_i = iv.log(1 + 1 / iv.mpf(u(i, q)))
            total += c_i / 2 ** (i + 1)
        lo, hi = _endpoints(total)
        tail = Fraction(1, 2 ** n_terms * u(n_terms, q))
        return lo, hi + tail, n_terms
    finally:
        iv.prec = old


def _exp_enclosure(lo, hi, prec):
    old = iv.prec
    iv.prec = prec
    try:
        lo_iv = iv.exp(iv.mpf(lo.numerator) / lo.denominator)
        hi_iv = iv.exp(iv.mpf(hi.numerator) / hi.denominator)
        return _endpoints(lo_iv)[0], _endpoints(hi_iv)[1]
    finally:
        iv.prec = old


def approx_constant(q, tolerance):
    """Rigorous rational enclosure [lower, upper] of K with width <= tolerance."""
    if q < 2:
        raise ValueError("approx_constant needs q >= 2")
    tolerance = Fraction(tolerance)
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    bits = max(64, math.ceil(math.log2(q / tolerance)) + 32)
    for _ in range(8):
        lo, hi, n_terms = _log_k_enclosure(q, tolerance / (8 * q), bits)
        k_lo, k_hi = _exp_enclosure(lo, hi, bits)
        if k_hi - k_lo <= tolerance:
            return ApproxConstant(q, k_lo, k_hi, n_terms)
        bits *= 2
    raise IndecisiveEnclosure(f"could not reach width {tolerance} for q={q}")


def verify_sandwich(q, n_max):
    """Certify u(n, q) < K**(2**n) < u(n, q) + 1 for 1 <= n <= n_max.

    Returns False only on a certified violation; raises IndecisiveEnclosure
    if some enclosure straddles a bound.
    """
    if q < 2 or n_max < 1:
        raise ValueError("verify_sandwich needs q >= 2 and n_max >= 1")
    bits = 2 ** n_max * (math.ceil(math.log2(q)) + 2) + 64
    target = Fraction(1, 2 ** (bits - 16))
    lo, hi, _ = _log_k_enclosure(q, target, bits)
    for n in range(1, n_max + 1):
        power = 2 ** n
        p_lo, p_hi = _exp_enclosure(lo * power, hi * power, bits)
        un = u(n, q)
        if p_lo > un and p_hi < un + 1:
            continue
        if p_hi <= un or p_lo >= un + 1:
            return False
        raise IndecisiveEnclosure(
            f"K^(2^{n}) enclosure [{float(p_lo)}, {float(p_hi)}] undecided against u={un}")
    return True
