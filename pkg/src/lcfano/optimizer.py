"""Exact minimization of barycentric products over X(d, q).

The minima of f_{d+1}(x) = x_1 ... x_{d+1} and f_d(x) = x_1 ... x_d over
X(d, q) are attained on the finite candidate family y[q](l), l = 1..d+1:
the first l-1 entries are q/(1+u_i), the remaining d+2-l entries share
the leftover mass q/u_l equally. ``grid_oracle`` is an independent
brute-force check of that reduction on a rational grid.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

from .barycentric import in_X
from .errors import GridTooCoarse, IndexOutOfRange
from .sylvester import u, u_values

TARGETS = ("f_d", "f_d1")

# f_d at (d, q) = (3, 1) has two minimizing tuples
SECOND_EQUALITY_CASES = {
    (3, 1): ((Fraction(1, 2), Fraction(1, 6), Fraction(1, 6), Fraction(1, 6)),
             (Fraction(1, 2), Fraction(1, 3), Fraction(1, 12), Fraction(1, 12))),
}


def _normalize_target(target):
    aliases = {"d": "f_d", "f_d": "f_d", "d1": "f_d1", "f_d1": "f_d1", "f_{d+1}": "f_d1"}
    try:
        return aliases[target]
    except KeyError:
        raise ValueError(f"unknown target {target!r}; expected 'd' or 'd1'") from None


@dataclass(frozen=True)
class CandidateTuple:
    d: int
    q: int
    l: int
    x: tuple
    f_d_value: Fraction
    f_d1_value: Fraction

    def value(self, target):
        return self.f_d_value if _normalize_target(target) == "f_d" else self.f_d1_value


def y_candidate(d, q, l):
    if not 1 <= l <= d + 1:
        raise IndexOutOfRange(f"l must lie in 1..{d + 1}, got {l}")
    us = u_values(l, q)
    head = [Fraction(q, 1 + x) for x in us[:-1]]
    rest = d + 2 - l
    x = tuple(head + [Fraction(q, rest * us[-1])] * rest)
    return CandidateTuple(d, q, l, x, prod(x[:d]), prod(x))


def closed_form_minimum(d, q, target):
    target = _normalize_target(target)
    if target == "f_d1":
        return Fraction(q ** (d + 2), u(d + 1, q) ** 2)
    if (d, q) == (2, 1):
        return Fraction(1, 9)
    return Fraction(q ** (d + 1), 2 * u(d, q) ** 2)


@dataclass
class MinimizationResult:
    target: str
    d: int
    q: int
    optimal_l: int
    optimal_value: Fraction
    table: list
    exception_flag: bool = False
    matches_closed_form: bool = True
    notes: list = field(default_factory=list)
    oracle: dict = None


def minimize_candidates(d, q, target):
    """Exact minimum of f_d or f_{d+1} over the candidate family.

    Ties are resolved toward the index of the known closed form; any other
    tied index is listed in ``notes``.
    """
    target = _normalize_target(target)
    if d < 2 or q < 1:
        raise ValueError("need d >= 2 and q >= 1")
    last = d + 1 if target == "f_d1" else d
    table = [y_candidate(d, q, l) for l in range(1, last + 1)]
    values = [c.value(target) for c in table]
    best = min(values)
    exception = target == "f_d" and (d, q) == (2, 1)
    preferred = 1 if exception else last
    tied = [c.l for c, v in zip(table, values) if v == best]
    optimal_l = preferred if preferred in tied else tied[0]
    notes = []
    if len(tied) > 1:
        notes.append(f"minimum attained at l = {tied}")
    if target == "f_d" and (d, q) in SECOND_EQUALITY_CASES:
        cases = SECOND_EQUALITY_CASES[(d, q)]
        notes.append("two equality tuples: " + "; ".join(
            "(" + ", ".join(str(v) for v in case) + ")" for case in cases))
    if exception:
        notes.append("d = 2, q = 1: minimum is f_2(y(1)) = 1/9, not the generic closed form")
    return MinimizationResult(
        target=target, d=d, q=q, optimal_l=optimal_l, optimal_value=best, table=table,
        exception_flag=exception,
        matches_closed_form=best == closed_form_minimum(d, q, target) and optimal_l == preferred,
        notes=notes,
    )


def chain_inequalities(d, q):
    """Integer inequalities behind the strict ordering of candidate values.

    Returns dict name -> bool for: consecutive f_{d+1} steps (2 <= l <= d),
    consecutive f_d steps (2 <= l <= d-1), and (d+1)^d q^(d+1) < 2 u_d^2.
    """
    out = {}
    for l in range(2, d + 1):
        ul = u(l, q)
        out[f"f_d1 step l={l}"] = (d + 2 - l) ** (d + 2 - l) * ul < (d + 1 - l) ** (d + 1 - l) * (1 + ul) ** (d + 2 - l)
    for l in range(2, d):
        ul = u(l, q)
        out[f"f_d step l={l}"] = (d + 2 - l) ** (d + 1 - l) * ul < (d + 1 - l) ** (d - l) * (1 + ul) ** (d + 1 - l)
    out["uniform vs extremal"] = (d + 1) ** d * q ** (d + 1) < 2 * u(d, q) ** 2
    return out


def verify_strict_chains(d, q):
    """Candidate values are strictly above the claimed minimizer for every other l.

    For q >= 2 the step inequalities are checked as well. The f_d comparison
    is skipped where candidates tie: (3, 1), (2, 2), and (2, 1) whose
    minimizer is y(1).
    """
    d1 = [y_candidate(d, q, l).f_d1_value for l in range(1, d + 2)]
    if not all(v > d1[-1] for v in d1[:-1]):
        return False
    if (d, q) not in ((3, 1), (2, 1), (2, 2)):
        fd = [y_candidate(d, q, l).f_d_value for l in range(1, d + 1)]
        if not all(v > fd[-1] for v in fd[:-1]):
            return False
    if q >= 2 and d >= 3:
        return all(chain_inequalities(d, q).values())
    return True


def _partitions_desc(total, parts, max_part):
    """Weakly decreasing integer tuples of the given length summing to total."""
    if parts == 1:
        if total <= max_part:
            yield (total,)
        return
    lo = -(-total // parts)
    for first in range(min(total, max_part), lo - 1, -1):
        for rest in _partitions_desc(total - first, parts - 1, first):
            yield (first,) + rest


@dataclass(frozen=True)
class OracleResult:
    value: Fraction
    argmin: tuple
    points_checked: int

    @property
    def approx(self):
        return float(self.value)


def grid_oracle(d, q, target, step):
    """Minimum of the product over X(d, q) ∩ (step Z)^(d+1), by enumeration.

    Feasibility is decided in integers: with x = k / N, PS[q]_t reads
    k_1 ... k_t <= q^t N^(t-1) (k_{t+1} + ... + k_{d+1}).
    """
    target = _normalize_target(target)
    step = Fraction(step)
    if step <= 0 or step.numerator != 1:
        raise GridTooCoarse("step must be 1/N for a positive integer N")
    n = step.denominator
    if n < d + 1:
        raise GridTooCoarse(f"step {step} leaves no interior grid point")
    if d > 3:
        raise ValueError("grid oracle is limited to d <= 3")
    k_len = d if target == "f_d" else d + 1
    best = None
    checked = 0
    for ks in _partitions_desc(n, d + 1, n):
        checked += 1
        ok = True
        head = 1
        tail = n
        for t in range(1, d + 1):
            head *= ks[t - 1]
            tail -= ks[t - 1]
            if head > q ** t * n ** (t - 1) * tail:
                ok = False
                break
        if not ok:
            continue
        val = prod(ks[:k_len])
        if best is None or val < best[0] or (val == best[0] and ks < best[1]):
            best = (val, ks)
    if best is None:
        raise GridTooCoarse(f"no feasible grid point at step {step}")
    value = Fraction(best[0], n ** k_len)
    argmin = tuple(Fraction(k, n) for k in best[1])
    assert in_X(argmin, d, q)
    return OracleResult(value, argmin, checked)
