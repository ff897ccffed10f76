"""Barycentric coordinates and the generalized Product-Sum inequalities.

For sorted barycentric coordinates b_1 >= ... >= b_{d+1} of the origin in a
lattice simplex S with int(S/q) ∩ Z^d = {0}, every t in 1..d satisfies

    PS[q]_t :   b_1 * ... * b_t  <=  q^t * (b_{t+1} + ... + b_{d+1}).

A failing inequality can be turned into an explicit nonzero lattice point of
int(S/q); ``ps_witness`` does exactly that.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import prod

from . import geometry, linalg
from .errors import (DegenerateSimplex, NotAProbabilityVector, NotFound,
                     PreconditionFailed)


def _vertex_list(S):
    if isinstance(S, geometry.Polytope):
        return [tuple(v) for v in S.vertices]
    return [tuple(v) for v in S]


@dataclass(frozen=True)
class BarycentricTuple:
    """Barycentric coordinates in vertex order plus a descending view.

    ``order[k]`` is the vertex index of the k-th largest coordinate; ties keep
    the original index order.
    """
    beta: tuple
    order: tuple

    @classmethod
    def from_raw(cls, beta):
        beta = tuple(Fraction(b) for b in beta)
        order = tuple(sorted(range(len(beta)), key=lambda i: (-beta[i], i)))
        return cls(beta, order)

    @property
    def d(self):
        return len(self.beta) - 1

    @property
    def sorted(self):
        return tuple(self.beta[i] for i in self.order)

    @property
    def interior(self):
        return all(b > 0 for b in self.beta)

    def product(self, k=None):
        vals = self.sorted
        return prod(vals[: len(vals) if k is None else k])


def barycentric_coords(S, x=None):
    """Exact barycentric coordinates of x (default: origin) w.r.t. a simplex."""
    verts = _vertex_list(S)
    d = len(verts[0])
    if len(verts) != d + 1:
        raise DegenerateSimplex(f"need {d + 1} vertices, got {len(verts)}")
    if x is None:
        x = (0,) * d
    rows = [[v[k] for v in verts] for k in range(d)] + [[1] * (d + 1)]
    try:
        beta = linalg.solve(rows, list(x) + [1])
    except Exception as exc:
        raise DegenerateSimplex("simplex vertices are affinely dependent") from exc
    return BarycentricTuple.from_raw(beta)


@dataclass(frozen=True)
class PSLine:
    t: int
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self):
        return self.lhs <= self.rhs

    @property
    def tight(self):
        return self.lhs == self.rhs


@dataclass(frozen=True)
class PSReport:
    q: int
    lines: tuple

    @property
    def holds(self):
        return all(line.holds for line in self.lines)

    def failing(self):
        return [line.t for line in self.lines if not line.holds]

    def tight(self):
        return [line.t for line in self.lines if line.tight]


def ps_values(x, q):
    """(lhs, rhs) of PS[q]_t for t = 1..d on the tuple as given (no sorting)."""
    out = []
    lhs = Fraction(1)
    tail = sum(x, Fraction(0))
    for t in range(1, len(x)):
        lhs *= x[t - 1]
        tail -= x[t - 1]
        out.append((lhs, q ** t * tail))
    return out


def ps_check(beta, q):
    """Evaluate every PS[q]_t on the descending sort of a positive probability vector."""
    if not isinstance(beta, BarycentricTuple):
        beta = BarycentricTuple.from_raw(beta)
    if any(b <= 0 for b in beta.beta) or sum(beta.beta) != 1:
        raise NotAProbabilityVector(f"{[str(b) for b in beta.beta]} is not a positive probability vector")
    vals = beta.sorted
    lines = tuple(PSLine(t, lhs, rhs) for t, (lhs, rhs) in enumerate(ps_values(vals, q), start=1))
    return PSReport(q, lines)


def in_X(x, d, q):
    """Membership in X(d, q): ordered, nonnegative, sums to one, all PS[q] hold."""
    x = [Fraction(v) for v in x]
    if len(x) != d + 1 or sum(x) != 1:
        return False
    if not (1 >= x[0] and all(a >= b for a, b in zip(x, x[1:])) and x[-1] >= 0):
        return False
    return all(lhs <= rhs for lhs, rhs in ps_values(x, q))


def _structured_search(verts, beta, t, q, radius):
    """Search integers (m_1..m_t, m) from the proof of the PS inequalities.

    With |m_i q / b_i - m q| < 1 and sum m_i = m, the point -q sum m_i v_i has
    barycentric coordinates ((mq+1) b_i - m_i q, (mq+1) b_j) > 0, so
    w = -sum m_i v_i is a lattice point of int(S/q).
    """
    b = beta.sorted[:t]
    idx = beta.order[:t]
    d = len(verts[0])
    for m in range(1, radius + 1):
        ranges = []
        for bi in b:
            lo = bi * (m * q - 1) / q
            hi = bi * (m * q + 1) / q
            lo_i = lo.numerator // lo.denominator + 1
            hi_i = -((-hi.numerator) // hi.denominator) - 1
            ranges.append(range(lo_i, hi_i + 1))
        for ms in itertools.product(*ranges):
            if sum(ms) != m:
                continue
            w = tuple(-sum(mi * verts[i][k] for mi, i in zip(ms, idx)) for k in range(d))
            if any(w):
                return w, ms, m
    return None


def ps_witness(S, q, search_radius=50, cap=None):
    """Nonzero lattice point of int(S/q) for a lattice simplex violating some PS[q]_t.

    Tries the structured search first; falls back to a box scan. Every
    returned point is confirmed interior by exact barycentric positivity.
    """
    verts = _vertex_list(S)
    beta = barycentric_coords(verts)
    if not beta.interior:
        raise PreconditionFailed("origin is not interior to the simplex")
    report = ps_check(beta, q)
    if report.holds:
        raise PreconditionFailed("all Product-Sum inequalities hold; no witness is implied")
    t = report.failing()[0]

    def confirmed(w):
        scaled = tuple(q * c for c in w)
        return any(w) and barycentric_coords(verts, scaled).interior

    found = _structured_search(verts, beta, t, q, search_radius)
    if found is not None and confirmed(found[0]):
        return found[0]
    P = geometry.LatticePolytope(verts)
    for w in geometry.lc_witnesses(P, q, cap):
        if confirmed(w):
            return w
    raise NotFound(f"no interior lattice point found within radius {search_radius}")


def ps_witness_structured(S, q, search_radius=50):
    """Only the proof-structured search; returns (w, (m_1..m_t), m) or None."""
    verts = _vertex_list(S)
    beta = barycentric_coords(verts)
    report = ps_check(beta, q)
    if report.holds:
        raise PreconditionFailed("all Product-Sum inequalities hold")
    return _structured_search(verts, beta, report.failing()[0], q, search_radius)
