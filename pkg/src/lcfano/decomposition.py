"""Decomposition of minimal lc Fano polytopes and the dual-volume estimates.

A minimal non-simplex 1/q-lc Fano polytope P is a union of t lower
dimensional lc Fano simplices S_1..S_t with vertices among those of P and

    sum d_i = d + sum r_i,   r_i < d_i <= d - t + 1,   |vert P| = d + t,

where d_i = dim S_i and r_i counts vertices S_i shares with S_1..S_{i-1}.
Then Vol(P*) <= (sum d_i)!/prod d_i! * prod Vol(S_i*), which is compared
against 2 u_d^2 / q^(d+1) shape by shape.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod

from . import geometry, linalg
from .barycentric import barycentric_coords
from .errors import (InvalidDecomposition, IsASimplex, NotMinimal,
                     SearchExhausted)
from .sylvester import dual_volume_bound, volume_bound


@dataclass
class Decomposition:
    parent: geometry.Polytope
    simplices: list   # tuples of vertex indices into parent.vertices
    d_list: tuple
    r_list: tuple

    @property
    def t(self):
        return len(self.simplices)

    def simplex_vertices(self, i):
        return [self.parent.vertices[j] for j in self.simplices[i]]


def _relint_origin(points):
    """True if the points are affinely independent with 0 in their relative interior."""
    k = len(points)
    if geometry.affine_rank(points) != k - 1:
        return False
    # 0 = sum lam_i p_i, sum lam_i = 1, lam_i > 0
    rows = [list(col) for col in zip(*points)] + [[1] * k]
    m, pivots = linalg.rref([r + [0 if i < len(rows) - 1 else 1] for i, r in enumerate(rows)])
    if k in pivots:
        return False
    lam = [Fraction(0)] * k
    for i, p in enumerate(pivots):
        lam[p] = m[i][k]
    return all(x > 0 for x in lam)


def sublattice_simplex(points):
    """Express a simplex with 0 in its relative interior in a basis of span ∩ Z^d.

    Returns the integer vertex coordinates in dimension dim(span).
    """
    ambient = len(points[0])
    basis = linalg.lattice_basis([list(p) for p in points], ambient)
    coords = []
    for p in points:
        c = linalg.coordinates_in_basis(basis, list(p))
        if any(x.denominator != 1 for x in c):
            raise InvalidDecomposition("vertex is not in the saturated sublattice")
        coords.append(tuple(int(x) for x in c))
    return coords


def is_sub_lc_fano(points, q, cap=None):
    """Whether a lower-dimensional simplex is 1/q-lc Fano in its own lattice."""
    coords = sublattice_simplex(points)
    S = geometry.LatticePolytope(coords)
    return geometry.is_fano(S) and geometry.is_lc(S, q, cap)


def _span_rank(points):
    return linalg.rank([list(p) for p in points]) if points else 0


def decompose_minimal(P, q, cap=None, check_minimal=True):
    """Greedy decomposition of a minimal non-simplex 1/q-lc Fano polytope.

    Each step takes the smallest vertex subset (lexicographic tie-break)
    that spans a simplex with 0 in its relative interior, uses a vertex not
    yet covered, and grows the linear span by exactly its number of new
    vertices minus one.
    """
    if P.is_simplex:
        raise IsASimplex("input is a simplex")
    d = P.dim
    n = len(P.vertices)
    if n > 2 * d:
        raise NotMinimal(f"{n} vertices exceed 2d = {2 * d}")
    if check_minimal and not (geometry.is_lc_fano(P, q, cap) and geometry.is_minimal(P, q, cap)):
        raise NotMinimal("input is not a minimal 1/q-lc Fano polytope")
    verts = P.vertices
    covered = set()
    simplices, d_list, r_list = [], [], []
    while len(covered) < n:
        span_before = _span_rank([verts[i] for i in covered])
        chosen = None
        for size in range(2, d + 2):
            for T in itertools.combinations(range(n), size):
                new = [i for i in T if i not in covered]
                if not new:
                    continue
                pts = [verts[i] for i in T]
                if not _relint_origin(pts):
                    continue
                grown = _span_rank([verts[i] for i in covered | set(T)]) - span_before
                if grown != len(new) - 1:
                    continue
                chosen = T
                break
            if chosen:
                break
        if chosen is None:
            raise SearchExhausted("no admissible simplex covers the remaining vertices")
        simplices.append(chosen)
        d_list.append(len(chosen) - 1)
        r_list.append(len(covered & set(chosen)))
        covered |= set(chosen)
    D = Decomposition(P, simplices, tuple(d_list), tuple(r_list))
    if not check_decomp_relations(D):
        raise SearchExhausted(f"greedy decomposition violates the counting relations: {D.d_list}, {D.r_list}")
    for i in range(D.t):
        if not is_sub_lc_fano(D.simplex_vertices(i), q, cap):
            raise SearchExhausted(f"simplex {i} is not 1/q-lc Fano in its lattice")
    return D


def check_decomp_relations(D):
    d, t = D.parent.dim, D.t
    if not 2 <= t <= d or len(D.d_list) != t or len(D.r_list) != t:
        return False
    used = set()
    for i, idx in enumerate(D.simplices):
        if len(idx) != D.d_list[i] + 1 or len(used & set(idx)) != D.r_list[i]:
            return False
        used |= set(idx)
    if used != set(range(len(D.parent.vertices))):
        return False
    if D.r_list[0] != 0 or sum(D.d_list) != d + sum(D.r_list):
        return False
    if not all(r < di <= d - t + 1 for r, di in zip(D.r_list, D.d_list)):
        return False
    return len(D.parent.vertices) == d + t


def multinomial_bound(d_list, q):
    """(sum d_i)!/prod d_i! * prod of the per-dimension dual volume bounds."""
    if not d_list:
        raise ValueError("empty dimension list")
    coeff = factorial(sum(d_list)) // prod(factorial(x) for x in d_list)
    return coeff * prod((dual_volume_bound(x, q) for x in d_list), start=Fraction(1))


@dataclass(frozen=True)
class ShapeRecord:
    d: int
    q: int
    t: int
    d_list: tuple
    bound_value: Fraction
    target: Fraction

    @property
    def strict(self):
        return self.bound_value < self.target

    def as_dict(self):
        from .rational import fmt
        return {"d": self.d, "q": self.q, "t": self.t, "d_list": list(self.d_list),
                "bound_value": fmt(self.bound_value), "target": fmt(self.target),
                "strict": self.strict}


def admissible_order(d_list, d):
    """An ordering of d_list for which overlap counts r_i exist, or None.

    Requires r_1 = 0, 0 <= r_i < d_i, r_i at most the vertices seen so far,
    and sum d_i = d + sum r_i.
    """
    t = len(d_list)
    if any(not 1 <= x <= d - t + 1 for x in d_list):
        return None
    need = sum(d_list) - d
    if need < 0:
        return None
    for order in sorted(set(itertools.permutations(d_list))):
        states = {(0, order[0] + 1)}
        for di in order[1:]:
            nxt = set()
            for rsum, nverts in states:
                for r in range(0, min(di - 1, nverts) + 1):
                    if rsum + r <= need:
                        nxt.add((rsum + r, nverts + di + 1 - r))
            states = nxt
        if any(rsum == need for rsum, _ in states):
            return order
    return None


def _excluded(d, d_list):
    return len(d_list) == 2 and d_list[0] == d_list[1] == d - 1


def shapes(d):
    """All admissible (t, d_list) for dimension d, outside the excluded case."""
    out = []
    for t in range(2, d + 1):
        top = d - t + 1
        for combo in itertools.combinations_with_replacement(range(top, 0, -1), t):
            order = admissible_order(combo, d)
            if order is None or _excluded(d, order):
                continue
            out.append((t, order))
    return out


def maximized_shapes(d):
    """The worst shape per t: all d_i = d - t + 1, and (d-1, d-2) for t = 2."""
    out = [(2, (d - 1, d - 2))]
    for t in range(3, d + 1):
        out.append((t, (d - t + 1,) * t))
    return out


def section5_sweep(d_max, q_max, shortcut=False, jobs=1):
    """ShapeRecords for 3 <= d <= d_max, 2 <= q <= q_max, every admissible shape."""
    pairs = [(d, q) for d in range(3, d_max + 1) for q in range(2, q_max + 1)]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(jobs) as ex:
            parts = list(ex.map(_sweep_pair, pairs, [shortcut] * len(pairs)))
    else:
        parts = [_sweep_pair(p, shortcut) for p in pairs]
    return [rec for part in parts for rec in part]


def _sweep_pair(pair, shortcut=False):
    d, q = pair
    target = volume_bound(d, q)
    family = maximized_shapes(d) if shortcut else shapes(d)
    return [ShapeRecord(d, q, t, tuple(dl), multinomial_bound(dl, q), target) for t, dl in family]


def sweep_violations(records):
    return [r for r in records if not r.strict]


@dataclass(frozen=True)
class TwoSimplexCheck:
    dual_volume: Fraction
    rhs: Fraction
    bound: Fraction

    @property
    def holds(self):
        return self.dual_volume <= self.rhs

    @property
    def below_bound(self):
        return self.dual_volume < self.bound

    def __bool__(self):
        return self.holds


def two_simplex_bound_check(P, S1, S2, q, cap=None):
    """Vol(P*) against 1/prod(beta_1) + 1/prod(beta_2) for a two-simplex decomposition.

    S1, S2 are vertex lists of (d-1)-simplices with 0 in their relative
    interiors whose union of vertices is vert(P).
    """
    d = P.dim
    S1 = [tuple(v) for v in S1]
    S2 = [tuple(v) for v in S2]
    if len(S1) != d or len(S2) != d:
        raise InvalidDecomposition("both simplices must have dimension d - 1")
    if set(S1) | set(S2) != set(P.vertices):
        raise InvalidDecomposition("simplex vertices do not cover vert(P)")
    rhs = Fraction(0)
    for S in (S1, S2):
        if not _relint_origin(S):
            raise InvalidDecomposition("origin is not in a simplex's relative interior")
        coords = sublattice_simplex(S)
        rhs += 1 / barycentric_coords(coords).product()
    vol = geometry.normalized_volume(geometry.dual(P))
    return TwoSimplexCheck(vol, rhs, dual_volume_bound(d, q))
