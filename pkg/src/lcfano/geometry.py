"""Exact polytope kernel: facets, volumes, duals, gauges and lattice points.

Every predicate is decided in exact integer or rational arithmetic. Facets
of a non-simplex are found by brute force over d-subsets of the vertices,
which is adequate for the small vertex counts this package deals with
(minimal lc Fano polytopes have at most 2d vertices).
"""

import itertools
import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, prod

from . import linalg
from .errors import (DegenerateInput, DegenerateSimplex, EnumerationTooLarge,
                     OriginNotInterior, RedundantPoint, TooManyVertices)

DEFAULT_VERTEX_CAP = 64
DEFAULT_ENUMERATION_CAP = 10 ** 8


def enumeration_cap():
    """Box-scan cap; the LCFANO_CAP environment variable overrides the default."""
    env = os.environ.get("LCFANO_CAP")
    return int(env) if env else DEFAULT_ENUMERATION_CAP


@dataclass(frozen=True)
class Facet:
    """Half-space {x : <normal, x> <= offset}."""
    normal: tuple
    offset: Fraction

    def value(self, x):
        return linalg.dot(self.normal, x)


@dataclass(frozen=True)
class HalfspaceRep:
    facets: tuple

    def __len__(self):
        return len(self.facets)

    def __iter__(self):
        return iter(self.facets)

    def contains(self, x):
        return all(f.value(x) <= f.offset for f in self.facets)

    def contains_strictly(self, x):
        return all(f.value(x) < f.offset for f in self.facets)


def _integer_row(normal, offset):
    """Scale (normal, offset) to coprime integers, keeping the inequality direction."""
    vals = [Fraction(x) for x in normal] + [Fraction(offset)]
    den = 1
    for x in vals:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in vals]
    g = linalg.vector_gcd(ints)
    ints = [x // g for x in ints]
    return tuple(ints[:-1]), ints[-1]


class Polytope:
    """Full-dimensional polytope given by its vertices (rational coordinates).

    Input points are deduplicated and sorted lexicographically. A point that
    is not a vertex of the convex hull raises RedundantPoint; use
    ``from_points`` to discard such points instead.
    """

    def __init__(self, vertices, vertex_cap=DEFAULT_VERTEX_CAP, _checked=False):
        pts = sorted(set(tuple(self._coerce(x) for x in v) for v in vertices))
        if not pts:
            raise DegenerateInput("empty vertex list")
        dim = len(pts[0])
        if any(len(p) != dim for p in pts):
            raise DegenerateInput("vertices have inconsistent dimensions")
        if len(pts) > vertex_cap:
            raise TooManyVertices(f"{len(pts)} vertices exceed the cap of {vertex_cap}")
        self.dim = dim
        self.vertices = tuple(pts)
        self._lock = threading.Lock()
        self._facet_cache = None
        if affine_rank(pts) < dim:
            raise DegenerateInput(f"affine dimension of the points is below {dim}")
        if not _checked and not self.is_simplex:
            incidences = self._facet_incidences()
            for i, p in enumerate(self.vertices):
                normals = [f.normal for f, verts in incidences if i in verts]
                if linalg.rank(normals) < dim:
                    raise RedundantPoint(p)

    @staticmethod
    def _coerce(x):
        return Fraction(x)

    @classmethod
    def from_points(cls, points, vertex_cap=DEFAULT_VERTEX_CAP):
        """Polytope spanned by the convex hull of arbitrary points."""
        return cls(hull_vertices(points, vertex_cap), vertex_cap=vertex_cap, _checked=True)

    def __repr__(self):
        return f"{type(self).__name__}({[list(map(str, v)) for v in self.vertices]})"

    def __eq__(self, other):
        return isinstance(other, Polytope) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    @property
    def is_simplex(self):
        return len(self.vertices) == self.dim + 1

    @property
    def is_lattice(self):
        return all(Fraction(x).denominator == 1 for v in self.vertices for x in v)

    def origin_interior(self):
        return all(b > 0 for _, b in self.integer_facets)

    # -- facets ---------------------------------------------------------

    def _facet_incidences(self):
        """List of (Facet, frozenset of vertex indices on it)."""
        with self._lock:
            if self._facet_cache is None:
                if self.is_simplex:
                    self._facet_cache = _simplex_facets(self.vertices)
                else:
                    self._facet_cache = _brute_force_facets(self.vertices)
            return self._facet_cache

    @property
    def facets(self):
        """HalfspaceRep, offsets normalized to 1 when the origin is interior."""
        return HalfspaceRep(tuple(f for f, _ in self._facet_incidences()))

    @cached_property
    def integer_facets(self):
        """Facets as coprime integer rows (a, b) meaning a.x <= b."""
        return tuple(_integer_row(f.normal, f.offset) for f, _ in self._facet_incidences())

    def facet_vertex_sets(self):
        return [verts for _, verts in self._facet_incidences()]


class LatticePolytope(Polytope):
    """Polytope whose vertices are integer points."""

    @staticmethod
    def _coerce(x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"lattice polytope vertex has non-integer coordinate {x}")
            return int(x)
        if int(x) != x:
            raise ValueError(f"lattice polytope vertex has non-integer coordinate {x}")
        return int(x)


class FanoPolytope(LatticePolytope):
    """Lattice polytope with the origin in its interior and primitive vertices."""

    def __init__(self, vertices, vertex_cap=DEFAULT_VERTEX_CAP, _checked=False):
        super().__init__(vertices, vertex_cap, _checked)
        if not self.origin_interior():
            raise OriginNotInterior("origin is not in the interior")
        for v in self.vertices:
            if linalg.vector_gcd(v) != 1:
                raise ValueError(f"vertex {list(v)} is not primitive")


class RationalSimplex(Polytope):
    def __init__(self, vertices, vertex_cap=DEFAULT_VERTEX_CAP, _checked=False):
        verts = list(vertices)
        if len(verts) != len(verts[0]) + 1:
            raise DegenerateSimplex(f"a {len(verts[0])}-simplex needs {len(verts[0]) + 1} vertices")
        try:
            super().__init__(verts, vertex_cap, _checked)
        except DegenerateInput as exc:
            raise DegenerateSimplex(str(exc)) from exc
        if len(self.vertices) != self.dim + 1:
            raise DegenerateSimplex("repeated vertices")


def affine_rank(points):
    p0 = points[0]
    return linalg.rank([[a - b for a, b in zip(p, p0)] for p in points[1:]]) if len(points) > 1 else 0


def _normalize_facet(normal, offset, origin_interior):
    if origin_interior:
        return Facet(tuple(Fraction(x) / offset for x in normal), Fraction(1))
    a, b = _integer_row(normal, offset)
    return Facet(tuple(Fraction(x) for x in a), Fraction(b))


def _sort_facets(items):
    return sorted(items, key=lambda item: item[0].normal)


def barycentric_affine_forms(vertices):
    """Integer-scaled barycentric coordinate functions of a simplex.

    Returns (D, forms) with forms[i] = (g_i, c_i) such that the i-th
    barycentric coordinate of x is (g_i . x + c_i) / D.
    """
    n = len(vertices)
    m = [[Fraction(v[k]) for v in vertices] for k in range(n - 1)] + [[Fraction(1)] * n]
    D = linalg.det(m)
    if D == 0:
        raise DegenerateSimplex("simplex vertices are affinely dependent")
    inv = linalg.inverse(m)
    forms = []
    for i in range(n):
        row = [x * D for x in inv[i]]
        forms.append((tuple(row[:-1]), row[-1]))
    return D, forms


def _simplex_facets(vertices):
    D, forms = barycentric_affine_forms(vertices)
    sign = 1 if D > 0 else -1
    raw = []
    for i, (g, c) in enumerate(forms):
        # lambda_i(x) >= 0  <=>  -sign*g.x <= sign*c
        raw.append(([-sign * x for x in g], sign * c,
                    frozenset(j for j in range(len(vertices)) if j != i)))
    origin_interior = all(off > 0 for _, off, _ in raw)
    items = [(_normalize_facet(n, off, origin_interior), verts) for n, off, verts in raw]
    return _sort_facets(items)


def _hyperplane_through(points):
    """(normal, offset) of the hyperplane through d affinely independent points."""
    p0 = points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    ns = linalg.nullspace(diffs, len(p0))
    if len(ns) != 1:
        return None
    normal = linalg.primitive_integer(ns[0])
    return normal, linalg.dot(normal, p0)


def _brute_force_facets(points):
    d = len(points[0])
    found = {}
    for subset in itertools.combinations(range(len(points)), d):
        hp = _hyperplane_through([points[i] for i in subset])
        if hp is None:
            continue
        normal, offset = hp
        vals = [linalg.dot(normal, p) for p in points]
        if all(v <= offset for v in vals):
            pass
        elif all(v >= offset for v in vals):
            normal, offset = [-x for x in normal], -offset
            vals = [-v for v in vals]
        else:
            continue
        key = (tuple(normal), offset)
        if key not in found:
            found[key] = frozenset(i for i, v in enumerate(vals) if v == offset)
    origin_interior = all(off > 0 for _, off in found)
    items = [(_normalize_facet(n, off, origin_interior), verts)
             for (n, off), verts in found.items()]
    return _sort_facets(items)


def hull_vertices(points, vertex_cap=DEFAULT_VERTEX_CAP):
    """Vertices of conv(points) for a full-dimensional point set."""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) > vertex_cap:
        raise TooManyVertices(f"{len(pts)} points exceed the cap of {vertex_cap}")
    d = len(pts[0])
    if affine_rank(pts) < d:
        raise DegenerateInput("points do not span the ambient space")
    if len(pts) == d + 1:
        return pts
    incidences = _brute_force_facets(pts)
    keep = []
    for i, p in enumerate(pts):
        normals = [f.normal for f, verts in incidences if i in verts]
        if normals and linalg.rank(normals) == d:
            keep.append(p)
    return keep


def facets(P):
    return P.facets


# -- volumes ---------------------------------------------------------------


def _faces_of(P, face, face_dim, facet_sets):
    """Facets (as vertex index sets) of a face of P of dimension face_dim."""
    if face_dim == P.dim:
        return facet_sets
    found = set()
    for g in facet_sets:
        sub = face & g
        if sub != face and len(sub) >= face_dim and \
                affine_rank([P.vertices[i] for i in sorted(sub)]) == face_dim - 1:
            found.add(frozenset(sub))
    return sorted(found, key=sorted)


def triangulate(P, order=None):
    """Pulling (fan) triangulation of P into d-simplices of vertex indices.

    ``order`` is a permutation of vertex indices giving apex priority; the
    default pulls the lexicographically smallest vertex first.
    """
    rank_of = {v: k for k, v in enumerate(order)} if order is not None else None
    facet_sets = P.facet_vertex_sets()

    def pick(face):
        return min(face, key=rank_of.__getitem__) if rank_of else min(face)

    def rec(face, dim):
        if len(face) == dim + 1:
            return [tuple(sorted(face))]
        apex = pick(face)
        out = []
        for sub in _faces_of(P, face, dim, facet_sets):
            if apex in sub:
                continue
            for simplex in rec(sub, dim - 1):
                out.append(tuple(sorted((apex,) + simplex)))
        return out

    return rec(frozenset(range(len(P.vertices))), P.dim)


def simplex_normalized_volume(vertices):
    base = vertices[-1]
    return abs(linalg.det([[a - b for a, b in zip(v, base)] for v in vertices[:-1]]))


def normalized_volume(P, order=None):
    """d! times the Euclidean volume, exactly."""
    if not isinstance(P, Polytope):
        P = Polytope(P)
    if P.is_simplex:
        return Fraction(simplex_normalized_volume(P.vertices))
    return Fraction(sum(simplex_normalized_volume([P.vertices[i] for i in s])
                        for s in triangulate(P, order)))


# -- duality ----------------------------------------------------------------


def dual_simplex(S):
    """Vertices of S* = {m : <m, v> >= -1 for v in S} for a simplex with 0 inside.

    Vertex j of the dual solves <v_i, m> = -1 for every i != j, so dual
    vertex j lies opposite the facet of S* dual to v_j.
    """
    if not isinstance(S, Polytope):
        S = RationalSimplex(S)
    if not S.is_simplex:
        raise DegenerateSimplex("dual_simplex needs a simplex")
    if not S.origin_interior():
        raise OriginNotInterior("origin is not in the interior of the simplex")
    d = S.dim
    verts = S.vertices
    out = []
    for j in range(d + 1):
        rows = [list(verts[i]) for i in range(d + 1) if i != j]
        out.append(tuple(linalg.solve(rows, [Fraction(-1)] * d)))
    return RationalSimplex(out, _checked=True)


def dual(P):
    """Dual polytope of a polytope with 0 interior; vertices are -normal of each facet."""
    if not P.origin_interior():
        raise OriginNotInterior("origin is not in the interior")
    if P.is_simplex:
        return dual_simplex(P)
    verts = [tuple(-x for x in f.normal) for f in P.facets]
    return Polytope(verts, vertex_cap=max(DEFAULT_VERTEX_CAP, len(verts)), _checked=True)


# -- gauge and lattice points -------------------------------------------------


def gauge(P, z):
    """min{t >= 0 : z in tP} for a polytope with the origin in its interior."""
    if not P.origin_interior():
        raise OriginNotInterior("gauge needs the origin in the interior")
    return max([Fraction(0)] + [f.value(z) for f in P.facets])


def _box(P, scale):
    lo, hi = [], []
    for k in range(P.dim):
        coords = [Fraction(v[k]) * scale for v in P.vertices]
        lo.append(_ceil(min(coords)))
        hi.append(_floor(max(coords)))
    return lo, hi


def _floor(x):
    return x.numerator // x.denominator


def _ceil(x):
    return -((-x.numerator) // x.denominator)


def _scan(P, scale, strict, cap):
    """Lattice points z with a.z < scale*b (strict) or <= (closed) for all facets."""
    scale = Fraction(scale)
    if scale <= 0:
        raise ValueError("scale must be positive")
    if cap is None:
        cap = enumeration_cap()
    lo, hi = _box(P, scale)
    size = prod(max(0, h - l + 1) for l, h in zip(lo, hi))
    if size > cap:
        raise EnumerationTooLarge(size, cap)
    if size == 0:
        return []
    num, den = scale.numerator, scale.denominator
    # a.z <= scale*b  <=>  den*a.z <= num*b
    rows = [(tuple(den * x for x in a), num * b) for a, b in P.integer_facets]
    d = P.dim
    last = d - 1
    out = []
    for prefix in itertools.product(*[range(l, h + 1) for l, h in zip(lo[:last], hi[:last])]):
        zmin, zmax = lo[last], hi[last]
        for a, b in rows:
            partial = sum(x * y for x, y in zip(a, prefix))
            c = a[last]
            rhs = b - partial
            # c * z_last  <=  rhs  (or < rhs when strict)
            if c == 0:
                if (strict and rhs <= 0) or (not strict and rhs < 0):
                    zmin, zmax = 1, 0
                    break
                continue
            if c > 0:
                bound = (rhs - 1) // c if strict else rhs // c
                zmax = min(zmax, bound)
            else:
                bound = -((rhs - 1) // -c) if strict else -(rhs // -c)
                zmin = max(zmin, bound)
            if zmin > zmax:
                break
        for z in range(zmin, zmax + 1):
            out.append(prefix + (z,))
    return out


def interior_lattice_points(P, scale=1, cap=None):
    """All integer points strictly inside scale*P, in lexicographic order."""
    return _scan(P, scale, True, cap)


def lattice_points(P, scale=1, cap=None):
    """All integer points in the closed polytope scale*P, lexicographic."""
    return _scan(P, scale, False, cap)


def mld(P, cap=None):
    """Smallest gauge of a nonzero lattice point of P (at most 1)."""
    zero = (0,) * P.dim
    return min(gauge(P, z) for z in lattice_points(P, 1, cap) if z != zero)


def is_fano(P):
    """Full-dimensional, origin strictly interior, every vertex primitive."""
    if not isinstance(P, Polytope):
        try:
            P = LatticePolytope(P)
        except (DegenerateInput, RedundantPoint):
            return False
    if not P.is_lattice or not P.origin_interior():
        return False
    return all(linalg.vector_gcd(v) == 1 for v in P.vertices)


def is_lc(P, q, cap=None):
    """True iff the only lattice point strictly inside (1/q)P is the origin."""
    return interior_lattice_points(P, Fraction(1, q), cap) == [(0,) * P.dim]


def lc_witnesses(P, q, cap=None):
    zero = (0,) * P.dim
    return [z for z in interior_lattice_points(P, Fraction(1, q), cap) if z != zero]


def is_lc_fano(P, q, cap=None):
    return is_fano(P) and is_lc(P, q, cap)


def removable_vertices(P, q, cap=None):
    """Vertices v such that conv(P ∩ Z^d minus v) is still a d-dim 1/q-lc Fano polytope."""
    pts = lattice_points(P, 1, cap)
    out = []
    for v in P.vertices:
        rest = [p for p in pts if p != tuple(v)]
        if affine_rank(rest) < P.dim:
            continue
        Q = LatticePolytope.from_points(rest, vertex_cap=max(DEFAULT_VERTEX_CAP, len(rest)))
        if is_fano(Q) and is_lc(Q, q, cap):
            out.append(tuple(v))
    return out


def is_minimal(P, q, cap=None):
    """True iff no vertex is removable in the sense of ``removable_vertices``."""
    return not removable_vertices(P, q, cap)
