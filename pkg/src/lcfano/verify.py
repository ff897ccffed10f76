"""Runners for the twelve acceptance checks.

Each runner returns a CriterionResult; ``run_all`` drives them for the
``verify-all`` command and the acceptance tests use them one by one.
Ranges default to the full acceptance ranges and can be narrowed.
"""

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import decomposition, extremal, geometry, optimizer, sylvester
from .barycentric import barycentric_coords, ps_check, ps_witness
from .errors import LCFanoError
from .rational import fmt


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str = ""
    counterexample: dict = None
    seconds: float = 0.0
    stats: dict = field(default_factory=dict)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number:2d}: {self.name} ({self.detail}; {self.seconds:.1f}s)"


def _timed(number, name):
    def wrap(fn):
        def run(*args, **kwargs):
            start = time.perf_counter()
            res = fn(*args, **kwargs)
            res.number, res.name = number, name
            res.seconds = time.perf_counter() - start
            return res
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


def _result(passed, detail, counterexample=None, **stats):
    return CriterionResult(0, "", passed, detail, counterexample, stats=stats)


@_timed(1, "sequence values")
def sequence_values():
    got = [sylvester.u(n, 1) for n in range(1, 6)]
    ok = got == [1, 2, 6, 42, 1806] and sylvester.u(4, 2) == 1806 and sylvester.u(2, 2) == 6
    return _result(ok, f"u(.,1) = {got}, u(4,2) = {sylvester.u(4, 2)}")


@_timed(2, "sum and product identities")
def identities(p_max=8, q_max=10):
    bad = [(p, q) for p in range(1, p_max + 1) for q in range(1, q_max + 1)
           if not sylvester.verify_identities(p, q)]
    return _result(not bad, f"p <= {p_max}, q <= {q_max}, failures {bad}",
                   {"pairs": bad} if bad else None)


@_timed(3, "d=3, q=1 extremal reproduction")
def d3_q1():
    bound = sylvester.volume_bound(3, 1)
    S = extremal.example43_simplex(3, 1)
    weights = extremal.conrad_weights(S.vertices)
    vol = geometry.normalized_volume(geometry.dual_simplex(S.polytope))
    ok = bound == 72 and tuple(weights) == (6, 4, 1, 1) and vol == 72
    return _result(ok, f"bound {bound}, weights {tuple(weights)}, dual volume {vol}")


@_timed(4, "equality case of the dual volume bound")
def equality_cases(ds=(3, 4, 5, 6), qs=(2, 3, 4)):
    bad = []
    for d, q in itertools.product(ds, qs):
        S = extremal.example43_simplex(d, q)
        vol = geometry.normalized_volume(geometry.dual_simplex(S.polytope))
        us = sylvester.u_values(d, q)
        beta = tuple(Fraction(q, 1 + x) for x in us[:-1]) + (Fraction(q, 2 * us[-1]),) * 2
        got = barycentric_coords(S.vertices).beta
        if vol != Fraction(2 * us[-1] ** 2, q ** (d + 1)) or got != beta:
            bad.append({"d": d, "q": q, "dual_volume": fmt(vol)})
    return _result(not bad, f"{len(ds) * len(qs)} (d, q) pairs", bad[0] if bad else None)


@_timed(5, "volume equality witness for 1/q-lc simplices")
def thm13_witness(d_max=8, q_max=5, box_pairs=((2, 1), (2, 2), (2, 3), (3, 1), (3, 2))):
    bad = []
    for d in range(2, d_max + 1):
        for q in range(1, q_max + 1):
            S = extremal.thm13_simplex(d, q)
            vol = geometry.normalized_volume(S.polytope)
            cert = extremal.lc_certificate_thm13(d, q)
            if vol != Fraction(2 * sylvester.u(d, q) ** 2, q) or not cert:
                bad.append({"d": d, "q": q, "volume": fmt(vol),
                            "failed_checks": [k for k, v in cert.checks.items() if not v]})
    boxed = 0
    for d, q in box_pairs:
        if d > d_max or q > q_max:
            continue
        P = extremal.thm13_simplex(d, q).polytope
        boxed += 1
        if not geometry.is_lc(P, q):
            bad.append({"d": d, "q": q, "box": "nonzero interior point of S/q",
                        "points": [list(z) for z in geometry.lc_witnesses(P, q)]})
    return _result(not bad, f"d <= {d_max}, q <= {q_max}, {boxed} box scans", bad[0] if bad else None)


def _triangle_interior(a, b, c):
    """Origin strictly inside the lattice triangle abc (orientation-free)."""
    def cross(p, r):
        return p[0] * r[1] - p[1] * r[0]
    s1, s2, s3 = cross(a, b), cross(b, c), cross(c, a)
    return (s1 > 0 and s2 > 0 and s3 > 0) or (s1 < 0 and s2 < 0 and s3 < 0)


def _ps_case(verts, q):
    """None if consistent; a counterexample dict if the box scan says lc but PS fails."""
    P = geometry.LatticePolytope(verts, _checked=True)
    if not geometry.is_lc(P, q):
        return None
    report = ps_check(barycentric_coords(verts), q)
    if report.holds:
        return None
    return {"vertices": [list(v) for v in verts], "q": q, "failing_t": report.failing()}


def _random_simplex_3d(rng, box):
    while True:
        verts = [tuple(rng.randint(-box, box) for _ in range(3)) for _ in range(4)]
        try:
            beta = barycentric_coords(verts)
        except LCFanoError:
            continue
        if beta.interior:
            return verts


@_timed(6, "PS necessity on exhaustive and random simplices")
def ps_necessity(box2=4, samples3=10_000, box3=5, qs=(1, 2, 3), seed=20240601):
    points = list(itertools.product(range(-box2, box2 + 1), repeat=2))
    triangles = [t for t in itertools.combinations(points, 3) if _triangle_interior(*t)]
    checked = 0
    lc_count = 0
    for verts in triangles:
        for q in qs:
            checked += 1
            bad = _ps_case(list(verts), q)
            if bad is not None:
                return _result(False, "PS violated on an lc triangle", bad)
    rng = random.Random(seed)
    for _ in range(samples3):
        verts = _random_simplex_3d(rng, box3)
        for q in qs:
            checked += 1
            bad = _ps_case(verts, q)
            if bad is not None:
                return _result(False, "PS violated on an lc simplex", bad)
    return _result(True, f"{len(triangles)} triangles, {samples3} random 3-simplices, "
                         f"{checked} (simplex, q) cases, 0 violations",
                   triangles=len(triangles), cases=checked, lc=lc_count)


# grid-oracle cases: the 5% band is claimed where the grid can resolve the
# minimizer; f_{d+1} at d = 3 has a coordinate 2/u_{3,q} below 1/200 and is
# only checked for never undercutting the exact value
GRID_CASES = (
    [(2, q, "f_d", Fraction(1, 1000), True) for q in (1, 2, 3)]
    + [(2, q, "f_d1", Fraction(1, 1000), True) for q in (1, 2, 3)]
    + [(3, q, "f_d", Fraction(1, 200), True) for q in (1, 2, 3)]
    + [(3, q, "f_d1", Fraction(1, 200), False) for q in (1, 2)]
)
GRID_TOLERANCE = Fraction(5, 100)


@_timed(7, "exact minima over X(d, q) and grid oracle")
def exact_minima(d_max=8, q_max=6, grid_cases=GRID_CASES):
    bad = []
    for d in range(2, d_max + 1):
        for q in range(1, q_max + 1):
            for target in optimizer.TARGETS:
                res = optimizer.minimize_candidates(d, q, target)
                if res.optimal_value != optimizer.closed_form_minimum(d, q, target) or not res.matches_closed_form:
                    bad.append({"d": d, "q": q, "target": target, "value": fmt(res.optimal_value)})
    special = optimizer.minimize_candidates(2, 1, "f_d")
    if special.optimal_value != Fraction(1, 9) or not special.exception_flag:
        bad.append({"d": 2, "q": 1, "target": "f_d", "issue": "missing 1/9 exception"})
    if d_max >= 3:
        note = optimizer.minimize_candidates(3, 1, "f_d")
        if not any("two equality tuples" in n for n in note.notes):
            bad.append({"d": 3, "q": 1, "target": "f_d", "issue": "missing equality-case note"})
    grid_report = []
    for d, q, target, step, banded in grid_cases:
        if d > d_max or q > q_max:
            continue
        exact = optimizer.closed_form_minimum(d, q, target)
        orc = optimizer.grid_oracle(d, q, target, step)
        rel = (orc.value - exact) / exact
        grid_report.append((d, q, target, float(rel)))
        if orc.value < exact or (banded and rel > GRID_TOLERANCE):
            bad.append({"d": d, "q": q, "target": target, "step": fmt(step),
                        "oracle": fmt(orc.value), "exact": fmt(exact)})
    worst = max((r[3] for r in grid_report if r[2] == "f_d" or r[0] == 2), default=0.0)
    return _result(not bad, f"d <= {d_max}, q <= {q_max}; {len(grid_report)} grid runs, "
                            f"worst banded gap {worst:.2%}", bad[0] if bad else None,
                   grid=grid_report)


@_timed(8, "normal-form map of the extremal dual")
def prop44(ds=range(3, 9), qs=range(2, 6)):
    bad = []
    for d, q in itertools.product(ds, qs):
        ok, failures = extremal.verify_normal_form_map(d, q)
        if not ok:
            bad.append({"d": d, "q": q, "failures": failures})
    return _result(not bad, f"{len(list(ds)) * len(list(qs))} (d, q) pairs", bad[0] if bad else None)


def random_fano_simplex(rng, d, box=5):
    while True:
        verts = [tuple(rng.randint(-box, box) for _ in range(d)) for _ in range(d + 1)]
        if not all(geometry.linalg.vector_gcd(v) == 1 for v in verts):
            continue
        try:
            beta = barycentric_coords(verts)
        except LCFanoError:
            continue
        if beta.interior:
            return verts


@_timed(9, "product identity Vol(S) Vol(S*) prod(beta) = 1")
def product_identity(random_count=100, d_max=4, seed=7):
    bad = []
    count = 0
    for kind in ("example43", "thm13"):
        for d in range(2, 7):
            for q in range(1, 5):
                count += 1
                if not extremal.product_identity_check(extremal.build(kind, d, q).vertices):
                    bad.append({"kind": kind, "d": d, "q": q})
    for d in range(2, 7):
        for q in range(1, 5):
            S = extremal.dual_normal_form(d, q)
            shifted = [tuple(a - b for a, b in zip(v, S.center)) for v in S.vertices]
            count += 1
            if not extremal.product_identity_check(shifted):
                bad.append({"kind": "dual", "d": d, "q": q})
    rng = random.Random(seed)
    for i in range(random_count):
        d = 2 + i % (d_max - 1)
        verts = random_fano_simplex(rng, d)
        count += 1
        if not extremal.product_identity_check(verts):
            bad.append({"vertices": [list(v) for v in verts]})
    return _result(not bad, f"{count} simplices", bad[0] if bad else None)


@_timed(10, "sandwich u_n < K^(2^n) < u_n + 1 and sqrt(q) < K < q")
def sandwich(qs=range(2, 11), n_max=6, tolerance=Fraction(1, 10 ** 12)):
    bad = []
    for q in qs:
        try:
            if not sylvester.verify_sandwich(q, n_max):
                bad.append({"q": q, "issue": "sandwich violated"})
            if not sylvester.approx_constant(q, tolerance).bracket_holds():
                bad.append({"q": q, "issue": "bracket violated"})
        except LCFanoError as exc:
            bad.append({"q": q, "issue": str(exc)})
    return _result(not bad, f"q in {qs.start}..{qs.stop - 1}, n <= {n_max}", bad[0] if bad else None)


@_timed(11, "shape sweep of the multinomial bound")
def shape_sweep(d_max=10, q_max=6, jobs=1):
    full = decomposition.section5_sweep(d_max, q_max, jobs=jobs)
    short = decomposition.section5_sweep(d_max, q_max, shortcut=True, jobs=jobs)
    bad = decomposition.sweep_violations(full) + decomposition.sweep_violations(short)
    return _result(not bad, f"{len(full)} shapes, {len(short)} maximized shapes, {len(bad)} violations",
                   bad[0].as_dict() if bad else None)


def _lc_triangles_through_e1(q, box=4):
    """2-dim 1/q-lc Fano triangles with (1, 0) as a vertex, small coordinates."""
    pts = [p for p in itertools.product(range(-box, box + 1), repeat=2)
           if geometry.linalg.vector_gcd(p) == 1 and p != (1, 0)]
    out = []
    for a, b in itertools.combinations(pts, 2):
        verts = [(1, 0), a, b]
        if not _triangle_interior(*verts):
            continue
        P = geometry.LatticePolytope(verts)
        if geometry.is_lc(P, q):
            out.append(verts)
    return out


PLANES = (((0, 1, 0),), ((0, 0, 1),), ((0, 1, 1),), ((0, 1, -1),))


def minimal_two_triangle_polytopes(q, wanted=10, box=3):
    """d = 3 minimal 1/q-lc polytopes glued from two triangles sharing e1."""
    tris = _lc_triangles_through_e1(q, box)
    found = []
    for (w1,), (w2,) in itertools.combinations(PLANES, 2):
        for t1, t2 in itertools.product(tris, repeat=2):
            emb1 = [tuple(x * (1, 0, 0)[k] + y * w1[k] for k in range(3)) for x, y in t1]
            emb2 = [tuple(x * (1, 0, 0)[k] + y * w2[k] for k in range(3)) for x, y in t2]
            try:
                P = geometry.LatticePolytope(emb1 + [v for v in emb2 if v != (1, 0, 0)])
                if not geometry.is_lc_fano(P, q) or not geometry.is_minimal(P, q):
                    continue
                D = decomposition.decompose_minimal(P, q, check_minimal=False)
            except LCFanoError:
                continue
            if D.d_list == (2, 2):
                found.append((P, D))
                if len(found) >= wanted:
                    return found
    return found


@_timed(12, "two-simplex dual volume bound")
def two_simplex(per_q=6, qs=(1, 2)):
    cases = []
    sq = geometry.LatticePolytope([(1, 0), (-1, 0), (0, 1), (0, -1)])
    cases.append((sq, [[(1, 0), (-1, 0)], [(0, 1), (0, -1)]], 1))
    n3 = 0
    for q in qs:
        for P, D in minimal_two_triangle_polytopes(q, per_q):
            cases.append((P, [D.simplex_vertices(0), D.simplex_vertices(1)], q))
            n3 += 1
    bad = []
    for P, (S1, S2), q in cases:
        chk = decomposition.two_simplex_bound_check(P, S1, S2, q)
        if not (chk.holds and chk.below_bound):
            bad.append({"vertices": [list(v) for v in P.vertices], "q": q,
                        "dual_volume": fmt(chk.dual_volume), "rhs": fmt(chk.rhs), "bound": fmt(chk.bound)})
    ok = not bad and n3 >= 10
    return _result(ok, f"cross-polytope plus {n3} d=3 minimal polytopes", bad[0] if bad else None)


ALL = (sequence_values, identities, d3_q1, equality_cases, thm13_witness, ps_necessity,
       exact_minima, prop44, product_identity, sandwich, shape_sweep, two_simplex)


def run_all(dmax=6, qmax=4, samples=10_000, jobs=1):
    """Every criterion with (d, q) ranges clipped to dmax and qmax."""
    return [
        sequence_values(),
        identities(),
        d3_q1(),
        equality_cases(ds=range(3, min(dmax, 6) + 1), qs=range(2, min(qmax, 4) + 1)),
        thm13_witness(d_max=dmax, q_max=qmax),
        ps_necessity(samples3=samples),
        exact_minima(d_max=dmax, q_max=qmax),
        prop44(ds=range(3, dmax + 1), qs=range(2, qmax + 1)),
        product_identity(),
        sandwich(),
        shape_sweep(d_max=max(dmax, 3), q_max=max(qmax, 2), jobs=jobs),
        two_simplex(),
    ]
