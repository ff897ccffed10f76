import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from lcfano import geometry
from lcfano.barycentric import (BarycentricTuple, barycentric_coords, in_X, ps_check,
                                ps_witness, ps_witness_structured)
from lcfano.errors import DegenerateSimplex, NotAProbabilityVector, PreconditionFailed
from lcfano.extremal import example43_simplex
from lcfano.optimizer import closed_form_minimum

BAD = [(1, 0), (0, 1), (-3, -3)]


def sympy_beta(verts, x):
    d = len(verts[0])
    m = sympy.Matrix([[v[k] for v in verts] for k in range(d)] + [[1] * (d + 1)])
    sol = m.LUsolve(sympy.Matrix(list(x) + [1]))
    return tuple(Fraction(int(s.p), int(s.q)) for s in sol)


def test_examples():
    assert barycentric_coords([(1, 0), (0, 1), (-1, -1)]).beta == (Fraction(1, 3),) * 3
    S = example43_simplex(3, 2)
    assert barycentric_coords(S.vertices).beta == (Fraction(2, 3), Fraction(2, 7), Fraction(1, 42), Fraction(1, 42))
    assert barycentric_coords(BAD, (-1, -1)).beta == (Fraction(2, 7), Fraction(2, 7), Fraction(3, 7))
    assert barycentric_coords(BAD).beta == (Fraction(3, 7), Fraction(3, 7), Fraction(1, 7))


def test_degenerate():
    with pytest.raises(DegenerateSimplex):
        barycentric_coords([(0, 0), (1, 1), (2, 2)])
    with pytest.raises(DegenerateSimplex):
        barycentric_coords([(0, 0), (1, 1)])


def test_against_sympy_and_reconstruction():
    rng = random.Random(4)
    for _ in range(60):
        d = rng.randint(2, 4)
        verts = [tuple(rng.randint(-5, 5) for _ in range(d)) for _ in range(d + 1)]
        x = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(d))
        try:
            b = barycentric_coords(verts, x)
        except DegenerateSimplex:
            continue
        assert b.beta == sympy_beta(verts, x)
        assert sum(b.beta) == 1
        assert tuple(sum(bi * v[k] for bi, v in zip(b.beta, verts)) for k in range(d)) == x
        assert sorted(b.sorted) == sorted(b.beta)
        assert list(b.sorted) == sorted(b.beta, reverse=True)
        assert b.interior == all(v > 0 for v in b.beta)


def test_tie_order_is_by_index():
    b = BarycentricTuple.from_raw([Fraction(1, 4), Fraction(1, 2), Fraction(1, 4)])
    assert b.order == (1, 0, 2)


def test_ps_check_examples():
    rep = ps_check((Fraction(1, 3),) * 3, 1)
    assert rep.holds
    assert [(ln.lhs, ln.rhs) for ln in rep.lines] == [(Fraction(1, 3), Fraction(2, 3)), (Fraction(1, 9), Fraction(1, 3))]
    rep = ps_check((Fraction(2, 3), Fraction(2, 7), Fraction(1, 42), Fraction(1, 42)), 2)
    assert rep.holds and rep.tight() == [1, 2]
    rep = ps_check(barycentric_coords(BAD), 1)
    assert rep.failing() == [2]
    assert rep.lines[1].lhs == Fraction(9, 49) and rep.lines[1].rhs == Fraction(1, 7)


def test_ps_check_rejects():
    with pytest.raises(NotAProbabilityVector):
        ps_check((Fraction(1, 2), Fraction(1, 2), 0), 1)
    with pytest.raises(NotAProbabilityVector):
        ps_check((Fraction(1, 2), Fraction(1, 3)), 1)


def test_in_X():
    for d in range(2, 6):
        assert in_X([Fraction(1, d + 1)] * (d + 1), d, 1)
        assert not in_X([1] + [0] * d, d, 2)
    member = (Fraction(2, 3), Fraction(2, 7), Fraction(1, 42), Fraction(1, 42))
    assert in_X(member, 3, 2)
    assert not in_X(member[::-1], 3, 2)
    assert not in_X(member[:3], 3, 2)


def test_witness_examples():
    assert ps_witness(BAD, 1) == (-1, -1)
    w, ms, m = ps_witness_structured(BAD, 1)
    assert w == (-1, -1) and ms == (1, 1) and m == 2
    w = ps_witness([(1, 0), (0, 1), (-5, -5)], 1)
    assert any(w)
    S = geometry.LatticePolytope([(1, 0), (0, 1), (-5, -5)])
    assert w in geometry.interior_lattice_points(S)
    with pytest.raises(PreconditionFailed):
        ps_witness([(1, 0), (0, 1), (-1, -1)], 1)


def random_simplex(rng, d, box):
    while True:
        verts = [tuple(rng.randint(-box, box) for _ in range(d)) for _ in range(d + 1)]
        try:
            if barycentric_coords(verts).interior:
                return verts
        except DegenerateSimplex:
            pass


@pytest.mark.parametrize("d", [2, 3])
def test_ps_necessity_and_witnesses(d):
    rng = random.Random(100 + d)
    fd1_min = {q: closed_form_minimum(d, q, "d1") for q in (1, 2, 3)}
    fd_min = {q: closed_form_minimum(d, q, "d") for q in (1, 2, 3)}
    for _ in range(300 if d == 2 else 150):
        verts = random_simplex(rng, d, 6)
        S = geometry.LatticePolytope(verts)
        beta = barycentric_coords(verts)
        for q in (1, 2, 3):
            rep = ps_check(beta, q)
            lc = geometry.is_lc(S, q)
            if lc:
                assert rep.holds
                # the product lower bounds that follow from membership in X(d, q)
                assert beta.product() >= fd1_min[q]
                assert beta.product(d) >= fd_min[q]
            if not rep.holds:
                w = ps_witness(verts, q)
                assert w in geometry.interior_lattice_points(S, Fraction(1, q))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 30), min_size=3, max_size=6))
def test_sorted_view_is_permutation(weights):
    total = sum(weights)
    b = BarycentricTuple.from_raw([Fraction(w, total) for w in weights])
    assert sorted(b.sorted) == sorted(b.beta)
    assert all(a >= c for a, c in zip(b.sorted, b.sorted[1:]))
