"""Command-line front end.

Every command writes JSON report lines to stdout and a short human summary
to stderr. Exit codes: 0 verified, 1 violated, 2 indecisive or capped,
3 usage or input error.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import (barycentric, decomposition, extremal, geometry, optimizer,
               sylvester, verify)
from .errors import (DegenerateInput, EnumerationTooLarge, LCFanoError,
                     NotFound, PreconditionFailed, RedundantPoint,
                     TooManyVertices)
from .rational import dumps, fmt, load_polytope, parse, polytope_json

EXIT = {"verified": 0, "violated": 1, "indecisive": 2}
USAGE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def _exact(obj):
    if isinstance(obj, Fraction):
        return fmt(obj)
    if isinstance(obj, dict):
        return {k: _exact(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_exact(v) for v in obj]
    return obj


def _floats(obj):
    if isinstance(obj, Fraction):
        return float(obj)
    if isinstance(obj, dict):
        return {k: _floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_floats(v) for v in obj]
    return obj


class Emitter:
    def __init__(self, args, out=None, err=None):
        self.args = args
        self.out = out or sys.stdout
        self.err = err or sys.stderr

    def report(self, tag, inputs, results, status, counterexample=None, summary=None):
        rep = {"command": self.args.command, "inputs": _exact(inputs), "theorem_tag": tag,
               "results": _exact(results), "status": status}
        if self.args.float:
            rep["results_float"] = _floats(results)
        if status == "violated":
            rep["counterexample"] = _exact(counterexample if counterexample is not None else {})
        print(dumps(rep), file=self.out)
        if summary is not None:
            print(summary, file=self.err)
        return EXIT[status]

    def line(self, obj):
        print(dumps(obj), file=self.out)


def _read_vertices(path):
    """Vertices from a polytope JSON file, or from a report that carries one."""
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
        if isinstance(data, dict) and "results" in data and "polytope" in data["results"]:
            text = json.dumps(data["results"]["polytope"])
        return load_polytope(text)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"{path}: not a polytope file ({exc})") from exc


def _polytope(path, lattice_required=False):
    dim, verts, is_lattice = _read_vertices(path)
    if lattice_required and not is_lattice:
        raise UsageError(f"{path}: a lattice polytope (integer coordinates) is required")
    try:
        cls = geometry.LatticePolytope if is_lattice else geometry.Polytope
        return cls(verts), verts
    except (DegenerateInput, RedundantPoint, TooManyVertices) as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _polytope_obj(verts):
    return json.loads(polytope_json(verts))


# -- commands -------------------------------------------------------------

def cmd_useq(a, em):
    vals = sylvester.u_values(a.n, a.q)
    ok = all(sylvester.verify_identities(p, a.q) for p in range(1, a.n + 1))
    return em.report("Eq1-2", {"q": a.q, "n": a.n}, {"u": vals, "identities_hold": ok},
                     "verified" if ok else "violated",
                     None if ok else {"q": a.q}, " ".join(map(str, vals)))


def cmd_bound(a, em):
    formula = sylvester.volume_bound(a.d, a.q)
    applicable = sylvester.dual_volume_bound(a.d, a.q)
    res = {"bound": applicable, "formula_value": formula, "exception": applicable != formula}
    return em.report("Thm1.1", {"d": a.d, "q": a.q}, res, "verified", summary=_plain(applicable))


def _plain(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else fmt(x)


def cmd_extremal(a, em):
    S = extremal.build(a.kind, a.d, a.q)
    res = {"kind": a.kind, "polytope": _polytope_obj(S.vertices),
           "expected_beta": S.expected_beta, "expected_volume": S.expected_vol,
           "expected_dual_volume": S.expected_dual_vol}
    status = "verified"
    counter = None
    if S.center is not None:
        res["center"] = S.center
    if a.kind in ("example43", "thm13"):
        cert = extremal.lc_certificate(a.kind, a.d, a.q)
        res["certificate"] = cert.checks
        if not cert:
            status, counter = "violated", {"failed_checks": [k for k, v in cert.checks.items() if not v]}
    elif a.q >= 2:
        ok, failures = extremal.verify_normal_form_map(a.d, a.q)
        res["normal_form_map"] = ok
        if not ok:
            status, counter = "violated", {"failures": failures}
    tag = {"example43": "Ex4.3", "thm13": "Thm1.3", "dual": "Prop4.4"}[a.kind]
    return em.report(tag, {"d": a.d, "q": a.q, "kind": a.kind}, res, status, counter,
                     f"{a.kind} simplex, d={a.d}, q={a.q}: {len(S.vertices)} vertices")


def cmd_weights(a, em):
    _, verts, is_lattice = _read_vertices(a.file)
    if not is_lattice:
        raise UsageError("weights need a lattice simplex")
    try:
        w = extremal.conrad_weights(verts)
    except DegenerateInput as exc:
        raise UsageError(str(exc)) from exc
    return em.report("Ex4.3", {"file": a.file}, {"weights": list(w)}, "verified",
                     summary=" ".join(map(str, w)))


def _cap(a):
    return getattr(a, "cap", None)


def cmd_volume(a, em):
    P, _ = _polytope(a.file)
    vol = geometry.normalized_volume(P)
    return em.report("Sec2.1", {"file": a.file}, {"normalized_volume": vol}, "verified",
                     summary=_plain(vol))


def cmd_dual(a, em):
    P, _ = _polytope(a.file)
    if not P.origin_interior():
        raise UsageError("the dual needs the origin in the interior")
    D = geometry.dual(P)
    vol = geometry.normalized_volume(D)
    return em.report("Sec2.1", {"file": a.file},
                     {"polytope": _polytope_obj(D.vertices), "normalized_volume": vol},
                     "verified", summary=f"dual has {len(D.vertices)} vertices, volume {_plain(vol)}")


def cmd_check_lc(a, em):
    P, _ = _polytope(a.file, lattice_required=True)
    pts = geometry.interior_lattice_points(P, Fraction(1, a.q), _cap(a))
    zero = (0,) * P.dim
    if pts == [zero]:
        m = geometry.mld(P, _cap(a)) if P.origin_interior() else None
        return em.report("Sec2.2", {"q": a.q, "file": a.file}, {"lc": True, "mld": m},
                         "verified", summary=f"1/{a.q}-lc")
    witnesses = [z for z in pts if z != zero]
    if P.origin_interior():
        # deepest point first: smallest dilation of P containing it
        witnesses.sort(key=lambda z: (geometry.gauge(P, z), z))
    res = {"lc": False, "origin_interior": zero in pts}
    counter = {"witness": list(witnesses[0]) if witnesses else None,
               "interior_points": [list(z) for z in witnesses]}
    return em.report("Sec2.2", {"q": a.q, "file": a.file}, res, "violated", counter,
                     f"not 1/{a.q}-lc: witness {counter['witness']}")


def cmd_check_fano(a, em):
    P, _ = _polytope(a.file)
    if geometry.is_fano(P):
        return em.report("Def2.1", {"file": a.file}, {"fano": True}, "verified", summary="Fano")
    reasons = []
    if not P.is_lattice:
        reasons.append("non-integer vertex")
    elif not P.origin_interior():
        reasons.append("origin not interior")
    else:
        reasons += [f"vertex {list(v)} is not primitive" for v in P.vertices
                    if geometry.linalg.vector_gcd(v) != 1]
    return em.report("Def2.1", {"file": a.file}, {"fano": False}, "violated",
                     {"reasons": reasons}, "not Fano: " + "; ".join(reasons))


def cmd_check_minimal(a, em):
    P, _ = _polytope(a.file, lattice_required=True)
    if not geometry.is_lc_fano(P, a.q, _cap(a)):
        raise UsageError(f"input is not a 1/{a.q}-lc Fano polytope")
    removable = geometry.removable_vertices(P, a.q, _cap(a))
    res = {"minimal": not removable}
    if not removable:
        return em.report("Thm2.8", {"q": a.q, "file": a.file}, res, "verified", summary="minimal")
    return em.report("Thm2.8", {"q": a.q, "file": a.file}, res, "violated",
                     {"removable_vertices": [list(v) for v in removable]},
                     f"not minimal: {list(removable[0])} can be removed")


def _ps_lines(report):
    return [{"t": ln.t, "lhs": ln.lhs, "rhs": ln.rhs, "holds": ln.holds, "tight": ln.tight}
            for ln in report.lines]


def cmd_ps_check(a, em):
    _, verts, _ = _read_vertices(a.file)
    try:
        beta = barycentric.barycentric_coords(verts)
        rep = barycentric.ps_check(beta, a.q)
    except LCFanoError as exc:
        raise UsageError(str(exc)) from exc
    res = {"beta": beta.beta, "sorted": beta.sorted, "lines": _ps_lines(rep), "holds": rep.holds}
    if rep.holds:
        return em.report("Thm3.1", {"q": a.q, "file": a.file}, res, "verified",
                         summary="all Product-Sum inequalities hold")
    return em.report("Thm3.1", {"q": a.q, "file": a.file}, res, "violated",
                     {"failing_t": rep.failing()}, f"fails at t = {rep.failing()}")


def cmd_ps_witness(a, em):
    _, verts, is_lattice = _read_vertices(a.file)
    if not is_lattice:
        raise UsageError("ps-witness needs a lattice simplex")
    inputs = {"q": a.q, "file": a.file, "radius": a.radius}
    try:
        w = barycentric.ps_witness(verts, a.q, a.radius, _cap(a))
    except PreconditionFailed as exc:
        return em.report("Thm3.1", inputs, {"witness": None, "reason": str(exc)}, "indecisive",
                         summary=str(exc))
    except NotFound as exc:
        return em.report("Thm3.1", inputs, {"witness": None, "reason": str(exc)}, "indecisive",
                         summary=str(exc))
    structured = barycentric.ps_witness_structured(verts, a.q, a.radius)
    res = {"witness": list(w), "structured": structured is not None and structured[0] == w}
    if structured is not None:
        res["m_i"] = list(structured[1])
        res["m"] = structured[2]
    return em.report("Thm3.1", inputs, res, "verified", summary=f"witness {list(w)}")


def cmd_minimize(a, em):
    res_obj = optimizer.minimize_candidates(a.d, a.q, a.target)
    exact = optimizer.closed_form_minimum(a.d, a.q, a.target)
    res = {"target": res_obj.target, "optimal_l": res_obj.optimal_l,
           "optimal_value": res_obj.optimal_value, "closed_form": exact,
           "minimizer": res_obj.table[res_obj.optimal_l - 1].x,
           "exception": res_obj.exception_flag, "notes": res_obj.notes,
           "table": [{"l": c.l, "value": c.value(res_obj.target)} for c in res_obj.table]}
    ok = res_obj.matches_closed_form
    counter = None if ok else {"optimal_value": res_obj.optimal_value, "closed_form": exact}
    if a.oracle:
        try:
            orc = optimizer.grid_oracle(a.d, a.q, a.target, parse(a.step))
        except (LCFanoError, ValueError) as exc:
            raise UsageError(str(exc)) from exc
        res["oracle"] = {"step": parse(a.step), "value": orc.value, "argmin": orc.argmin,
                         "relative_gap": (orc.value - exact) / exact,
                         "points_checked": orc.points_checked}
        if orc.value < exact:
            ok = False
            counter = {"oracle_value": orc.value, "argmin": orc.argmin}
    tag = "Thm3.6" if res_obj.target == "f_d1" else "Thm3.7"
    return em.report(tag, {"d": a.d, "q": a.q, "target": a.target}, res,
                     "verified" if ok else "violated", counter,
                     f"min {res_obj.target} = {_plain(res_obj.optimal_value)} at l = {res_obj.optimal_l}")


def cmd_verify_prop44(a, em):
    ok, failures = extremal.verify_normal_form_map(a.d, a.q)
    phi, _, t = extremal.normal_form_maps(a.d, a.q)
    res = {"ok": ok, "phi": phi, "translation": t}
    return em.report("Prop4.4", {"d": a.d, "q": a.q}, res, "verified" if ok else "violated",
                     {"failures": failures}, "normal-form map verified" if ok else "; ".join(failures))


def cmd_sweep5(a, em):
    recs = decomposition.section5_sweep(a.dmax, a.qmax, jobs=a.jobs)
    short = decomposition.section5_sweep(a.dmax, a.qmax, shortcut=True, jobs=a.jobs)
    for r in recs:
        em.line(r.as_dict())
    bad = decomposition.sweep_violations(recs) + decomposition.sweep_violations(short)
    res = {"records": len(recs), "maximized_records": len(short), "violations": len(bad)}
    return em.report("Prop5.2", {"dmax": a.dmax, "qmax": a.qmax}, res,
                     "violated" if bad else "verified", bad[0].as_dict() if bad else None,
                     f"{len(recs)} shapes, {len(bad)} violations")


def cmd_decompose(a, em):
    P, _ = _polytope(a.file, lattice_required=True)
    inputs = {"q": a.q, "file": a.file}
    try:
        D = decomposition.decompose_minimal(P, a.q, _cap(a))
    except LCFanoError as exc:
        if isinstance(exc, EnumerationTooLarge):
            raise
        return em.report("Thm2.8", inputs, {"error": type(exc).__name__, "reason": str(exc)},
                         "indecisive", summary=str(exc))
    res = {"simplices": [[list(v) for v in D.simplex_vertices(i)] for i in range(D.t)],
           "d_list": list(D.d_list), "r_list": list(D.r_list),
           "relations_hold": decomposition.check_decomp_relations(D)}
    if D.t == 2 and D.d_list == (P.dim - 1, P.dim - 1):
        chk = decomposition.two_simplex_bound_check(P, D.simplex_vertices(0), D.simplex_vertices(1), a.q)
        res["two_simplex"] = {"dual_volume": chk.dual_volume, "rhs": chk.rhs, "bound": chk.bound,
                              "holds": chk.holds, "below_bound": chk.below_bound}
    return em.report("Thm2.8", inputs, res, "verified",
                     summary=f"t = {D.t}, d_i = {list(D.d_list)}, r_i = {list(D.r_list)}")


def cmd_approx_k(a, em):
    try:
        tol = Fraction(a.tol)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--tol: {exc}") from exc
    if tol <= 0:
        raise UsageError("--tol must be positive")
    inputs = {"q": a.q, "nmax": a.nmax, "tol": tol}
    try:
        k = sylvester.approx_constant(a.q, tol)
        sandwich = sylvester.verify_sandwich(a.q, a.nmax)
    except LCFanoError as exc:
        return em.report("Lemma5.1", inputs, {"reason": str(exc)}, "indecisive", summary=str(exc))
    res = {"lower": k.lower, "upper": k.upper, "terms_used": k.terms_used,
           "bracket_holds": k.bracket_holds(), "sandwich_holds": sandwich}
    ok = sandwich and k.bracket_holds()
    return em.report("Lemma5.1", inputs, res, "verified" if ok else "violated",
                     {"q": a.q}, f"K in [{float(k.lower):.12f}, {float(k.upper):.12f}]")


def cmd_verify_all(a, em):
    results = verify.run_all(a.dmax, a.qmax, samples=a.samples, jobs=a.jobs)
    for r in results:
        status = "verified" if r.passed else "violated"
        em.report(f"criterion{r.number}", {"dmax": a.dmax, "qmax": a.qmax},
                  {"name": r.name, "detail": r.detail, "seconds": round(r.seconds, 3)},
                  status, r.counterexample, r.line())
    failed = [r.number for r in results if not r.passed]
    return em.report("all", {"dmax": a.dmax, "qmax": a.qmax},
                     {"passed": len(results) - len(failed), "failed": failed},
                     "violated" if failed else "verified", {"failed": failed},
                     f"{len(results) - len(failed)}/{len(results)} criteria verified")


# -- parser -----------------------------------------------------------------

def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _dim(text):
    v = _positive(text)
    if v < 2:
        raise argparse.ArgumentTypeError(f"dimension must be at least 2, got {text!r}")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--float", action="store_true", default=argparse.SUPPRESS,
                        help="add decimal renderings next to the exact values")
    common.add_argument("--jobs", type=_positive, default=argparse.SUPPRESS,
                        help="worker processes for sweeps")
    p = _Parser(prog="lcfano", description="Exact checks for 1/q-lc Fano polytopes and their volume bounds.",
                parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text, parents=[common])
        sp.set_defaults(func=fn)
        return sp

    sp = add("useq", cmd_useq, "sequence values u(1..n, q)")
    sp.add_argument("--q", type=_positive, required=True)
    sp.add_argument("--n", type=_positive, required=True)

    sp = add("bound", cmd_bound, "closed-form dual volume bound")
    sp.add_argument("--d", type=_dim, required=True)
    sp.add_argument("--q", type=_positive, required=True)

    sp = add("extremal", cmd_extremal, "build an extremal simplex")
    sp.add_argument("--d", type=_dim, required=True)
    sp.add_argument("--q", type=_positive, required=True)
    sp.add_argument("--kind", choices=extremal.KINDS, required=True)

    for name, fn, text in (("weights", cmd_weights, "Conrad weights of a lattice simplex"),
                           ("volume", cmd_volume, "normalized volume"),
                           ("dual", cmd_dual, "dual polytope and its normalized volume"),
                           ("check-fano", cmd_check_fano, "Fano test")):
        sp = add(name, fn, text)
        sp.add_argument("file")

    for name, fn, text in (("check-lc", cmd_check_lc, "1/q-lc test by box scan"),
                           ("check-minimal", cmd_check_minimal, "minimality test"),
                           ("ps-check", cmd_ps_check, "Product-Sum inequalities at the origin"),
                           ("ps-witness", cmd_ps_witness, "lattice point from a failing PS inequality"),
                           ("decompose", cmd_decompose, "decompose a minimal non-simplex polytope")):
        sp = add(name, fn, text)
        sp.add_argument("--q", type=_positive, required=True)
        sp.add_argument("file")
        sp.add_argument("--cap", type=_positive, default=None)
        if name == "ps-witness":
            sp.add_argument("--radius", type=_positive, default=50)

    sp = add("minimize", cmd_minimize, "exact minimum of f_d or f_{d+1} over X(d, q)")
    sp.add_argument("--d", type=_dim, required=True)
    sp.add_argument("--q", type=_positive, required=True)
    sp.add_argument("--target", choices=("d", "d1"), required=True)
    sp.add_argument("--oracle", action="store_true")
    sp.add_argument("--step", default="1/200")

    sp = add("verify-prop44", cmd_verify_prop44, "check the normal-form map of the extremal dual")
    sp.add_argument("--d", type=_dim, required=True)
    sp.add_argument("--q", type=_positive, required=True)

    sp = add("sweep5", cmd_sweep5, "multinomial bound over all decomposition shapes")
    sp.add_argument("--dmax", type=_dim, required=True)
    sp.add_argument("--qmax", type=_positive, required=True)

    sp = add("approx-k", cmd_approx_k, "rigorous enclosure of K and the sandwich check")
    sp.add_argument("--q", type=_positive, required=True)
    sp.add_argument("--nmax", type=_positive, default=6)
    sp.add_argument("--tol", default="1/1000000")

    sp = add("verify-all", cmd_verify_all, "run the acceptance checks")
    sp.add_argument("--dmax", type=_dim, default=6)
    sp.add_argument("--qmax", type=_positive, default=4)
    sp.add_argument("--samples", type=_positive, default=10_000,
                    help="random 3-simplices for the Product-Sum check")
    return p


def main(argv=None, out=None, err=None):
    parser = build_parser()
    saved = sys.stderr
    if err is not None:
        sys.stderr = err
    try:
        args = parser.parse_args(argv)
        if args.command in ("approx-k", "verify-prop44") and args.q < 2:
            parser.error(f"argument --q: {args.command} needs q >= 2")
        if args.command == "verify-prop44" and args.d < 3:
            parser.error("argument --d: verify-prop44 needs d >= 3")
        if args.command == "sweep5" and args.qmax < 2:
            parser.error("argument --qmax: the sweep needs qmax >= 2")
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE
    finally:
        sys.stderr = saved
    args.float = getattr(args, "float", False)
    args.jobs = getattr(args, "jobs", 1)
    em = Emitter(args, out, err)
    try:
        return args.func(args, em)
    except UsageError as exc:
        print(f"lcfano {args.command}: error: {exc}", file=em.err)
        return USAGE
    except EnumerationTooLarge as exc:
        return em.report("cap", {"command": args.command}, {"reason": str(exc), "cap": exc.cap},
                         "indecisive", summary=str(exc))


def entry():
    sys.exit(main())
