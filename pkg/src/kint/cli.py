"""Command-line front end: ``kint compute|dims|verify|analytic|skein``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import analytic, evaluator, skein
from .algops import Series, grouplike_defect, mirror_R, reverse_S
from .associator import AssocContext, phi
from .coeffring import Coeff, numeric_value, render, zeta_residual
from .diagrams import Skeleton, render_key
from .spaces import SpaceContext, basis

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_VALIDATION, EXIT_CAP, EXIT_CONVERGENCE = 0, 1, 2, 3, 4, 5
MAX_CAP = 5
NORMALIZATIONS = ("preliminary", "final", "final-multiplicative", "framed")
SUITES = ("trefoil", "wheels", "rationality", "grouplike", "mirror", "hump", "connected-sum", "canonical", "associator")


class CapError(ValueError):
    pass


def _context():
    return SpaceContext() if os.environ.get("KINT_CACHE_DIR") else None


def _resolve(path: str) -> Path | str:
    """A readable file, or the stem of a bundled data file."""
    p = Path(path)
    if p.is_file():
        return p
    stem = p.name[:-5] if p.name.endswith(".json") else p.name
    return stem


def _presentation(path: str):
    src = _resolve(path)
    if isinstance(src, Path):
        return evaluator.load_presentation(src)
    try:
        return evaluator.bundled(src)
    except KeyError:
        raise FileNotFoundError(path) from None


def _pd(path: str):
    src = _resolve(path)
    if isinstance(src, Path):
        return skein.load_pd(src)
    try:
        return skein.bundled_pd(src)
    except KeyError:
        raise FileNotFoundError(path) from None


def _model(path: str):
    src = _resolve(path)
    if isinstance(src, Path):
        return analytic.load_model(src)
    try:
        return analytic.bundled_model(src)
    except KeyError:
        raise FileNotFoundError(path) from None


def _series_doc(z: Series, space: str) -> dict:
    return {
        "degree_cap": z.cap,
        "space": space,
        "terms": [{"diagram": k, "degree": n, "coeff": render(c) if isinstance(c, Coeff) else str(c)} for k, n, c in z.items()],
    }


def _emit(doc, fmt: str):
    if fmt == "json":
        print(json.dumps(doc, indent=2))
    else:
        for t in doc.get("terms", []):
            print(f"{t['diagram'] or '1'}\t{t['degree']}\t{t['coeff']}")


# ---------------------------------------------------------------------------
# compute


def cmd_compute(args) -> int:
    if not 0 <= args.degree <= MAX_CAP:
        raise CapError(f"degree cap {args.degree} outside 0..{MAX_CAP}")
    if args.normalization == "framed" and args.degree > evaluator.FRAMED_CAP:
        raise CapError(f"framed normalization supports degree <= {evaluator.FRAMED_CAP}")
    p = _presentation(args.input)
    evaluator.validate(p)
    ctx = _context()
    fn = {
        "preliminary": evaluator.preliminary_Z,
        "final": evaluator.final_I,
        "final-multiplicative": evaluator.final_I_mult,
        "framed": evaluator.framed_Z,
    }[args.normalization]
    z = fn(p, args.degree, ctx)
    doc = _series_doc(z, "A_circle" if args.normalization == "framed" else "A_prime_circle")
    doc["normalization"] = args.normalization
    if p.name:
        doc["name"] = p.name
    _emit(doc, args.format)
    return EXIT_OK


# ---------------------------------------------------------------------------
# dims


def cmd_dims(args) -> int:
    if not 0 <= args.max_degree <= MAX_CAP:
        raise CapError(f"degree {args.max_degree} outside 0..{MAX_CAP}")
    ctx = _context()
    skels = {"circle": Skeleton.circle(), "line": Skeleton.line()}
    names = list(skels) if args.skeleton == "all" else [args.skeleton]
    framings = {"both": (True, False), "yes": (True,), "no": (False,)}[args.framed]
    print("skeleton\tdegree\tframed\tdimension\tbasis")
    for name in names:
        for framed in framings:
            for n in range(args.max_degree + 1):
                t = basis(skels[name], n, framed, ctx)
                keys = ",".join(render_key(b) or "1" for b in t.basis)
                print(f"{name}\t{n}\t{'yes' if framed else 'no'}\t{t.dim}\t{keys}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify suites: each returns (ok, report lines)


def _check(lines, label, ok, expected=None, got=None):
    lines.append(f"{'ok  ' if ok else 'FAIL'} {label}")
    if not ok and expected is not None:
        lines.append(f"     expected: {expected}")
        lines.append(f"     computed: {got}")
    return ok


def suite_trefoil(cap, ctx):
    lines = []
    t = evaluator.bundled("trefoil")
    z = evaluator.preliminary_Z(t, 2, ctx).coefficient("1212")
    h = evaluator.hump_Z(2, ctx).coefficient("1212")
    i = evaluator.final_I_mult(t, 2, ctx).coefficient("1212")
    ok = _check(lines, f"Z(trefoil) on 1212 = {render(z)}", z == Coeff.rational(Fraction(25, 24)), "25/24", render(z))
    ok &= _check(lines, f"Z(hump) on 1212 = {render(h)}", h == Coeff.rational(Fraction(1, 24)), "1/24", render(h))
    ok &= _check(lines, f"I'(trefoil) on 1212 = {render(i)}", i == Coeff.rational(1), "1", render(i))
    return ok, lines


def suite_wheels(cap, ctx):
    cap = min(cap, 4)
    lines = []
    w = evaluator.wheels_unknot(cap, ctx)
    f = evaluator.final_I(evaluator.bundled("unknot"), cap, ctx)
    ok = _check(lines, f"chi(exp(b2 w2 + b4 w4)) = I(unknot) through degree {cap}", w == f, w, f)
    return ok, lines


RATIONALITY_KNOTS = ("trefoil", "mirror_trefoil", "figure_eight", "trefoil_trefoil")


def suite_rationality(cap, ctx):
    lines, ok = [], True
    for name in RATIONALITY_KNOTS:
        I = evaluator.final_I(evaluator.bundled(name), cap, ctx)
        bad = [k for k, _n, c in I.items() if zeta_residual(c)]
        ok &= _check(lines, f"{name}: zeta residuals vanish through degree {cap}", not bad, [], bad)
    return ok, lines


def suite_grouplike(cap, ctx):
    lines, ok = [], True
    cap = min(cap, 4)
    for name in evaluator.bundled_names():
        d = grouplike_defect(evaluator.preliminary_Z(evaluator.bundled(name), cap, ctx), cap)
        ok &= _check(lines, f"{name}: group-like defect {d}", d == 0, 0, d)
    return ok, lines


def suite_mirror(cap, ctx):
    lines = []
    t = evaluator.bundled("trefoil")
    z = evaluator.preliminary_Z(t, cap, ctx)
    zm = evaluator.preliminary_Z(evaluator.mirror(t), cap, ctx)
    zr = evaluator.preliminary_Z(evaluator.reverse(t), cap, ctx)
    ok = _check(lines, "Z(mirror trefoil) = mirror_R(Z(trefoil))", zm == mirror_R(z), mirror_R(z), zm)
    ok &= _check(lines, "Z(reversed trefoil) = reverse_S(Z(trefoil))", zr == reverse_S(z), reverse_S(z), zr)
    f8 = evaluator.final_I(evaluator.bundled("figure_eight"), cap, ctx)
    odd = [k for k, n, _c in f8.items() if n % 2]
    ok &= _check(lines, "I(figure-eight) has no odd-degree part", not odd, [], odd)
    return ok, lines


def suite_hump(cap, ctx):
    lines = []
    t = evaluator.bundled("trefoil")
    lhs = evaluator.preliminary_Z(evaluator.add_hump(t), cap, ctx)
    rhs = evaluator.hump_Z(cap, ctx) * evaluator.preliminary_Z(t, cap, ctx)
    ok = _check(lines, "Z(trefoil with hump) = Z(H) Z(trefoil)", lhs == rhs, rhs, lhs)
    return ok, lines


def suite_connected_sum(cap, ctx):
    lines = []
    t = evaluator.final_I_mult(evaluator.bundled("trefoil"), cap, ctx)
    tt = evaluator.final_I_mult(evaluator.bundled("trefoil_trefoil"), cap, ctx)
    ok = _check(lines, "I'(trefoil # trefoil) = I'(trefoil)^2", tt == t * t, t * t, tt)
    built = evaluator.final_I_mult(evaluator.connected_sum(evaluator.bundled("trefoil"), evaluator.bundled("figure_eight")), cap, ctx)
    f8 = evaluator.final_I_mult(evaluator.bundled("figure_eight"), cap, ctx)
    ok &= _check(lines, "I'(trefoil # figure-eight) = I'(trefoil) I'(figure-eight)", built == t * f8, t * f8, built)
    return ok, lines


CANONICAL_FIT = ("unknot", "trefoil", "figure_eight")
CANONICAL_EVAL = ("mirror_trefoil", "trefoil_trefoil")


def suite_canonical(cap, ctx):
    cap = min(cap, 4)
    knots = {n: (evaluator.bundled(n), skein.bundled_pd(n)) for n in CANONICAL_FIT + CANONICAL_EVAL}
    rep = skein.canonical_consistency_check(knots, cap, fit_names=CANONICAL_FIT)
    lines = []
    _check(lines, f"degree 2 equals {rep['sign']:+d} * (-c2) for every knot", all(v["ok"] for v in rep["degree2"].values()))
    for n, fit in sorted(rep["fits"].items()):
        if "error" in fit:
            _check(lines, f"degree {n} fit on {', '.join(CANONICAL_FIT)}: {fit['error']}", False)
        else:
            lines.append(f"     degree {n} map over {fit['features']}: {fit['map']}")
    for key, chk in sorted(rep["checks"].items()):
        _check(lines, f"{key} predicted {chk['predicted']}", chk["ok"], chk["predicted"], chk["computed"])
    return rep["ok"], lines


def suite_associator(cap, ctx):
    ctx_a = AssocContext(min(cap, 5))
    lines = [f"{render_key(k)}\t{render(c)}" for k, c in sorted(phi(ctx_a).terms.items())]
    return True, lines


SUITE_FUNCS = {
    "trefoil": suite_trefoil,
    "wheels": suite_wheels,
    "rationality": suite_rationality,
    "grouplike": suite_grouplike,
    "mirror": suite_mirror,
    "hump": suite_hump,
    "connected-sum": suite_connected_sum,
    "canonical": suite_canonical,
    "associator": suite_associator,
}


def cmd_verify(args) -> int:
    if not 0 <= args.degree <= MAX_CAP:
        raise CapError(f"degree cap {args.degree} outside 0..{MAX_CAP}")
    ok, lines = SUITE_FUNCS[args.suite](args.degree, _context())
    for line in lines:
        print(line)
    print(f"{args.suite}: {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# analytic


def _numeric_terms(items) -> list:
    return [{"diagram": k, "degree": n, "re": complex(c).real, "im": complex(c).imag} for k, n, c in items]


def cmd_analytic(args) -> int:
    doc: dict = {}
    if args.braid:
        if not 0 <= args.degree <= 3:
            raise CapError("braid transport supports degree <= 3")
        link = _model(args.braid)
        z, diag = analytic.braid_Z(link, args.degree, tol=args.tol or 1e-6)
        doc["kind"] = "braid"
        doc["terms"] = [
            {"diagram": render_key(k), "degree": sum(len(w) for w in k) // 2, "re": c.real, "im": c.imag}
            for k, c in sorted(z.terms.items())
        ]
        doc["diagnostics"] = diag
    elif args.link:
        link = _model(args.link)
        doc["kind"] = "link"
        doc["linking_number"] = analytic.linking_number(link)
    elif args.morse:
        if not 0 <= args.degree <= 2:
            raise CapError("Morse integrals support degree <= 2")
        link = _model(args.morse)
        tol = args.tol or 2e-2
        if args.window:
            res = analytic.morse_Z_short(link, tuple(args.window), args.degree, tol=tol)
        else:
            res = analytic.morse_Z(link, args.degree, tol=tol)
        doc["kind"] = "morse"
        doc["terms"] = _numeric_terms(res.series.items())
        doc["diagnostics"] = res.diagnostics
        doc["components"] = [{"intervals": list(c.intervals), "pairings": c.pairings} for c in res.components]
        if args.compare:
            exact = evaluator.preliminary_Z(_presentation(args.compare), args.degree, _context())
            doc["deviation"] = analytic.compare(res.series, exact)
            doc["exact"] = [{"diagram": k, "degree": n, "value": complex(numeric_value(c)).real} for k, n, c in exact.items()]
    if args.linking and not args.link:
        doc["linking_number"] = analytic.linking_number(_model(args.braid or args.morse))
    print(json.dumps(doc, indent=2))
    if "deviation" in doc and doc["deviation"] > (args.tol or 2e-2):
        return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------------------
# skein


def cmd_skein(args) -> int:
    pd = _pd(args.input)
    con = skein.conway(pd)
    jon = skein.jones(pd)
    jt = skein.jones_taylor(pd, args.order)
    doc = {
        "crossings": len(pd.crossings),
        "writhe": pd.writhe,
        "conway": {str(k): str(v) for k, v in sorted(con.terms.items())},
        "jones": {str(k): str(v) for k, v in sorted(jon.terms.items())},
        "c": {str(n): str(skein.conway_coeff(pd, n)) for n in range(0, 5)},
        "j": {str(n): str(v) for n, v in enumerate(jt)},
    }
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        for key in ("crossings", "writhe"):
            print(f"{key}\t{doc[key]}")
        for key in ("conway", "jones", "c", "j"):
            print(f"{key}\t" + " ".join(f"{e}:{v}" for e, v in doc[key].items()))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kint", description="Truncated Kontsevich integral of knots.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="combinatorial integral of a sliced presentation")
    c.add_argument("--input", required=True, help="presentation JSON (or a bundled name)")
    c.add_argument("--degree", type=int, default=4)
    c.add_argument("--normalization", choices=NORMALIZATIONS, default="final-multiplicative")
    c.add_argument("--format", choices=("json", "text"), default="json")
    c.set_defaults(func=cmd_compute)

    d = sub.add_parser("dims", help="dimensions and bases of the chord diagram spaces")
    d.add_argument("--skeleton", choices=("circle", "line", "all"), default="all")
    d.add_argument("--max-degree", type=int, default=4)
    d.add_argument("--framed", choices=("both", "yes", "no"), default="both")
    d.set_defaults(func=cmd_dims)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=SUITES, required=True)
    v.add_argument("--degree", type=int, default=4)
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("analytic", help="numeric iterated integrals")
    g = a.add_mutually_exclusive_group(required=True)
    g.add_argument("--braid")
    g.add_argument("--morse")
    g.add_argument("--link")
    a.add_argument("--degree", type=int, default=2)
    a.add_argument("--linking", action="store_true")
    a.add_argument("--compare", help="presentation to compare a Morse result against")
    a.add_argument("--window", type=float, nargs=2, metavar=("LO", "HI"), help="drop long chords at these heights")
    a.add_argument("--tol", type=float)
    a.set_defaults(func=cmd_analytic)

    s = sub.add_parser("skein", help="Conway and Jones data of a PD code")
    s.add_argument("--input", required=True)
    s.add_argument("--order", type=int, default=4, help="Taylor order of J(e^t)")
    s.add_argument("--format", choices=("json", "text"), default="json")
    s.set_defaults(func=cmd_skein)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapError as exc:
        print(f"kint: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (evaluator.PresentationError, skein.PDError, analytic.ModelError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"kint: cannot read input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except evaluator.ValidationError as exc:
        print(f"kint: invalid presentation: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except analytic.NonConvergence as exc:
        print(f"kint: no convergence: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
