"""Conway and Jones polynomials from planar diagram codes.

A crossing ``(i, j, k, l, sign)`` lists its four edge labels counterclockwise,
starting from the incoming under-edge; ``k`` is the outgoing under-edge.  On
a positive crossing the over strand runs from ``l`` to ``j``, on a negative
one from ``j`` to ``l``.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

import sympy

MAX_STATE_SUM_CROSSINGS = 12


class PDError(ValueError):
    pass


@dataclass(frozen=True)
class PDCode:
    crossings: tuple  # of (i, j, k, l, sign)

    def __post_init__(self):
        counts: dict = {}
        for x in self.crossings:
            if len(x) != 5 or x[4] not in (1, -1):
                raise PDError(f"bad crossing {x!r}")
            for e in x[:4]:
                counts[e] = counts.get(e, 0) + 1
        bad = [e for e, n in counts.items() if n != 2]
        if bad:
            raise PDError(f"edge labels not used exactly twice: {sorted(bad)}")
        if self.crossings and _component_count(self) != 1:
            raise PDError("diagram has more than one component")

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def writhe(self) -> int:
        return sum(x[4] for x in self.crossings)

    def to_json(self) -> dict:
        return {"crossings": [[*x[:4], "+" if x[4] > 0 else "-"] for x in self.crossings]}


def _next_edges(pd: PDCode) -> dict:
    """Successor of each edge along the orientation."""
    nxt = {}
    for i, j, k, l, s in pd.crossings:
        nxt[i] = k
        if s > 0:
            nxt[l] = j
        else:
            nxt[j] = l
    return nxt


def _component_count(pd: PDCode) -> int:
    nxt = _next_edges(pd)
    if len(nxt) != 2 * pd.n:
        raise PDError("crossing data does not orient every edge")
    seen, comps = set(), 0
    for e in nxt:
        if e in seen:
            continue
        comps += 1
        while e not in seen:
            seen.add(e)
            e = nxt[e]
    return comps


def parse_pd(data) -> PDCode:
    try:
        rows = data["crossings"]
        out = []
        for r in rows:
            *labels, s = r
            sign = {"+": 1, "-": -1, 1: 1, -1: -1}[s]
            out.append((*map(int, labels), sign))
    except (KeyError, TypeError, ValueError) as exc:
        raise PDError(f"malformed PD data: {exc}") from None
    return PDCode(tuple(out))


def load_pd(path) -> PDCode:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise PDError(f"{path}: {exc}") from None
    return parse_pd(data)


def bundled_pd(name: str) -> PDCode:
    f = resources.files("kint") / "data" / "pd" / f"{name}.json"
    if not f.is_file():
        raise KeyError(f"no bundled PD code {name!r}")
    return parse_pd(json.loads(f.read_text()))


def mirror_pd(pd: PDCode) -> PDCode:
    out = []
    for i, j, k, l, s in pd.crossings:
        out.append((l, i, j, k, -1) if s > 0 else (j, k, l, i, 1))
    return PDCode(tuple(out))


def relabel(pd: PDCode) -> PDCode:
    """Number edges 1..2n consecutively along the orientation."""
    if not pd.crossings:
        return pd
    nxt = _next_edges(pd)
    start = min(nxt)
    order, e = {}, start
    while e not in order:
        order[e] = len(order) + 1
        e = nxt[e]
    return PDCode(tuple(tuple(order[e] for e in x[:4]) + (x[4],) for x in pd.crossings))


def pd_from_braid(n: int, word) -> PDCode:
    """PD code of the closure of a braid word (generators +-i, strands 1..n)."""
    label = list(range(1, n + 1))
    fresh = n
    crossings = []
    for g in word:
        i = abs(g) - 1
        a, b = label[i], label[i + 1]
        tl, tr = fresh + 1, fresh + 2
        fresh += 2
        if g > 0:  # bottom-left strand crosses over
            crossings.append((b, tr, tl, a, 1))
        else:
            crossings.append((a, b, tr, tl, -1))
        label[i], label[i + 1] = tl, tr
    # close: top label at each position is the bottom label there
    alias = {label[p]: p + 1 for p in range(n)}
    crossings = [tuple(alias.get(e, e) for e in x[:4]) + (x[4],) for x in crossings]
    if not crossings:
        if n != 1:
            raise PDError("crossingless closure of several strands is a link")
        return PDCode(())
    return relabel(PDCode(tuple(crossings)))


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """Finite map exponent -> Fraction in one variable."""

    __slots__ = ("terms", "var")

    def __init__(self, terms=None, var="t"):
        self.var = var
        self.terms = {int(e): Fraction(c) for e, c in (terms or {}).items() if c}

    def __mul__(self, other):
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out, self.var)

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self.var)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __getitem__(self, e):
        return self.terms.get(e, Fraction(0))

    def substitute_inverse(self) -> "LaurentPoly":
        return LaurentPoly({-e: c for e, c in self.terms.items()}, self.var)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            parts.append(f"{c}" if e == 0 else f"{c}*{self.var}^{e}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# Alexander / Conway


def alexander(pd: PDCode) -> LaurentPoly:
    """Alexander polynomial, symmetric with value 1 at t = 1."""
    if not pd.crossings:
        return LaurentPoly({0: 1})
    t = sympy.Symbol("t")
    parent = {}

    def find(e):
        while parent.get(e, e) != e:
            e = parent[e]
        return e

    for i, j, k, l, _s in pd.crossings:
        parent.setdefault(j, j)
        parent.setdefault(l, l)
        rj, rl = find(j), find(l)
        if rj != rl:
            parent[rj] = rl
    edges = sorted({e for x in pd.crossings for e in x[:4]})
    arcs = sorted({find(e) for e in edges})
    col = {a: c for c, a in enumerate(arcs)}
    m = sympy.zeros(pd.n, len(arcs))
    for r, (i, j, k, l, s) in enumerate(pd.crossings):
        over, u_in, u_out = col[find(j)], col[find(i)], col[find(k)]
        if s > 0:
            m[r, over] += 1 - t
            m[r, u_in] += t
            m[r, u_out] += -1
        else:
            m[r, over] += t - 1
            m[r, u_in] += 1
            m[r, u_out] += -t
    minor = m[1:, 1:] if len(arcs) > 1 else sympy.Matrix([[1]])
    det = sympy.expand(minor.det(method="berkowitz"))
    if det == 0:
        raise PDError("vanishing Alexander determinant (not a knot diagram?)")
    poly = sympy.Poly(det * t ** (2 * pd.n), t)
    coeffs = {e[0] - 2 * pd.n: Fraction(int(c.p), int(c.q)) for e, c in poly.terms()}
    lo, hi = min(coeffs), max(coeffs)
    shift = -(lo + hi) // 2
    if (lo + hi) % 2:
        raise PDError("Alexander polynomial not symmetrisable")
    coeffs = {e + shift: c for e, c in coeffs.items()}
    total = sum(coeffs.values())
    if abs(total) != 1:
        raise PDError(f"Alexander polynomial has value {total} at t=1")
    return LaurentPoly({e: c / total for e, c in coeffs.items()})


def conway(pd: PDCode) -> LaurentPoly:
    """Conway polynomial in z, from the symmetric Alexander polynomial."""
    delta = alexander(pd)
    z = sympy.Symbol("z")
    s = z**2 + 2  # t + 1/t
    p = [sympy.Integer(2), s]
    top = max(delta.terms)
    while len(p) <= top:
        p.append(sympy.expand(s * p[-1] - p[-2]))
    expr = sympy.Rational(delta[0].numerator, delta[0].denominator)
    for k in range(1, top + 1):
        c = delta[k]
        expr += sympy.Rational(c.numerator, c.denominator) * p[k]
    poly = sympy.Poly(sympy.expand(expr), z)
    return LaurentPoly({e[0]: Fraction(int(c.p), int(c.q)) for e, c in poly.terms()}, "z")


def conway_coeff(pd: PDCode, n: int) -> Fraction:
    return conway(pd)[n]


# ---------------------------------------------------------------------------
# Jones


def kauffman_bracket(pd: PDCode) -> LaurentPoly:
    """Bracket in the variable A, normalised so the empty loop is 1."""
    n = pd.n
    if n == 0:
        return LaurentPoly({0: 1}, "A")
    if n > MAX_STATE_SUM_CROSSINGS:
        raise PDError(f"state sum limited to {MAX_STATE_SUM_CROSSINGS} crossings")
    delta = LaurentPoly({2: -1, -2: -1}, "A")
    loop_powers = [LaurentPoly({0: 1}, "A")]
    for _ in range(2 * n):
        loop_powers.append(loop_powers[-1] * delta)
    total: dict = {}
    edges = sorted({e for x in pd.crossings for e in x[:4]})
    for state in itertools.product((0, 1), repeat=n):
        parent = {e: e for e in edges}

        def find(e):
            while parent[e] != e:
                parent[e] = parent[parent[e]]
                e = parent[e]
            return e

        def join(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for (i, j, k, l, _s), choice in zip(pd.crossings, state):
            if choice == 0:  # A-smoothing
                join(i, j)
                join(k, l)
            else:
                join(i, l)
                join(j, k)
        loops = len({find(e) for e in edges})
        a_count = n - sum(state)
        key = (a_count - (n - a_count), loops)
        total[key] = total.get(key, 0) + 1
    out = LaurentPoly({}, "A")
    for (e, loops), mult in total.items():
        out = out + LaurentPoly({e: mult}, "A") * loop_powers[loops - 1]
    return out


def jones(pd: PDCode) -> LaurentPoly:
    """Jones polynomial V(t); the positive trefoil gives t + t^3 - t^4."""
    br = kauffman_bracket(pd)
    w = pd.writhe
    factor = LaurentPoly({-3 * w: (-1) ** (w % 2)}, "A")
    f = br * factor
    out = {}
    for e, c in f.terms.items():
        if e % 4:
            raise PDError("Jones polynomial of a knot has integer exponents")
        out[-e // 4] = c
    return LaurentPoly(out, "t")


def jones_taylor(pd: PDCode, N: int) -> list:
    """j_0..j_N with V(e^h) = sum j_n h^n."""
    if N > 6:
        raise ValueError("expansion tabulated through order 6")
    v = jones(pd)
    return [sum((c * Fraction(e) ** n for e, c in v.terms.items()), Fraction(0)) / math.factorial(n) for n in range(N + 1)]


def invariants(pd: PDCode) -> dict:
    """The inputs of the degree <= 4 canonical expansion."""
    c = conway(pd)
    j = jones_taylor(pd, 4)
    return {"c2": c[2], "c4": c[4], "j2": j[2], "j3": j[3], "j4": j[4]}


# ---------------------------------------------------------------------------
# canonical expansion fit


FEATURES = {
    2: ("c2",),
    3: ("j3",),
    4: ("j4", "c4", "c2^2", "c2"),
}


def feature_vector(inv: dict, degree: int) -> list:
    vals = {"c2": inv["c2"], "c4": inv["c4"], "j3": inv["j3"], "j4": inv["j4"], "c2^2": inv["c2"] ** 2}
    return [vals[f] for f in FEATURES[degree]]


class UnderdeterminedFit(ValueError):
    pass


def fit_linear_map(samples) -> sympy.Matrix:
    """Exact affine map from feature vectors to coefficient vectors.

    ``samples`` holds ``(features, coefficients)`` pairs.  Returns the matrix
    ``M`` with ``coefficients = M * [1, *features]``; raises
    :class:`UnderdeterminedFit` if the features do not pin ``M`` down.
    """
    X = sympy.Matrix([[1, *[_q(v) for v in f]] for f, _ in samples])
    Y = sympy.Matrix([[_q(v) for v in c] for _, c in samples])
    if X.rank() < X.cols:
        raise UnderdeterminedFit(f"feature matrix has rank {X.rank()} < {X.cols} unknowns per coordinate")
    # exact least squares; consistent data gives the exact map
    M = (X.T * X).inv() * X.T * Y
    if X * M != Y:
        raise ValueError("samples are not consistent with an affine map")
    return M.T


def predict(M: sympy.Matrix, features) -> list:
    v = M * sympy.Matrix([1, *[_q(x) for x in features]])
    return [Fraction(int(x.p), int(x.q)) for x in v]


def _q(x):
    if isinstance(x, Fraction):
        return sympy.Rational(x.numerator, x.denominator)
    from .coeffring import Coeff

    if isinstance(x, Coeff):
        if not x.is_rational():
            raise ValueError(f"irrational coefficient {x}")
        return _q(x.rational_part())
    return sympy.Rational(x)


def canonical_consistency_check(knots, cap: int = 4, fit_names=None, degrees=(2, 3, 4)) -> dict:
    """Check the degree <= 4 expansion of I' against skein invariants.

    ``knots`` maps names to ``(presentation, pd)``.  The degree-2 coefficient
    must be ``sign * (-c2)`` with one global sign; degrees 3 and 4 are fitted
    on ``fit_names`` (default: all knots) and verified on the rest.
    """
    from .evaluator import final_I_mult

    data = {}
    for name, (pres, pd) in knots.items():
        I = final_I_mult(pres, cap)
        vecs = {}
        for n in range(2, cap + 1):
            t = I.table(n)
            vecs[n] = [I.coords.get((n, i), Fraction(0)) for i in range(t.dim)]
        data[name] = (invariants(pd), vecs)
    report = {"degree2": {}, "fits": {}, "checks": {}, "ok": True}

    # degree 2: one global sign
    sign = None
    for name, (inv, vecs) in data.items():
        coeff = _q(vecs[2][0])
        expected = -_q(inv["c2"])
        if sign is None and expected != 0:
            sign = 1 if coeff == expected else -1
        ok = coeff == (sign or 1) * expected
        report["degree2"][name] = {"coeff": str(coeff), "minus_c2": str(expected), "ok": bool(ok)}
        report["ok"] &= bool(ok)
    report["sign"] = sign or 1

    fit_names = list(fit_names or data)
    for n in degrees:
        if n < 3 or n > cap:
            continue
        samples = [(feature_vector(data[k][0], n), data[k][1][n]) for k in fit_names]
        try:
            M = fit_linear_map(samples)
        except UnderdeterminedFit as exc:
            report["fits"][n] = {"error": str(exc)}
            report["ok"] = False
            continue
        report["fits"][n] = {"map": [[str(x) for x in M.row(r)] for r in range(M.rows)], "features": ["1", *FEATURES[n]]}
        for name, (inv, vecs) in data.items():
            if name in fit_names:
                continue
            pred = predict(M, feature_vector(inv, n))
            got = [_q(x) for x in vecs[n]]
            ok = [sympy.Rational(p.numerator, p.denominator) for p in pred] == got
            report["checks"][f"{name}/{n}"] = {"predicted": [str(p) for p in pred], "computed": [str(g) for g in got], "ok": ok}
            report["ok"] &= ok
    return report
