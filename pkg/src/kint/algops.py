"""Algebra on diagram series: products, series calculus, S_i, Delta_i, coproduct."""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .coeffring import Coeff
from .diagrams import (
    BOTTOM,
    TOP,
    DiagramError,
    Skeleton,
    canonical_words,
    has_isolated_chord,
    key_degree,
    render_key,
)
from .spaces import DiagramSum, SpaceContext, basis, product, reduce as reduce_sum

__all__ = [
    "WordSeries",
    "Series",
    "product",
    "close",
    "coproduct",
    "grouplike_defect",
    "s_op",
    "delta_op",
    "insert_strand",
    "series_exp",
    "series_log",
    "series_inverse",
    "mirror_R",
    "reverse_S",
]


# ---------------------------------------------------------------------------
# generic truncated series calculus
#
# Works on any graded algebra element exposing ``cap``, ``constant()``,
# ``shifted(c)`` (add c times the unit), ``scale(s)`` and ``*``.


def series_exp(x):
    if x.constant():
        raise ValueError("exp needs a series without constant term")
    result = x.shifted(1) - x  # the unit
    term = result
    for k in range(1, x.cap + 1):
        term = (term * x).scale(Fraction(1, k))
        if not term:
            break
        result = result + term
    return result


def series_log(z):
    if z.constant() != 1:
        raise ValueError("log needs a series with constant term 1")
    y = z.shifted(-1)
    result = y.scale(0)
    power = y
    for k in range(1, z.cap + 1):
        if not power:
            break
        result = result + power.scale(Fraction((-1) ** (k + 1), k))
        power = power * y
    return result


def series_inverse(z):
    if z.constant() != 1:
        raise ValueError("inverse needs a series with constant term 1")
    y = z.shifted(-1)
    result = z - y  # unit
    power = result
    for _k in range(1, z.cap + 1):
        power = -(power * y)
        if not power:
            break
        result = result + power
    return result


def series_power(z, k: int):
    if k < 0:
        return series_power(series_inverse(z), -k)
    result = z - z.shifted(-1)
    for _ in range(k):
        result = result * z
    return result


# DiagramSum gets the protocol methods directly.
def _ds_shifted(self, c):
    unit = DiagramSum.unit(self.skeleton, Fraction(1), self.cap)
    one = Coeff.rational(c) if any(isinstance(v, Coeff) for v in self.terms.values()) else Fraction(c)
    return self + unit.scale(one)


DiagramSum.shifted = _ds_shifted


# ---------------------------------------------------------------------------
# free associative algebra on letters


class WordSeries:
    """Noncommutative polynomial truncated at ``cap``; words read top to bottom."""

    __slots__ = ("terms", "cap")

    def __init__(self, terms=None, cap: int = 5):
        self.cap = cap
        self.terms = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            if c and len(w) <= cap:
                v = self.terms.get(w)
                v = c if v is None else v + c
                if v:
                    self.terms[w] = v
                else:
                    self.terms.pop(w, None)

    @classmethod
    def letter(cls, x, cap=5, one=Fraction(1)):
        return cls({(x,): one}, cap)

    @classmethod
    def unit(cls, cap=5, one=Fraction(1)):
        return cls({(): one}, cap)

    def _new(self, terms):
        out = WordSeries(cap=self.cap)
        out.terms = terms
        return out

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w)
            v = c if v is None else v + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return WordSeries._raw(out, min(self.cap, other.cap))

    @classmethod
    def _raw(cls, terms, cap):
        out = cls(cap=cap)
        out.terms = terms
        return out

    def __neg__(self):
        return self._new({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        out = {}
        for w, c in self.terms.items():
            v = c * s
            if v:
                out[w] = v
        return self._new(out)

    def __mul__(self, other):
        if not isinstance(other, WordSeries):
            return self.scale(other)
        cap = min(self.cap, other.cap)
        out: dict = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                if len(wa) + len(wb) > cap:
                    continue
                w = wa + wb
                v = out.get(w)
                c = ca * cb
                v = c if v is None else v + c
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
        return WordSeries._raw(out, cap)

    __rmul__ = scale

    def __eq__(self, other):
        return isinstance(other, WordSeries) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def constant(self):
        return self.terms.get((), 0)

    def shifted(self, c):
        one = Coeff.rational(c) if any(isinstance(v, Coeff) for v in self.terms.values()) else Fraction(c)
        return self + WordSeries({(): one}, self.cap)

    def degree_part(self, n):
        return self._new({w: c for w, c in self.terms.items() if len(w) == n})

    def substitute(self, images: dict) -> "WordSeries":
        """Algebra map sending each letter to a WordSeries."""
        result = WordSeries(cap=self.cap)
        for w, c in self.terms.items():
            term = WordSeries({(): c}, self.cap)
            for x in w:
                term = term * images[x]
            result = result + term
        return result

    def __repr__(self):
        return f"WordSeries({self.terms!r})"


def bracket(x: WordSeries, y: WordSeries) -> WordSeries:
    return x * y - y * x


def words_to_diagrams(ws: WordSeries, skeleton: Skeleton) -> DiagramSum:
    """Letters ``(i, j)`` are chords between strands (lines) i and j.

    The first letter of a word is the topmost chord.  Lines must be vertical
    strands: a line's word is read bottom-to-top if it points up, top-to-bottom
    otherwise.
    """
    p = len(skeleton.lines)
    up = [skeleton.lines[i][0][0] == BOTTOM for i in range(p)]
    terms = {}
    for w, c in ws.terms.items():
        per = [[] for _ in range(p)]
        for label, (i, j) in enumerate(reversed(w), start=1):
            per[i].append(label)
            per[j].append(label)
        words = tuple(tuple(x) if up[i] else tuple(reversed(x)) for i, x in enumerate(per))
        terms[words] = terms.get(words, 0) + c if words in terms else c
    return DiagramSum(skeleton, terms, ws.cap)


# ---------------------------------------------------------------------------
# operations on diagram sums over vertical strands


def s_op(i: int, z: DiagramSum) -> DiagramSum:
    """Multiply each diagram by (-1)^(number of chord ends on line i)."""
    if not 0 <= i < len(z.skeleton.lines):
        raise IndexError(f"no strand {i}")
    return z.copy_with({k: (c if len(k[i]) % 2 == 0 else -c) for k, c in z.terms.items()})


def _strand_layout(skeleton: Skeleton):
    """(orientation, top position) for each bottom position of a pure strand skeleton."""
    if skeleton.circles or skeleton.n_top != skeleton.n_bottom:
        raise DiagramError("operation needs vertical strands")
    out = []
    for tail, head in skeleton.lines:
        if tail[0] == BOTTOM and head[0] == TOP:
            out.append((1, head[1]))
        elif tail[0] == TOP and head[0] == BOTTOM:
            out.append((-1, tail[1]))
        else:
            raise DiagramError("operation needs vertical strands")
    return out


def _widen(skeleton: Skeleton, i: int, width: int) -> Skeleton:
    layout = _strand_layout(skeleton)
    oi, ti = layout[i]
    orient, perm = [], []
    for b, (o, t) in enumerate(layout):
        shift_t = t + (width - 1 if t > ti else 0)
        if b == i:
            for s in range(width):
                orient.append(o)
                perm.append(ti + s)
        else:
            orient.append(o)
            perm.append(shift_t)
    return Skeleton.strands(orient, perm)


def delta_op(i: int, z: DiagramSum, width: int = 2) -> DiagramSum:
    """Replace strand i by ``width`` parallel copies, summing over all lifts."""
    p = len(z.skeleton.lines)
    if not 0 <= i < p:
        raise IndexError(f"no strand {i}")
    skel = _widen(z.skeleton, i, width)
    terms: dict = {}
    for k, c in z.terms.items():
        w = k[i]
        for choice in itertools.product(range(width), repeat=len(w)):
            parts = tuple(tuple(x for x, s in zip(w, choice) if s == j) for j in range(width))
            words = k[:i] + parts + k[i + 1:]
            words = canonical_words(words, len(words))
            v = terms.get(words)
            v = c if v is None else v + c
            if v:
                terms[words] = v
            else:
                terms.pop(words, None)
    return DiagramSum(skel, terms, z.cap, canonical=True)


def insert_strand(position: int, orientation: int, z: DiagramSum) -> DiagramSum:
    """Add an empty vertical strand at bottom (and top) position ``position``."""
    layout = _strand_layout(z.skeleton)
    if not 0 <= position <= len(layout):
        raise IndexError(position)
    orient, perm = [], []
    for b, (o, t) in enumerate(layout):
        if b == position:
            orient.append(orientation)
            perm.append(position)
        orient.append(o)
        perm.append(t + (1 if t >= position else 0))
    if position == len(layout):
        orient.append(orientation)
        perm.append(position)
    skel = Skeleton.strands(orient, perm)
    terms = {k[:position] + ((),) + k[position:]: c for k, c in z.terms.items()}
    return DiagramSum(skel, terms, z.cap, canonical=False)


# ---------------------------------------------------------------------------
# quotient series on the circle (or the line) in basis coordinates


class Series:
    """Element of A or A' on a one-component skeleton, in basis coordinates.

    ``coords`` maps ``(degree, basis index)`` to a coefficient.  The product
    is the connected sum (circle) or concatenation (line).
    """

    __slots__ = ("skeleton", "framed", "cap", "coords", "ctx")

    def __init__(self, skeleton, framed, cap, coords=None, ctx=None):
        self.skeleton = skeleton
        self.framed = framed
        self.cap = cap
        self.ctx = ctx
        self.coords = {k: v for k, v in (coords or {}).items() if v and k[0] <= cap}

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_sum(cls, x: DiagramSum, framed: bool, ctx=None) -> "Series":
        red = reduce_sum(x, framed, ctx=ctx)
        coords = {}
        for n, vec in red.items():
            for i, v in enumerate(vec):
                if v:
                    coords[(n, i)] = v
        return cls(x.skeleton, framed, x.cap, coords, ctx)

    @classmethod
    def unit(cls, skeleton, framed, cap, one=None, ctx=None):
        return cls(skeleton, framed, cap, {(0, 0): one if one is not None else Coeff.rational(1)}, ctx)

    def _new(self, coords):
        out = Series(self.skeleton, self.framed, self.cap, ctx=self.ctx)
        out.coords = coords
        return out

    def table(self, n):
        return basis(self.skeleton, n, self.framed, self.ctx)

    def to_sum(self) -> DiagramSum:
        terms = {}
        for (n, i), v in self.coords.items():
            terms[self.table(n).basis[i]] = v
        return DiagramSum(self.skeleton, terms, self.cap, canonical=True)

    # -- linear structure -------------------------------------------------
    def _check(self, other):
        if (other.skeleton, other.framed) != (self.skeleton, self.framed):
            raise DiagramError("series live in different spaces")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coords)
        for k, v in other.coords.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        res = self._new(out)
        res.cap = min(self.cap, other.cap)
        return res

    def __neg__(self):
        return self._new({k: -v for k, v in self.coords.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        out = {}
        for k, v in self.coords.items():
            w = v * s
            if w:
                out[k] = w
        return self._new(out)

    def __mul__(self, other):
        if not isinstance(other, Series):
            return self.scale(other)
        self._check(other)
        cap = min(self.cap, other.cap)
        out: dict = {}
        for (p, i), a in self.coords.items():
            for (q, j), b in other.coords.items():
                if p + q > cap:
                    continue
                ab = a * b
                for r, v in _structure(self.skeleton, self.framed, p, i, q, j, self.ctx).items():
                    s = out.get((p + q, r))
                    s = ab * v if s is None else s + ab * v
                    if s:
                        out[(p + q, r)] = s
                    else:
                        out.pop((p + q, r), None)
        res = self._new(out)
        res.cap = cap
        return res

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (self.skeleton, self.framed) == (other.skeleton, other.framed) and self.coords == other.coords

    def __bool__(self):
        return bool(self.coords)

    def constant(self):
        return self.coords.get((0, 0), 0)

    def shifted(self, c):
        one = Coeff.rational(c) if any(isinstance(v, Coeff) for v in self.coords.values()) else Fraction(c)
        return self + Series(self.skeleton, self.framed, self.cap, {(0, 0): one}, self.ctx)

    def degree_part(self, n):
        return self._new({k: v for k, v in self.coords.items() if k[0] == n})

    def truncate(self, cap):
        out = self._new({k: v for k, v in self.coords.items() if k[0] <= cap})
        out.cap = min(cap, self.cap)
        return out

    def coefficient(self, key: str):
        """Coefficient of the basis diagram with rendered key ``key``."""
        from .diagrams import parse_key

        words = parse_key(key)
        n = key_degree(words)
        t = self.table(n)
        i = t.basis.index(words)
        return self.coords.get((n, i), 0)

    def items(self):
        """``(rendered key, degree, coeff)`` in a stable order."""
        for (n, i) in sorted(self.coords):
            yield render_key(self.table(n).basis[i]), n, self.coords[(n, i)]

    def __repr__(self):
        body = ", ".join(f"{k or '1'}: {v}" for k, _n, v in self.items())
        return f"Series({body})"


_STRUCT_CACHE: dict = {}


def _structure(skeleton, framed, p, i, q, j, ctx):
    key = (skeleton, framed, p, i, q, j, id(ctx))
    hit = _STRUCT_CACHE.get(key)
    if hit is not None:
        return hit
    wa = basis(skeleton, p, framed, ctx).basis[i]
    wb = basis(skeleton, q, framed, ctx).basis[j]
    shift = p
    wb = tuple(tuple(x + shift for x in w) for w in wb)
    if skeleton.circles:
        words = (wa[0] + wb[0],)
    else:
        words = (wa[0] + wb[0],)
    words = canonical_words(words, len(skeleton.lines))
    coords = dict(basis(skeleton, p + q, framed, ctx).coordinates(words))
    _STRUCT_CACHE[key] = coords
    return coords


def close(a: Series) -> Series:
    """Close a single-line series to the circle."""
    sk = a.skeleton
    if sk.circles or len(sk.lines) != 1:
        raise DiagramError("close needs a single line")
    circle = Skeleton.circle()
    terms = {}
    for (n, i), v in a.coords.items():
        w = a.table(n).basis[i]
        terms[canonical_words(w, 0)] = v
    x = DiagramSum(circle, terms, a.cap, canonical=True)
    return Series.from_sum(x, a.framed, a.ctx)


# ---------------------------------------------------------------------------
# coproduct


def coproduct_words(words, n_lines) -> dict:
    """All splittings of the chord set: {(words_J, words_Jc): count}."""
    labels = sorted({x for w in words for x in w})
    out: dict = {}
    for r in range(len(labels) + 1):
        for J in itertools.combinations(labels, r):
            Js = set(J)
            a = canonical_words(tuple(tuple(x for x in w if x in Js) for w in words), n_lines)
            b = canonical_words(tuple(tuple(x for x in w if x not in Js) for w in words), n_lines)
            out[(a, b)] = out.get((a, b), 0) + 1
    return out


def coproduct(d) -> dict:
    """Coproduct of a diagram sum (or a single ``ChordDiagram``) as tensor pairs."""
    from .diagrams import ChordDiagram

    if isinstance(d, ChordDiagram):
        d = DiagramSum(d.skeleton, {d.words: Fraction(1)}, cap=d.order)
    nl = len(d.skeleton.lines)
    out: dict = {}
    for k, c in d.terms.items():
        for pair, m in coproduct_words(k, nl).items():
            v = out.get(pair)
            v = c * m if v is None else v + c * m
            if v:
                out[pair] = v
            else:
                out.pop(pair, None)
    return out


def _tensor_coords(pairs: dict, skeleton, framed, ctx) -> dict:
    out: dict = {}
    for (a, b), c in pairs.items():
        ta = basis(skeleton, key_degree(a), framed, ctx)
        tb = basis(skeleton, key_degree(b), framed, ctx)
        for i, u in ta.coordinates(a).items():
            for j, w in tb.coordinates(b).items():
                k = ((key_degree(a), i), (key_degree(b), j))
                v = out.get(k)
                v = c * u * w if v is None else v + c * u * w
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
    return out


def coproduct_series(z: Series) -> dict:
    """delta(z) in tensor-square basis coordinates."""
    pairs: dict = {}
    for (n, i), v in z.coords.items():
        words = z.table(n).basis[i]
        for pair, m in coproduct_words(words, len(z.skeleton.lines)).items():
            s = pairs.get(pair)
            s = v * m if s is None else s + v * m
            if s:
                pairs[pair] = s
            else:
                pairs.pop(pair, None)
    return _tensor_coords(pairs, z.skeleton, z.framed, z.ctx)


def tensor_square(z: Series, n: int) -> dict:
    out = {}
    for ka, a in z.coords.items():
        for kb, b in z.coords.items():
            if ka[0] + kb[0] <= n:
                v = a * b
                if v:
                    out[(ka, kb)] = v
    return out


def _magnitude(c) -> Fraction:
    if isinstance(c, Coeff):
        return max((abs(v) for _m, v in c.items()), default=Fraction(0))
    return abs(c)


def grouplike_residual(z: Series, n: int) -> dict:
    """delta(z) - z (x) z through total degree n, in tensor coordinates."""
    zt = z.truncate(n)
    d = {k: v for k, v in coproduct_series(zt).items() if k[0][0] + k[1][0] <= n}
    for k, v in tensor_square(zt, n).items():
        s = d.get(k)
        s = -v if s is None else s - v
        if s:
            d[k] = s
        else:
            d.pop(k, None)
    return d


def grouplike_defect(z: Series, n: int) -> Fraction:
    """Largest rational magnitude among the residual coefficients."""
    return max((_magnitude(v) for v in grouplike_residual(z, n).values()), default=Fraction(0))


def tensor_grouplike_defect(z: DiagramSum, n: int) -> Fraction:
    """Group-likeness on a tangle skeleton, diagram by diagram (no relations)."""
    nl = len(z.skeleton.lines)
    d = coproduct(z.truncate(n))
    for ka, a in z.terms.items():
        for kb, b in z.terms.items():
            if key_degree(ka) + key_degree(kb) <= n:
                k = (ka, kb)
                s = d.get(k)
                s = -(a * b) if s is None else s - a * b
                if s:
                    d[k] = s
                else:
                    d.pop(k, None)
    d = {k: v for k, v in d.items() if key_degree(k[0]) + key_degree(k[1]) <= n}
    return max((_magnitude(v) for v in d.values()), default=Fraction(0))


# ---------------------------------------------------------------------------
# mirror and orientation reversal


def mirror_R(z):
    """Scale the degree-n part by (-1)^n."""
    if isinstance(z, Series):
        return z._new({k: (v if k[0] % 2 == 0 else -v) for k, v in z.coords.items()})
    if isinstance(z, DiagramSum):
        return z.copy_with({k: (c if key_degree(k) % 2 == 0 else -c) for k, c in z.terms.items()})
    raise TypeError(type(z).__name__)


def reverse_S(z: Series) -> Series:
    """Reverse the orientation of the circle."""
    if not z.skeleton.circles or z.skeleton.lines:
        raise DiagramError("reverse_S needs the circle")
    terms = {}
    for (n, i), v in z.coords.items():
        w = z.table(n).basis[i]
        rw = canonical_words((tuple(reversed(w[0])),), 0)
        s = terms.get(rw)
        terms[rw] = v if s is None else s + v
    return Series.from_sum(DiagramSum(z.skeleton, terms, z.cap, canonical=True), z.framed, z.ctx)
