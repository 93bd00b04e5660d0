"""Exact coefficients in Q[u3, u5].

``u_n`` stands for ``zeta(n) / (2 pi i)**n``.  Even zeta values never appear
as symbols: they are rational multiples of powers of ``(2 pi i)`` and are
folded into the rational part when the associator is built.

A :class:`Coeff` carries a weight cap fixed at construction; products drop
monomials of weight above the cap.  Combining coefficients with different
caps is an error.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

DEFAULT_CAP = 5

# zeta(3), zeta(5) to 30 digits
ZETA3 = 1.202056903159594285399738161511449990764986292
ZETA5 = 1.036927755143369926331365486457034168057080919

Mono = tuple  # tuple of (odd n, exponent) pairs, sorted; () is the unit


def mono_weight(m: Mono) -> int:
    return sum(n * e for n, e in m)


def mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for n, e in b:
        exps[n] = exps.get(n, 0) + e
    return tuple(sorted(exps.items()))


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact coefficient")


class Coeff:
    """Immutable element of Q[u3, u5, ...] truncated at a weight cap."""

    __slots__ = ("_terms", "cap", "_hash")

    def __init__(self, terms=None, cap: int = DEFAULT_CAP):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = _to_fraction(c)
                if c and mono_weight(m) <= cap:
                    clean[m] = c
        self._terms = clean
        self.cap = cap
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, cap: int) -> "Coeff":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj.cap = cap
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, x, cap: int = DEFAULT_CAP) -> "Coeff":
        x = _to_fraction(x)
        return cls._raw({(): x} if x else {}, cap)

    @classmethod
    def zeta(cls, n: int, cap: int = DEFAULT_CAP) -> "Coeff":
        """The symbol u_n for odd n >= 3."""
        if n < 3 or n % 2 == 0:
            raise ValueError("only odd zeta values n >= 3 are symbols")
        return cls({((n, 1),): Fraction(1)}, cap)

    # -- access ---------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_rational(self) -> bool:
        return all(m == () for m in self._terms)

    def rational_part(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "Coeff":
        if isinstance(other, Coeff):
            if other.cap != self.cap:
                raise ValueError(f"mixing weight caps {self.cap} and {other.cap}")
            return other
        return Coeff.rational(other, self.cap)

    def __add__(self, other):
        other = self._coerce(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Coeff._raw(out, self.cap)

    __radd__ = __add__

    def __neg__(self):
        return Coeff._raw({m: -c for m, c in self._terms.items()}, self.cap)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Coeff._raw({}, self.cap)
            return Coeff._raw({m: c * other for m, c in self._terms.items()}, self.cap)
        other = self._coerce(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return Coeff._raw({}, self.cap)
        if len(a) == 1 and len(b) == 1 and () in a and () in b:
            return Coeff._raw({(): a[()] * b[()]}, self.cap)
        out: dict = {}
        cap = self.cap
        for ma, ca in a.items():
            wa = mono_weight(ma)
            for mb, cb in b.items():
                if wa + mono_weight(mb) > cap:
                    continue
                m = mono_mul(ma, mb)
                v = out.get(m, 0) + ca * cb
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Coeff._raw(out, cap)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (1 / _to_fraction(other))

    def __eq__(self, other):
        if isinstance(other, Coeff):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({(): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- rendering ------------------------------------------------------
    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Coeff({render(self)!r})"


def coeff_add(a: Coeff, b: Coeff) -> Coeff:
    return a + b


def coeff_mul(a: Coeff, b: Coeff) -> Coeff:
    return a * b


def zeta_residual(c: Coeff) -> Coeff:
    """Everything except the pure rational part; zero iff ``c`` is rational."""
    return Coeff._raw({m: v for m, v in c.items() if m != ()}, c.cap)


@lru_cache(maxsize=None)
def _u_value(n: int) -> complex:
    z = {3: ZETA3, 5: ZETA5}.get(n)
    if z is None:
        import mpmath

        z = float(mpmath.zeta(n))
    return z / (2j * math.pi) ** n


def numeric_value(c: Coeff) -> complex:
    """Substitute u_n = zeta(n)/(2 pi i)^n."""
    total = 0j
    for m, v in c.items():
        term = complex(float(v))
        for n, e in m:
            term *= _u_value(n) ** e
        total += term
    return total


# ---------------------------------------------------------------------------
# text form:  "p/q + (r/s)*u3 + (t)*u3^2*u5"


def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _fmt_mono(m: Mono) -> str:
    return "*".join(f"u{n}" if e == 1 else f"u{n}^{e}" for n, e in m)


def _mono_sort_key(m: Mono):
    return (mono_weight(m), m)


def render(c: Coeff) -> str:
    if not c:
        return "0"
    parts = []
    for m in sorted(c._terms, key=_mono_sort_key):
        v = c._terms[m]
        if m == ():
            parts.append(_fmt_frac(v))
        else:
            parts.append(f"({_fmt_frac(v)})*{_fmt_mono(m)}")
    return " + ".join(parts)


_TERM_RE = re.compile(r"^\((-?\d+(?:/\d+)?)\)\*((?:u\d+(?:\^\d+)?)(?:\*u\d+(?:\^\d+)?)*)$")
_RAT_RE = re.compile(r"^-?\d+(?:/\d+)?$")


def parse(text: str, cap: int = DEFAULT_CAP) -> Coeff:
    """Inverse of :func:`render`."""
    text = text.strip()
    if text == "0":
        return Coeff(cap=cap)
    terms: dict = {}
    for part in text.split(" + "):
        part = part.strip()
        if _RAT_RE.match(part):
            m, v = (), Fraction(part)
        else:
            hit = _TERM_RE.match(part)
            if not hit:
                raise ValueError(f"malformed coefficient term {part!r}")
            v = Fraction(hit.group(1))
            exps: dict = {}
            for sym in hit.group(2).split("*"):
                n, _, e = sym[1:].partition("^")
                exps[int(n)] = exps.get(int(n), 0) + (int(e) if e else 1)
            m = tuple(sorted(exps.items()))
        if m in terms:
            raise ValueError(f"repeated monomial in {text!r}")
        terms[m] = v
    return Coeff(terms, cap)


# Even zeta values divided by matching powers of 2 pi i.
ZETA2_NORMALIZED = Fraction(-1, 24)  # zeta(2)/(2 pi i)^2 = (pi^2/6)/(-4 pi^2)
