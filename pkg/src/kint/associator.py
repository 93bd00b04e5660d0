"""Truncated KZ associator on three strands and the braiding series on two."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algops import (
    WordSeries,
    bracket,
    series_exp,
    series_inverse,
    series_log,
    words_to_diagrams,
)
from .coeffring import ZETA2_NORMALIZED, Coeff
from .diagrams import Skeleton
from .spaces import DiagramSum

MAX_CAP = 5

A = (0, 1)  # chord between strands 1 and 2
B = (1, 2)  # chord between strands 2 and 3


def _lie_words(cap: int):
    """Nested brackets appearing in log(Phi), as WordSeries in a, b."""
    a = WordSeries.letter(A, cap, Coeff.rational(1))
    b = WordSeries.letter(B, cap, Coeff.rational(1))
    ab = bracket(a, b)
    aab = bracket(a, ab)
    bab = bracket(b, ab)
    return {
        "[a,b]": ab,
        "[a,[a,b]]": aab,
        "[b,[a,b]]": bab,
        "[a,[a,[a,b]]]": bracket(a, aab),
        "[b,[a,[a,b]]]": bracket(b, aab),
        "[b,[b,[a,b]]]": bracket(b, bab),
        "[a,[a,[a,[a,b]]]]": bracket(a, bracket(a, aab)),
        "[b,[b,[b,[a,b]]]]": bracket(b, bracket(b, bab)),
        "[b,[a,[a,[a,b]]]]": bracket(b, bracket(a, aab)),
        "[b,[b,[a,[a,b]]]]": bracket(b, bracket(b, aab)),
        "[[a,b],[a,[a,b]]]": bracket(ab, aab),
        "[[a,b],[b,[a,b]]]": bracket(ab, bab),
    }


def log_phi_table() -> list:
    """``(bracket, coefficient)`` pairs of log(Phi_KZ) through degree 5.

    In the variables a, b the n-th zeta value always appears divided by
    (2 pi i)^n, so zeta(2) becomes -1/24 and odd zetas become u3, u5.
    """
    z2 = Coeff.rational(ZETA2_NORMALIZED)
    u3, u5 = Coeff.zeta(3), Coeff.zeta(5)
    return [
        ("[a,b]", -z2),
        ("[a,[a,b]]", -u3),
        ("[b,[a,b]]", -u3),
        ("[a,[a,[a,b]]]", -(z2 * z2) * 4 / 10),
        ("[b,[a,[a,b]]]", -(z2 * z2) / 10),
        ("[b,[b,[a,b]]]", -(z2 * z2) * 4 / 10),
        ("[a,[a,[a,[a,b]]]]", -u5),
        ("[b,[b,[b,[a,b]]]]", -u5),
        ("[b,[a,[a,[a,b]]]]", z2 * u3 - u5 * 2),
        ("[b,[b,[a,[a,b]]]]", z2 * u3 - u5 * 2),
        ("[[a,b],[a,[a,b]]]", z2 * u3 / 2 - u5 / 2),
        ("[[a,b],[b,[a,b]]]", z2 * u3 / 2 - u5 * Fraction(3, 2)),
    ]


@dataclass(frozen=True)
class AssocContext:
    cap: int = 4
    log_phi: WordSeries = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if not 0 <= self.cap <= MAX_CAP:
            raise ValueError(f"associator data tabulated only through degree {MAX_CAP}")
        words = _lie_words(self.cap)
        total = WordSeries(cap=self.cap)
        for name, c in log_phi_table():
            total = total + words[name].scale(c)
        object.__setattr__(self, "log_phi", total)

    @property
    def a(self) -> DiagramSum:
        return words_to_diagrams(WordSeries.letter(A, self.cap, Coeff.rational(1)), three_strands())

    @property
    def b(self) -> DiagramSum:
        return words_to_diagrams(WordSeries.letter(B, self.cap, Coeff.rational(1)), three_strands())


def three_strands() -> Skeleton:
    return Skeleton.strands([1, 1, 1])


def crossing() -> Skeleton:
    return Skeleton.strands([1, 1], [1, 0])


def phi_words(ctx: AssocContext, sign: int = 1) -> WordSeries:
    """Phi (or its inverse) in the free algebra on the letters a, b."""
    phi = series_exp(ctx.log_phi)
    return phi if sign > 0 else series_inverse(phi)


def r_words(ctx: AssocContext, sign: int = 1) -> WordSeries:
    c = WordSeries.letter(A, ctx.cap, Coeff.rational(1))
    return series_exp(c.scale(Fraction(sign, 2)))


def phi(ctx: AssocContext, sign: int = 1) -> DiagramSum:
    return words_to_diagrams(phi_words(ctx, sign), three_strands())


def r_matrix(sign: int, ctx: AssocContext) -> DiagramSum:
    """X exp(sign c/2): crossed strands with the chords below the crossing."""
    return words_to_diagrams(r_words(ctx, sign), crossing())


def r_power(k: int, ctx: AssocContext) -> DiagramSum:
    if k == 0:
        return DiagramSum.unit(Skeleton.strands([1, 1]), Coeff.rational(1), ctx.cap)
    r = r_matrix(1 if k > 0 else -1, ctx)
    out = r
    for _ in range(abs(k) - 1):
        out = out * r
    return out


def log_phi_check(ctx: AssocContext) -> bool:
    """series_log of the expanded Phi reproduces the tabulated Lie series."""
    return series_log(phi_words(ctx)) == ctx.log_phi
