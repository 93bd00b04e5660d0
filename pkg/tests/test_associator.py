from fractions import Fraction

import pytest

from kint.algops import WordSeries, series_inverse, tensor_grouplike_defect
from kint.associator import (
    A,
    B,
    AssocContext,
    crossing,
    log_phi_check,
    phi,
    phi_words,
    r_matrix,
    r_power,
    three_strands,
)
from kint.coeffring import Coeff
from kint.diagrams import Skeleton
from kint.spaces import DiagramSum, key_degree

CTX = AssocContext(5)


def _by_degree(d: DiagramSum) -> dict:
    out = {}
    for k, c in d.terms.items():
        n = key_degree(k)
        out[n] = out.get(n, 0) + c
    return out


def test_low_degree_phi():
    w = phi_words(CTX)
    one = Coeff.rational(1)
    assert w.terms[()] == one
    assert not any(len(k) == 1 for k in w.terms)
    assert w.terms[(A, B)] == Coeff.rational(Fraction(1, 24))
    assert w.terms[(B, A)] == Coeff.rational(Fraction(-1, 24))


def test_degree_three_carries_u3():
    w = phi_words(CTX)
    u3 = Coeff.zeta(3)
    # -u3 ([a,[a,b]] + [b,[a,b]]) with [a,[a,b]] = aab - 2aba + baa and
    # [b,[a,b]] = 2bab - bba - abb
    assert w.terms[(A, A, B)] == -u3
    assert w.terms[(A, B, A)] == u3 * 2
    assert w.terms[(B, A, B)] == u3 * -2
    assert w.terms[(B, B, A)] == u3


def test_log_roundtrip_and_inverse():
    assert log_phi_check(CTX)
    w = phi_words(CTX)
    assert w * series_inverse(w) == WordSeries.unit(5, Coeff.rational(1))
    assert phi_words(CTX, -1) == series_inverse(w)


def test_phi_is_grouplike():
    assert tensor_grouplike_defect(phi(AssocContext(4)), 4) == 0


def test_cap_limit():
    with pytest.raises(ValueError):
        AssocContext(6)


def test_r_matrix_expansion():
    r = r_matrix(1, CTX)
    assert r.skeleton == crossing()
    deg = _by_degree(r)
    assert [deg[n] for n in range(4)] == [Coeff.rational(x) for x in (1, Fraction(1, 2), Fraction(1, 8), Fraction(1, 48))]


def test_r_inverse_power():
    deg = _by_degree(r_power(-3, AssocContext(2)))
    assert [deg[n] for n in range(3)] == [Coeff.rational(x) for x in (1, Fraction(-3, 2), Fraction(9, 8))]
    assert r_power(-3, AssocContext(2)).skeleton == crossing()


def test_r_powers():
    ctx = AssocContext(3)
    assert r_power(2, ctx) == r_matrix(1, ctx) * r_matrix(1, ctx)
    unit = r_power(1, ctx) * r_power(-1, ctx)
    assert unit == DiagramSum.unit(Skeleton.strands([1, 1]), Coeff.rational(1), 3)
    assert r_power(0, ctx).skeleton == Skeleton.strands([1, 1])


def test_phi_lives_on_three_strands():
    assert phi(AssocContext(2)).skeleton == three_strands()
