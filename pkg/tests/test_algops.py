from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kint.algops import (
    Series,
    WordSeries,
    bracket,
    close,
    coproduct,
    coproduct_words,
    delta_op,
    grouplike_defect,
    insert_strand,
    mirror_R,
    reverse_S,
    s_op,
    series_exp,
    series_inverse,
    series_log,
    series_power,
    words_to_diagrams,
)
from kint.diagrams import ChordDiagram, Skeleton
from kint.spaces import DiagramSum, basis, rank

A, B = (0, 1), (1, 2)
CIRCLE = Skeleton.circle()

small = st.fractions(min_value=-3, max_value=3, max_denominator=4)
words = st.lists(st.sampled_from([A, B]), min_size=1, max_size=3).map(tuple)
series = st.dictionaries(words, small, max_size=4).map(lambda d: WordSeries(d, cap=4))


@given(series)
@settings(max_examples=40, deadline=None)
def test_exp_log_inverse_pair(x):
    assert series_log(series_exp(x)) == x
    z = series_exp(x)
    assert z * series_inverse(z) == WordSeries.unit(4)


@given(series)
@settings(max_examples=30, deadline=None)
def test_power_matches_repeated_product(x):
    z = series_exp(x)
    assert series_power(z, 3) == z * z * z
    assert series_power(z, -1) == series_inverse(z)


def test_bracket_antisymmetric():
    a, b = WordSeries.letter(A, 3), WordSeries.letter(B, 3)
    assert bracket(a, b) == -bracket(b, a)
    assert bracket(a, b).terms == {(A, B): 1, (B, A): -1}


def test_log_needs_unit_constant():
    with pytest.raises(ValueError):
        series_log(WordSeries.letter(A, 3))


def test_words_to_diagrams_reads_top_first():
    ws = WordSeries({(A, B): Fraction(1)}, 3)  # a above b
    d = words_to_diagrams(ws, Skeleton.strands([1, 1, 1]))
    assert d.terms == {((1,), (2, 1), (2,)): 1}


def test_s_op_and_delta_op():
    two = Skeleton.strands([1, 1])
    chord = words_to_diagrams(WordSeries.letter(A, 2), two)
    assert s_op(0, chord).terms == {k: -1 for k in chord.terms}
    wide = delta_op(0, chord)
    assert len(wide.skeleton.lines) == 3
    assert sum(wide.terms.values()) == 2  # one lift per new strand
    assert len(insert_strand(1, 1, chord).skeleton.lines) == 3


def test_coproduct_of_chord_diagram():
    d = ChordDiagram(CIRCLE, ((1, 2, 1, 2),))
    cp = coproduct(d)
    assert cp[(((1, 1),), ((1, 1),))] == 2
    assert cp[(((),), ((1, 2, 1, 2),))] == 1
    assert sum(coproduct_words(((1, 2, 3, 1, 2, 3),), 0).values()) == 8


def _unit(cap=4):
    return Series.unit(CIRCLE, False, cap, Fraction(1))


def _theta(cap=4):
    return Series.from_sum(DiagramSum(CIRCLE, {((1, 2, 1, 2),): Fraction(1)}, cap), False)


def test_exponential_of_primitive_is_grouplike():
    t = _theta()
    assert grouplike_defect(series_exp(t), 4) == 0
    naive = _unit() + t + t * t
    assert grouplike_defect(naive, 4) != 0


def test_connected_sum_commutes():
    x = series_exp(_theta())
    y = Series.from_sum(DiagramSum(CIRCLE, {((1, 2, 3, 1, 2, 3),): Fraction(1)}, 4), False)
    assert x * y == y * x


def test_mirror_and_reverse_are_involutions():
    y = Series.from_sum(DiagramSum(CIRCLE, {((1, 2, 3, 1, 2, 3),): Fraction(1), ((1, 2, 1, 2),): Fraction(3)}, 4), False)
    assert mirror_R(mirror_R(y)) == y
    assert mirror_R(y) != y
    assert reverse_S(reverse_S(y)) == y


@pytest.mark.parametrize("n", range(5))
def test_closure_is_isomorphism(n):
    line = Skeleton.line()
    t = basis(line, n, True)
    rows = []
    for i in range(t.dim):
        s = close(Series(line, True, n, {(n, i): Fraction(1)}))
        rows.append({j: v for (_deg, j), v in s.coords.items()})
    assert t.dim == basis(CIRCLE, n, True).dim
    assert rank(rows, t.dim) == t.dim
