from fractions import Fraction

import pytest

from kint.diagrams import DiagramError, JacobiDiagram, Skeleton, wheel
from kint.spaces import (
    DiagramSum,
    SkeletonJacobi,
    SpaceContext,
    basis,
    chi,
    four_t_relations,
    rank,
    reduce,
    rref,
    stu_reduce,
)

from oracles import dimension

CIRCLE = Skeleton.circle()


@pytest.mark.parametrize("framed", [True, False])
@pytest.mark.parametrize("n", range(5))
def test_circle_dims_match_oracle(n, framed):
    assert basis(CIRCLE, n, framed).dim == dimension(n, framed)


@pytest.mark.parametrize("n", range(5))
def test_line_matches_circle(n):
    for framed in (True, False):
        assert basis(Skeleton.line(), n, framed).dim == basis(CIRCLE, n, framed).dim


def test_two_strand_dims():
    # two colours: degree 1 has three struts; degree 2 has six strut
    # products and three two-wheels (tripods vanish)
    s = Skeleton.strands([1, 1])
    assert [basis(s, n, True).dim for n in range(3)] == [1, 3, 9]


@pytest.mark.parametrize("n", [2, 3])
def test_four_term_relations_reduce_to_zero(n):
    for rel in four_t_relations(CIRCLE, n):
        red = reduce(rel, framed=True, max_degree=n)
        assert all(v == 0 for v in red[n])


def test_isolated_chords_vanish_unframed():
    x = DiagramSum(CIRCLE, {((1, 1, 2, 3, 2, 3),): Fraction(1)}, 3)
    assert reduce(x, framed=False)[3] == [0]


def test_stu_order_independent():
    j = SkeletonJacobi(CIRCLE, ((1, 2, 3, 4),), ((1, 2, 5), (5, 3, 4)))
    a = reduce(stu_reduce(j, 4, "first"), framed=True)
    b = reduce(stu_reduce(j, 4, "last"), framed=True)
    assert a == b


def test_stu_rejects_floating_component():
    with pytest.raises(DiagramError):
        stu_reduce(SkeletonJacobi(CIRCLE, ((1, 1),), ((2, 3, 4), (2, 4, 3))), 4)


def test_chi_of_two_wheel():
    assert chi(wheel(2), 4).terms == {((1, 1, 2, 2),): 2, ((1, 2, 1, 2),): -2}


def test_chi_three_colour_tripod_rejected():
    with pytest.raises(DiagramError):
        chi(JacobiDiagram(((1, 2, 3),), ((1, 1), (2, 2), (3, 3))), 4)


def test_rref_and_rank():
    rows = [{0: Fraction(1), 1: Fraction(1)}, {0: Fraction(2), 1: Fraction(2)}, {1: Fraction(1)}]
    piv = rref(rows, 2)
    assert sorted(piv) == [0, 1]
    assert rank(rows, 2) == 2


def test_cache_roundtrip(tmp_path):
    ctx = SpaceContext(tmp_path)
    t = ctx.basis(CIRCLE, 3, False)
    assert list(tmp_path.iterdir())
    again = SpaceContext(tmp_path).basis(CIRCLE, 3, False)
    assert again.basis == t.basis and again.reduction == t.reduction


def test_sum_arithmetic():
    x = DiagramSum(CIRCLE, {((1, 2, 1, 2),): Fraction(1), ((2, 1, 2, 1),): Fraction(1)}, 4)
    assert x.terms == {((1, 2, 1, 2),): 2}
    assert not (x - x)
    assert x.scale(Fraction(1, 2)).terms == {((1, 2, 1, 2),): 1}
    assert not DiagramSum(CIRCLE, {((1, 2, 1, 2),): 1}, 1)


def _ihx(extra, legs):
    # planar pictures with outer edges a, b, c, d counterclockwise from top left
    a, b, c, d, e = 1, 2, 3, 4, 5
    i = JacobiDiagram(((b, a, e), (e, d, c)) + extra, legs)
    h = JacobiDiagram(((e, a, d), (b, e, c)) + extra, legs)
    x = JacobiDiagram(((e, a, c), (b, e, d)) + extra, legs)
    return [reduce(chi(j, 4), framed=True)[j.degree] for j in (i, h, x)]


@pytest.mark.parametrize(
    "extra, legs",
    [
        ((), ((1, 1), (2, 1), (3, 1), (4, 1))),
        (((3, 4, 6),), ((1, 1), (2, 1), (6, 1))),
        (((4, 6, 7), (3, 7, 6)), ((1, 1), (2, 1))),
    ],
)
def test_ihx_holds_after_chi(extra, legs):
    i, h, x = _ihx(extra, legs)
    assert all(p - q + r == 0 for p, q, r in zip(i, h, x))


def test_ihx_two_loop_triple_is_not_vacuous():
    i, h, x = _ihx(((4, 6, 7), (3, 7, 6)), ((1, 1), (2, 1)))
    assert any(h) and any(p - q - r for p, q, r in zip(i, h, x))
