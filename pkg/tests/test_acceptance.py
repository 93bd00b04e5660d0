"""Acceptance criteria 1-11; a per-criterion summary prints at the end of the run."""

import math
from fractions import Fraction

import pytest

from kint import analytic as an
from kint.algops import grouplike_defect, mirror_R, reverse_S
from kint.coeffring import Coeff, zeta_residual
from kint.diagrams import Skeleton
from kint.evaluator import (
    add_hump,
    bundled,
    bundled_names,
    final_I,
    final_I_mult,
    hump_Z,
    mirror,
    preliminary_Z,
    reverse,
    wheels_unknot,
)
from kint.skein import bundled_pd, canonical_consistency_check, invariants
from kint.spaces import basis

from oracles import dimension

R = Coeff.rational
CAP = 4


@pytest.mark.criterion(1)
def test_dimension_tables():
    framed = [dimension(n, True) for n in range(5)]
    unframed = [dimension(n, False) for n in range(5)]
    assert framed == [1, 1, 2, 3, 6]
    assert unframed == [1, 0, 1, 1, 3]
    assert [basis(Skeleton.circle(), n, True).dim for n in range(5)] == framed
    assert [basis(Skeleton.circle(), n, False).dim for n in range(5)] == unframed


@pytest.mark.criterion(2)
def test_trefoil_degree_two():
    t = bundled("trefoil")
    assert preliminary_Z(t, 2).coefficient("1212") == R(Fraction(25, 24))
    assert hump_Z(2).coefficient("1212") == R(Fraction(1, 24))
    assert final_I_mult(t, 2).coefficient("1212") == R(1)


@pytest.mark.criterion(3)
def test_wheels_formula():
    assert wheels_unknot(CAP) == final_I(bundled("unknot"), CAP)


@pytest.mark.criterion(4)
@pytest.mark.parametrize("name", ["trefoil", "mirror_trefoil", "figure_eight", "trefoil_trefoil"])
def test_rationality(name):
    I = final_I(bundled(name), CAP)
    assert [k for k, _n, c in I.items() if zeta_residual(c)] == []


@pytest.mark.criterion(5)
@pytest.mark.parametrize("name", bundled_names())
def test_grouplike(name):
    assert grouplike_defect(preliminary_Z(bundled(name), CAP), CAP) == 0


@pytest.mark.criterion(6)
def test_multiplicativity():
    t = final_I_mult(bundled("trefoil"), CAP)
    assert final_I_mult(bundled("trefoil_trefoil"), CAP) == t * t


@pytest.mark.criterion(7)
def test_symmetry():
    t = bundled("trefoil")
    z = preliminary_Z(t, CAP)
    assert preliminary_Z(mirror(t), CAP) == mirror_R(z)
    assert preliminary_Z(reverse(t), CAP) == reverse_S(z)
    f8 = final_I(bundled("figure_eight"), CAP)
    assert all(n % 2 == 0 for _k, n, _c in f8.items())


@pytest.mark.criterion(8)
def test_hump_factorization():
    t = bundled("trefoil")
    assert preliminary_Z(add_hump(t), CAP) == hump_Z(CAP) * preliminary_Z(t, CAP)


FIT = ["unknot", "trefoil", "figure_eight"]
EVAL = ["mirror_trefoil", "trefoil_trefoil"]


def _canonical(names, fit, cap=CAP):
    return canonical_consistency_check({n: (bundled(n), bundled_pd(n)) for n in names}, cap, fit)


@pytest.mark.criterion(9)
def test_canonical_degree_two_all_knots():
    rep = _canonical(bundled_names(), FIT, cap=2)
    assert rep["sign"] == -1
    assert all(v["ok"] for v in rep["degree2"].values())


@pytest.mark.criterion(9)
def test_canonical_degree_three():
    rep = _canonical(FIT + EVAL, FIT, cap=3)
    assert rep["ok"]


@pytest.mark.criterion(9)
@pytest.mark.xfail(
    strict=True,
    reason="three knots give rank 3 against five unknowns (1, j4, c4, c2^2, c2) at degree 4",
)
def test_canonical_degree_four_on_three_knots():
    assert _canonical(FIT + EVAL, FIT)["ok"]


def test_canonical_degree_four_extended_fit():
    # supplementary: a fit over five knots predicts the remaining ones
    fit = ["unknot", "trefoil", "figure_eight", "cinquefoil", "three_twist"]
    rest = [n for n in bundled_names() if n not in fit]
    rep = _canonical(fit + rest, fit)
    assert rep["ok"], rep["checks"]
    assert rep["checks"]


@pytest.mark.criterion(10)
@pytest.mark.parametrize("k", [1, 2, 3])
def test_analytic_twists(k):
    z, _ = an.braid_Z(an.bundled_model(f"twists{k}"), 2)
    assert abs(z.terms[((1,), (1,))] - k) < 1e-6
    assert abs(z.terms[((1, 2), (1, 2))] - k * k / 2) < 1e-6


@pytest.mark.criterion(10)
def test_analytic_hopf():
    assert abs(abs(an.linking_number(an.bundled_model("hopf"))) - 1) < 1e-6


@pytest.mark.criterion(10)
def test_analytic_trefoil_model():
    m = an.morse_Z(an.bundled_model("trefoil"), m_cap=2)
    assert an.compare(m.series, preliminary_Z(bundled("trefoil"), 2)) < 2e-2


@pytest.mark.criterion(10)
def test_analytic_long_chords_omitted():
    link = an.bundled_model("hump")
    full = an.morse_Z(link).series
    assert an.compare(an.morse_Z_short(link, (1, 2)).series, full) < 2e-2


@pytest.mark.criterion(11)
def test_walker_six_components():
    comps = an.simplex_components(an.bundled_model("hump"), 2)
    assert len(comps) == 6
    counts = sorted(c.pairings for c in comps)
    assert counts[:2] == [1, 1] and 6 in counts
    assert counts == [1, 1, 1, 6, 6, 36]
