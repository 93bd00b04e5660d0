import copy
import json
import math
from fractions import Fraction

import numpy as np
import pytest

from kint import analytic as an
from kint.algops import Series, WordSeries, series_exp, words_to_diagrams
from kint.coeffring import Coeff
from kint.diagrams import Skeleton
from kint.evaluator import bundled, preliminary_Z


def model_data(name):
    from importlib import resources

    return json.loads((resources.files("kint") / "data" / "analytic" / f"{name}.json").read_text())


def gauss_linking(link, samples=60):
    """Discretized Gauss double integral over the two closed components."""
    curves = []
    for order in link.pieces:
        pts = []
        for k, s in order:
            iv = link.intervals[k]
            st = iv.strands[s]
            ts = np.linspace(iv.t0, iv.t1, samples)
            if st.orientation < 0:
                ts = ts[::-1]
            z = st.z(ts)
            pts.extend(zip(z.real, z.imag, ts))
        curves.append(np.array(pts))
    (a, b) = curves
    da, db = np.roll(a, -1, 0) - a, np.roll(b, -1, 0) - b
    ma, mb = a + da / 2, b + db / 2
    total = 0.0
    for i in range(len(ma)):
        r = ma[i] - mb
        cross = np.cross(da[i], db)
        total += np.sum(np.einsum("ij,ij->i", r, cross) / np.linalg.norm(r, axis=1) ** 3)
    return total / (4 * math.pi)


def test_hopf_linking_number():
    link = an.bundled_model("hopf")
    oracle = gauss_linking(link)
    assert abs(oracle - round(oracle)) < 0.05 and abs(round(oracle)) == 1
    assert abs(an.linking_number(link) - round(oracle)) < 1e-6


def test_linking_number_flips_with_orientation():
    link = an.bundled_model("hopf")
    data = model_data("hopf")
    for iv in data["intervals"]:
        for s in iv["strands"]:
            if s["component"] == 1:
                s["orientation"] = {"up": "down", "down": "up"}[s["orientation"]]
    flipped = an.parse_model(data)
    assert abs(an.linking_number(flipped) + an.linking_number(link)) < 1e-9


@pytest.mark.parametrize("k", [1, 2, 3])
def test_twist_braids(k):
    z, diag = an.braid_Z(an.bundled_model(f"twists{k}"), 3)
    assert abs(z.terms[((1,), (1,))] - k) < 1e-6
    assert abs(z.terms[((1, 2), (1, 2))] - k * k / 2) < 1e-6
    assert abs(z.terms[((1, 2, 3), (1, 2, 3))] - k**3 / 6) < 1e-6
    assert diag["richardson_change"] < 1e-6


def test_compare_with_exact_exponential():
    z, _ = an.braid_Z(an.bundled_model("twists1"), 2)
    c = WordSeries.letter((0, 1), 2, Coeff.rational(1))
    exact = words_to_diagrams(series_exp(c), Skeleton.strands([1, 1]))
    assert an.compare(z, exact) < 1e-6
    assert an.compare(exact, exact) == 0


def test_three_strand_transport_converges():
    # strands 1 and 2 twist while 3 stays put: the chords do not commute
    n = 96
    pts = []
    for j in range(n + 1):
        t = j / n
        w = 0.5 * complex(math.cos(2 * math.pi * t), math.sin(2 * math.pi * t))
        pts.append((t, w, -w, 3 + 0j))
    data = {
        "critical_values": [],
        "intervals": [{"t0": 0, "t1": 1, "strands": [
            {"component": 0, "orientation": "up", "points": [[p[i].real, p[i].imag, p[0]] for p in pts]}
            for i in (1, 2, 3)
        ]}],
    }
    z, diag = an.braid_Z(an.parse_model(data), 2)
    assert diag["richardson_change"] < 1e-6
    assert abs(z.terms[((1,), (1,), ())] - 1) < 1e-6
    # the third strand lies outside the twist, so its chords wind zero times
    assert abs(z.terms.get(((1,), (), (1,)), 0)) < 1e-6


def test_walker_on_hump():
    link = an.bundled_model("hump")
    comps = an.simplex_components(link, 2)
    assert len(comps) == 6
    assert sorted(c.pairings for c in comps) == [1, 1, 1, 6, 6, 36]
    counts = [len(iv.strands) for iv in link.intervals]
    for c in comps:
        assert c.pairings == math.prod(math.comb(counts[i], 2) for i in c.intervals)
    assert [c.pairings for c in an.simplex_components(link, 1)] == [1, 6, 1]


def test_hump_and_trefoil_models():
    h = an.morse_Z(an.bundled_model("hump"))
    assert abs(h.series.coords[(2, 0)] - 1 / 24) < 2e-2
    t = an.morse_Z(an.bundled_model("trefoil"))
    assert abs(t.series.coords[(2, 0)] - 25 / 24) < 2e-2
    assert an.compare(t.series, preliminary_Z(bundled("trefoil"), 2)) < 2e-2
    assert t.diagnostics["step_change"] < 2e-2


def test_reversal_leaves_degree_two_invariant():
    link = an.bundled_model("trefoil")
    a = an.morse_Z(link).series
    b = an.morse_Z(an.reverse_model(link)).series
    assert an.compare(a, b) < 1e-9


def test_short_chords():
    link = an.bundled_model("hump")
    full = an.morse_Z(link).series
    short = an.morse_Z_short(link, (1, 2)).series
    assert an.compare(full, short) < 2e-2
    assert an.compare(an.morse_Z_short(link, (2, 1)).series, full) == 0
    data = model_data("hump")
    for iv in data["intervals"]:
        for s in iv["strands"]:
            s.pop("tag", None)
    plain = an.parse_model(data)
    assert an.compare(an.morse_Z_short(plain, (0, 3)).series, an.morse_Z(plain).series) == 0


def test_non_convergence_reported():
    with pytest.raises(an.NonConvergence):
        an.morse_Z(an.bundled_model("trefoil"), order=2, tol=1e-12)


def _unknot(strands_mid):
    return {
        "critical_values": [0, 2],
        "intervals": [
            {"t0": 0, "t1": 1, "strands": [
                {"orientation": "up", "points": [[0, 0, 0], [-1, 0, 0.5], [-1, 0, 1]]},
                {"orientation": "down", "points": [[0, 0, 0], [1, 0, 0.5], [1, 0, 1]]},
            ]},
            {"t0": 1, "t1": 2, "strands": strands_mid},
        ],
    }


def test_unknot_model_is_trivial():
    link = an.parse_model(_unknot([
        {"orientation": "up", "points": [[-1, 0, 1], [-1, 0, 1.5], [0, 0, 2]]},
        {"orientation": "down", "points": [[1, 0, 1], [1, 0, 1.5], [0, 0, 2]]},
    ]))
    z = an.morse_Z(link).series
    assert set(z.coords) == {(0, 0)}


@pytest.mark.parametrize(
    "mid",
    [
        # orientation clash at the cap
        [{"orientation": "up", "points": [[-1, 0, 1], [0, 0, 2]]}, {"orientation": "up", "points": [[1, 0, 1], [0, 0, 2]]}],
        # loose end
        [{"orientation": "up", "points": [[-1, 0, 1], [-1, 0, 2]]}, {"orientation": "down", "points": [[1, 0, 1], [1, 0, 2]]}],
        # points out of order
        [{"orientation": "up", "points": [[-1, 0, 1.5], [-1, 0, 1], [0, 0, 2]]}, {"orientation": "down", "points": [[1, 0, 1], [0, 0, 2]]}],
        # strands collide inside the interval
        [{"orientation": "up", "points": [[-1, 0, 1], [1, 0, 1.5], [0, 0, 2]]}, {"orientation": "down", "points": [[1, 0, 1], [-1, 0, 1.5], [0, 0, 2]]}],
    ],
)
def test_model_errors(mid):
    with pytest.raises(an.ModelError):
        an.parse_model(_unknot(mid))


def test_strands_meeting_off_critical_level_rejected():
    data = _unknot([
        {"orientation": "up", "points": [[-1, 0, 1], [0, 0, 2]]},
        {"orientation": "down", "points": [[1, 0, 1], [0, 0, 2]]},
    ])
    data["critical_values"] = [0, 3]
    with pytest.raises(an.ModelError):
        an.parse_model(data)
