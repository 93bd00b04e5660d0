"""Numeric iterated integrals for Morse links and braids.

A Morse link is cut by its critical values into height intervals.  In each
interval every strand is a polyline ``z(t)``; a strand ending at a critical
point (where it meets its partner) uses a square-root profile on its last
segment so the critical point is quadratic.

All one-dimensional integrals of ``d log(z_a - z_b)`` are evaluated exactly
as differences of a continuous branch of the logarithm.  Only the nested
integral over a single interval needs quadrature.
"""

from __future__ import annotations

import cmath
import itertools
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .algops import Series, WordSeries, series_exp, words_to_diagrams
from .coeffring import Coeff, numeric_value
from .diagrams import Skeleton, canonical_words, has_isolated_chord
from .spaces import DiagramSum

TWO_PI_I = 2j * math.pi
COINCIDE = 1e-12


class ModelError(ValueError):
    pass


class NonConvergence(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# model


@dataclass
class Strand:
    component: int
    orientation: int  # +1 up, -1 down
    points: np.ndarray  # rows (t, z) with complex z, sorted by t
    tag: str = ""
    cap_top: bool = False  # meets its partner at the top of the interval
    cup_bottom: bool = False

    def z(self, t):
        """Position at heights ``t`` (array)."""
        t = np.asarray(t, dtype=float)
        ts, zs = self.points[:, 0].real, self.points[:, 1]
        out = np.interp(t, ts, zs.real) + 1j * np.interp(t, ts, zs.imag)
        if self.cap_top and len(ts) >= 2:
            c, tq = ts[-1], ts[-2]
            m = t > tq
            if np.any(m):
                frac = np.sqrt(np.clip((c - t[m]) / (c - tq), 0, None))
                out[m] = zs[-1] + (zs[-2] - zs[-1]) * frac
        if self.cup_bottom and len(ts) >= 2:
            c, tq = ts[0], ts[1]
            m = t < tq
            if np.any(m):
                frac = np.sqrt(np.clip((t[m] - c) / (tq - c), 0, None))
                out[m] = zs[0] + (zs[1] - zs[0]) * frac
        return out

    def dz(self, t):
        t = np.asarray(t, dtype=float)
        ts, zs = self.points[:, 0].real, self.points[:, 1]
        idx = np.clip(np.searchsorted(ts, t, side="right") - 1, 0, len(ts) - 2)
        out = (zs[idx + 1] - zs[idx]) / (ts[idx + 1] - ts[idx])
        if self.cap_top and len(ts) >= 2:
            c, tq = ts[-1], ts[-2]
            m = t > tq
            if np.any(m):
                out[m] = -(zs[-2] - zs[-1]) / (2 * np.sqrt((c - tq) * (c - t[m])))
        if self.cup_bottom and len(ts) >= 2:
            c, tq = ts[0], ts[1]
            m = t < tq
            if np.any(m):
                out[m] = (zs[1] - zs[0]) / (2 * np.sqrt((tq - c) * (t[m] - c)))
        return out


@dataclass
class Interval:
    t0: float
    t1: float
    strands: list

    @property
    def breakpoints(self) -> np.ndarray:
        ts = {self.t0, self.t1}
        for s in self.strands:
            ts.update(float(x) for x in s.points[:, 0].real)
        return np.array(sorted(ts))


@dataclass
class MorseLink:
    critical_values: list
    intervals: list
    pieces: list = field(default_factory=list)  # traversal order per component: (interval, strand)

    @property
    def components(self) -> list:
        return sorted({s.component for iv in self.intervals for s in iv.strands})


def _close(a, b) -> bool:
    return abs(a - b) < 1e-9


def parse_model(data) -> MorseLink:
    try:
        crit = [float(c) for c in data.get("critical_values", [])]
        intervals = []
        for iv in data["intervals"]:
            t0, t1 = float(iv["t0"]), float(iv["t1"])
            strands = []
            for s in iv["strands"]:
                pts = np.array([[p[2], complex(p[0], p[1])] for p in s["points"]], dtype=complex)
                o = {"up": 1, "down": -1}[s.get("orientation", "up")]
                strands.append(Strand(int(s.get("component", 0)), o, pts, str(s.get("tag", ""))))
            intervals.append(Interval(t0, t1, strands))
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelError(f"malformed model: {exc}") from None
    link = MorseLink(crit, intervals)
    _check(link)
    return link


def load_model(path) -> MorseLink:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ModelError(f"{path}: {exc}") from None
    return parse_model(data)


def bundled_model(name: str) -> MorseLink:
    f = resources.files("kint") / "data" / "analytic" / f"{name}.json"
    if not f.is_file():
        raise KeyError(f"no bundled model {name!r}")
    return parse_model(json.loads(f.read_text()))


def _check(link: MorseLink):
    crit = link.critical_values
    for k, iv in enumerate(link.intervals):
        if not iv.t0 < iv.t1:
            raise ModelError(f"interval {k} is empty")
        if k and not _close(link.intervals[k - 1].t1, iv.t0):
            raise ModelError(f"interval {k} does not start where interval {k - 1} ends")
        for s in iv.strands:
            ts = s.points[:, 0].real
            if len(ts) < 2 or np.any(np.diff(ts) <= 0) or not _close(ts[0], iv.t0) or not _close(ts[-1], iv.t1):
                raise ModelError(f"interval {k}: strand points must increase in t from t0 to t1")
        # quadratic critical points: strands meeting at an end of the interval
        for side, flag in ((0, "cup_bottom"), (-1, "cap_top")):
            ends = [s.points[side, 1] for s in iv.strands]
            for a, b in itertools.combinations(range(len(ends)), 2):
                if abs(ends[a] - ends[b]) < 1e-9:
                    t_here = iv.t0 if side == 0 else iv.t1
                    if not any(_close(t_here, c) for c in crit):
                        raise ModelError(f"interval {k}: strands meet at non-critical height {t_here}")
                    setattr(iv.strands[a], flag, True)
                    setattr(iv.strands[b], flag, True)
        # no collisions inside the interval
        bp = iv.breakpoints
        probe = np.concatenate([bp[1:-1], (bp[:-1] + bp[1:]) / 2])
        if len(iv.strands) > 1 and len(probe):
            zs = np.array([s.z(probe) for s in iv.strands])
            for a, b in itertools.combinations(range(len(iv.strands)), 2):
                if np.min(np.abs(zs[a] - zs[b])) < COINCIDE:
                    raise ModelError(f"interval {k}: strands {a} and {b} collide")
    # braids (no critical values) have open ends and no traversal
    link.pieces = _traverse(link) if crit else []


def _traverse(link: MorseLink) -> list:
    """Order the strand pieces of each component along its orientation."""
    ends = {}  # (k, s, side) -> neighbouring (k, s, side)
    for k, iv in enumerate(link.intervals):
        for side, flag, idx in ((0, "cup_bottom", 0), (1, "cap_top", -1)):
            group = [s for s, st in enumerate(iv.strands) if getattr(st, flag)]
            for a, b in itertools.combinations(group, 2):
                if abs(iv.strands[a].points[idx, 1] - iv.strands[b].points[idx, 1]) < 1e-9:
                    ends[(k, a, side)] = (k, b, side)
                    ends[(k, b, side)] = (k, a, side)
        if k + 1 < len(link.intervals):
            up = link.intervals[k + 1]
            for s, st in enumerate(iv.strands):
                if st.cap_top:
                    continue
                match = [u for u, su in enumerate(up.strands) if not su.cup_bottom and abs(su.points[0, 1] - st.points[-1, 1]) < 1e-9]
                if len(match) != 1:
                    raise ModelError(f"strand {s} of interval {k} has no unique continuation")
                ends[(k, s, 1)] = (k + 1, match[0], 0)
                ends[(k + 1, match[0], 0)] = (k, s, 1)
    all_pieces = {(k, s) for k, iv in enumerate(link.intervals) for s in range(len(iv.strands))}
    for k, s in all_pieces:
        for side in (0, 1):
            if (k, s, side) not in ends:
                raise ModelError(f"strand {s} of interval {k} has a loose end")
    orders = []
    seen = set()
    for start in sorted(all_pieces):
        if start in seen:
            continue
        order, cur = [], start
        while cur not in seen:
            seen.add(cur)
            order.append(cur)
            k, s = cur
            st = link.intervals[k].strands[s]
            exit_side = 1 if st.orientation > 0 else 0
            nk, ns, nside = ends[(k, s, exit_side)]
            nst = link.intervals[nk].strands[ns]
            entry_ok = (nside == 0 and nst.orientation > 0) or (nside == 1 and nst.orientation < 0)
            if not entry_ok:
                raise ModelError(f"orientation clash between pieces {cur} and {(nk, ns)}")
            if nst.component != st.component:
                raise ModelError("component labels disagree with connectivity")
            cur = (nk, ns)
        orders.append(order)
    if len(orders) != len(link.components):
        raise ModelError(f"{len(orders)} closed curves but {len(link.components)} component labels")
    return orders


def reverse_model(link: MorseLink) -> MorseLink:
    ivs = []
    for iv in link.intervals:
        ivs.append(Interval(iv.t0, iv.t1, [Strand(s.component, -s.orientation, s.points.copy(), s.tag) for s in iv.strands]))
    out = MorseLink(list(link.critical_values), ivs)
    _check(out)
    return out


# ---------------------------------------------------------------------------
# quadrature and logarithms


def _nodes(iv: Interval, order: int):
    """Gauss-Legendre nodes per polyline piece, clustered at both ends."""
    x, w = np.polynomial.legendre.leggauss(order)
    s = (x + 1) / 2
    w = w / 2
    phi = 3 * s**2 - 2 * s**3
    dphi = 6 * s * (1 - s)
    bp = iv.breakpoints
    ts, ws = [], []
    for a, b in zip(bp[:-1], bp[1:]):
        ts.append(a + (b - a) * phi)
        ws.append((b - a) * dphi * w)
    return np.concatenate(ts), np.concatenate(ws)


def _log_branch(diff: np.ndarray) -> np.ndarray:
    """Continuous logarithm along a densely sampled path."""
    return np.log(np.abs(diff)) + 1j * np.unwrap(np.angle(diff))


@dataclass
class _PairData:
    omega: np.ndarray  # integrand at nodes
    F: np.ndarray  # integral from t0 to each node
    total: complex  # integral over the whole interval (nan if divergent)
    meets_bottom: bool
    meets_top: bool


def _interval_pairs(iv: Interval, order: int, dense: int = 8):
    ts, ws = _nodes(iv, order)
    # a denser companion grid keeps the branch of the logarithm continuous
    bp = iv.breakpoints
    grid = np.unique(np.concatenate([ts, bp, *[np.linspace(a, b, dense) for a, b in zip(bp[:-1], bp[1:])]]))
    z = [s.z(grid) for s in iv.strands]
    zn = [s.z(ts) for s in iv.strands]
    dz = [s.dz(ts) for s in iv.strands]
    pos = np.searchsorted(grid, ts)
    out = {}
    for a, b in itertools.combinations(range(len(iv.strands)), 2):
        diff = z[a] - z[b]
        mb, mt = abs(diff[0]) < COINCIDE, abs(diff[-1]) < COINCIDE
        inner = slice(1 if mb else 0, len(grid) - 1 if mt else len(grid))
        L = np.full(len(grid), np.nan + 0j)
        L[inner] = _log_branch(diff[inner])
        F = L[pos] - L[0] if not mb else np.full(len(ts), np.nan + 0j)
        total = L[-1] - L[0] if not (mb or mt) else complex("nan")
        omega = (dz[a] - dz[b]) / (zn[a] - zn[b])
        out[(a, b)] = _PairData(omega, F, total, mb, mt)
    return ts, ws, out


# ---------------------------------------------------------------------------
# pairings and the component walker


@dataclass
class Component:
    """One connected component of the simplex cut by critical values."""

    intervals: tuple  # interval index for t_1 (highest) ... t_m
    pairings: int


def simplex_components(link: MorseLink, m: int) -> list:
    k = len(link.intervals)
    out = []
    for combo in itertools.combinations_with_replacement(range(k - 1, -1, -1), m):
        n = 1
        for i in combo:
            n *= math.comb(len(link.intervals[i].strands), 2)
        out.append(Component(combo, n))
    return out


def _position(link: MorseLink, where: dict, k: int, s: int, t: float) -> float:
    idx = where[(k, s)]
    iv = link.intervals[k]
    frac = (t - iv.t0) / (iv.t1 - iv.t0)
    return idx + (frac if iv.strands[s].orientation > 0 else 1 - frac)


def _chord_word(link, where, chords) -> tuple:
    """Cyclic word of chords given as ((k, s, t), (k, s', t))."""
    ends = []
    for label, (p, q) in enumerate(chords, start=1):
        ends.append((_position(link, where, *p), label))
        ends.append((_position(link, where, *q), label))
    ends.sort()
    return canonical_words((tuple(lab for _, lab in ends),), 0)


def _representative_heights(link, comp: Component) -> list:
    """Heights inside a component, strictly decreasing with the index."""
    counts: dict = {}
    for i in comp.intervals:
        counts[i] = counts.get(i, 0) + 1
    used: dict = {}
    hs = []
    for i in comp.intervals:
        iv = link.intervals[i]
        n = counts[i]
        j = used.get(i, 0)
        used[i] = j + 1
        hs.append(iv.t1 - (iv.t1 - iv.t0) * (j + 1) / (n + 1))
    return hs


# ---------------------------------------------------------------------------
# main integrals


@dataclass
class MorseResult:
    series: Series
    components: list
    diagnostics: dict


def _knot_positions(link: MorseLink):
    if len(link.pieces) != 1:
        raise ModelError("expected a knot (one component)")
    return {piece: i for i, piece in enumerate(link.pieces[0])}


def _raw_morse(link: MorseLink, m_cap: int, order: int, window=None) -> dict:
    """Coefficients on canonical circle words (isolated-chord diagrams skipped).

    With ``window = (lo, hi)`` a chord at a level whose interval lies inside
    the window must join two strands with equal tags.
    """
    where = _knot_positions(link)
    data = [_interval_pairs(iv, order) for iv in link.intervals]
    coeffs: dict = {((),): 1 + 0j}

    def allowed(k, pair):
        iv = link.intervals[k]
        if window is None or not (window[0] <= iv.t0 and iv.t1 <= window[1]):
            return True
        a, b = pair
        return iv.strands[a].tag == iv.strands[b].tag

    for m in range(1, m_cap + 1):
        if m > 2:
            raise ValueError("Morse integrals implemented through m = 2")
        for comp in simplex_components(link, m):
            hs = _representative_heights(link, comp)
            pair_lists = [[p for p in data[i][2] if allowed(i, p)] for i in comp.intervals]
            for P in itertools.product(*pair_lists):
                chords = []
                down = 0
                for i, pair, h in zip(comp.intervals, P, hs):
                    a, b = pair
                    chords.append(((i, a, h), (i, b, h)))
                    down += sum(1 for x in pair if link.intervals[i].strands[x].orientation < 0)
                words = _chord_word(link, where, chords)
                if has_isolated_chord(words, 0):
                    continue
                val = _component_value(data, comp, P)
                coeffs[words] = coeffs.get(words, 0) + (-1) ** down * val / TWO_PI_I**m
    return coeffs


def _component_value(data, comp, P) -> complex:
    if len(comp.intervals) == 1:
        ts, ws, pairs = data[comp.intervals[0]]
        return complex(np.sum(ws * pairs[P[0]].omega))
    (k1, k2), (p1, p2) = comp.intervals, P
    if k1 != k2:
        v = []
        for k, p in ((k1, p1), (k2, p2)):
            d = data[k][2][p]
            if np.isnan(d.total):
                raise NonConvergence(f"divergent single integral for pair {p} in interval {k}")
            v.append(d.total)
        return v[0] * v[1]
    ts, ws, pairs = data[k1]
    d1, d2 = pairs[p1], pairs[p2]
    if d2.meets_bottom:
        raise NonConvergence(f"divergent inner integral for pair {p2} in interval {k1}")
    # t_1 above t_2 inside one interval: integrate omega_1 against the
    # running integral of omega_2
    return complex(np.sum(ws * d1.omega * d2.F))


def _to_series(coeffs: dict, cap: int) -> Series:
    circle = Skeleton.circle()
    x = DiagramSum(circle, {w: c for w, c in coeffs.items()}, cap, canonical=True)
    return Series.from_sum(x, framed=False)


def morse_Z(link: MorseLink, m_cap: int = 2, order: int = 24, tol: float = 2e-2, window=None) -> MorseResult:
    """Kontsevich integral of a Morse knot through m chords, reduced in A'."""
    if m_cap > 2:
        raise ValueError("Morse integrals implemented through m = 2")
    coarse = _raw_morse(link, m_cap, order, window)
    fine = _raw_morse(link, m_cap, 2 * order, window)
    keys = set(coarse) | set(fine)
    change = max((abs(coarse.get(k, 0) - fine.get(k, 0)) for k in keys), default=0.0)
    if change > tol:
        raise NonConvergence(f"halving the step changed a coefficient by {change:.3g}")
    comps = [c for m in range(1, m_cap + 1) for c in simplex_components(link, m)]
    return MorseResult(_to_series(fine, m_cap), comps, {"step_change": change, "order": 2 * order})


def morse_Z_short(link: MorseLink, window, m_cap: int = 2, order: int = 24, tol: float = 2e-2) -> MorseResult:
    """As :func:`morse_Z` with long chords dropped inside ``window``.

    The distinguished tangle is the set of strands tagged ``"T"``; a chord is
    long when exactly one end lies on it.  Only levels whose whole interval
    lies in the window are affected.
    """
    lo, hi = window
    if hi <= lo:
        return morse_Z(link, m_cap, order, tol)
    return morse_Z(link, m_cap, order, tol, window=(lo, hi))


def linking_number(link: MorseLink, order: int = 24) -> float:
    comps = link.components
    if len(comps) != 2:
        raise ModelError("linking number needs exactly two components")
    total = 0j
    for iv in link.intervals:
        _ts, _ws, pairs = _interval_pairs(iv, order)
        for (a, b), d in pairs.items():
            sa, sb = iv.strands[a], iv.strands[b]
            if sa.component == sb.component:
                continue
            eps = sa.orientation * sb.orientation
            if np.isnan(d.total):
                raise NonConvergence("components touch")
            total += eps * d.total
    value = total / TWO_PI_I
    return value.real


# ---------------------------------------------------------------------------
# braids


def _braid_order(link: MorseLink):
    if link.critical_values or len(link.intervals) != 1:
        raise ModelError("a braid model has one interval and no critical values")
    iv = link.intervals[0]
    bottom = sorted(range(len(iv.strands)), key=lambda s: (iv.strands[s].points[0, 1].real, iv.strands[s].points[0, 1].imag))
    top = sorted(range(len(iv.strands)), key=lambda s: (iv.strands[s].points[-1, 1].real, iv.strands[s].points[-1, 1].imag))
    line = {s: i for i, s in enumerate(bottom)}
    perm = [top.index(s) for s in bottom]
    orient = [iv.strands[s].orientation for s in bottom]
    if any(o < 0 for o in orient):
        raise ModelError("braid strands must point up")
    return iv, line, Skeleton.strands(orient, perm)


def _transport(iv: Interval, line: dict, cap: int, steps: int) -> WordSeries:
    bp = iv.breakpoints
    grid = np.unique(np.concatenate([np.linspace(a, b, steps + 1) for a, b in zip(bp[:-1], bp[1:])]))
    z = {s: iv.strands[s].z(grid) for s in range(len(iv.strands))}
    result = WordSeries({(): 1 + 0j}, cap)
    for k in range(len(grid) - 1):
        gen = WordSeries(cap=cap)
        for a, b in itertools.combinations(range(len(iv.strands)), 2):
            ratio = (z[a][k + 1] - z[b][k + 1]) / (z[a][k] - z[b][k])
            d = cmath.log(ratio) / TWO_PI_I
            i, j = sorted((line[a], line[b]))
            gen = gen + WordSeries({((i, j),): d}, cap)
        result = series_exp(gen) * result  # later (higher) steps on top
    return result


def braid_Z(link: MorseLink, m_cap: int = 3, steps: int = 64, tol: float = 1e-6):
    """Path-ordered KZ transport up a braid, with Richardson extrapolation."""
    if m_cap > 3:
        raise ValueError("braid transport implemented through degree 3")
    iv, line, skel = _braid_order(link)
    z1 = _transport(iv, line, m_cap, steps)
    z2 = _transport(iv, line, m_cap, 2 * steps)
    z4 = _transport(iv, line, m_cap, 4 * steps)
    r12 = (z2.scale(4) - z1).scale(1 / 3)
    r24 = (z4.scale(4) - z2).scale(1 / 3)
    diff = max((abs(c) for c in (r24 - r12).terms.values()), default=0.0)
    if diff > tol:
        raise NonConvergence(f"Richardson estimates differ by {diff:.3g}")
    return words_to_diagrams(r24, skel), {"richardson_change": diff, "steps": 4 * steps}


# ---------------------------------------------------------------------------
# comparison


def compare(numeric, exact) -> float:
    """Largest coefficient deviation after reduction in a common basis."""
    if isinstance(numeric, Series) and isinstance(exact, Series):
        if numeric.skeleton != exact.skeleton or numeric.framed != exact.framed:
            raise ValueError("series live in different spaces")
        keys = set(numeric.coords) | set(exact.coords)
        cap = min(numeric.cap, exact.cap)
        return max(
            (abs(complex(_num(numeric.coords.get(k, 0))) - complex(_num(exact.coords.get(k, 0)))) for k in keys if k[0] <= cap),
            default=0.0,
        )
    if isinstance(numeric, DiagramSum) and isinstance(exact, DiagramSum):
        if numeric.skeleton != exact.skeleton:
            raise ValueError("sums live on different skeletons")
        cap = min(numeric.cap, exact.cap)
        return compare(Series.from_sum(numeric.truncate(cap), True), Series.from_sum(exact.truncate(cap), True))
    raise TypeError("compare expects two Series or two DiagramSums")


def _num(c) -> complex:
    if isinstance(c, Coeff):
        return numeric_value(c)
    return complex(c)
