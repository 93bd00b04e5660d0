"""Diagram sums, relation spaces and exact bases of A_n / A'_n."""

from __future__ import annotations

import hashlib
import itertools
import json
import logging
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .diagrams import (
    DiagramError,
    Skeleton,
    canonical_words,
    check_words,
    compose_skeletons,
    compose_words,
    enumerate_keys,
    has_isolated_chord,
    key_degree,
    render_key,
)

log = logging.getLogger(__name__)


class DiagramSum:
    """Finite linear combination of canonical chord diagrams on one skeleton.

    Coefficients may be anything supporting ``+``, ``*`` and truth testing
    (``Coeff``, ``Fraction``, ``complex``).  Terms above ``cap`` are dropped.
    """

    __slots__ = ("skeleton", "terms", "cap")

    def __init__(self, skeleton: Skeleton, terms=None, cap: int = 5, canonical: bool = False):
        self.skeleton = skeleton
        self.cap = cap
        self.terms = {}
        if terms:
            nl = len(skeleton.lines)
            for words, c in terms.items():
                if not c or key_degree(words) > cap:
                    continue
                if not canonical:
                    words = canonical_words(words, nl)
                v = self.terms.get(words)
                v = c if v is None else v + c
                if v:
                    self.terms[words] = v
                else:
                    self.terms.pop(words, None)

    @classmethod
    def unit(cls, skeleton: Skeleton, one=Fraction(1), cap: int = 5) -> "DiagramSum":
        return cls(skeleton, {tuple(() for _ in range(skeleton.n_components)): one}, cap, canonical=True)

    def copy_with(self, terms) -> "DiagramSum":
        out = DiagramSum(self.skeleton, cap=self.cap)
        out.terms = terms
        return out

    # -- linear structure --------------------------------------------------
    def _check(self, other):
        if other.skeleton != self.skeleton:
            raise DiagramError("diagram sums live on different skeletons")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k)
            v = c if v is None else v + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return self.copy_with(out)

    def __neg__(self):
        return self.copy_with({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "DiagramSum":
        out = {}
        for k, c in self.terms.items():
            v = c * s
            if v:
                out[k] = v
        return self.copy_with(out)

    def __mul__(self, other):
        if isinstance(other, DiagramSum):
            return product(self, other)
        return self.scale(other)

    def __rmul__(self, s):
        return self.scale(s)

    def __eq__(self, other):
        if not isinstance(other, DiagramSum):
            return NotImplemented
        return self.skeleton == other.skeleton and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def degree_part(self, n: int) -> "DiagramSum":
        return self.copy_with({k: c for k, c in self.terms.items() if key_degree(k) == n})

    def truncate(self, cap: int) -> "DiagramSum":
        out = self.copy_with({k: c for k, c in self.terms.items() if key_degree(k) <= cap})
        out.cap = min(cap, self.cap)
        return out

    def constant(self):
        empty = tuple(() for _ in range(self.skeleton.n_components))
        return self.terms.get(empty, 0)

    def map_coeffs(self, f) -> "DiagramSum":
        out = {}
        for k, c in self.terms.items():
            v = f(c)
            if v:
                out[k] = v
        return self.copy_with(out)

    def rendered(self) -> dict:
        return {render_key(k): c for k, c in sorted(self.terms.items(), key=lambda kv: (key_degree(kv[0]), kv[0]))}

    def __repr__(self):
        body = ", ".join(f"{k or '1'}: {c}" for k, c in self.rendered().items())
        return f"DiagramSum({body})"


def product(a: DiagramSum, b: DiagramSum, drop=None) -> DiagramSum:
    """Stack ``a`` on top of ``b``; ``drop`` optionally filters result words."""
    skel, plan = compose_skeletons(a.skeleton, b.skeleton)
    cap = min(a.cap, b.cap)
    nl = len(skel.lines)
    by_deg_b: dict = {}
    for kb, cb in b.terms.items():
        by_deg_b.setdefault(key_degree(kb), []).append((kb, cb))
    out: dict = {}
    for ka, ca in a.terms.items():
        da = key_degree(ka)
        for db, items in by_deg_b.items():
            if da + db > cap:
                continue
            for kb, cb in items:
                w = compose_words(plan, ka, kb)
                if drop is not None and drop(w):
                    continue
                w = canonical_words(w, nl)
                v = out.get(w)
                c = ca * cb
                v = c if v is None else v + c
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
    res = DiagramSum(skel, cap=cap)
    res.terms = out
    return res


# ---------------------------------------------------------------------------
# relations


def _insert(words, comp, pos, label):
    w = words[comp]
    return words[:comp] + (w[:pos] + (label,) + w[pos:],) + words[comp + 1:]


def _slots(words, n_lines):
    for k, w in enumerate(words):
        top = len(w) + 1 if k < n_lines else max(len(w), 1)
        for pos in range(top):
            yield k, pos


def four_t_relations(skeleton: Skeleton, n: int) -> list:
    """All four-term relators of order ``n`` on ``skeleton``.

    For a diagram of order n-1, a chord c, and a slot for the fixed end P of
    a new chord, the moving end Q is placed just after / just before each end
    of c along the orientation:  sum over ends e of (Q after e) - (Q before e).
    """
    if n < 2:
        return []
    nl = len(skeleton.lines)
    P = n  # both ends of the new chord carry label n
    rels = []
    seen = set()
    for base in enumerate_keys(skeleton, n - 1):
        for k, pos in _slots(base, nl):
            withp = _insert(base, k, pos, P)
            for c in range(1, n):
                ends = [(kk, i) for kk, w in enumerate(withp) for i, x in enumerate(w) if x == c]
                terms: dict = {}
                for kk, i in ends:
                    for offset, sgn in ((1, 1), (0, -1)):
                        words = _insert(withp, kk, i + offset, P)
                        key = canonical_words(words, nl)
                        terms[key] = terms.get(key, 0) + sgn
                terms = {key: Fraction(v) for key, v in terms.items() if v}
                if not terms:
                    continue
                sig = tuple(sorted(terms.items()))
                if sig in seen:
                    continue
                seen.add(sig)
                rels.append(DiagramSum(skeleton, terms, cap=n, canonical=True))
    return rels


def one_t_reduce(x: DiagramSum) -> DiagramSum:
    """Drop diagrams with an isolated chord."""
    nl = len(x.skeleton.lines)
    return x.copy_with({k: c for k, c in x.terms.items() if not has_isolated_chord(k, nl)})


# ---------------------------------------------------------------------------
# exact elimination


def rref(rows, ncols):
    """Sparse Gauss-Jordan over Q.  ``rows``: iterable of {col: Fraction}.

    Returns ``{pivot_col: row}`` with every row normalised at its pivot (the
    least column present) and free of every other pivot column.
    """
    pivots: dict = {}
    for row in rows:
        r = {c: Fraction(v) for c, v in row.items() if v}
        for pc in sorted(set(r) & set(pivots)):
            f = r.get(pc)
            if f:
                for c, v in pivots[pc].items():
                    nv = r.get(c, 0) - f * v
                    if nv:
                        r[c] = nv
                    else:
                        r.pop(c, None)
        if not r:
            continue
        pc = min(r)
        inv = 1 / r[pc]
        r = {c: v * inv for c, v in r.items()}
        for oc, orow in pivots.items():
            f = orow.get(pc)
            if f:
                for c, v in r.items():
                    nv = orow.get(c, 0) - f * v
                    if nv:
                        orow[c] = nv
                    else:
                        orow.pop(c, None)
        pivots[pc] = r
    return pivots


def rank(rows, ncols) -> int:
    return len(rref(rows, ncols))


@dataclass(frozen=True)
class BasisTable:
    skeleton: Skeleton
    degree: int
    framed: bool
    basis: tuple  # canonical words
    reduction: dict  # canonical words -> {basis index: Fraction}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, words) -> dict:
        try:
            return self.reduction[words]
        except KeyError:
            raise DiagramError(f"diagram {render_key(words)} not on this table") from None


def _column_order(keys, nl):
    def isolated(k):
        n = 0
        for idx, w in enumerate(k):
            n += sum(1 for i in range(len(w) - 1) if w[i] == w[i + 1])
            if idx >= nl and len(w) >= 2 and w[0] == w[-1]:
                n += 1
        return n

    return sorted(keys, key=lambda k: (-isolated(k), k))


def build_basis(skeleton: Skeleton, n: int, framed: bool) -> BasisTable:
    keys = _column_order(enumerate_keys(skeleton, n), len(skeleton.lines))
    col = {k: i for i, k in enumerate(keys)}
    rows = [{col[k]: v for k, v in r.terms.items()} for r in four_t_relations(skeleton, n)]
    if not framed:
        nl = len(skeleton.lines)
        rows = [{col[k]: 1} for k in keys if has_isolated_chord(k, nl)] + rows
    piv = rref(rows, len(keys))
    free = [i for i in range(len(keys)) if i not in piv]
    free_pos = {c: j for j, c in enumerate(free)}
    basis = tuple(keys[c] for c in free)
    reduction = {}
    for i, k in enumerate(keys):
        if i in piv:
            reduction[k] = {free_pos[c]: -v for c, v in piv[i].items() if c != i}
        else:
            reduction[k] = {free_pos[i]: Fraction(1)}
    return BasisTable(skeleton, n, framed, basis, reduction)


class SpaceContext:
    """Cache of basis tables keyed by (skeleton, degree, framed).

    With ``cache_dir`` set (or ``KINT_CACHE_DIR`` in the environment) tables
    are also persisted as JSON.
    """

    def __init__(self, cache_dir=None):
        if cache_dir is None:
            cache_dir = os.environ.get("KINT_CACHE_DIR") or None
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self._tables: dict = {}

    def basis(self, skeleton: Skeleton, n: int, framed: bool) -> BasisTable:
        key = (skeleton, n, framed)
        t = self._tables.get(key)
        if t is None:
            t = self._load(key) or build_basis(skeleton, n, framed)
            self._store(key, t)
            self._tables[key] = t
        return t

    def _path(self, key):
        sk, n, framed = key
        digest = hashlib.sha1(repr((sk.n_bottom, sk.n_top, sk.lines, sk.circles)).encode()).hexdigest()[:16]
        name = f"basis-{digest}-{n}-{int(framed)}.json"
        return self.cache_dir / name

    def _load(self, key):
        if not self.cache_dir:
            return None
        p = self._path(key)
        if not p.exists():
            return None
        data = json.loads(p.read_text())
        sk, n, framed = key
        basis = tuple(tuple(tuple(w) for w in b) for b in data["basis"])
        red = {
            tuple(tuple(w) for w in item["key"]): {int(i): Fraction(v) for i, v in item["coords"].items()}
            for item in data["reduction"]
        }
        return BasisTable(sk, n, framed, basis, red)

    def _store(self, key, t):
        if not self.cache_dir:
            return
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        data = {
            "basis": [list(map(list, b)) for b in t.basis],
            "reduction": [
                {"key": list(map(list, k)), "coords": {str(i): str(v) for i, v in c.items()}}
                for k, c in t.reduction.items()
            ],
        }
        self._path(key).write_text(json.dumps(data))


DEFAULT_CONTEXT = SpaceContext()


def basis(skeleton: Skeleton, n: int, framed: bool, ctx: SpaceContext | None = None) -> BasisTable:
    return (ctx or DEFAULT_CONTEXT).basis(skeleton, n, framed)


def reduce(x: DiagramSum, framed: bool, max_degree: int | None = None, ctx: SpaceContext | None = None) -> dict:
    """Coordinates of ``x`` per degree: ``{n: [coeff per basis element]}``.

    Missing coordinates are zero; only degrees up to ``max_degree`` (default:
    the sum's cap) are reported.
    """
    top = x.cap if max_degree is None else max_degree
    out = {}
    for n in range(top + 1):
        t = basis(x.skeleton, n, framed, ctx)
        out[n] = [0] * t.dim
    for k, c in x.terms.items():
        n = key_degree(k)
        if n > top:
            raise DiagramError(f"degree {n} above requested {top}")
        t = basis(x.skeleton, n, framed, ctx)
        for i, v in t.coordinates(k).items():
            out[n][i] = out[n][i] + c * v
    return out


# ---------------------------------------------------------------------------
# Jacobi diagrams on a skeleton: STU and symmetrisation


@dataclass(frozen=True)
class SkeletonJacobi:
    """Jacobi diagram whose legs sit on a skeleton (A-flavour).

    ``words`` are per-component sequences of edge labels; ``vertices`` are
    trivalent vertices with cyclically ordered edge labels.
    """

    skeleton: Skeleton
    words: tuple
    vertices: tuple = ()


def stu_reduce(j: SkeletonJacobi, cap: int = 5, order: str = "first") -> DiagramSum:
    """Express ``j`` through chord diagrams with the STU relation.

    A vertex ``(e, a, b)`` whose edge ``e`` ends on the skeleton equals the
    diagram with ``b`` then ``a`` attached in place of ``e`` minus the one
    with ``a`` then ``b``.
    """
    on_skel = {x for w in j.words for x in w}
    verts = list(j.vertices)
    if verts and not any(e in on_skel for v in verts for e in v):
        raise DiagramError("a component never touches the skeleton")
    acc: dict = {}

    def rec(words, verts, sign):
        if not verts:
            check_words(words)
            acc[words] = acc.get(words, 0) + sign
            return
        present = {x: (k, i) for k, w in enumerate(words) for i, x in enumerate(w)}
        candidates = [idx for idx, v in enumerate(verts) if any(e in present for e in v)]
        if not candidates:
            raise DiagramError("a component never touches the skeleton")
        idx = candidates[0] if order == "first" else candidates[-1]
        v = verts[idx]
        r = next(r for r in range(3) if v[r] in present)
        e, a, b = v[r], v[(r + 1) % 3], v[(r + 2) % 3]
        k, i = present[e]
        rest = verts[:idx] + verts[idx + 1:]
        w = words[k]
        for pair, s in (((b, a), 1), ((a, b), -1)):
            nw = words[:k] + (w[:i] + pair + w[i + 1:],) + words[k + 1:]
            rec(nw, rest, sign * s)

    rec(tuple(tuple(w) for w in j.words), tuple(verts), 1)
    return DiagramSum(j.skeleton, {k: Fraction(v) for k, v in acc.items() if v}, cap=cap)


MAX_CHI_LEGS = 8


def chi(b, cap: int = 5) -> DiagramSum:
    """Symmetrisation B(1) -> A(circle): average over leg orders, then STU.

    ``b`` is a JacobiDiagram or an iterable of ``(coeff, JacobiDiagram)``.
    """
    from .diagrams import JacobiDiagram

    items = [(Fraction(1), b)] if isinstance(b, JacobiDiagram) else list(b)
    circle = Skeleton.circle()
    total = DiagramSum(circle, cap=cap)
    for coeff, jd in items:
        if jd.degree > cap:
            continue
        legs = [e for e, _c in jd.legs]
        k = len(legs)
        if k > MAX_CHI_LEGS:
            raise DiagramError(f"{k} legs exceed the supported bound {MAX_CHI_LEGS}")
        if any(c != 1 for _e, c in jd.legs):
            raise DiagramError("chi is implemented for one colour")
        acc = DiagramSum(circle, cap=cap)
        for perm in itertools.permutations(legs):
            acc = acc + stu_reduce(SkeletonJacobi(circle, (tuple(perm),), jd.vertices), cap)
        total = total + acc.scale(coeff * Fraction(1, math.factorial(k)))
    return total
