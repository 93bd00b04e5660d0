"""Sliced presentations of knots and the combinatorial Kontsevich integral.

A presentation lists special events from top to bottom.  Positions are
1-based and name the leftmost involved strand in the strand list *below* a
maximum, *above* a minimum, and at the bottom of a braid or associativity
slice.

Conventions:

* ``braid`` with sign +1: the left bunch at the bottom crosses over the right
  bunch.  With both strands pointing up this is a positive crossing.
* ``assoc`` with sign +1: bunches grouped as ``A(BC)`` at the top and
  ``(AB)C`` at the bottom.  Its series is Phi; sign -1 gives Phi^-1.
* ``orientation`` +1 (default) means the left leg of the first maximum
  points up.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .algops import (
    Series,
    WordSeries,
    series_exp,
    series_inverse,
    series_log,
    series_power,
    words_to_diagrams,
)
from .associator import A, B, AssocContext, phi_words, r_words
from .coeffring import Coeff
from .diagrams import BOTTOM, TOP, Skeleton, canonical_words, key_degree, wheel
from .spaces import DiagramSum, SpaceContext, basis, chi, product, rref

KINDS = ("min", "max", "braid", "assoc")
FRAMED_CAP = 4


class PresentationError(ValueError):
    """Malformed presentation data."""


class ValidationError(ValueError):
    """Presentation data that does not describe a knot."""


@dataclass(frozen=True)
class Event:
    kind: str
    sign: int = 1
    position: int = 1
    bunches: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PresentationError(f"unknown event {self.kind!r}")
        if self.sign not in (1, -1):
            raise PresentationError(f"sign must be +1 or -1, got {self.sign!r}")
        if not isinstance(self.position, int) or self.position < 1:
            raise PresentationError(f"position must be a positive integer, got {self.position!r}")
        b = tuple(self.bunches) or {"braid": (1, 1), "assoc": (1, 1, 1)}.get(self.kind, ())
        want = {"braid": 2, "assoc": 3}.get(self.kind, 0)
        if len(b) != want or any(not isinstance(w, int) or w < 1 for w in b):
            raise PresentationError(f"{self.kind} needs {want} positive bunch widths, got {list(b)}")
        object.__setattr__(self, "bunches", b)

    @property
    def width(self) -> int:
        return sum(self.bunches) if self.bunches else 2

    def to_json(self) -> dict:
        d = {"event": self.kind, "position": self.position}
        if self.kind in ("braid", "assoc"):
            d["sign"] = self.sign
            if any(w != 1 for w in self.bunches):
                d["bunches"] = list(self.bunches)
        return d


@dataclass(frozen=True)
class SlicedPresentation:
    slices: tuple
    writhe: int | None = None
    name: str = ""
    orientation: int = 1
    critical_points: int | None = None

    @property
    def c(self) -> int:
        return sum(1 for e in self.slices if e.kind in ("min", "max"))

    def to_json(self) -> dict:
        d = {"name": self.name, "writhe": self.writhe}
        if self.orientation != 1:
            d["orientation"] = self.orientation
        d["slices"] = [e.to_json() for e in self.slices]
        return d


def parse_presentation(data) -> SlicedPresentation:
    if not isinstance(data, dict) or not isinstance(data.get("slices"), list):
        raise PresentationError("presentation must be an object with a 'slices' list")
    events = []
    for i, s in enumerate(data["slices"]):
        if not isinstance(s, dict) or "event" not in s:
            raise PresentationError(f"slice {i}: expected an object with an 'event' field")
        try:
            events.append(Event(s["event"], s.get("sign", 1), s.get("position", 1), tuple(s.get("bunches", ()))))
        except PresentationError as exc:
            raise PresentationError(f"slice {i}: {exc}") from None
    w = data.get("writhe")
    if w is not None and not isinstance(w, int):
        raise PresentationError("writhe must be an integer")
    o = data.get("orientation", 1)
    if o not in (1, -1):
        raise PresentationError("orientation must be +1 or -1")
    return SlicedPresentation(tuple(events), w, str(data.get("name", "")), o, data.get("critical_points"))


def load_presentation(path) -> SlicedPresentation:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise PresentationError(f"{path}: {exc}") from None
    return parse_presentation(data)


def bundled_names() -> list:
    root = resources.files("kint") / "data" / "presentations"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


@lru_cache(maxsize=None)
def bundled(name: str) -> SlicedPresentation:
    f = resources.files("kint") / "data" / "presentations" / f"{name}.json"
    if not f.is_file():
        raise KeyError(f"no bundled presentation {name!r}")
    return parse_presentation(json.loads(f.read_text()))


# ---------------------------------------------------------------------------
# tracing


@dataclass
class Trace:
    """Strand bookkeeping for a validated presentation."""

    counts: list  # strands at each level, level k sits above slice k
    orientations: list  # per level, +1 up / -1 down for each strand
    skeletons: list  # per slice
    writhe: int
    c: int


def _slice_edges(e: Event, m_top: int):
    """Connections of one slice as pairs of points ``(side, index)`` (0-based)."""
    p = e.position - 1
    if e.kind == "max":
        m_bot = m_top + 2
        if p + 2 > m_bot:
            raise ValidationError(f"max at {e.position} outside {m_bot} strands")
        edges = [((BOTTOM, p), (BOTTOM, p + 1))]
        for i in range(m_top):
            edges.append(((BOTTOM, i if i < p else i + 2), (TOP, i)))
        return m_bot, edges
    if e.kind == "min":
        if p + 2 > m_top:
            raise ValidationError(f"min at {e.position} outside {m_top} strands")
        edges = [((TOP, p), (TOP, p + 1))]
        for i in range(m_top - 2):
            edges.append(((BOTTOM, i), (TOP, i if i < p else i + 2)))
        return m_top - 2, edges
    if p + e.width > m_top:
        raise ValidationError(f"{e.kind} at {e.position} with bunches {list(e.bunches)} outside {m_top} strands")
    perm = list(range(m_top))
    if e.kind == "braid":
        w1, w2 = e.bunches
        for s in range(w1):
            perm[p + s] = p + w2 + s
        for s in range(w2):
            perm[p + w1 + s] = p + s
    return m_top, [((BOTTOM, i), (TOP, perm[i])) for i in range(m_top)]


def validate(p: SlicedPresentation) -> Trace:
    if not p.slices:
        raise ValidationError("empty presentation")
    counts = [0]
    edges_per = []
    for k, e in enumerate(p.slices):
        if counts[-1] == 0 and e.kind != "max":
            raise ValidationError(f"slice {k}: only a max can start from zero strands")
        m_bot, edges = _slice_edges(e, counts[-1])
        counts.append(m_bot)
        edges_per.append(edges)
    if counts[-1] != 0:
        raise ValidationError(f"strand count imbalance: {counts[-1]} strands left at the bottom")
    n_max = sum(1 for e in p.slices if e.kind == "max")
    n_min = sum(1 for e in p.slices if e.kind == "min")
    if n_max != n_min:
        raise ValidationError("unequal numbers of maxima and minima")
    if p.critical_points is not None and p.critical_points != n_max + n_min:
        raise ValidationError(f"declared {p.critical_points} critical points, found {n_max + n_min}")

    # global points: (level, index); slice k spans level k (top) to k+1 (bottom)
    def glob(k, end):
        side, i = end
        return (k + 1, i) if side == BOTTOM else (k, i)

    adj: dict = {}
    for k, edges in enumerate(edges_per):
        for a, b in edges:
            ga, gb = glob(k, a), glob(k, b)
            adj.setdefault(ga, []).append((gb, k))
            adj.setdefault(gb, []).append((ga, k))

    # walk the component through the first maximum
    first = p.slices[0]
    pos = first.position - 1
    start = (1, pos + 1) if p.orientation > 0 else (1, pos)
    prev = (1, pos) if p.orientation > 0 else (1, pos + 1)
    directed = {}
    cur = start
    directed[(0, prev, cur)] = True
    while True:
        nxt = None
        for q, k in adj[cur]:
            key = (k, cur, q)
            rkey = (k, q, cur)
            if key in directed or rkey in directed:
                continue
            nxt = (q, k)
            break
        if nxt is None:
            break
        q, k = nxt
        directed[(k, cur, q)] = True
        prev, cur = cur, q
    total = sum(len(e) for e in edges_per)
    if len(directed) != total:
        raise ValidationError(f"presentation has more than one component ({len(directed)} of {total} arcs traced)")

    # orientation per level and per-slice skeletons
    orient = [[0] * m for m in counts]
    skeletons = []
    for k, edges in enumerate(edges_per):
        lines = []
        for a, b in edges:
            ga, gb = glob(k, a), glob(k, b)
            if (k, ga, gb) in directed:
                tail, head = a, b
            else:
                tail, head = b, a
            lines.append((tail, head))
            for end, sgn in ((tail, -1), (head, 1)):
                lvl, i = glob(k, end)
                # a head on the top boundary means the strand leaves upward
                up = sgn if end[0] == TOP else -sgn
                orient[lvl][i] = up
        skeletons.append(Skeleton(counts[k + 1], counts[k], tuple(lines)))

    writhe = 0
    for k, e in enumerate(p.slices):
        if e.kind == "braid":
            o = orient[k + 1]
            q = e.position - 1
            w1, w2 = e.bunches
            for s in range(q, q + w1):
                for t in range(q + w1, q + w1 + w2):
                    writhe += e.sign * o[s] * o[t]
    if p.writhe is not None and p.writhe != writhe:
        raise ValidationError(f"declared writhe {p.writhe} but crossings give {writhe}")
    return Trace(counts, orient, skeletons, writhe, n_max + n_min)


# ---------------------------------------------------------------------------
# event series


def _lift(letter_sets, orient) -> dict:
    """Image of each base letter under Delta (per bunch) and S (per strand)."""
    images = {}
    for letter, (bunch_i, bunch_j) in letter_sets.items():
        terms = {}
        for s in bunch_i:
            for t in bunch_j:
                terms[((s, t),)] = Coeff.rational(orient[s] * orient[t])
        images[letter] = WordSeries(terms)
    return images


def event_series(trace: Trace, p: SlicedPresentation, k: int, actx: AssocContext) -> DiagramSum:
    """Series of slice ``k`` on its own skeleton."""
    e = p.slices[k]
    skel = trace.skeletons[k]
    one = Coeff.rational(1)
    if e.kind in ("min", "max"):
        return DiagramSum.unit(skel, one, actx.cap)
    o = trace.orientations[k + 1]
    q = e.position - 1
    bunches, start = [], q
    for w in e.bunches:
        bunches.append(range(start, start + w))
        start += w
    if e.kind == "braid":
        base = r_words(actx, e.sign)
        images = _lift({A: (bunches[0], bunches[1])}, o)
    else:
        base = phi_words(actx, e.sign)
        images = _lift({A: (bunches[0], bunches[1]), B: (bunches[1], bunches[2])}, o)
    for img in images.values():
        img.cap = actx.cap
    return words_to_diagrams(base.substitute(images), skel)


def _adjacent_repeat(words) -> bool:
    for w in words:
        for i in range(len(w) - 1):
            if w[i] == w[i + 1]:
                return True
    return False


def slice_product(p: SlicedPresentation, cap: int, upto: int | None = None, framed: bool = False) -> DiagramSum:
    """Top-down product of the first ``upto`` event series (all by default)."""
    trace = validate(p)
    actx = _assoc(cap)
    n = len(p.slices) if upto is None else upto
    drop = None if framed else _adjacent_repeat
    acc = event_series(trace, p, 0, actx)
    for k in range(1, n):
        acc = product(acc, event_series(trace, p, k, actx), drop=drop)
    return acc


@lru_cache(maxsize=None)
def _assoc(cap: int) -> AssocContext:
    return AssocContext(cap)


def _check_cap(cap: int):
    if not 0 <= cap <= 5:
        raise ValueError(f"degree cap {cap} outside 0..5")


def preliminary_Z(p: SlicedPresentation, cap: int = 4, ctx: SpaceContext | None = None) -> Series:
    _check_cap(cap)
    acc = slice_product(p, cap)
    return Series.from_sum(acc, framed=False, ctx=ctx)


def hump() -> SlicedPresentation:
    return bundled("hump")


_HUMP_CACHE: dict = {}


def hump_Z(cap: int = 4, ctx=None) -> Series:
    key = (cap, id(ctx))
    if key not in _HUMP_CACHE:
        _HUMP_CACHE[key] = preliminary_Z(hump(), cap, ctx)
    return _HUMP_CACHE[key]


def _normalized(p, cap, shift, ctx):
    trace = validate(p)
    if trace.c % 2:
        raise ValidationError("odd number of critical points")
    z = preliminary_Z(p, cap, ctx)
    return z * series_power(series_inverse(hump_Z(cap, ctx)), trace.c // 2 - shift)


def final_I(p: SlicedPresentation, cap: int = 4, ctx=None) -> Series:
    """Z(K) / Z(H)^(c/2)."""
    return _normalized(p, cap, 0, ctx)


def final_I_mult(p: SlicedPresentation, cap: int = 4, ctx=None) -> Series:
    """Z(K) / Z(H)^(c/2 - 1), multiplicative under connected sum."""
    return _normalized(p, cap, 1, ctx)


WHEEL_B2 = Fraction(1, 48)
WHEEL_B4 = Fraction(-1, 5760)


def wheels_unknot(cap: int = 4, ctx=None) -> Series:
    """chi(exp(b2 w2 + b4 w4)) in A'(circle), through degree 4."""
    if not 0 <= cap <= 4:
        raise ValueError("the wheels expansion is implemented through degree 4")
    w2, w4 = wheel(2), wheel(4)
    items = [(WHEEL_B2, w2), (WHEEL_B4, w4), (WHEEL_B2 * WHEEL_B2 / 2, w2.disjoint_union(w2))]
    total = DiagramSum.unit(Skeleton.circle(), Coeff.rational(1), cap) + chi(items, cap).map_coeffs(Coeff.rational)
    return Series.from_sum(total, framed=False, ctx=ctx)


# ---------------------------------------------------------------------------
# framed integral


def _nullspace(rows, ncols) -> list:
    piv = rref(rows, ncols)
    out = []
    for f in range(ncols):
        if f in piv:
            continue
        v = {f: Fraction(1)}
        for pc, row in piv.items():
            if f in row:
                v[pc] = -row[f]
        out.append(v)
    return out


@lru_cache(maxsize=None)
def primitive_lift(n: int) -> tuple:
    """Lift data for degree-n primitives from A' to A (circle).

    The primitives of A_n (n >= 2) project isomorphically onto those of
    A'_n.  Returns ``(rows, lift, proj)``: a primitive x of A'_n is
    determined by its coordinates at ``rows``, and its lift is
    ``sum_r x[r] * lift[r]`` in framed coordinates.
    """
    import sympy

    from .algops import coproduct_words

    circle = Skeleton.circle()
    fr = basis(circle, n, True)
    un = basis(circle, n, False)
    eqs: dict = {}
    for i, words in enumerate(fr.basis):
        for (a, b), m in coproduct_words(words, 0).items():
            da, db = key_degree(a), key_degree(b)
            if da == 0 or db == 0:
                continue  # these match x(x)1 + 1(x)x exactly
            ta, tb = basis(circle, da, True), basis(circle, db, True)
            for ia, va in ta.coordinates(a).items():
                for ib, vb in tb.coordinates(b).items():
                    row = eqs.setdefault(((da, ia), (db, ib)), {})
                    row[i] = row.get(i, 0) + m * va * vb
    kernel = _nullspace(list(eqs.values()), fr.dim)
    proj = sympy.zeros(un.dim, len(kernel))
    for c, v in enumerate(kernel):
        for i, x in v.items():
            for j, u in un.coordinates(fr.basis[i]).items():
                proj[j, c] += sympy.Rational(x.numerator, x.denominator) * sympy.Rational(u.numerator, u.denominator)
    keep = [c for c in range(proj.cols) if any(proj[:, c])]  # drops Theta in degree 1
    proj = proj[:, keep]
    kernel = [kernel[c] for c in keep]
    _r, rows = proj.T.rref()
    inv = proj.extract(list(rows), list(range(proj.cols))).inv()
    lift = {}
    for a, r in enumerate(rows):
        vec: dict = {}
        for c in range(len(kernel)):
            w = Fraction(int(inv[c, a].p), int(inv[c, a].q))
            if w:
                for i, y in kernel[c].items():
                    vec[i] = vec.get(i, 0) + w * y
        lift[r] = {i: y for i, y in vec.items() if y}
    projection = {
        c: {j: Fraction(int(proj[j, c].p), int(proj[j, c].q)) for j in range(proj.rows) if proj[j, c]}
        for c in range(proj.cols)
    }
    return tuple(rows), lift, kernel, projection


def embed_primitive(x: Series) -> Series:
    """Lift a primitive element of A' (circle) to A, identity on primitives."""
    if x.framed:
        raise ValueError("expected an element of A'")
    out: dict = {}
    for n in sorted({k[0] for k in x.coords}):
        if n == 0:
            raise ValueError("primitive elements have no constant term")
        rows, lift, _k, _p = primitive_lift(n)
        part: dict = {}
        for r in rows:
            c = x.coords.get((n, r))
            if c:
                for i, y in lift[r].items():
                    part[i] = part.get(i, 0) + c * y
        for i, v in part.items():
            if v:
                out[(n, i)] = v
    lifted = Series(Skeleton.circle(), True, x.cap, out, None)
    if project_to_unframed(lifted) != x:
        raise ValueError("element is not primitive in A'")
    return lifted


def framed_Z(p: SlicedPresentation, cap: int = 4, ctx=None) -> Series:
    """exp(w Theta / 2) times the lift of Z(K) from A' to A."""
    if cap > FRAMED_CAP:
        raise ValueError(f"framed integral available through degree {FRAMED_CAP}")
    trace = validate(p)
    z = preliminary_Z(p, cap, ctx)
    lifted = series_exp(embed_primitive(series_log(z)))
    theta = Series(Skeleton.circle(), True, cap, {(1, 0): Coeff.rational(Fraction(trace.writhe, 2))})
    return series_exp(theta) * lifted


def project_to_unframed(z: Series) -> Series:
    """One-T reduction of a framed circle series."""
    terms = {}
    for (n, i), c in z.coords.items():
        terms[z.table(n).basis[i]] = c
    return Series.from_sum(DiagramSum(z.skeleton, terms, z.cap, canonical=True), framed=False)


# ---------------------------------------------------------------------------
# presentation transforms


def mirror(p: SlicedPresentation) -> SlicedPresentation:
    """Left-right reflection: positions reflected, crossing and grouping signs flipped."""
    trace = validate(p)
    out = []
    for k, e in enumerate(p.slices):
        m = trace.counts[k + 1] if e.kind != "min" else trace.counts[k]
        pos = m - (e.position - 1 + e.width) + 1
        if e.kind in ("braid", "assoc"):
            out.append(Event(e.kind, -e.sign, pos, tuple(reversed(e.bunches))))
        else:
            out.append(Event(e.kind, 1, pos))
    w = None if p.writhe is None else -p.writhe
    return SlicedPresentation(tuple(out), w, f"mirror({p.name})", -p.orientation)


def reverse(p: SlicedPresentation) -> SlicedPresentation:
    return replace(p, orientation=-p.orientation, name=f"reverse({p.name})", critical_points=None)


def _strip(p, first_max: bool):
    sl = list(p.slices)
    if first_max:
        if sl[0].kind != "max":
            raise ValidationError("presentation must start with a max")
        return sl[1:]
    if sl[-1].kind != "min":
        raise ValidationError("presentation must end with a min")
    return sl[:-1]


def connected_sum(p1: SlicedPresentation, p2: SlicedPresentation) -> SlicedPresentation:
    """Splice p2 (minus its first max) under p1 (minus its last min)."""
    t1, t2 = validate(p1), validate(p2)
    top_bottom = t1.orientations[-2]  # above the last min of p1
    o1 = top_bottom[p1.slices[-1].position - 1]
    o2 = t2.orientations[1][p2.slices[0].position - 1]
    if o1 != o2:
        p2 = reverse(p2)
    slices = tuple(_strip(p1, False) + _strip(p2, True))
    w = None if p1.writhe is None or p2.writhe is None else t1.writhe + t2.writhe
    out = SlicedPresentation(slices, w, f"{p1.name}#{p2.name}", p1.orientation)
    validate(out)
    return out


HUMP_SLICES = (
    Event("max", position=2),
    Event("assoc", -1, 1, (1, 2, 1)),
    Event("assoc", -1, 2, (1, 1, 1)),
    Event("min", position=3),
)


def add_hump(p: SlicedPresentation) -> SlicedPresentation:
    """Insert a zig-zag on the right leg of the first maximum."""
    if p.slices[0].kind != "max" or p.slices[0].position != 1:
        raise ValidationError("add_hump needs a presentation starting with a max at position 1")
    slices = (p.slices[0],) + HUMP_SLICES + p.slices[1:]
    out = SlicedPresentation(slices, p.writhe, f"hump({p.name})", p.orientation)
    validate(out)
    return out


# ---------------------------------------------------------------------------
# building presentations from braid closures


class _Tree:
    """Binary parenthesization of the current strands (leaves are strand ids)."""

    def __init__(self, node):
        self.root = node

    def leaves(self, node=None):
        node = self.root if node is None else node
        if not isinstance(node, tuple):
            return [node]
        return self.leaves(node[0]) + self.leaves(node[1])


def _width(node) -> int:
    return 1 if not isinstance(node, tuple) else _width(node[0]) + _width(node[1])


def _replace(node, target, new):
    if node == target:
        return new
    if isinstance(node, tuple):
        return (_replace(node[0], target, new), _replace(node[1], target, new))
    return node


def _find_lca(node, a, b, offset=0):
    """Smallest subtree containing leaf positions a < b, with its offset."""
    if isinstance(node, tuple):
        wl = _width(node[0])
        if b < offset + wl:
            return _find_lca(node[0], a, b, offset)
        if a >= offset + wl:
            return _find_lca(node[1], a, b, offset + wl)
    return node, offset


class PresentationBuilder:
    """Emit events while keeping the parenthesization consistent."""

    def __init__(self):
        self.root = None
        self.slices: list = []
        self._next = 0

    def _new_leaf(self):
        self._next += 1
        return self._next

    def max(self, position: int):
        """New cap whose legs become strands ``position`` and ``position+1``."""
        pair = (self._new_leaf(), self._new_leaf())
        if self.root is None:
            self.root = pair
        else:
            leaves = _Tree(self.root).leaves()
            i = position - 1
            nb = leaves[i - 1] if i > 0 else leaves[0]
            new = (nb, pair) if i > 0 else (pair, nb)
            self.root = _replace(self.root, nb, new)
        self.slices.append(Event("max", position=position))

    def _make_siblings(self, i: int):
        """Rotate until leaves i, i+1 (0-based) form a node."""
        while True:
            node, off = _find_lca(self.root, i, i + 1)
            left, right = node
            if not isinstance(left, tuple) and not isinstance(right, tuple):
                return
            if isinstance(left, tuple):
                l1, l2 = left
                new = (l1, (l2, right))
                self.slices.append(Event("assoc", -1, off + 1, (_width(l1), _width(l2), _width(right))))
            else:
                r1, r2 = right
                new = ((left, r1), r2)
                self.slices.append(Event("assoc", 1, off + 1, (_width(left), _width(r1), _width(r2))))
            self.root = _replace(self.root, node, new)

    def braid(self, i: int, sign: int):
        """Crossing of strands i, i+1 (1-based)."""
        self._make_siblings(i - 1)
        node, off = _find_lca(self.root, i - 1, i)
        self.root = _replace(self.root, node, (node[1], node[0]))
        self.slices.append(Event("braid", sign, i))

    def min(self, position: int):
        self._make_siblings(position - 1)
        node, _off = _find_lca(self.root, position - 1, position)
        if self.root == node:
            self.root = None
        else:
            self.root = _collapse(self.root, node)
        self.slices.append(Event("min", position=position))

    def build(self, name="", writhe=None, orientation=1) -> SlicedPresentation:
        p = SlicedPresentation(tuple(self.slices), writhe, name, orientation)
        t = validate(p)
        if writhe is None:
            p = replace(p, writhe=t.writhe)
        return p


def _collapse(node, target):
    """Remove subtree ``target``; its parent is replaced by the sibling."""
    if isinstance(node, tuple):
        if node[0] == target:
            return node[1]
        if node[1] == target:
            return node[0]
        return (_collapse(node[0], target), _collapse(node[1], target))
    return node


def braid_closure(n: int, word, name: str = "") -> SlicedPresentation:
    """Closure of a braid on ``n`` strands; ``word`` holds signed generators +-i.

    The braid runs upward on the left strands, returning downward on the right.
    """
    b = PresentationBuilder()
    for i in range(1, n + 1):
        b.max(i)
    for g in word:
        if g == 0 or abs(g) >= n:
            raise ValueError(f"bad generator {g} for {n} strands")
        b.braid(abs(g), 1 if g > 0 else -1)
    for i in range(n, 0, -1):
        b.min(i)
    return b.build(name)
