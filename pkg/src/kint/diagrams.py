"""Skeletons, chord diagrams and Jacobi diagrams in canonical form.

A skeleton is an oriented tangle: lines with endpoints on the bottom or top
boundary, plus closed circles.  A chord diagram on a skeleton is stored as
one word per component: the chord labels met along the component's
orientation.  Canonical form relabels chords by first occurrence (lines
first, then circles) and rotates each circle to the lexicographically least
encoding.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

BOTTOM, TOP = 0, 1

End = tuple  # (side, index), side in {BOTTOM, TOP}, index 0-based
Words = tuple  # tuple of tuples of chord labels, one per component


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Skeleton:
    """Oriented 1-manifold with boundary points on two horizontal levels.

    ``lines`` holds ``(tail, head)`` endpoint pairs; the word of a line is
    read from tail to head.  Lines are kept sorted by their least endpoint
    (bottom points before top points), so for upward vertical strands the
    line number is the bottom position.
    """

    n_bottom: int
    n_top: int
    lines: tuple
    circles: int = 0

    def __post_init__(self):
        seen = [e for line in self.lines for e in line]
        expected = [(BOTTOM, i) for i in range(self.n_bottom)] + [(TOP, i) for i in range(self.n_top)]
        if sorted(seen) != expected:
            raise DiagramError(f"boundary points not used exactly once: {self.lines}")
        if list(self.lines) != sorted(self.lines, key=_line_key):
            object.__setattr__(self, "lines", tuple(sorted(self.lines, key=_line_key)))

    @property
    def n_components(self) -> int:
        return len(self.lines) + self.circles

    def bottom_orientation(self, i: int) -> int:
        """+1 if the strand at bottom point ``i`` points up (into the tangle)."""
        for tail, head in self.lines:
            if tail == (BOTTOM, i):
                return 1
            if head == (BOTTOM, i):
                return -1
        raise IndexError(i)

    def top_orientation(self, i: int) -> int:
        """+1 if the strand at top point ``i`` points up (out of the tangle)."""
        for tail, head in self.lines:
            if head == (TOP, i):
                return 1
            if tail == (TOP, i):
                return -1
        raise IndexError(i)

    # -- common skeletons ------------------------------------------------
    @staticmethod
    def circle() -> "Skeleton":
        return Skeleton(0, 0, (), 1)

    @staticmethod
    def line(up: bool = True) -> "Skeleton":
        return Skeleton.strands([1 if up else -1])

    @staticmethod
    def strands(orientations, perm=None) -> "Skeleton":
        """Vertical strands; bottom point ``i`` is joined to top point ``perm[i]``."""
        p = len(orientations)
        perm = list(range(p)) if perm is None else list(perm)
        lines = []
        for i, o in enumerate(orientations):
            b, t = (BOTTOM, i), (TOP, perm[i])
            lines.append((b, t) if o > 0 else (t, b))
        return Skeleton(p, p, tuple(lines))

    @staticmethod
    def empty() -> "Skeleton":
        return Skeleton(0, 0, ())


def _line_key(line):
    return min(line)


# ---------------------------------------------------------------------------
# canonical form


def _relabel(words) -> tuple:
    mapping: dict = {}
    out = []
    for w in words:
        nw = []
        for x in w:
            y = mapping.get(x)
            if y is None:
                y = mapping[x] = len(mapping) + 1
            nw.append(y)
        out.append(tuple(nw))
    return tuple(out)


@lru_cache(maxsize=200_000)
def _canon_circle(word: tuple) -> tuple:
    if not word:
        return ()
    best = None
    for r in range(len(word)):
        cand = _relabel((word[r:] + word[:r],))[0]
        if best is None or cand < best:
            best = cand
    return best


def canonical_words(words, n_lines: int) -> tuple:
    """Canonical words for a diagram whose first ``n_lines`` components are lines."""
    words = tuple(tuple(w) for w in words)
    n_circ = len(words) - n_lines
    if n_circ == 0:
        return _relabel(words)
    if n_circ == 1 and n_lines == 0:
        return (_canon_circle(words[0]),)
    lines = words[:n_lines]
    circles = words[n_lines:]
    best = None
    rotations = [range(max(len(c), 1)) for c in circles]
    for rots in itertools.product(*rotations):
        cand = _relabel(lines + tuple(c[r:] + c[:r] for c, r in zip(circles, rots)))
        if best is None or cand < best:
            best = cand
    return best


def check_words(words) -> int:
    """Validate that every chord label occurs exactly twice; return the order."""
    counts: dict = {}
    for w in words:
        for x in w:
            counts[x] = counts.get(x, 0) + 1
    bad = [x for x, c in counts.items() if c != 2]
    if bad:
        raise DiagramError(f"chord labels not occurring exactly twice: {sorted(bad, key=str)}")
    return len(counts)


@dataclass(frozen=True)
class ChordDiagram:
    skeleton: Skeleton
    words: tuple

    def __post_init__(self):
        if len(self.words) != self.skeleton.n_components:
            raise DiagramError("one word per skeleton component is required")
        check_words(self.words)

    @property
    def order(self) -> int:
        return sum(len(w) for w in self.words) // 2


def canonical_chord(d: ChordDiagram) -> str:
    return render_key(canonical_words(d.words, len(d.skeleton.lines)))


_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


def render_key(words) -> str:
    """ASCII interchange form: one word per component joined by ``|``."""
    return "|".join("".join(_DIGITS[x] for x in w) for w in words)


def parse_key(text: str) -> tuple:
    return tuple(tuple(_DIGITS.index(ch) for ch in part) for part in text.split("|"))


def key_degree(words) -> int:
    return sum(len(w) for w in words) // 2


def has_isolated_chord(words, n_lines: int) -> bool:
    """True if some chord joins two adjacent points of one component."""
    for k, w in enumerate(words):
        for i in range(len(w) - 1):
            if w[i] == w[i + 1]:
                return True
        if k >= n_lines and len(w) >= 2 and w[0] == w[-1]:
            return True
    return False


# ---------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def _matchings(n: int) -> tuple:
    """Restricted-growth words of length 2n with each label twice."""
    out = []

    def rec(word, open_count, used):
        if len(word) == 2 * n:
            out.append(tuple(word))
            return
        # open a new chord
        if used < n:
            rec(word + [used + 1], open_count + 1, used + 1)
        # close an open chord
        counts = {}
        for x in word:
            counts[x] = counts.get(x, 0) + 1
        for x in sorted(counts):
            if counts[x] == 1:
                rec(word + [x], open_count - 1, used)

    rec([], 0, 0)
    return tuple(out)


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_keys(skeleton: Skeleton, n: int) -> tuple:
    """All canonical chord diagrams of order ``n`` on ``skeleton``, sorted."""
    ncomp = skeleton.n_components
    if ncomp == 0:
        return ((),) if n == 0 else ()
    keys = set()
    nl = len(skeleton.lines)
    for comp in _compositions(2 * n, ncomp):
        cuts = list(itertools.accumulate(comp))
        for m in _matchings(n):
            words, start = [], 0
            for c in cuts:
                words.append(m[start:c])
                start = c
            keys.add(canonical_words(words, nl))
    return tuple(sorted(keys))


def enumerate_chords(skeleton: Skeleton, n: int) -> list:
    return [ChordDiagram(skeleton, k) for k in enumerate_keys(skeleton, n)]


# ---------------------------------------------------------------------------
# composition


@lru_cache(maxsize=None)
def compose_skeletons(top: Skeleton, bottom: Skeleton):
    """Glue ``top`` above ``bottom``.

    Returns ``(skeleton, plan)`` where ``plan[k]`` lists the ``(source,
    component)`` pieces, in orientation order, that make up component ``k``
    of the result (source 0 is ``top``, 1 is ``bottom``).
    """
    if top.n_bottom != bottom.n_top:
        raise DiagramError(f"cannot glue {top.n_bottom} bottom points to {bottom.n_top} top points")
    for j in range(top.n_bottom):
        if top.bottom_orientation(j) != bottom.top_orientation(j):
            raise DiagramError(f"orientation mismatch at gluing point {j}")

    tails = [{}, {}]  # source -> {tail end: component}
    for src, sk in enumerate((top, bottom)):
        for k, (tail, _head) in enumerate(sk.lines):
            tails[src][tail] = k

    def successor(src, k):
        head = (top, bottom)[src].lines[k][1]
        if src == 0 and head[0] == BOTTOM:
            return 1, tails[1][(TOP, head[1])]
        if src == 1 and head[0] == TOP:
            return 0, tails[0][(BOTTOM, head[1])]
        return None

    def external(src, end):
        side, i = end
        if src == 0 and side == TOP:
            return (TOP, i)
        if src == 1 and side == BOTTOM:
            return (BOTTOM, i)
        return None

    visited = set()
    new_lines = []
    for src, sk in enumerate((top, bottom)):
        for k, (tail, _h) in enumerate(sk.lines):
            t_ext = external(src, tail)
            if t_ext is None:
                continue
            pieces = []
            cur = (src, k)
            while True:
                visited.add(cur)
                pieces.append(cur)
                nxt = successor(*cur)
                if nxt is None:
                    break
                cur = nxt
            h_ext = external(cur[0], (top, bottom)[cur[0]].lines[cur[1]][1])
            new_lines.append(((t_ext, h_ext), tuple(pieces)))
    new_lines.sort(key=lambda x: _line_key(x[0]))
    circles = []
    for src, sk in enumerate((top, bottom)):
        for k in range(len(sk.lines)):
            if (src, k) in visited:
                continue
            pieces = []
            cur = (src, k)
            while cur not in visited:
                visited.add(cur)
                pieces.append(cur)
                cur = successor(*cur)
            circles.append(tuple(pieces))
    for src, sk in enumerate((top, bottom)):
        for c in range(sk.circles):
            circles.append(((src, len(sk.lines) + c),))
    skel = Skeleton(bottom.n_bottom, top.n_top, tuple(l for l, _ in new_lines), len(circles))
    plan = tuple(p for _, p in new_lines) + tuple(circles)
    return skel, plan


def compose_words(plan, words_top, words_bottom) -> tuple:
    """Concatenate words along a composition plan (labels of the bottom shifted)."""
    shift = max((x for w in words_top for x in w), default=0)
    if shift:
        words_bottom = tuple(tuple(x + shift for x in w) for w in words_bottom)
    src = (words_top, words_bottom)
    out = []
    for pieces in plan:
        if len(pieces) == 1:
            s, k = pieces[0]
            out.append(src[s][k])
        else:
            w = ()
            for s, k in pieces:
                w += src[s][k]
            out.append(w)
    return tuple(out)


# ---------------------------------------------------------------------------
# Jacobi diagrams


@dataclass(frozen=True)
class JacobiDiagram:
    """Uni-trivalent graph with coloured legs (B-flavour).

    ``vertices`` lists trivalent vertices as cyclically ordered triples of
    edge labels; ``legs`` lists ``(edge, colour)`` for univalent vertices.
    Every edge label occurs exactly twice in total.
    """

    vertices: tuple
    legs: tuple = field(default=())

    def __post_init__(self):
        counts: dict = {}
        for v in self.vertices:
            if len(v) != 3:
                raise DiagramError(f"trivalent vertex with {len(v)} edges")
            for e in v:
                counts[e] = counts.get(e, 0) + 1
        for e, _c in self.legs:
            counts[e] = counts.get(e, 0) + 1
        bad = [e for e, c in counts.items() if c != 2]
        if bad:
            raise DiagramError(f"edges with wrong valency: {bad}")
        for comp in _components(self):
            if not any(kind == "L" for kind, _ in comp):
                raise DiagramError("component without univalent vertex")

    @property
    def degree(self) -> int:
        return (len(self.vertices) + len(self.legs)) // 2

    def disjoint_union(self, other: "JacobiDiagram") -> "JacobiDiagram":
        shift = max([e for v in self.vertices for e in v] + [e for e, _ in self.legs], default=0)
        verts = tuple(tuple(e + shift for e in v) for v in other.vertices)
        legs = tuple((e + shift, c) for e, c in other.legs)
        return JacobiDiagram(self.vertices + verts, self.legs + legs)


def _vertex_list(j: JacobiDiagram):
    """[(kind, colour-or-None, edges)] with trivalent vertices first."""
    out = [("T", None, tuple(v)) for v in j.vertices]
    out += [("L", c, (e,)) for e, c in j.legs]
    return out


def _components(j: JacobiDiagram):
    verts = _vertex_list(j)
    by_edge: dict = {}
    for idx, (_k, _c, edges) in enumerate(verts):
        for e in edges:
            by_edge.setdefault(e, []).append(idx)
    seen, comps = set(), []
    for start in range(len(verts)):
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for e in verts[v][2]:
                for w in by_edge[e]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
        comps.append([(verts[v][0], v) for v in sorted(comp)])
    return comps


def wheel(n: int, colour: int = 1) -> JacobiDiagram:
    """The wheel with ``n`` spokes, every rim vertex ordered (spoke, out, in)."""
    if n < 1:
        raise ValueError("wheels have at least one spoke")
    rim = list(range(1, n + 1))  # rim edge k runs from vertex k to vertex k+1
    spokes = list(range(n + 1, 2 * n + 1))
    verts = []
    for k in range(n):
        out_edge = rim[k]
        in_edge = rim[k - 1]
        verts.append((spokes[k], out_edge, in_edge))
    return JacobiDiagram(tuple(verts), tuple((s, colour) for s in spokes))


def _component_code(verts, comp, flips_mask_bits):
    """Minimal rotation-system code of one component over all start darts."""
    by_edge: dict = {}
    for v in comp:
        for slot, e in enumerate(verts[v][2]):
            by_edge.setdefault(e, []).append((v, slot))
    tri = [v for v in comp if verts[v][0] == "T"]
    best = None
    best_parities = set()
    for mask in range(1 << len(tri)):
        flipped = {tri[i] for i in range(len(tri)) if mask >> i & 1}
        rot = {}
        for v in comp:
            edges = verts[v][2]
            rot[v] = (edges[0], edges[2], edges[1]) if v in flipped else edges
        parity = bin(mask).count("1") % 2

        def other_end(v, slot):
            e = rot[v][slot]
            (wa, _), (wb, _) = by_edge[e]
            if wa == v and wb == v:
                # loop edge: the other occurrence at the same vertex
                idx = [i for i, x in enumerate(rot[v]) if x == e]
                return v, idx[1] if idx[0] == slot else idx[0]
            w = wb if wa == v else wa
            return w, rot[w].index(e)

        for v0 in comp:
            for s0 in range(len(verts[v0][2])):
                num = {v0: 0}
                entry = {v0: s0}
                order = [v0]
                code = []
                qi = 0
                while qi < len(order):
                    v = order[qi]
                    qi += 1
                    deg = len(rot[v])
                    kind, colour = verts[v][0], verts[v][1]
                    item = [kind, colour if colour is not None else 0]
                    for d in range(deg):
                        slot = (entry[v] + d) % deg
                        w, t = other_end(v, slot)
                        if w not in num:
                            num[w] = len(order)
                            entry[w] = t
                            order.append(w)
                        item.append((num[w], (t - entry[w]) % len(rot[w])))
                    code.append(tuple(item))
                code = tuple(code)
                if best is None or code < best:
                    best = code
                    best_parities = {parity}
                elif code == best:
                    best_parities.add(parity)
    return best, best_parities


def canonical_jacobi(j: JacobiDiagram):
    """Return ``(key, sign)`` with ``j == sign * representative(key)``.

    The sign is the parity of cyclic-order reversals needed to reach the
    representative.  It is 0 when the diagram is isomorphic to itself with
    reversed orientation, i.e. vanishes by antisymmetry.
    """
    verts = _vertex_list(j)
    codes = []
    sign = 1
    for comp in _components(j):
        code, parities = _component_code(verts, [v for _k, v in comp], None)
        if len(parities) == 2:
            sign = 0
        elif sign and 1 in parities:
            sign = -sign
        codes.append(code)
    return tuple(sorted(codes)), sign
