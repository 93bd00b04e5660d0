"""Independent brute-force oracles shared by the test modules."""

import math

import sympy


def _matchings(points):
    if not points:
        yield ()
        return
    a = points[0]
    for b in points[1:]:
        rest = [x for x in points if x not in (a, b)]
        for m in _matchings(rest):
            yield ((a, b),) + m


def _word(matching, size):
    w = [0] * size
    for label, (a, b) in enumerate(matching, start=1):
        w[a] = w[b] = label
    return tuple(w)


def _normal(word):
    """Smallest relabelled rotation of a cyclic word."""
    best = None
    for r in range(len(word) or 1):
        rot = word[r:] + word[:r]
        seen = {}
        cand = tuple(seen.setdefault(x, len(seen) + 1) for x in rot)
        if best is None or cand < best:
            best = cand
    return best or ()


def circle_diagrams(n):
    return sorted({_normal(_word(m, 2 * n)) for m in _matchings(list(range(2 * n)))})


def _isolated(word):
    k = len(word)
    return any(word[i] == word[(i + 1) % k] for i in range(k)) if k else False


def four_term_rows(n):
    """Slide a new chord's free end past both ends of an existing chord."""
    rows = []
    if n < 2:
        return rows
    for m in _matchings(list(range(2 * n - 2))):
        base = _word(m, 2 * n - 2)
        new = n  # label of the inserted chord
        for g in range(2 * n - 2):
            w = list(base[:g + 1]) + [new] + list(base[g + 1:])
            for b in range(1, n):
                row = {}
                for e in [i for i, x in enumerate(w) if x == b]:
                    before = tuple(w[:e] + [new] + w[e:])
                    after = tuple(w[:e + 1] + [new] + w[e + 1:])
                    for d, s in ((before, 1), (after, -1)):
                        key = _normal(d)
                        row[key] = row.get(key, 0) + s
                rows.append(row)
    return rows


def dimension(n, framed):
    cols = circle_diagrams(n)
    index = {c: i for i, c in enumerate(cols)}
    rows = four_term_rows(n)
    if not framed:
        rows = rows + [{c: 1} for c in cols if _isolated(c)]
    if not rows:
        return len(cols)
    M = sympy.zeros(len(rows), len(cols))
    for r, row in enumerate(rows):
        for k, v in row.items():
            M[r, index[k]] += v
    return len(cols) - M.rank()


def matchings_count(n):
    return math.prod(range(1, 2 * n, 2))
