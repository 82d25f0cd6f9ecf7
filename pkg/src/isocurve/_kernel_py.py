"""Pure-Python hot loops over integer polygon coordinates.

Callers scale rational polygons to integers first (positive scaling and
translation preserve every predicate used here).  Edge ``i`` runs from
vertex ``i`` to vertex ``i + 1 (mod m)``; all indices are 0-based.
"""

BACKEND = "python"


def orient_sign(ax, ay, bx, by, cx, cy):
    d = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)
    return (d > 0) - (d < 0)


def _cross_sign(xs, ys, i, j, m):
    i1 = i + 1 if i + 1 < m else 0
    j1 = j + 1 if j + 1 < m else 0
    ax, ay, bx, by = xs[i], ys[i], xs[i1], ys[i1]
    cx, cy, dx, dy = xs[j], ys[j], xs[j1], ys[j1]
    s1 = orient_sign(ax, ay, cx, cy, dx, dy)
    s2 = orient_sign(bx, by, cx, cy, dx, dy)
    s3 = orient_sign(ax, ay, bx, by, cx, cy)
    s4 = orient_sign(ax, ay, bx, by, dx, dy)
    if s1 < 0 and s2 > 0 and s3 > 0 and s4 < 0:
        return 1
    if s1 > 0 and s2 < 0 and s3 < 0 and s4 > 0:
        return -1
    return 0


def crossing_pairs(xs, ys):
    """All crossing pairs ``(i, j, sign)`` with ``i < j`` and non-adjacent edges."""
    m = len(xs)
    out = []
    for i in range(m):
        for j in range(i + 2, m):
            if i == 0 and j == m - 1:
                continue
            s = _cross_sign(xs, ys, i, j, m)
            if s:
                out.append((i, j, s))
    return out


def _line(xs, ys, i, m):
    i1 = i + 1 if i + 1 < m else 0
    x0, y0, x1, y1 = xs[i], ys[i], xs[i1], ys[i1]
    return (y1 - y0, x0 - x1, x1 * y0 - x0 * y1)


def generic_violations(xs, ys, stop_at_first=False):
    """Witnesses for each failed general-position condition.

    Returns ``(same_x, collinear, parallel, concurrent)``: vertex pairs with
    equal x, collinear vertex triples, parallel edge pairs, and edge triples
    whose supporting lines have a vanishing concurrency determinant.
    """
    m = len(xs)
    same_x, collinear, par, conc = [], [], [], []

    def done():
        return stop_at_first and (same_x or collinear or par or conc)

    for i in range(m):
        for j in range(i + 1, m):
            if xs[i] == xs[j]:
                same_x.append((i, j))
                if stop_at_first:
                    return same_x, collinear, par, conc
    for i in range(m):
        for j in range(i + 1, m):
            for k in range(j + 1, m):
                if orient_sign(xs[i], ys[i], xs[j], ys[j], xs[k], ys[k]) == 0:
                    collinear.append((i, j, k))
                    if stop_at_first:
                        return same_x, collinear, par, conc
    lines = [_line(xs, ys, i, m) for i in range(m)]
    for i in range(m):
        a1, b1, _ = lines[i]
        for j in range(i + 1, m):
            a2, b2, _ = lines[j]
            if a1 * b2 - a2 * b1 == 0:
                par.append((i, j))
                if stop_at_first:
                    return same_x, collinear, par, conc
    for i in range(m):
        a1, b1, c1 = lines[i]
        for j in range(i + 1, m):
            a2, b2, c2 = lines[j]
            m12 = a1 * b2 - a2 * b1
            m13 = a1 * c2 - a2 * c1
            m23 = b1 * c2 - b2 * c1
            for k in range(j + 1, m):
                a3, b3, c3 = lines[k]
                if a3 * m23 - b3 * m13 + c3 * m12 == 0:
                    conc.append((i, j, k))
                    if done():
                        return same_x, collinear, par, conc
    return same_x, collinear, par, conc
