"""The Farey graph as the curve graph of the once-punctured torus.

Distances are computed by moving one endpoint to 1/0 and running a
two-term recursion over the continued fraction of the other.  The
convergents c_{k-2}, c_{k-1}, c_k bound a fan of a_k triangles with pivot
c_{k-1}, so c_k is reached either along the rim of the fan from c_{k-2}
(a_k steps) or in one step from the pivot.
"""

from dataclasses import dataclass, field

from .torus import Slope, apply, intersection, to_infinity


def adjacent(alpha, beta):
    return intersection(alpha, beta) == 1


def continued_fraction(p, q):
    """Regular continued fraction of p/q, q > 0."""
    out = []
    while q:
        a, r = divmod(p, q)
        out.append(a)
        p, q = q, r
    return out


def _ladder(x):
    """Convergents of x (a Slope with q > 0) and their distances from 1/0.

    Returns (conv, dist, quotients); conv[0] is 1/0 and conv[i + 1] is the
    i-th convergent.
    """
    cf = continued_fraction(x.p, x.q)
    conv = [(1, 0), (cf[0], 1)]
    dist = [0, 1]
    for k in range(1, len(cf)):
        a = cf[k]
        (p2, q2), (p1, q1) = conv[-2], conv[-1]
        conv.append((a * p1 + p2, a * q1 + q2))
        dist.append(min(dist[-2] + a, dist[-1] + 1))
    return conv, dist, cf


def distance(alpha, beta):
    if alpha == beta:
        return 0
    x = apply(to_infinity(alpha), beta)
    return _ladder(x)[1][-1]


@dataclass
class FareyPath:
    vertices: list
    geodesic: bool = field(default=False)

    def __len__(self):
        return max(len(self.vertices) - 1, 0)

    def to_json(self):
        return [str(v) for v in self.vertices]

    def is_path(self):
        return all(adjacent(u, v) for u, v in zip(self.vertices, self.vertices[1:]))


def geodesic(alpha, beta):
    """One geodesic from alpha to beta.

    Ties are broken by always preferring the pivot step when walking back
    from beta, so the answer is deterministic.
    """
    if alpha == beta:
        return FareyPath([alpha], True)
    h = to_infinity(alpha)
    x = apply(h, beta)
    conv, dist, cf = _ladder(x)
    back = []
    i = len(conv) - 1
    while i > 0:
        back.append(conv[i])
        if i == 1:
            i = 0
            continue
        if dist[i] == dist[i - 1] + 1:
            i -= 1
            continue
        # rim of the fan: c_{k-2} + j c_{k-1}, j = a_k - 1 .. 1
        a = cf[i - 1]
        (p2, q2), (p1, q1) = conv[i - 2], conv[i - 1]
        for j in range(a - 1, 0, -1):
            back.append((p2 + j * p1, q2 + j * q1))
        i -= 2
    back.append(conv[0])
    hinv = h.inverse()
    verts = [apply(hinv, Slope(*v)) for v in reversed(back)]
    return FareyPath(verts, True)


def orbit_growth(g, gamma, N):
    out = []
    cur = gamma
    for _ in range(N):
        cur = apply(g, cur)
        out.append(distance(gamma, cur))
    return out


def geodesic_hits_sets(path, sets):
    verts = set(path.vertices)
    return all(verts & set(s) for s in sets)
