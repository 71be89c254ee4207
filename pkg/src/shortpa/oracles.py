"""Brute-force oracles used to validate the fast algorithms.

Nothing here shares code with farey.distance or annular.annular_distance
beyond the slope type and matrix action.
"""

import math
from fractions import Fraction

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import shortest_path

from .torus import Slope, apply, to_infinity


class FareyWindow:
    """The Farey graph restricted to slopes of height <= H.

    Edges are generated by mediants: every Farey edge among slopes of height
    <= H appears when its younger endpoint is born as a mediant of two
    adjacent slopes.  The negative half is the mirror image p -> -p.
    """

    def __init__(self, H):
        self.H = H
        index = {}
        rows, cols = [], []

        def vid(p, q):
            k = (p, q)
            if k not in index:
                index[k] = len(index)
            return index[k]

        def edge(u, v):
            i, j = vid(*u), vid(*v)
            rows.append(i)
            cols.append(j)

        edge((1, 0), (0, 1))
        stack = [((0, 1), (1, 0))]
        while stack:
            u, v = stack.pop()
            m = (u[0] + v[0], u[1] + v[1])
            if max(m) > H:
                continue
            for side in (1, -1):
                edge((side * u[0], u[1]), (side * m[0], m[1]))
                edge((side * m[0], m[1]), (side * v[0], v[1]))
            stack.append((u, m))
            stack.append((m, v))
        # (-1, 0) is the same slope as (1, 0)
        self.index = {}
        for p, q in index:
            self.index.setdefault(Slope(p, q), len(self.index))
        remap = np.array([self.index[Slope(p, q)] for (p, q) in index])
        n = len(self.index)
        r = remap[np.array(rows)]
        c = remap[np.array(cols)]
        self.graph = coo_matrix((np.ones(len(r)), (r, c)), shape=(n, n)).tocsr()
        self.graph = self.graph + self.graph.T
        self.n = n

    def distances_from(self, sources):
        idx = [self.index[s] for s in sources]
        return shortest_path(self.graph, unweighted=True, directed=False, indices=idx)

    def multi_bfs(self, sources, targets):
        """Distances from up to 64 sources at once, one bit per source.

        Returns an int array of shape (len(sources), len(targets)), -1 where
        unreachable.
        """
        if len(sources) > 64:
            raise ValueError("at most 64 sources per sweep")
        g = self.graph
        tidx = np.array([self.index[t] for t in targets], dtype=np.int64)
        bits = np.arange(len(sources), dtype=np.uint64)
        frontier = np.zeros(self.n, dtype=np.uint64)
        for b, s in enumerate(sources):
            frontier[self.index[s]] |= np.uint64(1) << np.uint64(b)
        seen = frontier.copy()
        out = np.full((len(sources), len(tidx)), -1, dtype=np.int64)
        level = 0
        starts = g.indptr[:-1]
        while True:
            hit = ((frontier[tidx][None, :] >> bits[:, None]) & np.uint64(1)).astype(bool)
            out[hit & (out < 0)] = level
            if not frontier.any():
                break
            level += 1
            reached = np.bitwise_or.reduceat(frontier[g.indices], starts)
            frontier = reached & ~seen
            seen |= frontier
        return out

    def distance_table(self, pairs):
        """BFS distances for a list of (alpha, beta) pairs."""
        by_src = {}
        for k, (a, b) in enumerate(pairs):
            by_src.setdefault(a, []).append((k, b))
        out = [None] * len(pairs)
        srcs = list(by_src)
        for i in range(0, len(srcs), 64):
            chunk = srcs[i:i + 64]
            targets = sorted({b for a in chunk for _, b in by_src[a]}, key=lambda s: (s.q, s.p))
            col = {t: j for j, t in enumerate(targets)}
            D = self.multi_bfs(chunk, targets)
            for r, a in enumerate(chunk):
                for k, b in by_src[a]:
                    d = int(D[r, col[b]])
                    out[k] = d if d >= 0 else None
        return out


def _lift_pair_count(u, v, a, b):
    # Lines x = a + u (y - 1/2) and x = b + m + v (y - 1/2) in the plane
    # minus Z^2.  A translate m gives a real crossing iff the triangle cut
    # out by the two lines and the core height y = 1/2 holds no puncture.
    t = u - v
    half = Fraction(1, 2)
    lim = 1 + abs(t) / 2
    base = b - a
    count = 0
    for m in range(math.floor(-lim - base) - 1, math.ceil(lim - base) + 2):
        d0 = base + m
        if abs(d0) >= lim:
            continue
        top = half + d0 / t
        if top > half:
            heights = range(1, math.ceil(top))
        else:
            heights = range(math.floor(top) + 1, 1)
        clear = True
        for k in heights:
            xa = a + u * (k - half)
            xb = b + m + v * (k - half)
            lo, hi = min(xa, xb), max(xa, xb)
            if math.floor(lo) + 1 < hi:
                clear = False
                break
        if clear:
            count += 1
    return count


def lift_distance(core, alpha, beta):
    """Annular distance by explicit lifts to the annular cover.

    After moving the core to 1/0 it is the horizontal line y = 1/2 in the
    plane punctured at Z^2, with deck translation x -> x + 1.  A slope p/q
    (q > 0) lifts to the lines x = a + (p/q)(y - 1/2), q of them per unit
    of x.  Two lifts cross once for each translate that bounds a
    puncture-free triangle with the core.  Returns None when a slope is
    the core.
    """
    h = to_infinity(core)
    x, y = apply(h, alpha), apply(h, beta)
    if x.q == 0 or y.q == 0:
        return None
    u, v = Fraction(x.p, x.q), Fraction(y.p, y.q)
    q, s = x.q, y.q
    if u == v:
        return 1 if q > 1 else 0
    eps = Fraction(1, 10 * q * s)
    best = 0
    for j in range(q):
        for jj in range(s):
            best = max(best, _lift_pair_count(u, v, eps + Fraction(j, q),
                                              2 * eps + Fraction(jj, s)))
    return best + 1
