"""Finitely generated subgroups of F(a, b) via Stallings folding."""

from dataclasses import dataclass, field

from .words import LETTERS, Word, powerblind_length

DEFAULT_BALL_CAP = 12


class NotInSubgroup(ValueError):
    pass


class HypothesisViolated(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class BallDoesNotGenerate(ValueError):
    pass


class FoldedGraph:
    """Stallings graph of a subgroup; vertex 0 is the base point.

    out[v][(x, s)] = w means an edge labelled x^s from v to w.  After
    folding the labels at each vertex are distinct, so reading a reduced
    word is deterministic.
    """

    def __init__(self, gens):
        self.gens = [g for g in gens if g]
        parent = {}

        def find(v):
            while parent.setdefault(v, v) != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        out = {0: {}}
        nxt = 1
        pending = []

        def add_edge(u, x, s, v):
            out.setdefault(u, {})
            out.setdefault(v, {})
            pending.append((u, (x, s), v))
            pending.append((v, (x, -s), u))

        for g in self.gens:
            letters = g.letters()
            v = 0
            for i, (x, s) in enumerate(letters):
                if i == len(letters) - 1:
                    w = 0
                else:
                    w = nxt
                    nxt += 1
                add_edge(v, x, s, w)
                v = w

        # fold: insert edges one at a time, merging targets on clashes
        adj = {}
        while pending:
            u, lab, v = pending.pop()
            u, v = find(u), find(v)
            slot = adj.setdefault(u, {})
            if lab not in slot:
                slot[lab] = v
                continue
            w = find(slot[lab])
            slot[lab] = w
            if w == v:
                continue
            # merge v into w, re-queue v's edges
            if v == 0:
                v, w = w, v
            parent[v] = w
            slot[lab] = w
            for lab2, t in adj.pop(v, {}).items():
                pending.append((w, lab2, t))
        # canonicalise vertex ids
        verts = sorted({find(u) for u in adj} | {0})
        ren = {v: i for i, v in enumerate(verts)}
        self.out = [dict() for _ in verts]
        for u, slot in adj.items():
            for lab, t in slot.items():
                self.out[ren[find(u)]][lab] = ren[find(t)]
        self.nverts = len(verts)

    def read(self, w, start=0):
        """End vertex of the path reading w from start, or None."""
        v = start
        for x, e in w.syllables:
            lab = (x, 1 if e > 0 else -1)
            for _ in range(abs(e)):
                v = self.out[v].get(lab)
                if v is None:
                    return None
        return v

    def contains(self, w):
        return self.read(w) == 0

    def rank(self):
        edges = sum(len(s) for s in self.out) // 2
        return edges - self.nverts + 1

    def generator_power_loops(self):
        """Closed monochromatic cycles; each gives a conjugate of x^n in H.

        Returns a list of (letter, n, vertex).  In a folded graph every
        vertex has at most one outgoing x-edge, so x-components are paths
        or cycles.
        """
        found = []
        for x in LETTERS:
            seen = set()
            for v0 in range(self.nverts):
                if v0 in seen:
                    continue
                path = []
                v = v0
                while v is not None and v not in seen and v not in path:
                    path.append(v)
                    v = self.out[v].get((x, 1))
                seen.update(path)
                if v is not None and v in path:
                    found.append((x, len(path) - path.index(v), v))
        return found

    def path_to(self, target):
        """Some word reading from the base point to target (BFS tree)."""
        prev = {0: None}
        queue = [0]
        for u in queue:
            if u == target:
                break
            for (x, s), t in self.out[u].items():
                if t not in prev:
                    prev[t] = (u, x, s)
                    queue.append(t)
        syl = []
        v = target
        while prev[v] is not None:
            u, x, s = prev[v]
            syl.append((x, s))
            v = u
        return Word(reversed(syl))


def contains(gens, w):
    return FoldedGraph(gens).contains(w)


def generator_power_conjugate(gens):
    """A witness element of <gens> conjugate to a power of a or b, or None."""
    g = FoldedGraph(gens)
    loops = g.generator_power_loops()
    if not loops:
        return None
    x, n, v = loops[0]
    c = g.path_to(v)
    return c * Word.letter(x, n) * ~c


@dataclass
class SubgroupBall:
    gens: list
    ball_bound: int
    elements: frozenset
    generates: bool
    graph: FoldedGraph = field(repr=False, default=None)
    ambient_gens: tuple = LETTERS

    @property
    def size(self):
        return len(self.elements)


def subgroup_ball(gens, L, cap=DEFAULT_BALL_CAP):
    """All elements of <gens> with ambient length <= L, identity included.

    Elements are found by walking reduced paths of length <= L in the
    folded graph and keeping those that return to the base point.
    """
    if L < 1:
        raise ValueError("ball bound must be positive")
    if cap is not None and L > cap:
        raise ValueError(f"ball bound {L} exceeds cap {cap}")
    g = FoldedGraph(gens)
    found = {Word.identity()}
    stack = [(0, (), None)]
    while stack:
        v, syl, last = stack.pop()
        if len(syl) >= L:
            continue
        for (x, s), t in g.out[v].items():
            if last == (x, -s):
                continue
            nsyl = syl + ((x, s),)
            if t == 0:
                found.add(Word(nsyl))
            stack.append((t, nsyl, (x, s)))
    elements = frozenset(found)
    nontriv = [w for w in elements if w]
    ok = bool(nontriv) or not g.gens
    if ok:
        sub = FoldedGraph(nontriv)
        ok = all(sub.contains(h) for h in g.gens)
    return SubgroupBall(list(gens), L, elements, ok, g)


def h_layers(basis, depth):
    """Map every element of H-length <= depth to its H-length (BFS)."""
    steps = [w for w in basis.elements if w]
    dist = {Word.identity(): 0}
    frontier = [Word.identity()]
    for d in range(1, depth + 1):
        nxt = []
        for u in frontier:
            for s in steps:
                v = u * s
                if v not in dist:
                    dist[v] = d
                    nxt.append(v)
        frontier = nxt
        if not frontier:
            break
    return dist


_CODE = {"a": 1, "b": 2}


def _letters(w):
    return tuple(_CODE[x] * (1 if e > 0 else -1) for x, e in w.syllables for _ in range(abs(e)))


def h_layers_raw(basis, depth):
    """Like h_layers but over tuples of signed letter codes (+-1 a, +-2 b).

    Returns a dict from letter tuple to H-length.  Much faster than building
    Word objects; used by the fuzzers.
    """
    steps = [_letters(w) for w in basis.elements if w]
    seen = {(): 0}
    frontier = [()]
    for d in range(1, depth + 1):
        nxt = []
        for u in frontier:
            n = len(u)
            for s in steps:
                k = 0
                m = min(n, len(s))
                while k < m and u[n - 1 - k] == -s[k]:
                    k += 1
                v = u[:n - k] + s[k:]
                if v not in seen:
                    seen[v] = d
                    nxt.append(v)
        frontier = nxt
        if not frontier:
            break
    return seen


def raw_powerblind(t):
    runs = 0
    prev = 0
    for c in t:
        a = c if c > 0 else -c
        if a != prev:
            runs += 1
            prev = a
    return runs


def h_length(w, basis, max_depth=None):
    """Word length of w with respect to the ball elements."""
    if not basis.graph.contains(w):
        raise NotInSubgroup(f"{w} is not in the subgroup")
    if not w:
        return 0
    if basis.elements and w in basis.elements:
        return 1
    if not basis.generates:
        raise BallDoesNotGenerate("ball does not generate the subgroup")
    steps = [s for s in basis.elements if s]
    seen = {Word.identity()}
    frontier = [Word.identity()]
    d = 0
    while frontier:
        d += 1
        if max_depth is not None and d > max_depth:
            break
        nxt = []
        for u in frontier:
            for s in steps:
                v = u * s
                if v == w:
                    return d
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    raise NotInSubgroup(f"{w} not reached within depth {max_depth}")


@dataclass
class TechnicalReport:
    word: Word
    K: int
    powerblind: int
    h_length: int

    @property
    def lhs(self):
        return self.K * self.powerblind

    @property
    def holds(self):
        return self.lhs >= self.h_length

    def to_json(self):
        return {"word": str(self.word), "K": self.K, "powerblind": self.powerblind,
                "h_length": self.h_length, "holds": self.holds}


def check_hypothesis(basis):
    witness = generator_power_conjugate(basis.gens)
    if witness is not None:
        raise HypothesisViolated(
            f"subgroup contains {witness.pretty()}, a conjugate of a generator power",
            witness)


def technical_bound_check(w, basis, hlen=None, check=True):
    """Compare K * |w|_* against |w|_H, K being the size of the ball."""
    if check:
        check_hypothesis(basis)
    if hlen is None:
        hlen = h_length(w, basis)
    return TechnicalReport(w, basis.size, powerblind_length(w), hlen)
