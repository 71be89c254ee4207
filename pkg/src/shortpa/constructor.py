"""Constant ledger, conjugating words and the full-support pipeline."""

import itertools
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

from . import annular
from .annular import AnnularDomain
from .farey import orbit_growth
from .reduction import (
    EMPTY,
    NotPure,
    active_subsurface,
    active_subsurface_group,
    increasing_chain,
    pure_generators,
    sigma_compact,
    sigma_eval,
    sigma_str,
    sigma_substitute,
)
from .torus import INF, MappingClass, apply, classify, fills
from .words import Word

XI = 1  # complexity of the once-punctured torus


class InvalidOverride(ValueError):
    pass


class CertificationFailed(RuntimeError):
    pass


class CommonFixedSlope(ValueError):
    pass


def gl2_order(p=3):
    """|GL(2, Z/p)| by enumeration; the automorphism group of H_1(S; Z/p)."""
    return sum(1 for a, b, c, d in itertools.product(range(p), repeat=4)
               if (a * d - b * c) % p)


def _ceil(x):
    return math.ceil(Fraction(x))


@dataclass(frozen=True)
class ConstantLedger:
    c: Fraction
    M: int
    Q: int
    k: int
    n: int
    P: int
    L_fujiwara: int
    K_bound: int
    provenance: dict = field(hash=False, compare=False)

    def to_json(self):
        return {"c": str(self.c), "M": self.M, "Q": self.Q, "k": self.k, "n": self.n,
                "P": self.P, "L_fujiwara": self.L_fujiwara, "K_bound": str(self.K_bound),
                "provenance": dict(self.provenance)}

    def escalate(self):
        prov = dict(self.provenance)
        prov["P"] = "escalated"
        P = 2 * self.P
        return replace(self, P=P, K_bound=k_bound(P, self.c), provenance=prov)

    def formula_ab_length(self):
        return 4 * self.P * (2 * self.k * (2 * self.n + 1) + 1)


def k_bound(P, c, xi=XI):
    base = Fraction(320 * P * xi) / c + 4 * P
    return _ceil(2 * gl2_order(3) * base ** (2 * xi))


DEFAULTS = {"c": Fraction(1), "M": 10}


def make_ledger(config=None):
    config = dict(config or {})
    known = {"c", "M", "Q", "k", "n", "P", "L_fujiwara"}
    extra = set(config) - known
    if extra:
        raise InvalidOverride(f"unknown constants: {sorted(extra)}")
    prov = {}

    def pick(name, default, minimum=None):
        if name in config and config[name] is not None:
            val = config[name]
            if minimum is not None and val < minimum:
                raise InvalidOverride(f"{name} = {val} is below the required {minimum}")
            prov[name] = "override"
            return val
        prov[name] = "default"
        return default

    try:
        c = Fraction(config["c"]) if "c" in config else DEFAULTS["c"]
    except (TypeError, ValueError) as exc:
        raise InvalidOverride(f"bad c: {config['c']!r}") from exc
    if c <= 0:
        raise InvalidOverride("c must be positive")
    prov["c"] = "override" if "c" in config else "default"
    M = config.get("M", DEFAULTS["M"])
    if not isinstance(M, int) or M <= 0:
        raise InvalidOverride("M must be a positive integer")
    prov["M"] = "override" if "M" in config else "default"
    Q_min = max(3, _ceil(Fraction(2 * M + 4) / c))
    Q = pick("Q", Q_min, Q_min)
    k_min = _ceil(Fraction(20) / c)
    k = pick("k", k_min, k_min)
    n = pick("n", XI - 1, XI - 1)
    L = pick("L_fujiwara", Q, 1)
    P = pick("P", max(L, Q), max(L, Q))
    for name, val in (("Q", Q), ("k", k), ("n", n), ("L_fujiwara", L), ("P", P)):
        if not isinstance(val, int):
            raise InvalidOverride(f"{name} must be an integer")
    return ConstantLedger(c, M, Q, k, n, P, L, k_bound(P, c), prov)


# --- elements carried with their Sigma-words ---------------------------------

@dataclass
class Element:
    word: tuple  # Sigma-word
    matrix: MappingClass

    def to_json(self):
        return {"word": sigma_str(self.word), "matrix": self.matrix.to_json()}


def evaluate(w, a, b):
    """Matrix of the abstract word w with a, b -> the given matrices."""
    mats = {"a": a, "b": b}
    acc = MappingClass.identity()
    for x, e in w.syllables:
        acc = acc * mats[x] ** e
    return acc


def expand(w, a_word, b_word):
    """Sigma-word of the abstract word w with a, b -> the given Sigma-words."""
    tokens = []
    for x, s in w.letters():
        t = 0 if x == "a" else 1
        tokens.append(t if s > 0 else ~t)
    return sigma_substitute(tokens, [a_word, b_word])


def _reducible(g, what):
    c = classify(g)
    if c.kind != "reducible":
        raise NotPure(f"{what} is not a pure reducible class ({c.kind})")
    return c


def sufficiently_different(a, b):
    ca, cb = _reducible(a, "a"), _reducible(b, "b")
    return fills(ca.fixed_slope, cb.fixed_slope)


def conjugators(ledger):
    """Abstract words u, v with a1 = u a u^-1 and b1 = v b v^-1."""
    A = Word.letter("a", ledger.k)
    B = Word.letter("b", ledger.k)
    u = (B * A) ** ledger.n * B
    v = (A * B) ** ledger.n * A
    return u, v


def conjugating_words(a, b, ledger):
    """Conjugates a1, b1 of two reducibles; returns abstract words and matrices."""
    ca, cb = _reducible(a, "a"), _reducible(b, "b")
    if ca.fixed_slope == cb.fixed_slope:
        raise CommonFixedSlope(f"both fix {ca.fixed_slope}")
    u, v = conjugators(ledger)
    a1 = u * Word.letter("a") * ~u
    b1 = v * Word.letter("b") * ~v
    m1, m2 = evaluate(a1, a, b), evaluate(b1, a, b)
    assert sufficiently_different(m1, m2)
    return (a1, m1), (b1, m2)


@dataclass
class OverlapGraph:
    a_vertices: list
    b_vertices: list
    edges: list
    reducible_group: bool = False

    def connected(self):
        n = len(self.a_vertices) + len(self.b_vertices)
        return n > 0 and len(self.edges) >= n - 1 and n <= 2


def overlap_graph(a, b):
    ca, cb = classify(a), classify(b)
    for c, name in ((ca, "a"), (cb, "b")):
        if c.kind in ("identity", "finite-order"):
            raise NotPure(f"{name} must be pure and nontrivial")
    if "pseudo-anosov" in (ca.kind, cb.kind):
        return OverlapGraph([], [], [])
    A, B = AnnularDomain(ca.fixed_slope), AnnularDomain(cb.fixed_slope)
    same = A.core == B.core
    return OverlapGraph([A], [B], [] if same else [(0, 0)], reducible_group=same)


@dataclass
class TangleReport:
    alpha: object
    beta: object
    d_b: int
    d_a: int

    @property
    def verdict(self):
        return self.d_b >= 14 and self.d_a >= 14

    def to_json(self):
        return {"alpha": str(self.alpha), "beta": str(self.beta), "d_B": self.d_b,
                "d_A": self.d_a, "verdict": self.verdict}


def tangle_check(a, b, ledger, alpha1=None, beta1=None):
    ca, cb = _reducible(a, "a"), _reducible(b, "b")
    alpha1 = alpha1 or ca.fixed_slope
    beta1 = beta1 or cb.fixed_slope
    if alpha1 != ca.fixed_slope or beta1 != cb.fixed_slope or alpha1 == beta1:
        raise ValueError("precondition violated: slopes must be the distinct fixed slopes")
    u, v = conjugators(ledger)
    alpha = apply(evaluate(u, a, b), alpha1)
    beta = apply(evaluate(v, a, b), beta1)
    A, B = AnnularDomain(alpha1), AnnularDomain(beta1)
    d_b = annular.annular_distance(B, alpha, alpha1)
    d_a = annular.annular_distance(A, beta, beta1)
    return TangleReport(alpha, beta, d_b.value if d_b.defined else 0,
                        d_a.value if d_a.defined else 0)


class HypothesisNotMet(ValueError):
    pass


def fill_condition_check(alpha, beta, a, b):
    ca, cb = _reducible(a, "a"), _reducible(b, "b")
    A, B = AnnularDomain(ca.fixed_slope), AnnularDomain(cb.fixed_slope)
    d_b = annular.annular_distance(B, alpha, A.core)
    d_a = annular.annular_distance(A, beta, B.core)
    if not (d_b.defined and d_a.defined and d_b.value >= 14 and d_a.value >= 14):
        raise HypothesisNotMet(f"need distances >= 14, got {d_b.value} and {d_a.value}")
    return fills(alpha, beta)


# --- the omnibus word --------------------------------------------------------

@dataclass
class OmnibusResult:
    case: str
    word: Word  # abstract word in a = p_prev, b = h
    element: Element
    P: int
    escalations: int


def _case(ka, kb):
    if ka == kb == "pseudo-anosov":
        return "i"
    if ka == kb == "reducible":
        return "ii"
    return "iii"


def omnibus_word(p_prev, h, ledger, max_escalations=8):
    a, b = p_prev.matrix, h.matrix
    ka, kb = classify(a).kind, classify(b).kind
    for k in (ka, kb):
        if k not in ("reducible", "pseudo-anosov"):
            raise NotPure(f"omnibus inputs must be reducible or pseudo-Anosov, got {k}")
    case = _case(ka, kb)
    if case == "ii" and classify(a).fixed_slope == classify(b).fixed_slope:
        return OmnibusResult(case, Word.letter("a"), p_prev, ledger.P, 0)
    u, v = conjugators(ledger)
    a1 = u * Word.letter("a") * ~u
    b1 = v * Word.letter("b") * ~v
    m_a1, m_b1 = evaluate(a1, a, b), evaluate(b1, a, b)
    P = ledger.P
    for esc in range(max_escalations + 1):
        if case == "i" and m_a1.commutes(m_b1):
            w = a1 ** (2 * P)
        else:
            w = b1 ** P * a1 ** P * b1 ** -P * a1 ** P
        m = evaluate(w, a, b)
        if m.trace > 2:
            elem = Element(expand(w, p_prev.word, h.word), m)
            return OmnibusResult(case, w, elem, P, esc)
        P *= 2
    raise CertificationFailed(f"no pseudo-Anosov after {max_escalations} doublings of P")


# --- the pipeline ------------------------------------------------------------

@dataclass
class ConstructionReport:
    sigma: list
    kept: list
    pure: object
    chain: list
    cases: list
    output: Element
    target: object
    achieved: object
    ledger: ConstantLedger
    ab_word: Word = None
    escalations: int = 0
    P_used: int = None
    verdicts: dict = field(default_factory=dict)
    base_ledger: ConstantLedger = None

    @property
    def sigma_length(self):
        return len(self.output.word)

    @property
    def ok(self):
        return self.target == self.achieved and all(self.verdicts.values())

    def to_json(self):
        return {
            "sigma": [g.to_json() for g in self.sigma],
            "kept_indices": self.kept,
            "pure_generators": self.pure.to_json() if self.pure else None,
            "chain": [sigma_str(self.pure.words[i]) for i in self.chain] if self.pure else [],
            "cases": self.cases,
            "output_word": sigma_str(self.output.word),
            "output_word_compact": sigma_compact(self.output.word),
            "output_matrix": self.output.matrix.to_json(),
            "output_class": classify(self.output.matrix).to_json(),
            "sigma_length": self.sigma_length,
            "ab_word": self.ab_word.pretty() if self.ab_word is not None else None,
            "ab_length": len(self.ab_word) if self.ab_word is not None else None,
            "formula_ab_length": self.ledger.formula_ab_length(),
            "K_bound": str(self.ledger.K_bound),
            "K_bound_requested": str((self.base_ledger or self.ledger).K_bound),
            "within_K_bound": self.sigma_length <= self.ledger.K_bound,
            "P_used": self.P_used,
            "escalations": self.escalations,
            "active_subsurface": self.achieved.to_json(),
            "target_subsurface": self.target.to_json(),
            "verdicts": self.verdicts,
            "ledger": self.ledger.to_json(),
        }


def _filter(sigma):
    kept, seen = [], set()
    for i, g in enumerate(sigma):
        if g.is_identity() or g in seen:
            continue
        seen.add(g)
        kept.append(i)
    return kept


def construct_full_support(sigma, ledger=None):
    ledger = ledger or make_ledger()
    if not sigma:
        raise ValueError("empty generating set")
    kept = _filter(sigma)
    if not kept:
        ident = Element((), MappingClass.identity())
        return ConstructionReport(list(sigma), kept, None, [], [], ident, EMPTY, EMPTY,
                                  ledger, Word.identity(), 0, ledger.P,
                                  {"active_subsurface_matches": True})
    sub = [sigma[i] for i in kept]
    pure = pure_generators(sub)
    # re-index pure words onto the original Sigma
    remap = {j: i for j, i in enumerate(kept)}
    pure.words = [tuple(remap[t] if t >= 0 else ~remap[~t] for t in w) for w in pure.words]
    elems = [Element(w, m) for w, m in zip(pure.words, pure.matrices)]
    target = active_subsurface_group(pure.matrices)
    chain = increasing_chain(pure.matrices)
    cases, ab, esc, P_used = [], None, 0, ledger.P
    verdicts = {}
    if not chain:
        out = Element((), MappingClass.identity())
        ab = Word.identity()
    elif len(chain) == 1:
        out = elems[chain[0]]
        ab = Word.letter("a")
    else:
        p_prev, h = elems[chain[0]], elems[chain[1]]
        res = omnibus_word(p_prev, h, ledger)
        cases.append(res.case)
        out, ab, esc, P_used = res.element, res.word, res.escalations, res.P
        if res.case == "ii":
            verdicts["overlap_graph_connected"] = overlap_graph(p_prev.matrix, h.matrix).connected()
    used = ledger
    for _ in range(esc):
        used = used.escalate()
    achieved = active_subsurface(out.matrix)
    verdicts["active_subsurface_matches"] = achieved == target
    verdicts["sigma_word_evaluates"] = _check_eval(out, sigma)
    if achieved.kind == "whole":
        verdicts["orbit_grows"] = _grows(out.matrix)
    return ConstructionReport(list(sigma), kept, pure, chain, cases, out, target, achieved,
                              used, ab, esc, P_used, verdicts, ledger)


def _check_eval(out, sigma):
    return sigma_eval(out.word, sigma) == out.matrix


def _grows(g):
    d = orbit_growth(g, INF, 4)
    return min(d) > 0 and d[-1] >= d[0]


# --- random inputs ------------------------------------------------------------

def random_matrix(rng, bound=50):
    """A uniform-ish element of SL(2, Z) with entries in [-bound, bound]."""
    while True:
        a, c = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if math.gcd(a, c) != 1:
            continue
        # b0, d0 with a d0 - b0 c = 1, then shift along (a, c)
        g, x, y = _egcd(a, c)
        b0, d0 = -y * g, x * g
        ts = [t for t in range(-2 * bound, 2 * bound + 1)
              if abs(b0 + t * a) <= bound and abs(d0 + t * c) <= bound]
        if not ts:
            continue
        t = rng.choice(ts)
        return MappingClass(a, b0 + t * a, c, d0 + t * c)


def _egcd(a, b):
    # returns (g, x, y) with a x + b y = g, g = +-1 here
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def random_generator_set(rng, size=None, bound=50):
    """Random Sigma mixing bounded matrices, twist powers and the odd degenerate entry."""
    from .torus import Slope, dehn_twist
    size = size or rng.randint(1, 4)
    out = []
    for _ in range(size):
        r = rng.random()
        if r < 0.45:
            out.append(random_matrix(rng, bound))
        elif r < 0.9:
            h = 7  # keeps T^1 entries, at most p*q + 1, near the bound
            while True:
                p, q = rng.randint(-h, h), rng.randint(0, h)
                if math.gcd(p, q) == 1:
                    break
            out.append(dehn_twist(Slope(p, q)) ** rng.choice([1, -1]))
        elif r < 0.95 and out:
            out.append(rng.choice(out))
        else:
            out.append(MappingClass.identity())
    return out
