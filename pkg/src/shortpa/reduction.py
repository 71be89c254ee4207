"""Active subsurfaces on the once-punctured torus and the pure passage.

Words over a generating list Sigma are tuples of tokens: i >= 0 stands for
Sigma[i] and ~i (that is, -i - 1) for its inverse.
"""

from dataclasses import dataclass, field

from .torus import MappingClass, classify, is_pure


class NotPure(ValueError):
    pass


@dataclass(frozen=True)
class Subsurface:
    kind: str  # empty | annulus | whole
    core: object = None

    def __str__(self):
        return f"annulus({self.core})" if self.kind == "annulus" else self.kind

    def to_json(self):
        out = {"kind": self.kind}
        if self.core is not None:
            out["core"] = str(self.core)
        return out


EMPTY = Subsurface("empty")
WHOLE = Subsurface("whole")


def annulus(core):
    return Subsurface("annulus", core)


# --- words over Sigma -------------------------------------------------------

def sigma_reduce(tokens):
    out = []
    for t in tokens:
        if out and out[-1] == ~t:
            out.pop()
        else:
            out.append(t)
    return tuple(out)


def sigma_inverse(word):
    return tuple(~t for t in reversed(word))


def sigma_str(word):
    return " ".join(str(t) if t >= 0 else f"~{~t}" for t in word)


def sigma_compact(word):
    """Run-length form, e.g. "0^60 1^60 ~0^60"."""
    out = []
    for t in word:
        if out and out[-1][0] == t:
            out[-1][1] += 1
        else:
            out.append([t, 1])
    return " ".join((str(t) if t >= 0 else f"~{~t}") + (f"^{n}" if n > 1 else "") for t, n in out)


def sigma_parse(text):
    out = []
    for tok in text.split():
        out.append(~int(tok[1:]) if tok.startswith("~") else int(tok))
    return tuple(out)


def sigma_eval(word, mats):
    inv = {}
    acc = MappingClass.identity()
    for t in word:
        if t >= 0:
            acc = acc * mats[t]
        else:
            if t not in inv:
                inv[t] = mats[~t].inverse()
            acc = acc * inv[t]
    return acc


def sigma_substitute(word, images):
    """Replace each token i by images[i] (a Sigma-word), freely reducing."""
    out = []
    for t in word:
        piece = images[t] if t >= 0 else sigma_inverse(images[~t])
        for s in piece:
            if out and out[-1] == ~s:
                out.pop()
            else:
                out.append(s)
    return tuple(out)


# --- active subsurfaces -----------------------------------------------------

def active_subsurface(g):
    c = classify(g)
    if c.kind == "finite-order":
        raise NotPure(f"{g.rows()} has finite order")
    if c.kind == "identity":
        return EMPTY
    if c.kind == "reducible":
        return annulus(c.fixed_slope)
    return WHOLE


def active_subsurface_group(gens):
    parts = [active_subsurface(g) for g in gens]
    nontriv = [p for p in parts if p.kind != "empty"]
    if not nontriv:
        return EMPTY
    if all(p.kind == "annulus" for p in nontriv) and len({p.core for p in nontriv}) == 1:
        return nontriv[0]
    return WHOLE


def nest_compare(A, B):
    if A == B:
        return "equal"
    if A.kind == "empty" or B.kind == "whole":
        return "A_in_B"
    if B.kind == "empty" or A.kind == "whole":
        return "B_in_A"
    # two annuli with distinct cores always cross on this surface
    return "overlap"


def increasing_chain(gens):
    """Indices i1, i2, ... with A(g_i1) < A(g_i1, g_i2) < ... = A(gens).

    The chain has length at most 2: annulus, then whole.
    """
    for g in gens:
        if not is_pure(g):
            raise NotPure(f"{g.rows()} has finite order")
    chain = []
    current = EMPTY
    target = active_subsurface_group(gens)
    for i, g in enumerate(gens):
        if current == target:
            break
        nxt = active_subsurface_group([gens[j] for j in chain] + [g])
        if nest_compare(current, nxt) == "A_in_B":
            chain.append(i)
            current = nxt
    return chain


# --- pure passage -----------------------------------------------------------

@dataclass
class PureGeneratorSet:
    words: list
    matrices: list
    index_d: int
    transversal: dict = field(repr=False, default=None)
    schreier: dict = field(repr=False, default=None)
    images: list = field(repr=False, default=None)

    def to_json(self):
        return {"index_d": self.index_d,
                "generators": [{"word": sigma_str(w), "matrix": m.to_json()}
                               for w, m in zip(self.words, self.matrices)]}


def is_level3(g):
    """g is congruent to +-I mod 3, i.e. trivial in PSL(2, Z/3)."""
    return g.mod(3) in ((1, 0, 0, 1), (2, 0, 0, 2))


def _mod3_mul(x, y):
    a, b, c, d = x
    e, f, g, h = y
    m = ((a * e + b * g) % 3, (a * f + b * h) % 3, (c * e + d * g) % 3, (c * f + d * h) % 3)
    return min(m, tuple((-t) % 3 for t in m))


def _mod3_inv(x):
    a, b, c, d = x
    m = (d % 3, (-b) % 3, (-c) % 3, a % 3)
    return min(m, tuple((-t) % 3 for t in m))


def pure_generators(sigma):
    """Schreier generators of <sigma> intersected with the level-3 subgroup.

    The image of <sigma> in PSL(2, Z/3) is explored breadth first; the BFS
    tree gives a transversal of words of length <= d - 1, so each Schreier
    generator t_c s t_{cs}^-1 has length <= 2d - 1.  Freely trivial ones
    are dropped.
    """
    if not sigma:
        raise ValueError("empty generating set")
    imgs = [g.mod(3) for g in sigma]
    one = (1, 0, 0, 1)
    steps = []
    for i, x in enumerate(imgs):
        steps.append((i, x))
        steps.append((~i, _mod3_inv(x)))
    trans = {one: ()}
    queue = [one]
    for c in queue:
        for tok, x in steps:
            nc = _mod3_mul(c, x)
            if nc not in trans:
                trans[nc] = trans[c] + (tok,)
                queue.append(nc)
    d = len(trans)
    words, mats, seen, sch = [], [], set(), {}
    for c in queue:
        for i, x in enumerate(imgs):
            w = sigma_reduce(trans[c] + (i,) + sigma_inverse(trans[_mod3_mul(c, x)]))
            sch[(c, i)] = w
            if not w or w in seen or sigma_inverse(w) in seen:
                continue
            seen.add(w)
            words.append(w)
            mats.append(sigma_eval(w, sigma))
    return PureGeneratorSet(words, mats, d, trans, sch, imgs)


def rewrite(word, pure):
    """Reidemeister-Schreier rewrite of a level-3 Sigma-word.

    Returns a list of (generator index, +-1) into pure.words whose product
    freely equals word; raises if word is not in the kernel.
    """
    index = {w: k for k, w in enumerate(pure.words)}
    c = (1, 0, 0, 1)
    out = []
    for t in word:
        i = t if t >= 0 else ~t
        if t >= 0:
            w = pure.schreier[(c, i)]
            c = _mod3_mul(c, pure.images[i])
            sign = 1
        else:
            c = _mod3_mul(c, _mod3_inv(pure.images[i]))
            w = pure.schreier[(c, i)]
            sign = -1
        if w:
            k, s = _lookup(w, index)
            out.append((k, s * sign))
    if c != (1, 0, 0, 1):
        raise ValueError("word is not in the level-3 subgroup")
    return out


def _lookup(w, index):
    if w in index:
        return (index[w], 1)
    return (index[sigma_inverse(w)], -1)
