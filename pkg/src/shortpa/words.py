"""Reduced words in the free group on two letters a, b.

A word is stored as a tuple of syllables (letter, exponent) with adjacent
letters distinct and no zero exponents.
"""

import json

LETTERS = ("a", "b")


def _merge(syllables):
    # stack-based free reduction of an arbitrary syllable sequence
    out = []
    for x, e in syllables:
        if x not in LETTERS:
            raise ValueError(f"unknown letter {x!r}")
        if e == 0:
            continue
        if out and out[-1][0] == x:
            e += out[-1][1]
            out.pop()
            if e != 0:
                out.append((x, e))
        else:
            out.append((x, e))
    return tuple(out)


class Word:
    __slots__ = ("syllables", "_hash")

    def __init__(self, syllables=()):
        self.syllables = _merge(syllables)
        self._hash = None

    @classmethod
    def _raw(cls, syllables):
        w = object.__new__(cls)
        w.syllables = syllables
        w._hash = None
        return w

    @classmethod
    def identity(cls):
        return cls._raw(())

    @classmethod
    def letter(cls, x, e=1):
        return cls([(x, e)])

    @classmethod
    def parse(cls, text):
        """Parse a string over a, A, b, B (capital = inverse)."""
        syl = []
        for ch in text:
            if ch.isspace() or ch in "1.":
                continue
            if ch.lower() not in LETTERS:
                raise ValueError(f"bad character {ch!r} in word {text!r}")
            syl.append((ch.lower(), -1 if ch.isupper() else 1))
        return cls(syl)

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls([(x, int(e)) for x, e in data])

    def to_json(self):
        return [[x, e] for x, e in self.syllables]

    def __str__(self):
        parts = []
        for x, e in self.syllables:
            parts.append((x if e > 0 else x.upper()) * abs(e))
        return "".join(parts)

    def __repr__(self):
        return f"Word({str(self) or '1'})"

    def pretty(self):
        if not self.syllables:
            return "1"
        return "".join(x if e == 1 else f"{x}^{e}" for x, e in self.syllables)

    def __eq__(self, other):
        return isinstance(other, Word) and self.syllables == other.syllables

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.syllables)
        return self._hash

    def __lt__(self, other):
        return (len(self), str(self)) < (len(other), str(other))

    def __len__(self):
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self):
        return bool(self.syllables)

    def __iter__(self):
        return iter(self.syllables)

    def letters(self):
        """Expand into a list of (letter, +-1)."""
        out = []
        for x, e in self.syllables:
            s = 1 if e > 0 else -1
            out.extend([(x, s)] * abs(e))
        return out

    def __mul__(self, other):
        a, b = self.syllables, other.syllables
        if not a:
            return other
        if not b:
            return self
        # cancel across the seam only
        i = len(a)
        j = 0
        while i > 0 and j < len(b) and a[i - 1][0] == b[j][0]:
            e = a[i - 1][1] + b[j][1]
            if e != 0:
                return Word._raw(a[:i - 1] + ((b[j][0], e),) + b[j + 1:])
            i -= 1
            j += 1
        return Word._raw(a[:i] + b[j:])

    def __invert__(self):
        return Word._raw(tuple((x, -e) for x, e in reversed(self.syllables)))

    def inverse(self):
        return ~self

    def __pow__(self, n):
        if n < 0:
            return (~self) ** (-n)
        if n == 0 or not self.syllables:
            return Word.identity()
        conj, core = cyclic_reduce(self)
        if len(core.syllables) == 1:
            x, e = core.syllables[0]
            return conj * Word._raw(((x, e * n),)) * ~conj
        # a cyclically reduced core with distinct end letters concatenates freely
        return conj * Word._raw(core.syllables * n) * ~conj

    def powerblind_length(self):
        return len(self.syllables)

    def substitute(self, images, mul=None, one=None):
        """Evaluate the word with a -> images['a'], b -> images['b'].

        `images` values must support ** with negative exponents, or pass
        `mul`/`one` plus images that already contain inverses.
        """
        acc = one
        for x, e in self.syllables:
            piece = images[x] ** e
            acc = piece if acc is None else (mul(acc, piece) if mul else acc * piece)
        return acc


def reduce(letters):
    """Free reduction of a sequence of signed letters.

    Items may be 'a'/'A'/'b'/'B' characters or (letter, exponent) pairs.
    """
    syl = []
    for item in letters:
        if isinstance(item, str):
            syl.append((item.lower(), -1 if item.isupper() else 1))
        else:
            syl.append((item[0], int(item[1])))
    return Word(syl)


def multiply(u, v):
    return u * v


def invert(u):
    return ~u


def power(u, n):
    return u ** n


def powerblind_length(w):
    return len(w.syllables)


def cyclic_reduce(w):
    """Return (conjugator, core) with w = conjugator * core * conjugator^-1.

    The core is cyclically reduced.  When the two ends carry the same
    letter the end syllables are merged into one, so any core that is not
    a single syllable has an even syllable count.
    """
    s = w.syllables
    lo, hi = 0, len(s)
    conj = []
    while hi - lo >= 2 and s[lo][0] == s[hi - 1][0]:
        x, e0 = s[lo]
        e1 = s[hi - 1][1]
        conj.append((x, e0))
        if e0 + e1 == 0:
            lo += 1
            hi -= 1
            continue
        # x^e0 m x^e1 = x^e0 (m x^(e0+e1)) x^-e0
        core = s[lo + 1:hi - 1] + ((x, e0 + e1),)
        return Word(conj), Word._raw(core)
    return Word(conj), Word._raw(s[lo:hi])


def conjugate_generator_power(w):
    """(letter, exponent) if w is conjugate to a power of a or b, else None.

    The identity reports as ('a', 0).
    """
    _, core = cyclic_reduce(w)
    if not core.syllables:
        return ("a", 0)
    if len(core.syllables) == 1:
        return core.syllables[0]
    return None


def reduced_words(max_len, alphabet=LETTERS):
    """Yield every reduced word of ambient length <= max_len, shortest first."""
    layer = [Word.identity()]
    yield layer[0]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            last = w.syllables[-1] if w.syllables else None
            for x in alphabet:
                for s in (1, -1):
                    if last and last[0] == x and (last[1] > 0) != (s > 0):
                        continue
                    nxt.append(w * Word._raw(((x, s),)))
        for w in nxt:
            yield w
        layer = nxt


def random_word(rng, length, alphabet=LETTERS):
    """Uniform random reduced word of the given ambient length."""
    out = []
    prev = None
    while len(out) < length:
        x = alphabet[rng.randrange(len(alphabet))]
        s = rng.choice((1, -1))
        if prev == (x, -s):
            continue
        out.append((x, s))
        prev = (x, s)
    return Word(out)
