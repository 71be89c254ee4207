"""Slopes on the once-punctured torus and the action of PSL(2, Z)."""

import json
import math
from dataclasses import dataclass
from fractions import Fraction


class Slope:
    """Primitive pair (p, q) up to sign, written p/q; infinity is 1/0."""

    __slots__ = ("p", "q")

    def __init__(self, p, q=1):
        p, q = int(p), int(q)
        g = math.gcd(p, q)
        if g == 0:
            raise ValueError("0/0 is not a slope")
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        self.p, self.q = p, q

    @classmethod
    def parse(cls, text):
        text = str(text).strip()
        if text in ("inf", "oo", "∞"):
            return cls(1, 0)
        if "/" in text:
            a, b = text.split("/")
            return cls(int(a), int(b))
        return cls(int(text), 1)

    @classmethod
    def of(cls, x):
        if isinstance(x, Slope):
            return x
        if isinstance(x, tuple):
            return cls(*x)
        if isinstance(x, Fraction):
            return cls(x.numerator, x.denominator)
        if isinstance(x, int):
            return cls(x, 1)
        return cls.parse(x)

    def __str__(self):
        return f"{self.p}/{self.q}"

    def __repr__(self):
        return f"Slope({self.p}/{self.q})"

    def __eq__(self, other):
        return isinstance(other, Slope) and self.p == other.p and self.q == other.q

    def __hash__(self):
        return hash((self.p, self.q))

    def __iter__(self):
        yield self.p
        yield self.q

    @property
    def height(self):
        return max(abs(self.p), abs(self.q))

    def is_infinity(self):
        return self.q == 0

    def value(self):
        return Fraction(self.p, self.q)


INF = Slope(1, 0)
ZERO = Slope(0, 1)


def intersection(alpha, beta):
    return abs(alpha.p * beta.q - alpha.q * beta.p)


def _ext_gcd(a, b):
    # returns (g, x, y) with a x + b y = g
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        t = a // b
        a, b = b, a - t * b
        x0, x1 = x1, x0 - t * x1
        y0, y1 = y1, y0 - t * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


class MappingClass:
    """Determinant-one integer matrix [[a, b], [c, d]] up to sign."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d, check=True):
        a, b, c, d = int(a), int(b), int(c), int(d)
        if check and a * d - b * c != 1:
            raise ValueError(f"determinant of [[{a},{b}],[{c},{d}]] is not 1")
        if a < 0 or (a == 0 and b < 0):
            a, b, c, d = -a, -b, -c, -d
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1, check=False)

    @classmethod
    def from_rows(cls, rows):
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def parse(cls, text):
        data = json.loads(text) if isinstance(text, str) else text
        try:
            (a, b), (c, d) = data
            return cls(int(a), int(b), int(c), int(d))
        except (TypeError, ValueError) as exc:
            raise ValueError(f"not a 2x2 determinant-one matrix: {text!r}") from exc

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]

    def to_json(self):
        return [[str(self.a), str(self.b)], [str(self.c), str(self.d)]]

    def __repr__(self):
        return f"MappingClass({self.rows()})"

    def __eq__(self, other):
        return isinstance(other, MappingClass) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def key(self):
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, o):
        return MappingClass(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                            self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d,
                            check=False)

    def inverse(self):
        return MappingClass(self.d, -self.b, -self.c, self.a, check=False)

    __invert__ = inverse

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = MappingClass.identity()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    @property
    def trace(self):
        return abs(self.a + self.d)

    def is_identity(self):
        return self.b == 0 and self.c == 0 and self.a == 1

    def mod(self, n):
        """Entries mod n, normalised up to sign (a PSL(2, Z/n) element)."""
        m = tuple(x % n for x in (self.a, self.b, self.c, self.d))
        neg = tuple((-x) % n for x in m)
        return min(m, neg)

    def __call__(self, alpha):
        return apply(self, alpha)

    def commutes(self, other):
        return self * other == other * self


def apply(g, alpha):
    return Slope(g.a * alpha.p + g.b * alpha.q, g.c * alpha.p + g.d * alpha.q)


def to_infinity(alpha):
    """A matrix h with h(alpha) = 1/0."""
    p, q = alpha.p, alpha.q
    _, x, y = _ext_gcd(p, q)
    # [[p, -y], [q, x]] has determinant p x + q y = 1 and sends 1/0 to alpha
    return MappingClass(p, -y, q, x).inverse()


def dehn_twist(gamma):
    """Twist about gamma: x -> x + (gamma ^ x) gamma with u ^ v = u_p v_q - u_q v_p.

    With this sign T_{1/0} = [[1, 1], [0, 1]] and T_{0/1} = [[1, 0], [-1, 1]].
    """
    p, q = gamma.p, gamma.q
    return MappingClass(1 - p * q, p * p, -q * q, 1 + p * q)


@dataclass(frozen=True)
class NTClass:
    kind: str  # identity | finite-order | reducible | pseudo-anosov
    trace: int
    fixed_slope: Slope = None
    twist_power: int = None

    def __str__(self):
        if self.kind == "reducible":
            return f"reducible, fixed slope {self.fixed_slope}, twist power {self.twist_power}"
        if self.kind == "pseudo-anosov":
            return f"pseudo-Anosov, |trace| {self.trace}"
        return self.kind.replace("-", " ")

    def to_json(self):
        out = {"kind": self.kind, "trace": str(self.trace)}
        if self.kind == "reducible":
            out["fixed_slope"] = str(self.fixed_slope)
            out["twist_power"] = self.twist_power
        return out


def fixed_slope(g):
    """Primitive eigenvector of a parabolic g."""
    lam = 1 if g.a + g.d > 0 else -1
    v = (g.b, lam - g.a)
    if v == (0, 0):
        v = (lam - g.d, g.c)
    return Slope(*v)


def classify(g):
    t = g.trace
    if g.is_identity():
        return NTClass("identity", t)
    if t < 2:
        return NTClass("finite-order", t)
    if t == 2:
        gamma = fixed_slope(g)
        h = to_infinity(gamma)
        m = h * g * h.inverse()
        assert m.c == 0 and m.a == 1, m
        return NTClass("reducible", t, gamma, m.b)
    return NTClass("pseudo-anosov", t)


def is_pure(g):
    return classify(g).kind != "finite-order"


def fills(alpha, beta):
    return alpha != beta


def random_slope(rng, height):
    while True:
        q = rng.randint(0, height)
        p = rng.randint(-height, height)
        if (p, q) != (0, 0) and math.gcd(p, q) == 1:
            return Slope(p, q)
