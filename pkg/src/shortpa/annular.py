"""Annular subsurface projection on the once-punctured torus.

Every proper domain is an annulus about a slope.  Distances are computed
after moving the core to 1/0, where a crossing slope becomes a finite
rational u and the twisting is read from u.  Let pi(u) be {floor(u),
ceil(u)}.  Then the distance between u and v is diam(pi(u) + pi(v)) + 2,
except when u and v are distinct non-integers in the same unit interval,
where it is 2 or 3 according to how close they sit (see _same_cell).
The formula is gated by the lift oracle in oracles.lift_distance.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .torus import Slope, apply, intersection, to_infinity


@dataclass(frozen=True)
class AnnularDomain:
    core: Slope

    def __str__(self):
        return f"A({self.core})"


@dataclass(frozen=True)
class ProjectionDistance:
    value: int
    defined: bool

    def __int__(self):
        return self.value


UNDEFINED = ProjectionDistance(0, False)


class UndefinedProjection(ValueError):
    pass


def projects_to(alpha, Y):
    return intersection(alpha, Y.core) > 0


def _normalise(Y, *slopes):
    h = to_infinity(Y.core)
    out = []
    for s in slopes:
        x = apply(h, s)
        out.append(None if x.q == 0 else Fraction(x.p, x.q))
    return out


def _same_cell(u, v):
    # 0 < u < v < 1
    n = math.ceil(1 / u)
    if v <= Fraction(2, n + 1):
        return 2
    n = math.ceil(1 / (1 - v))
    if u >= Fraction(n - 1, n + 1):
        return 2
    return 3


def twist_distance(u, v):
    """Distance in the annular cover of 1/0 between slopes u and v (finite)."""
    if u == v:
        return 0 if u.denominator == 1 else 1
    fu, fv = math.floor(u), math.floor(v)
    if fu == fv and u.denominator > 1 and v.denominator > 1:
        a, b = sorted((u - fu, v - fu))
        return _same_cell(a, b)
    ends = (fu, math.ceil(u), fv, math.ceil(v))
    return max(ends) - min(ends) + 2


def annular_distance(Y, alpha, beta):
    u, v = _normalise(Y, alpha, beta)
    if u is None or v is None:
        return UNDEFINED
    return ProjectionDistance(twist_distance(u, v), True)


def projection_diameter_single(Y, alpha):
    """Diameter of the set of lifts of alpha; distinct lifts are disjoint."""
    (u,) = _normalise(Y, alpha)
    if u is None:
        raise UndefinedProjection(f"{alpha} does not cross {Y.core}")
    return twist_distance(u, u)


@dataclass
class BehrstockReport:
    y: Slope
    z: Slope
    x: Slope
    d_y: int
    d_z: int

    @property
    def antecedent(self):
        return self.d_y >= 10

    @property
    def verdict(self):
        return not self.antecedent or self.d_z <= 4

    def to_json(self):
        return {"y": str(self.y), "z": str(self.z), "x": str(self.x),
                "d_y": self.d_y, "d_z": self.d_z, "verdict": self.verdict}


def behrstock_check(Y, Z, x):
    if Y.core == Z.core:
        raise ValueError("precondition violated: the annuli share a core")
    if not (projects_to(x, Y) and projects_to(x, Z)):
        raise ValueError("precondition violated: x misses one of the annuli")
    d_y = annular_distance(Y, x, Z.core).value
    d_z = annular_distance(Z, x, Y.core).value
    return BehrstockReport(Y.core, Z.core, x, d_y, d_z)


def geodesic_image_diameter(Y, path):
    verts = path.vertices if hasattr(path, "vertices") else list(path)
    vals = _normalise(Y, *verts)
    if any(v is None for v in vals):
        raise UndefinedProjection(f"path meets the core {Y.core}")
    # diameter of a union of lift sets: the extreme pair decides, but the
    # same-cell rule is not monotone in a simple order, so check all pairs
    uniq = sorted(set(vals))
    best = max(twist_distance(u, u) for u in uniq)
    for i in range(len(uniq)):
        for j in range(i + 1, len(uniq)):
            best = max(best, twist_distance(uniq[i], uniq[j]))
    return ProjectionDistance(best, True)
