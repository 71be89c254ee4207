# %% [markdown]
# Mapping classes of the once-punctured torus are 2x2 integer matrices of
# determinant one, up to sign.  Simple closed curves are slopes p/q, and two
# slopes are adjacent in the curve graph when they meet once, which makes
# the curve graph the Farey graph.

# %%
import numpy as np

from shortpa import INF, MappingClass, Slope, classify, dehn_twist, distance, geodesic
from shortpa.farey import orbit_growth
from shortpa.torus import apply

a = dehn_twist(Slope(0, 1))
b = dehn_twist(INF)
print("T_{0/1} =", a.rows())
print("T_{1/0} =", b.rows())
print("a^-1 b  =", (a.inverse() * b).rows(), "->", classify(a.inverse() * b))

# %% [markdown]
# Trace decides the type: below 2 is periodic, exactly 2 is a twist about
# a fixed slope, above 2 is pseudo-Anosov.

# %%
for g in (MappingClass(0, -1, 1, 0), a ** 7, b * a ** -3, MappingClass(5, 8, 3, 5)):
    print(f"{str(g.rows()):24s} {classify(g)}")

# %% [markdown]
# Farey distance comes from a continued fraction after moving one endpoint
# to 1/0.  The geodesic is read off the same expansion.

# %%
for p, q in [(2, 5), (13, 8), (355, 113), (-7, 19)]:
    s = Slope(p, q)
    path = geodesic(INF, s)
    print(f"d(1/0, {s}) = {distance(INF, s)}   via", " ".join(map(str, path.vertices)))

# %% [markdown]
# Orbits: a twist keeps everything within distance 2 of its core, while a
# pseudo-Anosov moves a slope linearly far.

# %%
N = 25
twist = np.array(orbit_growth(a, INF, N))
pa = np.array(orbit_growth(MappingClass(1, 1, 1, 2), INF, N))
slope, icpt = np.polyfit(np.arange(1, N + 1), pa, 1)
print("twist orbit:", twist[:10], "... max", twist.max())
print("pA orbit:   ", pa[:10], "...")
print(f"pA fitted translation {slope:.3f} per iterate")
print("apply(a^5, 1/0) =", apply(a ** 5, INF))
