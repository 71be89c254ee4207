# %% [markdown]
# Every proper subsurface of the punctured torus is an annulus about some
# slope.  The projection distance to that annulus counts how much two
# curves twist relative to each other around the core.

# %%
import random
from collections import Counter

from shortpa import INF, AnnularDomain, Slope, annular_distance, dehn_twist
from shortpa.annular import behrstock_check
from shortpa.oracles import lift_distance
from shortpa.torus import apply, random_slope

Y = AnnularDomain(INF)
alpha = Slope(0, 1)

# %% [markdown]
# Twisting alpha n times around the core moves it |n| + 2 in the annulus
# when alpha crosses the core once.  The lift oracle below computes the
# same number by drawing lifts in the annular cover and counting crossings.

# %%
print(" n  closed form  lift oracle")
for n in (1, 2, 3, 5, 10, 20, -7):
    beta = apply(dehn_twist(INF) ** n, alpha)
    print(f"{n:3d}  {annular_distance(Y, alpha, beta).value:11d}  {lift_distance(INF, alpha, beta):11d}")

# %% [markdown]
# Curves crossing the core several times land at |n| + 3 here, one more
# than the single-crossing case; the lower bound |n| holds either way.

# %%
for x in (Slope(2, 5), Slope(3, 7), Slope(1, 4)):
    ds = [annular_distance(Y, x, apply(dehn_twist(INF) ** n, x)).value for n in range(1, 9)]
    print(x, ds)

# %% [markdown]
# Two annuli with distinct cores cannot both see a curve as highly twisted:
# if d_Y(x, core Z) is at least 10, then d_Z(x, core Y) is at most 4.

# %%
rng = random.Random(1)
seen = Counter()
for _ in range(3000):
    y, z = random_slope(rng, 40), random_slope(rng, 40)
    if y == z:
        continue
    x = apply(dehn_twist(y) ** rng.randint(-30, 30), z)
    if x in (y, z):
        continue
    rep = behrstock_check(AnnularDomain(y), AnnularDomain(z), x)
    if rep.antecedent:
        seen[rep.d_z] += 1
print("consequent values when the antecedent holds:", dict(sorted(seen.items())))
