# %% [markdown]
# Given generators of a subgroup, the constructor returns a word in them
# whose active subsurface equals the group's: a pseudo-Anosov when the group
# is irreducible, a twist when everything fixes one slope.  The word length
# is bounded by a constant that depends only on the ledger.

# %%
import numpy as np

from shortpa import INF, MappingClass, Slope, construct_full_support, dehn_twist, make_ledger
from shortpa.cli import survey

ledger = make_ledger()
print("ledger:", {k: v for k, v in ledger.to_json().items() if k != "provenance"})

# %%
sigma = [dehn_twist(Slope(0, 1)), dehn_twist(INF)]
rep = construct_full_support(sigma, ledger)
data = rep.to_json()
print("output:", data["output_class"])
print("word over Sigma:", data["output_word_compact"])
print("Sigma-length", rep.sigma_length, "vs ledger bound", ledger.K_bound)
print("checks:", rep.verdicts)

# %% [markdown]
# Degenerate inputs are handled before the pipeline starts.

# %%
for s in ([dehn_twist(Slope(2, 5)) ** 3], [MappingClass.identity()], [MappingClass(0, -1, 1, 0)]):
    r = construct_full_support(s, ledger)
    print(f"{[g.rows() for g in s]} -> {r.achieved}, Sigma-length {r.sigma_length}")

# %% [markdown]
# A small survey over random generating sets.  Lengths cluster at a few
# values because the omnibus word has a fixed shape.

# %%
rows, summary = survey(60, seed=3, ledger=ledger)
lengths = np.array([r["sigma_length"] for r in rows])
print(summary)
vals, counts = np.unique(lengths, return_counts=True)
for v, c in zip(vals, counts):
    print(f"{v:8d} {'#' * c}")
