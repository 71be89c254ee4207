# %% [markdown]
# The certify module re-checks each ingredient by brute force or random
# sampling.  Here every claim runs at reduced size and writes JSON
# certificates to a temporary directory.

# %%
import json
import tempfile
from pathlib import Path

from shortpa import certify

out = Path(tempfile.mkdtemp(prefix="certs-"))
small = {
    "zigzag": dict(max_syllables=4),
    "geo": dict(count=50),
    "behrstock": dict(trials=2000, adversarial=200),
    "translation": dict(samples=20),
    "technical": dict(trials=40),
    "schottky": dict(samples=100),
}
certs = [certify.run_claim(c, seed=0, **kw) for c, kw in small.items()]
index = certify.write_certificates(certs, out)
for c in certs:
    print(f"{c.claim_id:12s} {c.verdict:5s} {c.instances_checked:7d} instances {c.runtime_ms:6d} ms")

# %%
print(json.dumps(json.loads((out / "schottky.json").read_text())["stats"], indent=2))
print("certificates in", out)
