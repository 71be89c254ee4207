"""Brute-force and randomized certificates for the construction's claims."""

import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import oracles
from .annular import AnnularDomain, annular_distance, behrstock_check
from .constructor import make_ledger, sufficiently_different
from .farey import distance, geodesic, geodesic_hits_sets
from .subgroups import (
    generator_power_conjugate,
    h_layers_raw,
    raw_powerblind,
    subgroup_ball,
)
from .torus import INF, MappingClass, Slope, apply, classify, dehn_twist, random_slope
from .words import Word, conjugate_generator_power, random_word

CLAIMS = ("zigzag", "geo", "behrstock", "translation", "technical", "schottky")
MAX_LISTED = 25


@dataclass
class Certificate:
    claim_id: str
    parameters: dict
    instances_checked: int = 0
    failures: list = field(default_factory=list)
    runtime_ms: int = 0
    stats: dict = field(default_factory=dict)

    @property
    def verdict(self):
        return "pass" if not self.failures else "fail"

    def fail(self, item):
        if len(self.failures) < MAX_LISTED:
            self.failures.append(item)
        else:
            self.stats["unlisted_failures"] = self.stats.get("unlisted_failures", 0) + 1

    def to_json(self):
        return {"claim_id": self.claim_id, "parameters": self.parameters,
                "instances_checked": self.instances_checked, "failures": self.failures,
                "verdict": self.verdict, "runtime_ms": self.runtime_ms, "stats": self.stats}


class _Clock:
    def __init__(self, cert):
        self.cert = cert

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.cert

    def __exit__(self, *exc):
        self.cert.runtime_ms = int(1000 * (time.perf_counter() - self.t0))


def write_certificates(certs, out_dir):
    os.makedirs(out_dir, exist_ok=True)
    index = []
    for c in certs:
        path = os.path.join(out_dir, f"{c.claim_id}.json")
        with open(path, "w") as fh:
            json.dump(c.to_json(), fh, indent=2, sort_keys=True)
        index.append({"claim_id": c.claim_id, "verdict": c.verdict,
                      "instances_checked": c.instances_checked, "file": os.path.basename(path)})
    with open(os.path.join(out_dir, "index.json"), "w") as fh:
        json.dump(index, fh, indent=2)
    return index


# --- zigzag -----------------------------------------------------------------

def zigzag_enumerate(a, b, ledger=None, max_syllables=6, max_exponent=3):
    """Every reduced word in a^Q, b^Q up to the given size is pseudo-Anosov
    unless it is conjugate to a power of a generator."""
    ledger = ledger or make_ledger()
    if not sufficiently_different(a, b):
        raise ValueError("a and b are not sufficiently different")
    Q = ledger.Q
    cert = Certificate("zigzag", {"a": a.to_json(), "b": b.to_json(), "Q": Q,
                                  "max_syllables": max_syllables, "max_exponent": max_exponent})
    exps = [e for e in range(-max_exponent, max_exponent + 1) if e]
    pw = {(x, e): m ** (Q * e) for x, m in (("a", a), ("b", b)) for e in exps}
    exempt = 0
    min_trace = None
    with _Clock(cert):
        stack = [((), MappingClass.identity())]
        while stack:
            syl, m = stack.pop()
            if syl:
                cert.instances_checked += 1
                t = m.trace
                if conjugate_generator_power(Word._raw(syl)) is not None:
                    exempt += 1
                elif t <= 2:
                    cert.fail({"word": Word._raw(syl).pretty(), "trace": str(t)})
                else:
                    min_trace = t if min_trace is None else min(min_trace, t)
            if len(syl) == max_syllables:
                continue
            for x in ("a", "b"):
                if syl and syl[-1][0] == x:
                    continue
                for e in exps:
                    stack.append((syl + ((x, e),), m * pw[(x, e)]))
    cert.stats.update(exempt=exempt, min_trace=str(min_trace))
    return cert


# --- geodesics through the zigzag sequence ------------------------------------

def zigzag_sequence(w, a, b, Q):
    """The slopes gamma_{-1}, gamma_0, ..., gamma_R for a word in a^Q, b^Q."""
    alpha = classify(a).fixed_slope
    beta = classify(b).fixed_slope
    syl = w.syllables
    mats = {"a": a ** Q, "b": b ** Q}
    first = syl[0][0]
    seq = [beta if first == "a" else alpha]
    prefix = MappingClass.identity()
    for r in range(len(syl) + 1):
        if r:
            x, e = syl[r - 1]
            prefix = prefix * mats[x] ** e
        on_a = (r % 2 == 0) == (first == "a")
        seq.append(apply(prefix, alpha if on_a else beta))
    return seq, prefix


def geodesic_sets_check(w, a, b, ledger=None, cert=None):
    """Check the geodesic-hits-sets conclusion for one word and record failures."""
    ledger = ledger or make_ledger()
    own = cert is None
    if own:
        cert = Certificate("geo", {"word": w.pretty(), "a": a.to_json(), "b": b.to_json(),
                                   "Q": ledger.Q, "M": ledger.M})
    t0 = time.perf_counter()
    cert.instances_checked += 1
    R = w.powerblind_length()
    if R == 0:
        return cert
    alpha = classify(a).fixed_slope
    beta = classify(b).fixed_slope
    A, B = AnnularDomain(alpha), AnnularDomain(beta)
    Q, M = ledger.Q, ledger.M
    tag = w.pretty()
    # the twisting inequalities feeding the bounded geodesic image step
    for x, e in w.syllables:
        if x == "a":
            d = annular_distance(A, beta, apply(a ** (Q * e), beta)).value
        else:
            d = annular_distance(B, alpha, apply(b ** (Q * e), alpha)).value
        if d <= 2 * M:
            cert.fail({"word": tag, "stage": "twist", "syllable": f"{x}^{e}", "d": d})
    seq, whole = zigzag_sequence(w, a, b, Q)
    # consecutive-triple projections: Y_j is the annulus about gamma_j
    for j in range(1, len(seq) - 1):
        d = annular_distance(AnnularDomain(seq[j]), seq[j - 1], seq[j + 1]).value
        if d <= 2 * M:
            cert.fail({"word": tag, "stage": "triple", "j": j - 1, "d": d})
    for start, need in ((0, R + 1), (1, R)):
        path = geodesic(seq[start], seq[-1])
        sets = [{g} for g in seq[start:]]
        if not geodesic_hits_sets(path, sets) or len(path) < need:
            cert.fail({"word": tag, "stage": "geodesic", "from": start - 1,
                       "length": len(path), "need": need})
    da = distance(apply(whole, alpha), alpha)
    db = distance(apply(whole, beta), beta)
    if max(da, db) < R:
        cert.fail({"word": tag, "stage": "claim", "d_alpha": da, "d_beta": db})
    if own:
        cert.runtime_ms = int(1000 * (time.perf_counter() - t0))
    return cert


def random_twist_pair(rng, height=10):
    while True:
        g, h = random_slope(rng, height), random_slope(rng, height)
        if g != h:
            return dehn_twist(g), dehn_twist(h)


def random_syllable_word(rng, R, max_exponent=5):
    first = rng.choice("ab")
    syl = []
    for r in range(R):
        x = first if r % 2 == 0 else ("b" if first == "a" else "a")
        syl.append((x, rng.choice([1, -1]) * rng.randint(1, max_exponent)))
    return Word(syl)


def geo_sweep(count=200, max_powerblind=8, seed=0, ledger=None):
    ledger = ledger or make_ledger()
    rng = random.Random(f"geo-{seed}")
    cert = Certificate("geo", {"count": count, "max_powerblind": max_powerblind,
                               "seed": seed, "Q": ledger.Q, "M": ledger.M})
    with _Clock(cert):
        for _ in range(count):
            a, b = random_twist_pair(rng)
            w = random_syllable_word(rng, rng.randint(1, max_powerblind))
            geodesic_sets_check(w, a, b, ledger, cert)
    return cert


# --- Behrstock ----------------------------------------------------------------

def _behrstock_chunk(args):
    seed, kind, n, height = args
    rng = random.Random(f"behrstock-{kind}-{seed}")
    reps = []
    while len(reps) < n:
        y, z = random_slope(rng, height), random_slope(rng, height)
        if y == z:
            continue
        if kind == "random":
            x = random_slope(rng, height)
        else:
            t = rng.choice([-1, 1]) * rng.randint(10, 60)
            base = z if rng.random() < 0.5 else random_slope(rng, height)
            x = apply(dehn_twist(y) ** t, base)
        if x in (y, z):
            continue
        reps.append(behrstock_check(AnnularDomain(y), AnnularDomain(z), x))
    return reps


def _pmap(fn, jobs_args, jobs):
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, jobs_args))
    return [fn(a) for a in jobs_args]


def behrstock_fuzz(trials=10_000, height_bound=100, adversarial=1_000, seed=0, jobs=1):
    cert = Certificate("behrstock", {"trials": trials, "height_bound": height_bound,
                                     "adversarial": adversarial, "seed": seed})
    chunk = 1000
    tasks = []
    for kind, total in (("random", trials), ("adversarial", adversarial)):
        for i in range(0, total, chunk):
            tasks.append((f"{seed}-{i}", kind, min(chunk, total - i), height_bound))
    with _Clock(cert):
        results = _pmap(_behrstock_chunk, tasks, jobs)
        vacuous = 0
        dy, dz = [], []
        for (_, kind, _, _), reps in zip(tasks, results):
            for rep in reps:
                cert.instances_checked += 1
                dy.append(rep.d_y)
                dz.append(rep.d_z)
                if not rep.antecedent:
                    vacuous += 1
                if not rep.verdict:
                    cert.fail(rep.to_json())
    cert.stats.update(
        vacuous=vacuous, antecedent_true=cert.instances_checked - vacuous,
        d_y_hist=_hist(dy), d_z_hist=_hist(dz),
        max_d_z_when_antecedent=max((z for y, z in zip(dy, dz) if y >= 10), default=None))
    return cert


def _hist(values):
    vals, counts = np.unique(np.asarray(values), return_counts=True)
    return {str(int(v)): int(c) for v, c in zip(vals, counts)}


# --- translation lengths --------------------------------------------------------

def twist_growth_cases(rng, cores=20, height=6, max_intersection=5, n_max=20):
    """(core, alpha, n) triples for the annular twist growth check."""
    out = []
    while len(out) < cores * 2 * n_max:
        c, x = random_slope(rng, height), random_slope(rng, height)
        i = abs(c.p * x.q - c.q * x.p)
        if i == 0 or i > max_intersection:
            continue
        for n in range(1, n_max + 1):
            out.append((c, x, n))
            out.append((c, x, -n))
    return out


def translation_probe(samples=50, seed=0, n=20, twist_cores=20, with_oracle=True):
    rng = random.Random(f"translation-{seed}")
    cert = Certificate("translation", {"samples": samples, "seed": seed, "n": n,
                                       "twist_cores": twist_cores, "oracle": with_oracle})
    with _Clock(cert):
        ratios = []
        tried = 0
        while len(ratios) < samples and tried < 50 * samples:
            tried += 1
            g = MappingClass.identity()
            for _ in range(rng.randint(2, 4)):
                g = g * dehn_twist(random_slope(rng, 5)) ** rng.choice([-2, -1, 1, 2])
            if classify(g).kind != "pseudo-anosov":
                continue
            gamma = random_slope(rng, 5)
            ratios.append(distance(gamma, apply(g ** n, gamma)) / n)
        cert.stats["pA_min_ratio"] = min(ratios) if ratios else None
        cert.stats["pA_mean_ratio"] = float(np.mean(ratios)) if ratios else None
        mismatches = 0
        for core, x, k in twist_growth_cases(rng, cores=twist_cores, n_max=n):
            cert.instances_checked += 1
            y = apply(dehn_twist(core) ** k, x)
            d = annular_distance(AnnularDomain(core), y, x).value
            if d < abs(k):
                cert.fail({"core": str(core), "alpha": str(x), "n": k, "d": d})
            if with_oracle:
                o = oracles.lift_distance(core, y, x)
                if o != d:
                    mismatches += 1
                    cert.fail({"core": str(core), "alpha": str(x), "n": k, "d": d, "oracle": o})
        cert.stats["oracle_mismatches"] = mismatches
    return cert


# --- ball-length inequality fuzz ---------------------------------------------

def random_subgroup(rng, max_gens=3, min_len=2, max_len=4):
    """Random generators whose subgroup has no conjugate of a generator power."""
    while True:
        gens = [random_word(rng, rng.randint(min_len, max_len))
                for _ in range(rng.randint(1, max_gens))]
        if generator_power_conjugate(gens) is None:
            return gens


def technical_instance(gens, depth=5, L=None, check=True):
    """Check K |w|_* >= |w|_H on every element of H-length <= depth."""
    if L is None:
        L = max(len(g) for g in gens)
    ball = subgroup_ball(gens, L)
    if check and generator_power_conjugate(gens) is not None:
        raise ValueError("hypothesis violated")
    if not ball.generates:
        raise ValueError("ball does not generate")
    layers = h_layers_raw(ball, depth)
    K = ball.size
    bad, shorter = [], []
    for t, n in layers.items():
        if K * raw_powerblind(t) < n:
            bad.append((_raw_str(t), n))
        if len(t) < n:
            shorter.append((_raw_str(t), n))
    return K, len(layers), bad, shorter


def _raw_str(t):
    return "".join("aAbB"[(abs(c) - 1) * 2 + (c < 0)] for c in t) or "1"


def technical_fuzz(trials=500, seed=0, depth=5):
    rng = random.Random(f"technical-{seed}")
    cert = Certificate("technical", {"trials": trials, "seed": seed, "depth": depth})
    with _Clock(cert):
        elements = 0
        Ks = []
        for _ in range(trials):
            gens = random_subgroup(rng)
            K, n, bad, shorter = technical_instance(gens, depth)
            elements += n
            Ks.append(K)
            cert.instances_checked += 1
            for w, h in bad:
                cert.fail({"gens": [str(g) for g in gens], "word": w, "h_length": h, "K": K})
            for w, h in shorter:
                cert.fail({"gens": [str(g) for g in gens], "word": w, "h_length": h,
                           "stage": "ambient shorter than H-length"})
        cert.stats.update(elements_checked=elements, K_max=max(Ks), K_mean=float(np.mean(Ks)))
    return cert


# --- Schottky sampling -----------------------------------------------------------

def _random_free_word(rng, ngens, length):
    out = []
    while len(out) < length:
        t = (rng.randrange(ngens), rng.choice((1, -1)))
        if out and out[-1] == (t[0], -t[1]):
            continue
        out.append(t)
    return out


def schottky_sample(gens, samples=300, max_len=8, seed=0, base=INF):
    mats = [g.matrix if hasattr(g, "matrix") else g for g in gens]
    inv = [m.inverse() for m in mats]
    rng = random.Random(f"schottky-{seed}")
    cert = Certificate("schottky", {"gens": [m.to_json() for m in mats], "samples": samples,
                                    "max_len": max_len, "seed": seed, "base": str(base)})
    with _Clock(cert):
        lens, disp = [], []
        for _ in range(samples):
            n = rng.randint(1, max_len)
            word = _random_free_word(rng, len(mats), n)
            g = MappingClass.identity()
            for i, s in word:
                g = g * (mats[i] if s > 0 else inv[i])
            cert.instances_checked += 1
            kind = classify(g).kind
            if kind != "pseudo-anosov":
                cert.fail({"word": [[i, s] for i, s in word], "kind": kind})
                continue
            lens.append(n)
            disp.append(distance(base, apply(g, base)))
        slope, K_fit, C_fit = _fit_lower(lens, disp)
        cert.stats.update(slope=slope, K_fit=K_fit, C_fit=C_fit)
        if not (slope and slope > 0):
            cert.fail({"reason": "no positive-slope lower bound", "slope": slope})
    return cert


def _fit_lower(lens, disp):
    """Slope of min displacement per length, and the intercept making it a bound."""
    if len(set(lens)) < 2:
        return None, None, None
    by_len = {}
    for n, d in zip(lens, disp):
        by_len[n] = min(d, by_len.get(n, d))
    xs = np.array(sorted(by_len), dtype=float)
    ys = np.array([by_len[int(x)] for x in xs], dtype=float)
    slope = float(np.polyfit(xs, ys, 1)[0])
    if slope <= 0:
        return slope, None, None
    C = float(max(slope * n - d for n, d in zip(lens, disp)))
    return slope, 1.0 / slope, max(C, 0.0)


def run_claim(claim_id, seed=0, jobs=1, ledger=None, **kw):
    ledger = ledger or make_ledger()
    if claim_id == "zigzag":
        return zigzag_enumerate(dehn_twist(Slope(0, 1)), dehn_twist(INF), ledger,
                                kw.get("max_syllables", 6), kw.get("max_exponent", 3))
    if claim_id == "geo":
        return geo_sweep(kw.get("count", 200), kw.get("max_powerblind", 8), seed, ledger)
    if claim_id == "behrstock":
        return behrstock_fuzz(kw.get("trials", 10_000), kw.get("height_bound", 100),
                              kw.get("adversarial", 1_000), seed, jobs)
    if claim_id == "translation":
        return translation_probe(kw.get("samples", 50), seed)
    if claim_id == "technical":
        return technical_fuzz(kw.get("trials", 500), seed)
    if claim_id == "schottky":
        a, b = dehn_twist(Slope(0, 1)) ** ledger.Q, dehn_twist(INF) ** ledger.Q
        w1 = a * b * a.inverse() * b.inverse()
        w2 = b * a * a * b.inverse() * a.inverse() * a.inverse()
        return schottky_sample([w1, w2], kw.get("samples", 300), kw.get("max_len", 8), seed)
    raise KeyError(claim_id)
