"""Full-scale acceptance criteria.

Each test prints a single PASS/FAIL line with its measurements, then asserts.
"""

import math
import random
import time

import pytest

from shortpa import certify
from shortpa.annular import AnnularDomain, annular_distance
from shortpa.constructor import (
    construct_full_support,
    fill_condition_check,
    make_ledger,
    random_generator_set,
    tangle_check,
)
from shortpa.farey import distance
from shortpa.oracles import FareyWindow, lift_distance
from shortpa.reduction import (
    is_level3,
    pure_generators,
    rewrite,
    sigma_eval,
    sigma_inverse,
    sigma_reduce,
    sigma_substitute,
)
from shortpa.torus import INF, Slope, apply, classify, dehn_twist, fills, random_slope

pytestmark = pytest.mark.acceptance

T0, T1 = dehn_twist(Slope(0, 1)), dehn_twist(INF)


@pytest.fixture
def say(capsys):
    def _say(num, name, ok, detail):
        with capsys.disabled():
            print(f"\n[acceptance {num}] {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    return _say


def test_zigzag_exhaustion(say):
    t0 = time.perf_counter()
    cert = certify.zigzag_enumerate(T0, T1, make_ledger(), max_syllables=6, max_exponent=3)
    secs = time.perf_counter() - t0
    ok = cert.verdict == "pass" and secs < 60
    say(1, "zigzag exhaustion", ok,
        f"{cert.instances_checked} words, {cert.stats['exempt']} exempt, "
        f"{len(cert.failures)} counterexamples, {secs:.1f}s")
    assert ok


def test_behrstock_implication(say):
    t0 = time.perf_counter()
    cert = certify.behrstock_fuzz(trials=10_000, height_bound=100, adversarial=1_000, seed=0)
    secs = time.perf_counter() - t0
    ok = cert.verdict == "pass" and cert.instances_checked == 11_000 and secs < 30
    say(2, "behrstock implication", ok,
        f"{cert.instances_checked} triples, {cert.stats['antecedent_true']} with antecedent, "
        f"max consequent {cert.stats['max_d_z_when_antecedent']}, "
        f"{len(cert.failures)} violations, {secs:.1f}s")
    assert ok


def test_geodesic_hits_sets(say):
    cert = certify.geo_sweep(count=200, max_powerblind=8, seed=0)
    ok = cert.verdict == "pass" and cert.instances_checked == 200
    say(3, "geodesic hits sets", ok, f"{cert.instances_checked} words, {len(cert.failures)} violations")
    assert ok


def _heights_ok(sigma, bound=50):
    for g in sigma:
        c = classify(g)
        if c.kind == "reducible" and c.fixed_slope.height > bound:
            return False
    return True


def test_pipeline_soundness(say):
    rng = random.Random("acceptance-pipeline")
    K = make_ledger().K_bound
    bad, escalated, runs = [], 0, 500
    for i in range(runs):
        sigma = random_generator_set(rng, size=rng.randint(1, 4), bound=50)
        assert _heights_ok(sigma)
        rep = construct_full_support(sigma)
        escalated += rep.escalations > 0
        if not (rep.achieved == rep.target and rep.ok and rep.sigma_length <= K):
            bad.append(i)
    rate = escalated / runs
    ok = not bad and rate < 0.05
    say(4, "pipeline soundness", ok,
        f"{runs} runs, {len(bad)} failures, escalation rate {rate:.1%}")
    assert ok


def test_conjugation_witness(say):
    rng = random.Random("acceptance-tangle")
    ledger = make_ledger()
    bad, mins, done = [], [], 0
    while done < 100:
        g, h = random_slope(rng, 50), random_slope(rng, 50)
        if not fills(g, h):
            continue
        a = dehn_twist(g) ** rng.choice([-3, -2, -1, 1, 2, 3])
        b = dehn_twist(h) ** rng.choice([-3, -2, -1, 1, 2, 3])
        rep = tangle_check(a, b, ledger)
        filled = rep.verdict and fill_condition_check(rep.alpha, rep.beta, a, b)
        mins.append(min(rep.d_a, rep.d_b))
        if not filled:
            bad.append((str(g), str(h), rep.d_a, rep.d_b))
        done += 1
    ok = not bad
    say(5, "conjugation witness", ok,
        f"100 pairs, min distance {min(mins)}, {len(bad)} violations")
    assert ok


def test_annular_twist_growth(say):
    rng = random.Random("acceptance-twist")
    cases = certify.twist_growth_cases(rng, cores=30, height=8, max_intersection=8, n_max=20)
    below, mismatch = 0, 0
    for core, alpha, n in cases:
        beta = apply(dehn_twist(core) ** n, alpha)
        d = annular_distance(AnnularDomain(core), beta, alpha).value
        below += d < abs(n)
        mismatch += d != lift_distance(core, beta, alpha)
    ok = below == 0 and mismatch == 0
    say(6, "annular twist growth", ok,
        f"{len(cases)} cases, {below} below |n|, {mismatch} oracle discrepancies")
    assert ok


def test_farey_distance_oracle(say):
    t0 = time.perf_counter()
    pts = [Slope(p, q) for p in range(-50, 51) for q in range(0, 51)
           if (p, q) != (0, 0) and math.gcd(p, q) == 1]
    rng = random.Random("acceptance-farey")
    pairs = [(rng.choice(pts), rng.choice(pts)) for _ in range(100_000)]
    window = FareyWindow(500)
    oracle = window.distance_table(pairs)
    wrong = sum(1 for (a, b), o in zip(pairs, oracle) if o != distance(a, b))
    secs = time.perf_counter() - t0
    ok = wrong == 0
    say(7, "farey distance vs BFS", ok,
        f"{len(pairs)} pairs over {len(pts)} slopes, {wrong} disagreements, {secs:.1f}s")
    assert ok


def test_technical_fuzz(say):
    cert = certify.technical_fuzz(trials=500, seed=0, depth=5)
    ok = cert.verdict == "pass" and cert.instances_checked == 500
    say(8, "technical fuzz", ok,
        f"500 subgroups, {cert.stats['elements_checked']} elements, "
        f"K up to {cert.stats['K_max']}, {len(cert.failures)} violations")
    assert ok


def _regenerates(sigma, pure, rng):
    # every Schreier generator is a returned generator, its inverse, or trivial
    words = set(pure.words)
    for w in pure.schreier.values():
        if w and w not in words and sigma_inverse(w) not in words:
            return False
    # random level-3 words rewrite into the generators as free-group words
    for _ in range(10):
        walk = tuple(rng.choice([i, ~i]) for i in (rng.randrange(len(sigma)) for _ in range(10)))
        c = sigma_eval(walk, sigma).mod(3)
        key = min(c, tuple((-t) % 3 for t in c))
        w = sigma_reduce(walk + sigma_inverse(pure.transversal[key]))
        tokens = [k if s > 0 else ~k for k, s in rewrite(w, pure)]
        if sigma_substitute(tokens, pure.words) != w:
            return False
    return True


def test_pure_passage(say):
    rng = random.Random("acceptance-pure")
    bad, max_d = [], 0
    for i in range(100):
        sigma = random_generator_set(rng, size=rng.randint(1, 4))
        pure = pure_generators(sigma)
        max_d = max(max_d, pure.index_d)
        ok = all(is_level3(m) and len(w) <= 2 * pure.index_d - 1
                 for w, m in zip(pure.words, pure.matrices))
        ok = ok and all(sigma_eval(w, sigma) == m for w, m in zip(pure.words, pure.matrices))
        ok = ok and len(pure.transversal) == pure.index_d
        if not (ok and _regenerates(sigma, pure, rng)):
            bad.append(i)
    ok = not bad
    say(9, "pure passage", ok, f"100 generating sets, max index {max_d}, {len(bad)} failures")
    assert ok
