import random
from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from shortpa.constructor import (
    CommonFixedSlope,
    Element,
    HypothesisNotMet,
    InvalidOverride,
    conjugating_words,
    construct_full_support,
    fill_condition_check,
    gl2_order,
    make_ledger,
    omnibus_word,
    overlap_graph,
    random_generator_set,
    random_matrix,
    sufficiently_different,
    tangle_check,
)
from shortpa.reduction import EMPTY, WHOLE, annulus, sigma_eval
from shortpa.torus import INF, MappingClass, Slope, apply, classify, dehn_twist
from shortpa.words import Word

S = Slope.parse
T0, T1 = dehn_twist(S("0/1")), dehn_twist(INF)
PA = MappingClass(1, 1, 1, 2)


def test_ledger_defaults():
    L = make_ledger()
    assert (L.Q, L.k, L.n, L.P, L.L_fujiwara) == (24, 20, 0, 24, 24)
    assert gl2_order(3) == 48
    assert L.K_bound == 2 * 48 * (324 * 24) ** 2
    assert set(L.provenance.values()) == {"default"}


def test_ledger_override():
    L = make_ledger({"c": Fraction(2), "M": 10})
    assert (L.Q, L.k) == (12, 10)
    assert L.provenance["c"] == "override"


@pytest.mark.parametrize("bad", [{"c": 0}, {"M": -1}, {"Q": 5}, {"k": 3}, {"zeta": 1}, {"P": 2}])
def test_ledger_rejects_bad_overrides(bad):
    with pytest.raises(InvalidOverride):
        make_ledger(bad)


def test_escalation_is_recorded():
    L = make_ledger().escalate()
    assert L.P == 48 and L.provenance["P"] == "escalated"
    assert L.K_bound > make_ledger().K_bound


def test_sufficiently_different():
    assert sufficiently_different(T0, T1)
    g = dehn_twist(S("2/7"))
    assert not sufficiently_different(g, g ** 5)
    assert sufficiently_different(dehn_twist(S("1/2")), dehn_twist(S("3/5")))


def test_conjugating_words_torus_case():
    L = make_ledger()
    (a1, m1), (b1, m2) = conjugating_words(T0, T1, L)
    k = L.k
    assert a1 == Word.letter("b", k) * Word.letter("a") * Word.letter("b", -k)
    assert b1 == Word.letter("a", k) * Word.letter("b") * Word.letter("a", -k)
    assert classify(m1).fixed_slope == apply(T1 ** 20, S("0/1"))
    assert classify(m2).fixed_slope == apply(T0 ** 20, INF)
    with pytest.raises(CommonFixedSlope):
        conjugating_words(T0, T0 ** 2, L)


def test_overlap_graph():
    g = overlap_graph(T0, T1)
    assert len(g.a_vertices) == len(g.b_vertices) == len(g.edges) == 1 and g.connected()
    assert overlap_graph(T0, PA).edges == []
    same = overlap_graph(T0, T0 ** 3)
    assert same.reducible_group and not same.connected()


def test_tangle_and_fill():
    L = make_ledger()
    rep = tangle_check(T0, T1, L)
    assert rep.d_a >= 14 and rep.d_b >= 14
    assert fill_condition_check(rep.alpha, rep.beta, T0, T1)
    with pytest.raises(HypothesisNotMet):
        fill_condition_check(S("0/1"), S("0/1"), T0, T1)


def test_fill_by_high_twists():
    a = apply(T1 ** 30, S("0/1"))
    b = apply(T0 ** 30, INF)
    assert fill_condition_check(a, b, T0, T1)


def test_small_k_only_reported():
    # below the ledger minimum the check still runs; its verdict is data
    small = replace(make_ledger(), k=1)
    rep = tangle_check(T0, T1, small)
    assert isinstance(rep.verdict, bool)
    assert rep.to_json()["d_A"] < 14


def test_omnibus_two_twists():
    L = make_ledger()
    res = omnibus_word(Element((0,), T0 ** L.Q), Element((1,), T1 ** L.Q), L)
    assert res.case == "ii" and res.element.matrix.trace > 2


def test_omnibus_same_pa_commutes():
    L = make_ledger()
    res = omnibus_word(Element((0,), PA), Element((0,), PA), L)
    assert res.case == "i" and res.element.matrix.trace > 2


def test_omnibus_mixed_cases():
    rng = random.Random(2)
    L = make_ledger()
    for _ in range(50):
        t = dehn_twist(Slope(rng.randint(-5, 5), rng.randint(1, 5)))
        g = PA * dehn_twist(Slope(rng.randint(-3, 3), 1)) ** rng.choice([-1, 1])
        if classify(g).kind != "pseudo-anosov":
            continue
        res = omnibus_word(Element((0,), t), Element((1,), g), L)
        assert res.case == "iii" and classify(res.element.matrix).kind == "pseudo-anosov"


def test_pipeline_examples():
    rep = construct_full_support([T0, T1])
    assert rep.ok and rep.achieved == WHOLE
    assert rep.sigma_length <= rep.ledger.K_bound
    assert sigma_eval(rep.output.word, [T0, T1]) == rep.output.matrix
    data = rep.to_json()
    assert data["cases"] == ["ii"] and data["ab_length"] == 256

    g = dehn_twist(S("2/5"))
    rep = construct_full_support([g])
    assert rep.achieved == annulus(S("2/5"))
    assert classify(rep.output.matrix).fixed_slope == S("2/5")

    rep = construct_full_support([MappingClass.identity()])
    assert rep.achieved == EMPTY and rep.output.matrix.is_identity()


def test_pipeline_filters_degenerate_inputs():
    rep = construct_full_support([T0, MappingClass.identity(), T0, T1])
    assert rep.kept == [0, 3] and rep.ok


def test_pipeline_with_finite_order_generator():
    rep = construct_full_support([MappingClass(0, -1, 1, 0)])
    assert rep.achieved == EMPTY and rep.ok
    rep = construct_full_support([MappingClass(0, -1, 1, 0), T1])
    assert rep.achieved == WHOLE and rep.ok


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_pipeline_random(seed):
    rng = random.Random(seed)
    sigma = random_generator_set(rng)
    rep = construct_full_support(sigma)
    assert rep.ok
    assert rep.sigma_length <= make_ledger().K_bound
    assert sigma_eval(rep.output.word, sigma) == rep.output.matrix


def test_random_matrix_bounds():
    rng = random.Random(9)
    for _ in range(200):
        m = random_matrix(rng, 50)
        assert max(abs(x) for x in (m.a, m.b, m.c, m.d)) <= 50
