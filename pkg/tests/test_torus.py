import math

import pytest
from hypothesis import given, strategies as st

from shortpa.torus import (
    INF,
    MappingClass,
    Slope,
    apply,
    classify,
    dehn_twist,
    fills,
    intersection,
    is_pure,
    to_infinity,
)

from strategies import matrices, slopes

PA = MappingClass(1, 1, 1, 2)
ROT = MappingClass(0, -1, 1, 0)
S = Slope.parse


def test_slope_normalisation():
    assert Slope(-2, -4) == Slope(1, 2)
    assert Slope(-1, 0) == INF
    assert S("3/-6") == S("-1/2")
    assert str(S("inf")) == "1/0"
    with pytest.raises(ValueError):
        Slope(0, 0)


def test_intersection_examples():
    assert intersection(S("0/1"), INF) == 1
    assert intersection(S("2/3"), S("2/3")) == 0
    assert intersection(S("1/2"), S("3/5")) == 1


def test_twist_matrices():
    assert dehn_twist(INF) == MappingClass(1, 1, 0, 1)
    assert dehn_twist(S("0/1")) == MappingClass(1, 0, -1, 1)
    assert dehn_twist(S("0/1")).inverse() * dehn_twist(INF) == PA


@given(slopes(), slopes())
def test_twist_fixes_core_and_shifts_by_intersection(g, a):
    t = dehn_twist(g)
    assert apply(t, g) == g
    # twisting a about g changes it by i(a, g) copies of g
    assert intersection(apply(t, a), a) == intersection(a, g) ** 2


def test_apply_examples():
    assert apply(MappingClass.identity(), S("3/7")) == S("3/7")
    assert apply(MappingClass(1, 1, 0, 1), S("0/1")) == S("1/1")
    assert apply(PA, INF) == S("1/1")


def test_classify_examples():
    assert classify(MappingClass(-1, 0, 0, -1)).kind == "identity"
    c = classify(PA)
    assert c.kind == "pseudo-anosov" and c.trace == 3
    assert str(c) == "pseudo-Anosov, |trace| 3"
    c = classify(dehn_twist(S("0/1")) ** 3)
    assert (c.kind, c.fixed_slope, abs(c.twist_power)) == ("reducible", S("0/1"), 3)
    assert classify(ROT).kind == "finite-order"


def test_is_pure_and_fills():
    assert is_pure(PA) and is_pure(MappingClass.identity()) and not is_pure(ROT)
    assert fills(S("0/1"), INF)
    assert not fills(S("2/5"), S("2/5"))
    assert fills(S("1/2"), S("3/5"))


def test_fills_by_exhaustion():
    a, b = S("1/2"), S("3/5")
    window = {Slope(p, q) for p in range(-10, 11) for q in range(0, 11)
              if (p, q) != (0, 0) and math.gcd(p, q) == 1}
    assert all(not (intersection(g, a) == 0 and intersection(g, b) == 0) for g in window)


@given(slopes(), slopes(), st.integers(-30, 30).filter(bool))
def test_twist_power_and_classification(g, a, n):
    c = classify(dehn_twist(g) ** n)
    assert c.kind == "reducible" and c.fixed_slope == g and abs(c.twist_power) == abs(n)


@given(matrices(), matrices(), slopes())
def test_action_is_a_homomorphism(f, g, a):
    assert apply(f * g, a) == apply(f, apply(g, a))
    assert (f * g).inverse() == g.inverse() * f.inverse()


@given(matrices())
def test_classification_is_conjugacy_invariant(g):
    h = dehn_twist(Slope(2, 3)) * dehn_twist(Slope(1, 4)) ** -2
    assert classify(h * g * h.inverse()).kind == classify(g).kind


@given(slopes())
def test_to_infinity(a):
    assert apply(to_infinity(a), a) == INF


def test_psl_sign_and_json():
    g = MappingClass(-2, -1, -1, -1)
    assert g == MappingClass(2, 1, 1, 1)
    assert MappingClass.parse(g.to_json()) == g
    with pytest.raises(ValueError):
        MappingClass(1, 1, 1, 1)


def test_big_integers_are_exact():
    big = PA ** 200
    assert big.trace > 10 ** 80
    assert apply(big, INF) == apply(PA ** 100, apply(PA ** 100, INF))
