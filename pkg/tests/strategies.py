import math

from hypothesis import strategies as st

from shortpa.torus import MappingClass, Slope, dehn_twist


def slopes(h=40):
    return (st.tuples(st.integers(-h, h), st.integers(0, h))
            .filter(lambda t: t != (0, 0) and math.gcd(*t) == 1)
            .map(lambda t: Slope(*t)))


@st.composite
def matrices(draw, factors=4):
    g = MappingClass.identity()
    for _ in range(draw(st.integers(0, factors))):
        g = g * dehn_twist(draw(slopes(5))) ** draw(st.integers(-3, 3))
    return g
