import random

from hypothesis import strategies as st

from rotset.rational import Rational2
from rotset.serialize import load_system, shipped_path
from rotset.sft import SftSystem, full_shift, random_word

SHIPPED_SYSTEMS = ["full_2_shift", "two_cycle", "triangle"]


def normalize(s):
    """Make all newlines equal to \\n"""

    return s.replace("\r\n", "\n").rstrip()


def shipped(name):
    return load_system(shipped_path(name))


def segment_shift():
    return full_shift([(0, 0), (1, 0)])


def triangle():
    return full_shift([(0, 0), (1, 0), (0, 1)])


def two_cycle():
    return SftSystem.build(2, [[1], [0]], [(1, 0), (0, 1)])


def P(x, y):
    return Rational2.of(x, y)


def vertex_set(poly):
    return set(poly.vertices)


@st.composite
def systems(draw, max_alphabet=4, max_disp=3):
    """Valid systems: every symbol has at least one successor."""
    a = draw(st.integers(min_value=1, max_value=max_alphabet))
    transitions = [
        draw(st.sets(st.integers(0, a - 1), min_size=1, max_size=a)) for _ in range(a)
    ]
    coord = st.integers(-max_disp, max_disp)
    displacements = [(draw(coord), draw(coord)) for _ in range(a)]
    return SftSystem.build(a, transitions, displacements)


@st.composite
def system_and_word(draw, max_alphabet=4, max_len=40):
    sys = draw(systems(max_alphabet=max_alphabet))
    n = draw(st.integers(min_value=0, max_value=max_len))
    seed = draw(st.integers(min_value=0, max_value=2 ** 32 - 1))
    return sys, random_word(sys, n, random.Random(seed))


def fractions_(limit=5):
    return st.fractions(min_value=-limit, max_value=limit, max_denominator=7)


@st.composite
def directions(draw):
    x = draw(fractions_())
    y = draw(fractions_())
    if x == 0 and y == 0:
        x = 1
    return Rational2.of(x, y)


@st.composite
def integer_matrices(draw, limit=3):
    entry = st.integers(-limit, limit)
    return ((draw(entry), draw(entry)), (draw(entry), draw(entry)))
