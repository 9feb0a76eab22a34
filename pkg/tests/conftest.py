import pytest
from hypothesis import strategies as st

from iotak.complexes import SKEW, BasisElement, FreeComplex, Morphism
from iotak.iota import IotaComplex
from iotak.models import Staircase, staircase_complex, torus_knot
from iotak.ring import ONE, monomial

CORPUS_TORUS = [(2, 3), (2, 5), (3, 4), (4, 5), (5, 6), (6, 7)]


def palindromic_staircase(steps):
    return Staircase(tuple(steps), tuple(reversed(steps)))


# random palindromic staircases; the sampler for "random valid complex"
staircase_strategy = st.lists(
    st.integers(min_value=1, max_value=3), min_size=1, max_size=3
).map(palindromic_staircase)


@pytest.fixture(scope="session")
def corpus_staircases():
    return [torus_knot(p, q) for p, q in CORPUS_TORUS]


@pytest.fixture
def hand_trefoil():
    """The trefoil exactly as pictured: a(0,-2), b(-1,-1), c(-2,0),
    db = Ua + Vc, iota the reflection a <-> c."""
    basis = [BasisElement("a", 0, -2), BasisElement("b", -1, -1), BasisElement("c", -2, 0)]
    cx = FreeComplex(basis, {1: {0: monomial(1, 0), 2: monomial(0, 1)}})
    iota = Morphism(cx, cx, {0: {2: ONE}, 1: {1: ONE}, 2: {0: ONE}}, SKEW, (0, 0))
    return IotaComplex(cx, iota)
