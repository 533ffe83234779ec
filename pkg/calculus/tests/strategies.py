from fractions import Fraction

from hypothesis import strategies as st

from calculus.symbols import Symbol
from hopf.scalars import ExactScalar, Q

small_ints = st.integers(min_value=-3, max_value=3)


@st.composite
def scalar_entries(draw, complex_=False):
    re = draw(small_ints) * Q ** draw(st.integers(min_value=-1, max_value=1))
    im = draw(small_ints) if complex_ and draw(st.booleans()) else 0
    return ExactScalar(re, im)


@st.composite
def scalar_symbols(draw, max_level=1, complex_=False):
    """Explicit random blocks for levels 0..max_level, zero above."""
    top = Fraction(max_level)
    blocks = {}
    for twice in range(int(2 * top) + 1):
        size = twice + 1
        blocks[Fraction(twice, 2)] = [
            [draw(scalar_entries(complex_)) for _ in range(size)] for _ in range(size)
        ]
    return Symbol("scalar", blocks, top, name="random")
