from hypothesis import strategies as st

from hopf.algebra import AlgElem, monomials_up_to
from hopf.scalars import ExactScalar, Q

small_ints = st.integers(min_value=-3, max_value=3)
nonzero_ints = small_ints.filter(bool)


@st.composite
def exact_scalars(draw, complex_=True):
    def part():
        numer = sum(c * Q ** k for k, c in enumerate(draw(st.lists(small_ints, min_size=1, max_size=3))))
        # denominators (1 + s q) q^e never vanish as rational functions
        shift = draw(st.integers(min_value=0, max_value=2))
        exp = draw(st.integers(min_value=-1, max_value=1))
        return numer / ((1 + shift * Q) * Q ** exp)

    re = part()
    im = part() if complex_ and draw(st.booleans()) else 0
    return ExactScalar(re, im)


@st.composite
def elements(draw, max_degree=3, max_terms=3, real=True, monomials=None):
    pool = monomials or monomials_up_to(max_degree)
    terms = draw(st.lists(
        st.tuples(st.sampled_from(pool), nonzero_ints, st.integers(min_value=-1, max_value=1)),
        min_size=1,
        max_size=max_terms,
    ))
    elem = AlgElem()
    for mono, coeff, q_exp in terms:
        scalar = ExactScalar(coeff * Q ** q_exp)
        if not real and draw(st.booleans()):
            scalar = scalar * ExactScalar(0, 1)
        elem = elem + AlgElem.of(mono, scalar)
    return elem


words = st.lists(st.sampled_from(["a", "a*", "c", "c*"]), min_size=0, max_size=6)
