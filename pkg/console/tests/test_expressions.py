from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from console.expressions import (
    Generator,
    Number,
    Power,
    Product,
    QParam,
    Star,
    Sum,
    evaluate,
    parse,
    parse_expression,
    pretty,
    tokenize,
    unparse,
)
from hopf.algebra import A, A_STAR, C, ONE_ELEM, ZERO_ELEM
from hopf.scalars import QS
from Qsu2.exceptions import ExponentOverflowError, ExpressionSyntaxError

leaves = st.one_of(
    st.builds(Number, st.fractions(min_value=0, max_value=5, max_denominator=4)),
    st.just(QParam()),
    st.builds(Generator, st.sampled_from(["a", "c"]), st.booleans()),
)


def _extend(children):
    signs = st.sampled_from([1, -1])
    return st.one_of(
        st.builds(Star, children),
        st.builds(Power, children, st.integers(min_value=1, max_value=2)),
        st.builds(lambda fs: Product(tuple(fs)), st.lists(children, min_size=2, max_size=3)),
        st.builds(lambda ts: Sum(tuple(ts)), st.lists(st.tuples(signs, children), min_size=2, max_size=3)),
    )


trees = st.recursive(leaves, _extend, max_leaves=5)


class ParseTests(SimpleTestCase):
    def test_relations_cancel(self):
        self.assertEqual(parse_expression("a*c - q*c*a"), ZERO_ELEM)
        self.assertEqual(parse_expression("a*a' + q^2*c'*c"), ONE_ELEM)

    def test_star(self):
        self.assertEqual(parse_expression("star(a)"), A_STAR)
        self.assertEqual(parse_expression("star(a + c)"), parse_expression("a' + c'"))

    def test_implicit_product_and_whitespace(self):
        self.assertEqual(parse_expression("2 a c"), parse_expression("2*a*c"))
        self.assertEqual(parse_expression("  q a "), A.scale(QS))

    def test_ast_shape(self):
        self.assertEqual(parse("a^2"), Power(Generator("a"), 2))
        self.assertEqual(parse("-c'"), Sum(((-1, Generator("c", True)),)))
        self.assertEqual(parse("1/2"), Number(Fraction(1, 2)))

    def test_syntax_error_position(self):
        with self.assertRaises(ExpressionSyntaxError) as ctx:
            parse("a + * c")
        self.assertEqual(ctx.exception.position, 4)
        with self.assertRaises(ExpressionSyntaxError) as ctx:
            tokenize("a % c")
        self.assertEqual(ctx.exception.position, 2)

    def test_exponent_limits(self):
        self.assertEqual(parse("c^64"), Power(Generator("c"), 64))
        with self.assertRaises(ExponentOverflowError):
            parse("c^65")
        with self.assertRaises(ExpressionSyntaxError):
            parse("a^1/2")

    def test_zero_denominator(self):
        with self.assertRaises(ExpressionSyntaxError):
            parse("1/0")

    def test_unbalanced(self):
        with self.assertRaises(ExpressionSyntaxError):
            parse("(a + c")
        with self.assertRaises(ExpressionSyntaxError):
            parse("a c)")


class PrettyTests(SimpleTestCase):
    @given(trees)
    @settings(max_examples=200, deadline=None)
    def test_round_trip(self, node):
        text = pretty(node)
        self.assertEqual(evaluate(parse(text)), evaluate(node))
        self.assertEqual(pretty(parse(text)), pretty(parse(pretty(parse(text)))))

    def test_unparse(self):
        self.assertEqual(unparse(A.scale(2)), "2*a")
        self.assertEqual(unparse(ZERO_ELEM), "0")
        self.assertEqual(parse_expression(unparse(A - C.scale(Fraction(1, 3)))), A - C.scale(Fraction(1, 3)))
        self.assertIsNone(unparse(A.scale(QS)))
