import math
from fractions import Fraction

from django.test import SimpleTestCase

from calculus import symbols
from calculus.symbols import Symbol
from console.expressions import parse_expression
from hopf.algebra import A, C, ONE_ELEM, ZERO_ELEM
from hopf.scalars import ONE, ZERO, ExactScalar
from Qsu2.exceptions import DimensionMismatchError, SymbolKindError

HALF = Fraction(1, 2)


def q_number(x, q):
    return (q ** x - q ** -x) / (q - 1 / q)


class SymbolTests(SimpleTestCase):
    def test_block_shape_is_checked(self):
        with self.assertRaises(DimensionMismatchError):
            Symbol("scalar", {HALF: [[1, 0, 0]]})

    def test_unknown_kind(self):
        with self.assertRaises(SymbolKindError):
            Symbol("matrix")

    def test_missing_block(self):
        sigma = Symbol("scalar", {Fraction(0): [[1]]})
        with self.assertRaises(DimensionMismatchError):
            sigma.block(1)

    def test_support_bound(self):
        sigma = symbols.neutral(support_bound=HALF)
        self.assertEqual(sigma.block(HALF), [[ONE, ZERO], [ZERO, ONE]])
        self.assertEqual(sigma.block(1), [[ZERO] * 3 for _ in range(3)])

    def test_scalar_entries_must_be_constants(self):
        with self.assertRaises(SymbolKindError):
            Symbol("scalar", {Fraction(0): [[A]]})
        sigma = Symbol("scalar", {Fraction(0): [[ONE_ELEM.scale(2)]]})
        self.assertEqual(sigma.block(0), [[ExactScalar(2)]])


class ConstructorTests(SimpleTestCase):
    def test_dirac(self):
        sigma = symbols.dirac_symbol()
        self.assertEqual(sigma.block(HALF), [[ExactScalar(2), ZERO], [ZERO, ExactScalar(2)]])
        self.assertEqual(symbols.dirac_symbol("inverse").block(1)[1][1], ExactScalar(Fraction(1, 3)))

    def test_naive_dirac(self):
        sigma = symbols.dirac_symbol("naive")
        self.assertEqual(sigma.block(0), [[ZERO]])
        for level in (HALF, Fraction(1), Fraction(3, 2)):
            expected = q_number(float(level), 0.5) * q_number(float(level) + 1, 0.5)
            self.assertAlmostEqual(sigma.block(level)[0][0].evaluate(0.5).real, expected)

    def test_unknown_dirac_variant(self):
        with self.assertRaises(SymbolKindError):
            symbols.dirac_symbol("fake")

    def test_multiplication_symbol(self):
        sigma = symbols.multiplication_symbol(A)
        self.assertEqual(sigma.kind, "algebra")
        self.assertEqual(sigma.block(HALF), [[A, ZERO_ELEM], [ZERO_ELEM, A]])
        self.assertEqual(sigma.max_degree(1), 1)

    def test_single_entry_symbol(self):
        sigma = symbols.single_entry_symbol(1, -1, 0, 5)
        self.assertEqual(sigma.entry(1, -1, 0), ExactScalar(5))
        self.assertEqual(sigma.block(HALF), [[ZERO, ZERO], [ZERO, ZERO]])
        self.assertEqual(sigma.support_bound, Fraction(1))


class UnitaryBlockTests(SimpleTestCase):
    def test_neutral(self):
        block = symbols.neutral().unitary_block(1, 0.5)
        for m in range(3):
            for j in range(3):
                self.assertAlmostEqual(block[m, j], 1.0 if m == j else 0.0)

    def test_off_diagonal_entry_carries_the_ratio(self):
        # sigma_mj = sqrt(rho_j/rho_m) S_mj, rho_0/rho_-1 = q^2/(1+q^2)
        block = symbols.single_entry_symbol(1, -1, 0).unitary_block(1, 0.5)
        self.assertAlmostEqual(block[0, 1].real, math.sqrt(0.25 / 1.25))

    def test_algebra_symbols_have_no_numeric_block(self):
        with self.assertRaises(SymbolKindError):
            symbols.multiplication_symbol(C).unitary_block(HALF, 0.5)


class SerializationTests(SimpleTestCase):
    def test_round_trip(self):
        sigma = symbols.dirac_symbol("naive")
        again = Symbol.from_json(sigma.to_json(1))
        self.assertEqual(again.blocks, sigma.materialize(1).blocks)
        self.assertEqual(again.support_bound, Fraction(1))

    def test_algebra_round_trip(self):
        sigma = symbols.multiplication_symbol(A * C)
        again = Symbol.from_json(sigma.to_json(HALF))
        self.assertEqual(again.kind, "algebra")
        self.assertEqual(again.block(HALF)[1][1], A * C)

    def test_hand_written_entries(self):
        payload = {
            "kind": "algebra",
            "blocks": [{"l": "1/2", "entries": [["a", "0"], ["1/2", "c*a"]]}],
            "support_bound": "1/2",
        }
        sigma = Symbol.from_json(payload, parse=parse_expression)
        self.assertEqual(sigma.entry(HALF, -HALF, -HALF), A)
        self.assertEqual(sigma.entry(HALF, HALF, -HALF), ONE_ELEM.scale(Fraction(1, 2)))
        self.assertEqual(sigma.entry(HALF, HALF, HALF), C * A)

    def test_expressions_need_a_parser(self):
        payload = {"kind": "algebra", "blocks": [{"l": "0", "entries": [["a"]]}]}
        with self.assertRaises(SymbolKindError):
            Symbol.from_json(payload)

    def test_rejects_unknown_kind(self):
        with self.assertRaises(SymbolKindError):
            Symbol.from_json({"kind": "tensor", "blocks": []})
