from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given, settings

from hopf import algebra, corep, fourier
from hopf.algebra import A, A_STAR, C, C_STAR, ONE_ELEM, ZERO_ELEM
from hopf.scalars import ONE, ExactScalar, q_power
from hopf.tests.strategies import elements
from Qsu2.exceptions import DimensionMismatchError

HALF = Fraction(1, 2)


class TransformTests(SimpleTestCase):
    def test_unit(self):
        coeffs = fourier.transform(ONE_ELEM)
        self.assertEqual(coeffs.block(0), [[ONE]])
        self.assertEqual(fourier.levels_of(coeffs), [Fraction(0)])

    def test_generator(self):
        coeffs = fourier.transform(A, HALF)
        block = coeffs.block(HALF)
        self.assertEqual(block[0][0], ONE / (ONE + q_power(2)))
        self.assertTrue(block[0][1].is_zero and block[1][0].is_zero and block[1][1].is_zero)
        self.assertTrue(coeffs.block(0)[0][0].is_zero)
        self.assertAlmostEqual(coeffs.numeric_block(HALF, 0.5)[0, 0], 0.8)

    def test_entries_are_transposed(self):
        # c = M_{1/2,-1/2} lands in the (m, n) = (-1/2, 1/2) slot
        block = fourier.transform(C, HALF).block(HALF)
        self.assertFalse(block[0][1].is_zero)
        self.assertTrue(block[1][0].is_zero)

    def test_unitary_basis_element(self):
        for level in (HALF, Fraction(1)):
            matrix = corep.corep(level)
            for i in matrix.weights:
                for j in matrix.weights:
                    coeffs = fourier.transform(matrix.t(i, j), level)
                    for m in matrix.weights:
                        for n in matrix.weights:
                            value = coeffs.entry(level, m, n).evaluate(0.5)
                            if (m, n) == (j, i):
                                expected = matrix.schur_constant(j).evaluate(0.5)
                                self.assertAlmostEqual(value, expected)
                            else:
                                self.assertEqual(value, 0)

    def test_levels_of(self):
        self.assertEqual(fourier.levels_of(fourier.transform(A + ONE_ELEM)), [Fraction(0), HALF])
        self.assertTrue(fourier.zero_coeffs(2).is_zero)

    @given(elements())
    @settings(max_examples=20, deadline=None)
    def test_round_trip(self, f):
        self.assertTrue(fourier.round_trip(f))

    def test_round_trip_of_prefixed_element(self):
        element = corep.basis_element(1, 0, -1)
        back = fourier.inverse(fourier.transform(element))
        self.assertEqual(back.radicand, element.radicand)
        self.assertEqual(back.element, element.element)

    def test_inverse_of_nothing(self):
        self.assertEqual(fourier.inverse(fourier.zero_coeffs(1)), ZERO_ELEM)


class PlancherelTests(SimpleTestCase):
    @given(elements(real=False), elements(real=False))
    @settings(max_examples=15, deadline=None)
    def test_exact_identity(self, f, g):
        lhs, rhs = fourier.plancherel_pair(f, g)
        self.assertEqual(lhs, rhs)

    def test_norm_of_a(self):
        lhs, rhs = fourier.plancherel_pair(A, A)
        self.assertEqual(lhs, ONE / (ONE + q_power(2)))
        self.assertEqual(rhs, lhs)

    def test_unitary_entries(self):
        matrix = corep.corep(1)
        fs = [matrix.t(0, -1), matrix.t(-1, 0)]
        gs = [matrix.t(0, -1), matrix.t(1, 1)]
        for q0 in (0.3, 0.5, 0.8):
            self.assertLess(fourier.plancherel_residual(fs, gs, q0), 1e-12)

    def test_prefixed_pair_is_paired(self):
        t = corep.basis_element(1, 0, -1)
        lhs, rhs = fourier.prefixed_plancherel_pair(t, t)
        self.assertTrue(lhs.is_exact)
        self.assertEqual(lhs, rhs)
        self.assertEqual(lhs.exact(), corep.corep(1).schur_constant(-1))


class IntegralTests(SimpleTestCase):
    def test_nc_integral_is_the_haar_state(self):
        self.assertEqual(fourier.nc_integral(ONE_ELEM), ONE)
        self.assertEqual(fourier.nc_integral(C * C_STAR), ONE / (ONE + q_power(2)))
        self.assertTrue(fourier.nc_integral(A).is_zero)

    @given(elements(max_degree=2), elements(max_degree=2))
    @settings(max_examples=20, deadline=None)
    def test_nc_integral_matches_haar(self, f, g):
        product = f * g
        self.assertEqual(fourier.nc_integral(product), algebra.haar(product))

    def test_kms(self):
        lhs, rhs = fourier.kms_pair(A, A_STAR)
        self.assertEqual(lhs, rhs)
        self.assertNotEqual(algebra.haar(A * A_STAR), algebra.haar(A_STAR * A))

    def test_literal_trace_on_the_c_subalgebra(self):
        f = C * C + C_STAR
        g = C_STAR * C_STAR + C
        self.assertEqual(algebra.haar(f * g), algebra.haar(g * f))

    def test_block_trace(self):
        for level in (0, HALF, 1):
            size = int(2 * level) + 1
            identity = [[ONE_ELEM if r == c else ZERO_ELEM for c in range(size)] for r in range(size)]
            self.assertEqual(fourier.block_trace(identity), ExactScalar(size))

    def test_block_trace_rejects_ragged_matrices(self):
        with self.assertRaises(DimensionMismatchError):
            fourier.block_trace([[ONE_ELEM, ZERO_ELEM]])


class SerializationTests(SimpleTestCase):
    def test_round_trip(self):
        coeffs = fourier.transform(A * C + C_STAR.scale(ExactScalar(0, 1)))
        again = fourier.FourierCoeffs.from_json(coeffs.to_json())
        self.assertEqual(again, coeffs)
        self.assertEqual(coeffs.to_json()["frame"], "raw")

    def test_rejects_wrong_block_shape(self):
        payload = fourier.transform(A).to_json()
        payload["blocks"][0]["matrix"] = [[ONE.to_json()]]
        with self.assertRaises(DimensionMismatchError):
            fourier.FourierCoeffs.from_json(payload)
