import cmath
import math
from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from calculus import psido, symbols
from circle import representation as rep
from hopf import algebra, corep
from hopf.algebra import A, A_STAR, C, C_STAR, ONE_ELEM
from hopf.scalars import I_UNIT, ONE, ZERO, ExactScalar, NumericScalar, Q
from hopf.tests.strategies import elements
from Qsu2.exceptions import ConfigurationError, DimensionMismatchError

HALF = Fraction(1, 2)
FOURTH_ROOTS = [ONE, I_UNIT, -ONE, -I_UNIT]
points = st.sampled_from([0.3, 0.5, 0.9])
roots = st.sampled_from(FOURTH_ROOTS)


class SymbolTests(SimpleTestCase):
    def test_c_symbol(self):
        sigma = rep.symbol_c(1j, 0.5)
        self.assertAlmostEqual(sigma(-1)[0], 0.25j)
        self.assertAlmostEqual(sigma(1)[0], 0.5j)
        self.assertEqual(sigma(3)[1], 0)

    def test_a_symbol_vanishes_at_zero(self):
        self.assertEqual(rep.symbol_a(1, 0.5)(0)[0], 0)
        self.assertAlmostEqual(abs(rep.symbol_a(1, 0.5).value(-1, 0.7)), math.sqrt(1 - 0.5 ** 4))

    def test_nu_must_be_unimodular(self):
        with self.assertRaises(ConfigurationError):
            rep.symbol_c(2, 0.5)
        with self.assertRaises(ConfigurationError):
            rep.symbol_a(1, 0.5, phase="other")
        with self.assertRaises(ConfigurationError):
            rep.symbol_c(1, 1.5)

    def test_frequency_ordering(self):
        for index in range(20):
            self.assertEqual(rep.basis_index(rep.frequency(index)), index)
        self.assertEqual([rep.frequency(n) for n in range(5)], [0, 1, -1, 2, -2])


class ApplyPeriodicTests(SimpleTestCase):
    def test_c_is_diagonal(self):
        for n in range(1, 5):
            out, lost = rep.apply_periodic(rep.symbol_c(-1, 0.5), {-n: 1}, 8)
            self.assertEqual(lost, [])
            self.assertAlmostEqual(out[-n], -(0.5 ** (2 * n)))

    def test_a_lowers_the_index(self):
        for n in range(1, 5):
            # e_2n = exp(-i n theta) goes to e_2n-1 = exp(i n theta)
            out, _ = rep.apply_periodic(rep.symbol_a(1, 0.5), {-n: 1}, 8)
            self.assertEqual(list(out), [n])
            self.assertAlmostEqual(out[n], math.sqrt(1 - 0.5 ** (4 * n)))
        out, _ = rep.apply_periodic(rep.symbol_a(1, 0.5), {0: 1}, 8)
        self.assertEqual(out, {})

    def test_boundary_loss(self):
        _, lost = rep.apply_periodic(rep.symbol_a(1, 0.5, phase="printed"), {4: 1, 1: 1}, 4)
        self.assertEqual(lost, [4])
        with self.assertRaises(DimensionMismatchError):
            rep.apply_periodic(rep.symbol_c(1, 0.5), {9: 1}, 8)


class WoronowiczTests(SimpleTestCase):
    @given(points, st.sampled_from([1, 1j, -1, (0.6 + 0.8j)]))
    @settings(max_examples=8, deadline=None)
    def test_action_table(self, q0, nu):
        records = rep.woronowicz_residuals(q0, nu, 32)
        self.assertEqual([r["relation"] for r in records], ["pi(c)", "pi(a)", "pi(a_star)", "pi(c_star)"])
        for record in records:
            self.assertLess(record["max_residual"], 1e-12)
            self.assertEqual(record["interior_range"], [0, 62])

    def test_printed_phase_misses_the_table(self):
        records = {r["relation"]: r["max_residual"] for r in rep.woronowicz_residuals(0.5, 1, 16, phase="printed")}
        self.assertLess(records["pi(c)"], 1e-12)
        self.assertGreater(records["pi(a)"], 0.1)

    def test_small_cutoff(self):
        with self.assertRaises(ConfigurationError):
            rep.woronowicz_residuals(0.5, 1, 4)

    @given(points)
    @settings(max_examples=3, deadline=None)
    def test_relations(self, q0):
        records = rep.relation_residuals(q0, 1j, 32)
        self.assertEqual(len(records), 7)
        for record in records:
            self.assertLess(record["max_residual"], 1e-10, record["relation"])

    def test_c_eigenvalues(self):
        pi = rep.represent(0.5, 1j, 8)
        np.testing.assert_allclose(np.diag(pi.c.matrix), [0.5 ** n * 1j for n in range(17)])
        self.assertEqual(np.count_nonzero(pi.c.matrix - np.diag(np.diag(pi.c.matrix))), 0)


class SUMatrixTests(SimpleTestCase):
    def test_product_against_the_stated_form(self):
        report = rep.su_matrix_product(1j, -1, 0.5, 32)
        residuals = report["residuals"]
        self.assertLess(residuals["X11"], 1e-10)
        self.assertLess(residuals["X21"], 1e-10)
        self.assertLess(residuals["X22"], 1e-10)
        # the direct (1, 2) block is q^2 times -X21*
        self.assertGreater(residuals["X12"], 1e-3)
        self.assertFalse(report["agrees"])

    def test_direct_product_has_no_low_modes(self):
        direct = rep.su_matrix(1, 0.5, 8) @ rep.su_matrix(1, 0.5, 8)
        column = direct[0][0].apply(0)
        self.assertAlmostEqual(abs(column[0]), 0.5)
        self.assertEqual(np.count_nonzero(np.abs(column) > 1e-15), 1)


class RegularRepresentationTests(SimpleTestCase):
    def test_identity(self):
        self.assertEqual(rep.regular_rep(1, A + C * C_STAR), A + C * C_STAR)

    def test_generators(self):
        self.assertEqual(rep.regular_rep(I_UNIT, C * C_STAR), C * C_STAR)
        self.assertEqual(rep.regular_rep(I_UNIT, A * C), (A * C).scale(I_UNIT))
        self.assertEqual(rep.regular_rep(1j, C_STAR), C_STAR.scale(-I_UNIT))

    def test_needs_a_unit(self):
        with self.assertRaises(ConfigurationError):
            rep.regular_rep(2, C)

    @given(roots, roots, elements(max_degree=3, real=False))
    @settings(max_examples=20, deadline=None)
    def test_group_law(self, u, v, f):
        self.assertEqual(rep.regular_rep(u, rep.regular_rep(v, f)), rep.regular_rep(u * v, f))

    @given(roots, elements(max_degree=2, real=False), elements(max_degree=2, real=False))
    @settings(max_examples=10, deadline=None)
    def test_unitary(self, v, f, g):
        self.assertEqual(algebra.inner(rep.regular_rep(v, f), rep.regular_rep(v, g)), algebra.inner(f, g))

    @given(roots, elements(max_degree=2, real=False))
    @settings(max_examples=10, deadline=None)
    def test_diagonal_symbols_commute(self, v, f):
        sigma = symbols.dirac_symbol("naive")
        self.assertEqual(psido.apply(sigma, rep.regular_rep(v, f)), rep.regular_rep(v, psido.apply(sigma, f)))

    def test_numeric_unit_group_law(self):
        u, v = cmath.exp(1j), (1 + 1j) / math.sqrt(2)
        f = A * C + C_STAR.scale(2) + A_STAR * C * C_STAR
        twice = rep.regular_rep(u, rep.regular_rep(v, f, q0=0.5))
        self.assertIsInstance(twice, rep.NumericElem)
        self.assertLess(twice.distance(rep.regular_rep(u * v, f, q0=0.5)), 1e-12)
        self.assertLess(rep.regular_rep(u.conjugate(), twice).distance(rep.regular_rep(v, f, q0=0.5)), 1e-12)

    def test_numeric_path_matches_exact(self):
        f = A * C + C_STAR.scale(Q) + C * C_STAR
        exact = rep.NumericElem.of(rep.regular_rep(I_UNIT, f), 0.3)
        self.assertLess(rep.regular_rep(I_UNIT, rep.NumericElem.of(f, 0.3)).distance(exact), 1e-12)
        # a float that rounds to an exact unit stays exact
        self.assertEqual(rep.regular_rep(cmath.exp(0.5j * math.pi), f), rep.regular_rep(I_UNIT, f))
        self.assertEqual(rep.regular_rep(NumericScalar(1j, 0.3), f), rep.regular_rep(I_UNIT, f))

    def test_numeric_unit_needs_a_point(self):
        with self.assertRaises(ConfigurationError):
            rep.regular_rep(cmath.exp(1j), C)
        with self.assertRaises(ConfigurationError):
            rep.regular_rep(1.5 * cmath.exp(1j), C, q0=0.5)

    def test_off_diagonal_symbol_does_not_commute(self):
        sigma = symbols.single_entry_symbol(HALF, HALF, -HALF)
        matrix = corep.corep(HALF)
        for r in matrix.weights:
            f = matrix.entry(r, -HALF)
            self.assertNotEqual(psido.act(sigma, rep.regular_rep(I_UNIT, f)), rep.regular_rep(I_UNIT, psido.act(sigma, f)))


class CharacterTests(SimpleTestCase):
    def test_generators(self):
        self.assertEqual(rep.one_dimensional_rep(I_UNIT, A), I_UNIT)
        self.assertEqual(rep.one_dimensional_rep(I_UNIT, A_STAR), -I_UNIT)
        self.assertEqual(rep.one_dimensional_rep(I_UNIT, C), ZERO)

    def test_respects_the_relations(self):
        self.assertEqual(rep.one_dimensional_rep(-I_UNIT, A * A_STAR), ONE)
        self.assertEqual(rep.one_dimensional_rep(ExactScalar(-1), ONE_ELEM.scale(3) + A), ExactScalar(2))


    def test_numeric_unit(self):
        u = cmath.exp(1j)
        self.assertAlmostEqual(rep.one_dimensional_rep(u, A, q0=0.5), u)
        self.assertAlmostEqual(rep.one_dimensional_rep(u, A * A_STAR, q0=0.5), 1)
        self.assertAlmostEqual(rep.one_dimensional_rep(u, A * C + A_STAR.scale(2), q0=0.5), 2 * u.conjugate())


class TranscendenceTests(SimpleTestCase):
    def test_rational_root_kills_e1(self):
        report = rep.transcendence_demo([Fraction(-1, 2), 1], "1/2")
        self.assertEqual(report["P_at_q"], "0")
        self.assertLess(report["e1_residual"], 1e-15)
        self.assertIn(1, report["singular_indices"])
        self.assertFalse(report["invertible"])

    def test_no_root(self):
        report = rep.transcendence_demo([Fraction(-1, 2), 1], "1/3")
        self.assertTrue(report["invertible"])
