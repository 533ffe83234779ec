import tempfile
from fractions import Fraction

from django.test import SimpleTestCase, override_settings

from hopf import algebra, corep
from hopf.algebra import A, A_STAR, C, C_STAR, ONE_ELEM
from hopf.cache import TableCache
from hopf.scalars import ONE, ZERO, ExactScalar, RootScalar, q_power, qnum

HALF = Fraction(1, 2)


class CoactionMatrixTests(SimpleTestCase):
    def test_level_zero(self):
        self.assertEqual(corep.coaction_matrix(0).raw, ((ONE_ELEM,),))

    def test_fundamental(self):
        matrix = corep.coaction_matrix(HALF)
        self.assertEqual(matrix.raw, ((A, C_STAR.scale(-q_power(1))), (C, A_STAR)))

    def test_level_one_lowest_column(self):
        matrix = corep.coaction_matrix(1)
        self.assertEqual(matrix.entry(-1, -1), A * A)
        self.assertEqual(matrix.entry(0, -1), (C * A).scale(q_power(1) + q_power(-1)))
        self.assertEqual(matrix.entry(1, -1), C * C)

    def test_quantum_plane_relation(self):
        x, y = corep.QPlanePoly.x(), corep.QPlanePoly.y()
        self.assertEqual(x * y, (y * x) * corep.QPlanePoly({(0, 0): q_power(1)}))

    def test_corepresentation_identity(self):
        for level in (0, HALF, 1):
            with self.subTest(level=level):
                self.assertTrue(corep.check_corep_identity(corep.coaction_matrix(level)))

    def test_counit(self):
        for twice in range(5):
            self.assertTrue(corep.check_counit(corep.corep(Fraction(twice, 2))))

    def test_structural_form(self):
        for twice in range(4):
            matrix = corep.corep(Fraction(twice, 2))
            for row in corep.entry_signatures(matrix):
                for signatures in row:
                    self.assertEqual(len(signatures), 1)

    def test_grading(self):
        for twice in range(4):
            matrix = corep.corep(Fraction(twice, 2))
            for i in matrix.weights:
                for j in matrix.weights:
                    degrees = {corep.monomial_bidegree(mono) for mono in matrix.entry(i, j).terms}
                    self.assertEqual(degrees, {corep.bidegree(i, j)})


class UnitarizeTests(SimpleTestCase):
    def test_level_zero(self):
        matrix = corep.corep(0)
        self.assertEqual(matrix.ratios, (ONE,))
        self.assertEqual(matrix.t(0, 0).element, ONE_ELEM)

    def test_fundamental_gram(self):
        matrix = corep.corep(HALF)
        self.assertEqual(matrix.gram_value(-HALF, -HALF), ONE / (ONE + q_power(2)))
        self.assertEqual(matrix.gram_value(-HALF, -HALF), q_power(-1) / qnum(2))
        self.assertEqual(matrix.ratios, (ONE, ONE))

    def test_level_one_ratios(self):
        matrix = corep.corep(1)
        middle = q_power(2) / (ONE + q_power(2))
        self.assertEqual(matrix.ratios, (ONE, middle, ONE))

    def test_schur_pattern(self):
        for twice in range(1, 5):
            matrix = corep.corep(Fraction(twice, 2))
            self.assertEqual(matrix.schur_exponent, 2)
            for i in matrix.weights:
                for j in matrix.weights:
                    scaled = matrix.ratio(i) / matrix.ratio(j) * matrix.gram_value(i, j)
                    self.assertEqual(scaled, q_power(int(2 * j)) / qnum(matrix.size))

    def test_exact_unitarity(self):
        for twice in range(3):
            self.assertEqual(corep.unitarity_defects(corep.corep(Fraction(twice, 2))), [])

    def test_numeric_unitarity(self):
        for twice in range(5):
            matrix = corep.corep(Fraction(twice, 2))
            for q0 in (0.3, 0.5, 0.9):
                residuals = corep.unitarity_residuals(matrix, q0)
                self.assertLess(residuals["columns"], 1e-10)
                self.assertLess(residuals["rows"], 1e-10)

    def test_residuals_recorded_when_point_given(self):
        matrix = corep.unitarize(corep.coaction_matrix(HALF), q0=0.5)
        self.assertLess(matrix.residuals["columns"], 1e-10)

    def test_inverse_matrix_through_antipode(self):
        for twice in range(3):
            self.assertTrue(corep.check_inverse_identity(corep.corep(Fraction(twice, 2))))


class PeterWeylTests(SimpleTestCase):
    def test_basis_size(self):
        self.assertEqual(len(corep.peter_weyl_basis(HALF)), 5)
        self.assertEqual(len(corep.peter_weyl_basis(1)), 14)

    def test_orthogonality(self):
        basis = corep.peter_weyl_basis(1)
        for x in basis:
            for y in basis:
                value = algebra.inner(y.entry.element, x.entry.element)
                if (x.level, x.row, x.col) == (y.level, y.row, y.col):
                    self.assertFalse(value.is_zero)
                else:
                    self.assertEqual(value, ZERO)

    def test_unitary_norms(self):
        for entry in corep.peter_weyl_basis(1):
            norm = corep.prefixed_inner(entry.entry, entry.entry)
            self.assertTrue(norm.is_exact)
            self.assertEqual(norm.exact(), q_power(int(2 * entry.col)) / qnum(int(2 * entry.level) + 1))

    def test_expand_and_synthesize(self):
        f = A * C + C_STAR * C_STAR + ONE_ELEM.scale(3)
        coords = corep.expand(f)
        self.assertEqual(corep.synthesize(coords), f)
        self.assertEqual(corep.support_levels(A + ONE_ELEM), [Fraction(0), HALF])

    def test_basis_element_prefactor(self):
        element = corep.basis_element(1, 0, -1)
        self.assertEqual(element.radicand, q_power(2) / (ONE + q_power(2)))
        self.assertFalse(element.is_exact)
        paired = element * element
        self.assertTrue(paired.is_exact)


class ClebschGordanTests(SimpleTestCase):
    def test_multiplying_by_one(self):
        for i in (-HALF, HALF):
            for j in (-HALF, HALF):
                coords = corep.clebsch_gordan_raw(0, HALF, 0, 0, i, j)
                self.assertEqual(coords, {(HALF, i, j): ONE})

    def test_a_squared(self):
        coords = corep.clebsch_gordan(HALF, HALF, -HALF, -HALF, -HALF, -HALF)
        self.assertEqual(coords, {(Fraction(1), Fraction(-1), Fraction(-1)): RootScalar(ONE)})

    def test_index_sum_rule(self):
        table = corep.cg_table(HALF, HALF)
        for key in table.entries:
            _, _, p, r, s, i, j = key
            self.assertLessEqual(p, 1)

        coords = corep.clebsch_gordan_raw(HALF, HALF, -HALF, -HALF, HALF, -HALF)
        self.assertEqual({(a, b) for (_, a, b) in coords}, {(Fraction(0), Fraction(-1))})

    def test_completeness(self):
        for m, n in ((HALF, HALF), (HALF, Fraction(1)), (Fraction(1), Fraction(1))):
            table = corep.cg_table(m, n)
            left, right = corep.corep(m), corep.corep(n)
            for r in left.weights:
                for s in left.weights:
                    for i in right.weights:
                        for j in right.weights:
                            product = left.entry(r, s) * right.entry(i, j)
                            self.assertEqual(table.reconstruct(r, s, i, j), product)

    def test_band(self):
        coords = corep.clebsch_gordan_raw(HALF, HALF, -HALF, HALF, HALF, -HALF)
        self.assertTrue(all(p in (Fraction(0), Fraction(1)) for (p, _, _) in coords))
        self.assertIn(Fraction(0), {p for (p, _, _) in coords})


class TableCacheTests(SimpleTestCase):
    def test_round_trip(self):
        with tempfile.TemporaryDirectory() as directory:
            cache = TableCache(directory)
            matrix = corep.corep(1)
            cache.store("corep_2", matrix.to_json())
            loaded = corep.CorepMatrix.from_json(cache.load("corep_2"))
            self.assertEqual(loaded.raw, matrix.raw)
            self.assertEqual(loaded.ratios, matrix.ratios)
            self.assertTrue(corep.check_counit(loaded))

    def test_counit_check_rejects_corrupt_tables(self):
        matrix = corep.corep(HALF)
        payload = matrix.to_json()
        payload["raw"][0][0] = (A + ONE_ELEM).to_json()
        self.assertFalse(corep.check_counit(corep.CorepMatrix.from_json(payload)))

    def test_missing_and_outdated_files(self):
        with tempfile.TemporaryDirectory() as directory:
            cache = TableCache(directory)
            self.assertIsNone(cache.load("corep_4"))
            (cache.directory / "corep_4.json").write_text('{"format": 0, "table": {}}')
            self.assertIsNone(cache.load("corep_4"))

    def test_cg_table_round_trip(self):
        table = corep.cg_table(HALF, HALF)
        again = corep.CGTable.from_json(table.to_json())
        self.assertEqual(again.entries, table.entries)
        self.assertEqual(again.coefficient(1, -HALF, -HALF, -HALF, -HALF), ExactScalar(1))

    def test_cg_table_check(self):
        table = corep.cg_table(HALF, 1)
        self.assertTrue(corep.check_cg_table(table))
        key = next(k for k in table.entries if k[3:] == (HALF, -HALF, -1, 1))
        tampered = dict(table.entries)
        tampered[key] = tampered[key] + ONE
        self.assertFalse(corep.check_cg_table(corep.CGTable(HALF, Fraction(1), tampered)))
        outside = dict(table.entries)
        outside[(HALF, Fraction(1), Fraction(5, 2), HALF, HALF, 1, 1)] = ONE
        self.assertFalse(corep.check_cg_table(corep.CGTable(HALF, Fraction(1), outside)))

    def test_corrupt_cg_cache_is_rebuilt(self):
        fresh = corep.cg_table(HALF, HALF)
        payload = fresh.to_json()
        sample = ["1/2", "-1/2", "-1/2", "1/2"]
        payload["entries"] = [item for item in payload["entries"] if item["key"][3:] != sample]
        with tempfile.TemporaryDirectory() as directory, override_settings(QSU2_CACHE_DIR=directory):
            TableCache(directory).store("cg_1_1", payload)
            corep._cg_table.cache_clear()
            try:
                rebuilt = corep.cg_table(HALF, HALF)
            finally:
                corep._cg_table.cache_clear()
            self.assertEqual(rebuilt.entries, fresh.entries)
            stored = corep.CGTable.from_json(TableCache(directory).load("cg_1_1"))
            self.assertEqual(stored.entries, fresh.entries)
