"""
Unit tests for the irreducible modules, central characters, the state omega
and the numeric tables.
"""

import unittest
from fractions import Fraction

from src.config import config
from src.layers.algebra.errors import DomainError
from src.layers.algebra.qfield import ONE, q, specialize
from src.layers.casimir.harish_chandra import derive_C
from src.layers.representations.characters import (
    central_character,
    ehc_closed_form,
    intertwining_failures,
    verify_central_characters,
    verify_ehc,
)
from src.layers.representations.modules import (
    Weight,
    dominant_weights,
    hecke_commutation_failures,
    irrep,
    qdim,
    vector_rep,
    weight_mults,
    weyl_dimension,
)


class TestWeights(unittest.TestCase):
    """Weakly integral weights."""

    def test_parse_shifted(self):
        lam = Weight.of([Fraction(1, 2), Fraction(-1, 2)])
        self.assertEqual(lam.values, (0, -1))
        self.assertEqual(lam.shift, Fraction(1, 2))
        self.assertFalse(lam.is_integral)
        self.assertEqual(str(lam), "(1/2,-1/2)")

    def test_rejects_non_integral_differences(self):
        with self.assertRaises(DomainError):
            Weight.of([Fraction(1, 2), Fraction(1, 3)])

    def test_dominant_weights(self):
        weights = dominant_weights(2, 2)
        self.assertEqual([w.values for w in weights], [(0, 0), (1, 0), (2, 0)])
        self.assertEqual(len(dominant_weights(2, 2, levels=(0, -1))), 6)

    def test_weyl_dimension(self):
        self.assertEqual(weyl_dimension((2, 0)), 3)
        self.assertEqual(weyl_dimension((1, 1, 0)), 3)
        self.assertEqual(weyl_dimension((2, 1, 0)), 8)


class TestModules(unittest.TestCase):
    """Exact modules of U_q(gl_2)."""

    def test_vector_representation(self):
        v = vector_rep(2)
        self.assertEqual(v.dim, 2)
        self.assertEqual(v.relation_failures(), [])
        self.assertEqual(intertwining_failures(v), [])

    def test_irreducible_dimensions(self):
        for lam in dominant_weights(2, 3):
            with self.subTest(weight=str(lam)):
                module = irrep(lam)
                self.assertEqual(module.dim, weyl_dimension(lam.values))
                self.assertEqual(module.relation_failures(), [])

    def test_weight_multiplicities(self):
        self.assertEqual(weight_mults(irrep(Weight((2, 0)))), {(2, 0): 1, (1, 1): 1, (0, 2): 1})

    def test_quantum_dimension(self):
        module = irrep(Weight((1, 0)))
        self.assertEqual(qdim(module), q ** -4 + q ** -2)
        self.assertEqual(specialize(qdim(irrep(Weight((3, 0)))), 1), Fraction(4))

    def test_determinant_twist(self):
        self.assertEqual(irrep(Weight((1, 1))).dim, 1)
        self.assertEqual(irrep(Weight((0, -1))).dim, 2)

    def test_hecke_commutation(self):
        self.assertEqual(hecke_commutation_failures(2, 2), [])
        self.assertEqual(hecke_commutation_failures(3, 2), [])


class TestCentralCharacters(unittest.TestCase):
    """Harish-Chandra characters against the modules."""

    def test_first_casimir_on_vector(self):
        c1 = derive_C(1, 2)
        self.assertEqual(central_character(c1, Weight((1, 0))), q ** -2 + q ** 2)
        self.assertEqual(central_character(c1, Weight((0, 0))), ONE + q ** 2)

    def test_characters_agree_with_modules(self):
        elements = [derive_C(1, 2), derive_C(2, 2)]
        result = verify_central_characters(elements, dominant_weights(2, 2))
        self.assertTrue(result.passed, result.failures)

    def test_character_needs_integral_weight(self):
        with self.assertRaises(DomainError):
            central_character(derive_C(1, 2), Weight.of([Fraction(1, 2), Fraction(1, 2)]))


class TestOmegaState(unittest.TestCase):
    """The weighted trace state on B_k."""

    def test_closed_form_on_trivial_module(self):
        self.assertEqual(ehc_closed_form(1, Weight((0, 0))), ONE)

    def test_state_matches_closed_form(self):
        weights = [Weight((0, 0)), Weight((1, 0))]
        for k in (1, 2):
            with self.subTest(k=k):
                result = verify_ehc(2, k, weights)
                self.assertTrue(result.passed, result.failures)

    def test_k_range(self):
        with self.assertRaises(DomainError):
            verify_ehc(2, 3, [Weight((0, 0))])


@unittest.skipUnless(config.features.numpy_available and config.features.scipy_available,
                     "numpy and scipy required")
class TestNumeric(unittest.TestCase):
    """Filtration tables and spectra at q0 = 1/2."""

    def setUp(self):
        self.q0 = Fraction(1, 2)

    def test_window_bound(self):
        from src.layers.representations.numeric import window_bound

        self.assertEqual(window_bound(2, self.q0, 10), 4)
        self.assertLessEqual(window_bound(2, self.q0, 10), window_bound(2, self.q0, 1000))

    def test_filtration_is_nested(self):
        from src.layers.representations.numeric import filtration_table

        rows = filtration_table(2, self.q0, 2, [10, 100])
        self.assertEqual(len(rows), 15)
        for row in rows:
            self.assertGreaterEqual(row.control_value, Fraction(5, 2))
            if row.members[10]:
                self.assertTrue(row.members[100])

    def test_filtration_rejects_q0(self):
        from src.layers.representations.numeric import filtration_table

        with self.assertRaises(DomainError):
            filtration_table(2, Fraction(2), 2, [10])

    def test_filtration_report(self):
        from src.layers.representations.numeric import filtration_report

        result = filtration_report(2, self.q0, 3, [10, 100])
        self.assertTrue(result.passed, result.failures)
        self.assertLessEqual(result.metrics["members"][10], result.metrics["members"][100])

    def test_spectrum(self):
        from src.layers.representations.numeric import spectrum_check

        for values in ((0, 0), (1, 0)):
            with self.subTest(weight=values):
                result = spectrum_check(Weight(values), self.q0)
                self.assertTrue(result.passed, result.failures)
                self.assertLess(result.metrics["residual_norm"], 1e-9)


if __name__ == '__main__':
    unittest.main()
