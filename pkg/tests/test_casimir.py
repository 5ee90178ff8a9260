"""
Unit tests for the central elements of the reflection equation algebra and
their Harish-Chandra images.
"""

import unittest

from src.config import config
from src.layers.algebra.errors import DomainError
from src.layers.algebra.qfield import ONE, q
from src.layers.qgroups.catalog import O_H, build
from src.layers.casimir.harish_chandra import HCImage, central_b, ch_target, derive_C, hc, partitions
from src.layers.casimir.identities import (
    verify_Bi_commutation,
    verify_ch,
    verify_hc_multiplicative,
    verify_L_family,
)


class TestHCImage(unittest.TestCase):
    """Laurent polynomials in the squares T_i^2."""

    def test_evaluate(self):
        image = HCImage.monomial(2, (1, 0)) + HCImage.monomial(2, (0, 1), q ** 2)
        self.assertEqual(image.evaluate((1, 0)), q ** -2 + q ** 2)
        self.assertEqual(image.evaluate((0, 0)), ONE + q ** 2)

    def test_evaluate_checks_length(self):
        with self.assertRaises(DomainError):
            HCImage.constant(2).evaluate((1, 0, 0))

    def test_arithmetic(self):
        a = HCImage.monomial(2, (1, 0))
        b = HCImage.monomial(2, (0, 1))
        self.assertEqual((a * b).terms, {(1, 1): ONE})
        self.assertTrue((a - a).is_zero())
        self.assertEqual(a.to_text(), "T1^2")

    def test_partitions(self):
        self.assertEqual(list(partitions(3)), [(3,), (2, 1), (1, 1, 1)])
        self.assertEqual(list(partitions(0)), [()])

    def test_ch_target(self):
        self.assertEqual(ch_target(1, 2).terms, {(1, 0): ONE, (0, 1): q ** 2})
        self.assertEqual(ch_target(2, 2).terms, {(1, 1): q ** 2})


class TestCentralElements(unittest.TestCase):
    """B_k and C_k at N=2."""

    def test_b_elements(self):
        for k, exps in ((1, (1, 0)), (2, (1, 1))):
            with self.subTest(k=k):
                element = central_b(k, 2)
                self.assertEqual(element.hc.terms, {exps: ONE})

    def test_only_top_b_is_central(self):
        self.assertTrue(central_b(2, 2).is_central)
        # B_1 only q-commutes with the off-diagonal Z
        self.assertFalse(central_b(1, 2).is_central)

    def test_c_elements_match_target(self):
        for k in (1, 2):
            with self.subTest(k=k):
                element = derive_C(k, 2)
                self.assertTrue(element.is_central)
                self.assertEqual(element.hc, ch_target(k, 2))
                self.assertTrue(element.notes)

    def test_c_index_range(self):
        with self.assertRaises(DomainError):
            derive_C(3, 2)
        with self.assertRaises(DomainError):
            derive_C(0, 2)

    def test_hc_rejects_non_central(self):
        z = build(O_H, 2)
        with self.assertRaises(DomainError):
            hc(z.gen("Z", 1, 2), 2)


class TestIdentities(unittest.TestCase):
    """Identity families at N=2."""

    def test_cayley_hamilton(self):
        result = verify_ch(2)
        self.assertTrue(result.passed, result.failures)

    def test_hc_is_multiplicative(self):
        result = verify_hc_multiplicative(2)
        self.assertTrue(result.passed, result.failures)

    def test_l_family(self):
        result = verify_L_family(2)
        self.assertTrue(result.passed, result.failures)

    def test_bi_commutation(self):
        result = verify_Bi_commutation(2)
        self.assertTrue(result.passed, result.failures)

    @unittest.skipUnless(config.heavy_tests_enabled, "set QT_HEAVY_TESTS=1")
    def test_cayley_hamilton_n3(self):
        result = verify_ch(3)
        self.assertTrue(result.passed, result.failures)


if __name__ == '__main__':
    unittest.main()
