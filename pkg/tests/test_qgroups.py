"""
Unit tests for the catalog algebras, their Hopf structure, pairings and the
maps between them at N=2.

N=3 cases run only with QT_HEAVY_TESTS=1.
"""

import unittest

from src.config import config
from src.layers.algebra.errors import DomainError
from src.layers.algebra.ncalg import LeggedMatrix, NcElement, legged_mul
from src.layers.algebra.qfield import ONE, ZERO, q
from src.layers.qgroups.catalog import (
    KINDS,
    O_GL,
    O_GLR,
    O_M,
    O_T,
    O_U,
    STAR_KINDS,
    U_QGL,
    antipode_matrix,
    build,
    expected_pbw_count,
    khat,
    pbw_count,
    quantum_det,
    star_involution_failures,
)
from src.layers.qgroups.hopf import central_failures, hopf_axioms, is_grouplike
from src.layers.qgroups.maps import (
    chi_x_failures,
    cholesky_failures,
    qr,
    uq_iso,
    uq_iso_failures,
    vector_rep_failures,
)
from src.layers.qgroups.pairings import pairing_p, pairing_r, pinned_r


class TestCatalog(unittest.TestCase):
    """Completed presentations of the catalog at N=2."""

    @classmethod
    def setUpClass(cls):
        cls.m = build(O_M, 2)

    def test_q_commutation(self):
        x11, x12 = self.m.gen("X", 1, 1), self.m.gen("X", 1, 2)
        self.assertTrue(self.m.equal(x12 * x11, (x11 * x12).scale(q ** -1)))

    def test_pbw_counts(self):
        self.assertEqual(self.m.presentation.summary.adjoined_rules, 0)
        self.assertEqual(len(self.m.presentation.rules), 6)
        for degree, want in enumerate((1, 4, 10, 20)):
            self.assertEqual(expected_pbw_count(self.m, degree), want)
            self.assertEqual(self.m.presentation.count_irreducible(degree), want)

    def test_pbw_count_with_inverse_pairs(self):
        # one ordinary letter and one invertible letter: t^2 gives a^2, aK, aK^-1, K^2, K^-2
        self.assertEqual(pbw_count(1, 1, 2), 5)
        self.assertEqual(pbw_count(0, 1, 1), 2)

    def test_determinant_forms_agree(self):
        forms = [quantum_det(self.m, "X", form) for form in (1, 2, 3, 4)]
        for other in forms[1:]:
            self.assertTrue(self.m.equal(forms[0], other))

    def test_determinant_is_central_and_grouplike(self):
        det = quantum_det(self.m, "X")
        self.assertEqual(central_failures(self.m, det), [])
        self.assertTrue(is_grouplike(self.m, det))

    def test_antipode_inverts_generating_matrix(self):
        gl = build(O_GL, 2)
        x = gl.matrix("X")
        s = antipode_matrix(gl, "X")
        identity = LeggedMatrix.identity(1, 2)
        for product in (legged_mul(x, s), legged_mul(s, x)):
            for i in (1, 2):
                for j in (1, 2):
                    self.assertTrue(gl.is_zero(product[i, j] - identity[i, j]))

    def test_hopf_axioms(self):
        for kind in (O_M, O_GL, O_T, U_QGL):
            with self.subTest(kind=kind):
                failures = hopf_axioms(build(kind, 2))
                self.assertEqual({law: f for law, f in failures.items() if f}, {})

    def test_star_is_involutive(self):
        for kind in sorted(STAR_KINDS):
            with self.subTest(kind=kind):
                self.assertEqual(star_involution_failures(build(kind, 2)), [])

    def test_triangular_inverses(self):
        t = build(O_T, 2)
        for i in (1, 2):
            self.assertTrue(t.equal(t.gen("T", i) * t.gen("Tinv", i), NcElement.one()))
        self.assertTrue(t.equal(quantum_det(t, "T"), t.gen("T", 1) * t.gen("T", 2)))

    def test_unknown_kind(self):
        with self.assertRaises(DomainError):
            build("O_X", 2)
        with self.assertRaises(DomainError):
            build(O_M, 0)
        self.assertIn(O_GLR, KINDS)

    def test_builds_are_cached(self):
        self.assertIs(build(O_M, 2), build(O_M, 2))

    @unittest.skipUnless(config.heavy_tests_enabled, "set QT_HEAVY_TESTS=1")
    def test_pbw_counts_n3(self):
        m3 = build(O_M, 3)
        for degree in range(4):
            self.assertEqual(m3.presentation.count_irreducible(degree), expected_pbw_count(m3, degree))


class TestQuantumGroupMaps(unittest.TestCase):
    """Maps between catalog algebras at N=2."""

    def test_uq_relations_hold_in_triangular_group(self):
        self.assertEqual(uq_iso_failures(2), [])

    def test_uq_commutator(self):
        u = build(U_QGL, 2)
        e, f = u.gen("E", 1), u.gen("F", 1)
        hat = (khat(u, 1) - khat(u, 1, inverse=True)).scale(ONE / (q - q ** -1))
        self.assertTrue(u.equal(e * f - f * e, hat))

    def test_uq_iso_on_k(self):
        u, t = build(U_QGL, 2), build(O_T, 2)
        self.assertTrue(t.equal(uq_iso(u.gen("K", 1), 2), t.gen("Tinv", 1)))

    def test_uq_iso_rejects_foreign_elements(self):
        with self.assertRaises(DomainError):
            uq_iso(build(O_M, 2).gen("X", 1, 1), 2)

    def test_vector_representation(self):
        self.assertEqual(vector_rep_failures(2), [])

    def test_reflection_images(self):
        self.assertEqual(cholesky_failures(2), [])
        self.assertEqual(chi_x_failures(2), [])

    def test_qr_of_unit(self):
        self.assertEqual(qr(NcElement.one(), 2), NcElement.one())


class TestPairings(unittest.TestCase):
    """The skew pairing r on O_M(2)."""

    @classmethod
    def setUpClass(cls):
        cls.pairing = pinned_r(2)
        cls.h = cls.pairing.left

    def test_unit_pairs_like_counit(self):
        one = NcElement.one()
        for i in (1, 2):
            for j in (1, 2):
                want = ONE if i == j else ZERO
                self.assertEqual(self.pairing(one, self.h.gen("X", i, j)), want)

    def test_generators_pair_to_r_entries(self):
        x11 = self.h.gen("X", 1, 1)
        self.assertEqual(self.pairing(x11, x11), q ** -1)

    def test_determinant_pairing(self):
        det = quantum_det(self.h, "X")
        self.assertEqual(self.pairing(det, self.h.gen("X", 1, 1)), q ** -1)
        self.assertEqual(self.pairing(det, self.h.gen("X", 1, 2)), ZERO)

    def test_pairing_uses_the_given_size(self):
        x11, x22 = self.h.gen("X", 1, 1), self.h.gen("X", 2, 2)
        self.assertEqual(pairing_r(x11, x22, 2), ONE)
        self.assertEqual(pairing_r(x11, x11, 2), self.pairing(x11, x11))
        with self.assertRaises(DomainError):
            pairing_r(x11, x22, 1)

    def test_p_rejects_elements_beyond_size(self):
        t2 = build(O_T, 2).gen("T", 2)
        u11 = build(O_U, 2).gen("U", 1, 1)
        with self.assertRaises(DomainError):
            pairing_p(t2, u11, 1)
        with self.assertRaises(DomainError):
            pairing_p(u11, t2, 2)

    def test_convention_is_recorded(self):
        self.assertIn(self.pairing.convention, self.pairing.survivors)
        self.assertTrue(self.pairing.notes)


if __name__ == '__main__':
    unittest.main()
