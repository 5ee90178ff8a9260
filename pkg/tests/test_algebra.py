"""
Unit tests for the exact algebra layer: Q(q) scalars, word algebra,
R-matrix residuals and the rewriting engine.
"""

import unittest
from fractions import Fraction
from random import Random

from sympy.polys.domains import ZZ
from sympy.polys.fields import field

from src.layers.algebra.errors import DomainError, FuelError, PoleError, QuantumTruthError
from src.layers.algebra.ncalg import GenId, LeggedMatrix, NcElement, commutator, leg_embed, word_text
from src.layers.algebra.qfield import (
    ONE,
    ZERO,
    QScalar,
    as_scalar,
    elementary_symmetric,
    laurent_view,
    parse_scalar,
    random_scalar,
    q,
    q_binom,
    q_int,
    specialize,
    substitute_inverse,
    to_text,
)
from src.layers.algebra.rewrite import orient_and_complete
from src.layers.algebra.rmatrix import (
    braid_matrix,
    flat_index,
    hecke_residual,
    inverse_residual,
    r_matrix,
    to_domain_matrix,
    ybe_residual,
)


class TestScalars(unittest.TestCase):
    """Q(q) arithmetic, text form and specialization."""

    def test_q_integer(self):
        self.assertEqual(q_int(1), ONE)
        self.assertEqual(q_int(2), q + q ** -1)
        self.assertEqual(laurent_view(q_int(3)).as_dict(), {-2: 1, 0: 1, 2: 1})

    def test_gaussian_binomial(self):
        self.assertEqual(laurent_view(q_binom(4, 2)).as_dict(), {-4: 1, -2: 1, 0: 2, 2: 1, 4: 1})
        self.assertEqual(q_binom(5, 0), ONE)
        self.assertEqual(q_binom(5, 5), ONE)
        with self.assertRaises(DomainError):
            q_binom(2, 3)

    def test_canonical_text(self):
        self.assertEqual(to_text(q_int(2)), "(q^2+1)/(q)")
        self.assertEqual(to_text(ZERO), "0")
        self.assertEqual(to_text(q ** 2 - 1), "q^2-1")

    def test_parse_inverts_text(self):
        for value in (q_int(3), q_binom(4, 2), (q - 1) / (q ** 2 + 3), ONE):
            self.assertEqual(parse_scalar(to_text(value)), value)

    def test_parse_rejects_garbage(self):
        with self.assertRaises(DomainError):
            parse_scalar("q +* 2")

    def test_specialize(self):
        self.assertEqual(specialize(q_int(2), Fraction(1, 2)), Fraction(5, 2))
        self.assertEqual(specialize(q_binom(4, 2), 1), Fraction(6))

    def test_specialize_at_pole(self):
        with self.assertRaises(PoleError):
            specialize(ONE / (q - 1), 1)
        # PoleError stays catchable as a ValueError
        with self.assertRaises(ValueError):
            specialize(ONE / (q - 1), 1)

    def test_substitute_inverse(self):
        self.assertEqual(substitute_inverse(q ** 3 + 2), q ** -3 + 2)
        self.assertEqual(substitute_inverse(q_int(4)), q_int(4))

    def test_elementary_symmetric(self):
        self.assertEqual(to_text(elementary_symmetric(2, [1, 2, 3])), "11")
        self.assertEqual(elementary_symmetric(0, []), ONE)

    def test_coercion_keeps_field_elements(self):
        value = q_int(2)
        self.assertIsInstance(value, QScalar)
        self.assertIs(as_scalar(value), value)
        self.assertEqual(as_scalar(Fraction(1, 2)) * 2, ONE)
        self.assertEqual(as_scalar("q^2"), q ** 2)
        _, t = field("t", ZZ)
        with self.assertRaises(DomainError):
            as_scalar(t)
        with self.assertRaises(DomainError):
            as_scalar(True)


class TestWordAlgebra(unittest.TestCase):
    """Free algebra arithmetic and legged matrices."""

    def setUp(self):
        self.x = NcElement.gen(GenId("O_M", "X", (1, 1)))
        self.y = NcElement.gen(GenId("O_M", "X", (1, 2)))

    def test_noncommutative_product(self):
        self.assertNotEqual(self.x * self.y, self.y * self.x)
        self.assertEqual(commutator(self.x, self.y), self.x * self.y - self.y * self.x)
        self.assertEqual(self.x * NcElement.one(), self.x)

    def test_cancellation(self):
        self.assertTrue((self.x + self.y - self.y - self.x).is_zero())
        self.assertEqual(self.x.scale(2), self.x + self.x)
        self.assertEqual(self.x.scale(0), NcElement())

    def test_mismatched_alphabets(self):
        other = NcElement.gen(GenId("O_GL", "X", (1, 1)))
        with self.assertRaises(DomainError):
            self.x + other
        with self.assertRaises(DomainError):
            self.x * other

    def test_powers(self):
        self.assertEqual(self.x ** 0, NcElement.one())
        self.assertEqual((self.x ** 3).degree(), 3)
        with self.assertRaises(DomainError):
            self.x ** -1

    def test_labels(self):
        self.assertEqual(word_text(()), "1")
        self.assertEqual(GenId("O_T", "Tinv", (2,)).label(), "T2^-1")
        self.assertEqual(GenId("O_T", "Tp", (1, 2)).label(), "T+12")
        self.assertEqual(GenId("O_M", "X", (1, 2), 1).label(), "X12[1]")

    def test_legged_matrix_bounds(self):
        with self.assertRaises(DomainError):
            LeggedMatrix(1, 2, {((3,), (1,)): NcElement.one()})

    def test_leg_embed_of_identity(self):
        identity = LeggedMatrix.identity(1, 2)
        self.assertEqual(leg_embed(identity, 2, 1).entries.keys(), LeggedMatrix.identity(2, 2).entries.keys())


class TestRMatrix(unittest.TestCase):
    """Exact residuals of the standard R-matrix."""

    def test_entries(self):
        r = r_matrix(2)
        self.assertEqual(r[(1, 1), (1, 1)].constant_term(), q ** -1)
        self.assertEqual(r[(1, 2), (1, 2)].constant_term(), ONE)
        self.assertEqual(r[(1, 2), (2, 1)].constant_term(), q ** -1 - q)
        self.assertTrue(r[(2, 1), (1, 2)].is_zero())

    def test_yang_baxter(self):
        for n in (1, 2, 3):
            with self.subTest(n=n):
                self.assertTrue(ybe_residual(n).is_zero())
                self.assertTrue(inverse_residual(n).is_zero())

    def test_hecke_relation(self):
        for n in (2, 3):
            with self.subTest(n=n):
                self.assertTrue(hecke_residual(n).is_zero())

    def test_corrupted_diagonal_breaks_hecke(self):
        corrupt = (((1, 1), (1, 1)), 1)
        self.assertFalse(hecke_residual(2, corrupt).is_zero())
        self.assertFalse(inverse_residual(2, corrupt).is_zero())

    def test_braid_matrix_is_flipped_r(self):
        b = braid_matrix(2)
        self.assertEqual(b[(1, 2), (2, 1)].constant_term(), ONE)
        self.assertEqual(b[(2, 1), (2, 1)].constant_term(), q ** -1 - q)

    def test_domain_matrix(self):
        m = to_domain_matrix(r_matrix(2))
        self.assertEqual(m.shape, (4, 4))
        self.assertEqual(flat_index((2, 1), 2), 2)

    def test_rejects_bad_size(self):
        with self.assertRaises(DomainError):
            r_matrix(0)


class TestRewriting(unittest.TestCase):
    """Completion and normal forms on a small q-plane."""

    @classmethod
    def setUpClass(cls):
        cls.a = GenId("plane", "a")
        cls.b = GenId("plane", "b")
        x, y = NcElement.gen(cls.a), NcElement.gen(cls.b)
        cls.x, cls.y = x, y
        # b a = q a b
        cls.plane = orient_and_complete([y * x - (x * y).scale(q)], [cls.a, cls.b], 4, name="plane")

    def test_pbw_basis(self):
        self.assertEqual(self.plane.summary.adjoined_rules, 0)
        for degree in range(4):
            self.assertEqual(self.plane.count_irreducible(degree), degree + 1)

    def test_normal_form(self):
        reduced = self.plane.normal_form(self.y * self.y * self.x)
        self.assertEqual(reduced, (self.x * self.y * self.y).scale(q ** 2))

    def test_random_reduction_agrees(self):
        rng = Random(7)
        word = self.y * self.x * self.y * self.x
        expected = self.plane.normal_form(word)
        for _ in range(5):
            self.assertEqual(self.plane.reduce_randomly(word, rng), expected)

    def test_random_reduction_of_combinations(self):
        rng = Random(11)
        for _ in range(5):
            c1, c2 = random_scalar(rng), random_scalar(rng)
            self.assertTrue(c1 and c2)
            combo = (self.y * self.x).scale(c1) + (self.y * self.y * self.x).scale(c2)
            expected = (self.x * self.y).scale(c1 * q) + (self.x * self.y * self.y).scale(c2 * q ** 2)
            self.assertEqual(self.plane.normal_form(combo), expected)
            self.assertEqual(self.plane.reduce_randomly(combo, rng), expected)

    def test_degree_cap(self):
        with self.assertRaises(FuelError):
            self.plane.normal_form(self.x ** 5)

    def test_unknown_letter(self):
        stranger = NcElement.gen(GenId("plane", "c"))
        with self.assertRaises(QuantumTruthError):
            self.plane.normal_form(stranger)

    def test_dump_lists_rules(self):
        self.assertEqual(self.plane.dump(), "b.a -> q*a.b")


if __name__ == '__main__':
    unittest.main()
