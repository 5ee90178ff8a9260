"""
Unit tests for the check layer: report schema, error isolation and the
profile plan.
"""

import unittest
from fractions import Fraction
from unittest.mock import patch

from src.config import config, VerificationProfile
from src.layers.algebra.errors import CompletionError, FuelError, UsageError
from src.layers.casimir.base import IdentityResult
from src.layers.checks.base import (
    ERROR,
    FAIL,
    PASS,
    CheckParams,
    CheckReport,
    aggregate_exit_code,
    witness_of,
)
from src.layers.checks.core import CHECK_IDS, Verifier

SCHEMA_KEYS = ["check", "params", "status", "witness", "elapsed_ms", "convention_notes"]


class TestReports(unittest.TestCase):
    """CheckParams and CheckReport serialization."""

    def test_schema_key_order(self):
        report = CheckReport("ybe", {"n": 2}, PASS, elapsed_ms=3)
        self.assertEqual(list(report.to_dict().keys()), SCHEMA_KEYS)

    def test_params_subset(self):
        params = CheckParams(n=3, q0=Fraction(1, 3))
        self.assertEqual(params.to_dict(("n", "q")), {"n": 3, "q": "1/3"})

    def test_corruption_is_reported(self):
        params = CheckParams(corrupt_r=(((1, 1), (1, 1)), 1))
        out = params.to_dict(("n",))
        self.assertEqual(out["corrupt_r"]["entry"], [[1, 1], [1, 1]])

    def test_with_n_copies(self):
        params = CheckParams(n=2, thresholds=[10])
        other = params.with_n(3)
        other.thresholds.append(100)
        self.assertEqual(other.n, 3)
        self.assertEqual(params.thresholds, [10])

    def test_witness_truncation(self):
        result = IdentityResult("x")
        for i in range(25):
            result.fail(f"instance {i}")
        witness = witness_of(result)
        self.assertEqual(len(witness["failures"]), 20)
        self.assertEqual(witness["omitted"], 5)
        self.assertIsNone(witness_of(IdentityResult("y")))

    def test_exit_codes(self):
        ok = CheckReport("a", {}, PASS)
        bad = CheckReport("b", {}, FAIL)
        capped = CheckReport("c", {}, ERROR, resource_exceeded=True)
        self.assertEqual(aggregate_exit_code([ok]), 0)
        self.assertEqual(aggregate_exit_code([ok, bad]), 1)
        self.assertEqual(aggregate_exit_code([ok, bad, capped]), 3)
        self.assertEqual(aggregate_exit_code([]), 0)


class TestVerifier(unittest.TestCase):
    """Check lookup, runs and error isolation."""

    @classmethod
    def setUpClass(cls):
        cls.verifier = Verifier()

    def test_all_checks_registered(self):
        self.assertEqual(self.verifier.check_ids(), list(CHECK_IDS))

    def test_unknown_check(self):
        with self.assertRaises(UsageError):
            self.verifier.get("no-such-check")

    def test_ybe_passes(self):
        report = self.verifier.run("ybe", CheckParams(n=2))
        self.assertEqual(report.status, PASS)
        self.assertIsNone(report.witness)
        self.assertEqual(report.params, {"n": 2, "degree_cap": config.limits.degree_cap(2)})

    def test_corrupted_r_fails_with_witness(self):
        params = CheckParams(n=2, corrupt_r=(((1, 1), (1, 1)), 1))
        for check_id in ("ybe", "hecke"):
            with self.subTest(check=check_id):
                report = self.verifier.run(check_id, params)
                self.assertEqual(report.status, FAIL)
                self.assertTrue(report.witness["failures"])
                self.assertIn("residual", report.witness)
                self.assertEqual(report.exit_code, 1)

    def test_corrupted_relation_fails(self):
        # X12 X11 = (q^-1 + 1) X11 X12 leaves the X22.X12.X11 overlap unresolved
        params = CheckParams(n=2, corrupt_relation=(0, 1))
        for check_id in ("pbw-confluence", "det"):
            with self.subTest(check=check_id):
                report = self.verifier.run(check_id, params)
                self.assertEqual(report.status, FAIL)
                self.assertEqual(report.exit_code, 1)
                self.assertEqual(report.params["corrupt_relation"]["index"], 0)

    def test_corrupted_relation_leaves_correct_build_alone(self):
        self.verifier.run("det", CheckParams(n=2, corrupt_relation=(0, 1)))
        self.assertEqual(self.verifier.run("det", CheckParams(n=2)).status, PASS)

    def test_cheap_checks_pass(self):
        for check_id in ("hecke", "ch", "bk"):
            with self.subTest(check=check_id):
                report = self.verifier.run(check_id, CheckParams(n=2))
                self.assertEqual(report.status, PASS, report.witness)

    def test_bk_notes_lower_b_elements(self):
        report = self.verifier.run("bk", CheckParams(n=2))
        self.assertEqual(report.status, PASS, report.witness)
        self.assertTrue(any(note.startswith("B_1 q-commutes") for note in report.convention_notes))

    def test_resource_error_is_isolated(self):
        check = self.verifier.checks["ybe"]
        with patch.object(check, "verify", side_effect=FuelError("out of fuel")):
            report = self.verifier.run("ybe", CheckParams(n=2))
        self.assertEqual(report.status, ERROR)
        self.assertTrue(report.resource_exceeded)
        self.assertEqual(report.exit_code, 3)

    def test_library_error_is_a_failure(self):
        check = self.verifier.checks["det"]
        with patch.object(check, "verify", side_effect=CompletionError("unresolved", overlap="X22.X11")):
            report = self.verifier.run("det", CheckParams(n=2))
        self.assertEqual(report.status, FAIL)
        self.assertEqual(report.witness["error"], "CompletionError")
        self.assertEqual(report.witness["overlap"], "X22.X11")

    def test_unexpected_error_is_an_error(self):
        check = self.verifier.checks["ch"]
        with patch.object(check, "verify", side_effect=RuntimeError("boom")):
            report = self.verifier.run("ch", CheckParams(n=2))
        self.assertEqual(report.status, ERROR)
        self.assertFalse(report.resource_exceeded)
        self.assertEqual(report.exit_code, 1)

    def test_profile_plan(self):
        quick = self.verifier.plan(VerificationProfile.QUICK, CheckParams())
        self.assertEqual([cid for cid, _ in quick], list(CHECK_IDS))
        self.assertTrue(all(p.n == 2 for _, p in quick))
        full = self.verifier.plan(VerificationProfile.FULL, CheckParams())
        self.assertEqual([p.n for cid, p in full if cid == "ybe"], [2, 3, 4])
        self.assertEqual([p.n for cid, p in full if cid == "det"], [2, 3])

    @unittest.skipUnless(config.heavy_tests_enabled, "set QT_HEAVY_TESTS=1")
    def test_quick_profile_passes(self):
        reports = self.verifier.run_all(VerificationProfile.QUICK, CheckParams(), progress=False)
        failing = {r.check: r.witness for r in reports if not r.passed}
        self.assertEqual(failing, {})


if __name__ == '__main__':
    unittest.main()
