"""
Tests for the command line: exit codes, JSON reports and dumps.
"""

import io
import json
import os
import shutil
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from unittest.mock import patch

from src.main import main
from src.layers.algebra.errors import FuelError
from src.layers.checks.base import FAIL, PASS, CheckReport


def run_quiet(argv):
    buffer, status = io.StringIO(), io.StringIO()
    with redirect_stdout(buffer), redirect_stderr(status):
        code = main(argv)
    return code, buffer.getvalue()


class TestCommandLine(unittest.TestCase):
    """Exit codes 0 (pass), 1 (fail), 2 (usage) and 3 (resource)."""

    @classmethod
    def setUpClass(cls):
        cls.test_dir = tempfile.mkdtemp()

    @classmethod
    def tearDownClass(cls):
        if os.path.exists(cls.test_dir):
            shutil.rmtree(cls.test_dir)

    def test_list(self):
        code, out = run_quiet(["--list"])
        self.assertEqual(code, 0)
        self.assertIn("pbw-confluence", out)

    def test_usage_errors(self):
        for argv in (["no-such-check"], ["ybe", "--q", "3/2"], ["ybe", "--q", "abc"],
                     ["ybe", "--n", "0"], ["ybe", "--threshold", "-1"], []):
            with self.subTest(argv=argv):
                code, _ = run_quiet(argv)
                self.assertEqual(code, 2)

    def test_json_report(self):
        path = os.path.join(self.test_dir, "ybe.json")
        code, _ = run_quiet(["ybe", "--n", "2", "--out", path])
        self.assertEqual(code, 0)
        with open(path, encoding="utf-8") as f:
            payload = json.load(f)
        self.assertEqual(list(payload.keys()),
                         ["check", "params", "status", "witness", "elapsed_ms", "convention_notes"])
        self.assertEqual(payload["status"], "pass")
        self.assertEqual(payload["params"]["n"], 2)

    def test_stdout_is_one_json_object(self):
        code, out = run_quiet(["ybe", "--n", "2"])
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertEqual(payload["check"], "ybe")
        self.assertEqual(payload["status"], "pass")

    def test_stdout_is_one_json_array_for_all(self):
        reports = [CheckReport("ybe", {"n": 2}, PASS), CheckReport("hecke", {"n": 2}, PASS)]
        with patch("src.layers.checks.core.Verifier.run_all", return_value=reports):
            code, out = run_quiet(["all"])
        self.assertEqual(code, 0)
        self.assertEqual([item["check"] for item in json.loads(out)], ["ybe", "hecke"])

    def test_failing_check(self):
        failing = CheckReport("ybe", {"n": 2}, FAIL, witness={"failures": ["entry"]})
        with patch("src.layers.checks.core.Verifier.run", return_value=failing):
            code, out = run_quiet(["ybe"])
        self.assertEqual(code, 1)
        self.assertIn('"status": "fail"', out)

    def test_dump_presentation(self):
        code, out = run_quiet(["--dump-presentation", "O_M", "--n", "2"])
        self.assertEqual(code, 0)
        self.assertEqual(len([line for line in out.splitlines() if "->" in line]), 6)

    def test_resource_cap(self):
        with patch("src.main.build", side_effect=FuelError("out of fuel")):
            code, _ = run_quiet(["--dump-presentation", "O_T"])
        self.assertEqual(code, 3)


if __name__ == '__main__':
    unittest.main()
