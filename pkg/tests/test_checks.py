import unittest

from quhm.checks import CheckResult, Report, Verdict
from quhm.errors import VerificationError


class TestCheckResult(unittest.TestCase):
    """
    Test single check outcomes.
    """

    def test_truthiness(self):
        """
        Check that only passed results are truthy.
        """
        self.assertTrue(CheckResult.passing("amicable"))
        self.assertFalse(CheckResult.failing("amicable", witness=(0, 1)))
        self.assertFalse(CheckResult.skipped("butson"))
        self.assertIs(CheckResult.skipped("butson").verdict, Verdict.SKIPPED)

    def test_render(self):
        """
        Check the rendered line of a failure.
        """
        line = CheckResult.failing("hadamard", witness=(2, 3), residual=4, detail="gram").render()
        self.assertTrue(line.startswith("hadamard"))
        self.assertIn("FAILED", line)
        self.assertIn("at (2, 3); residual 4; gram", line)
        self.assertEqual(CheckResult.passing("core").render().split(), ["core", "PASSED"])


class TestReport(unittest.TestCase):
    """
    Test reports of several checks.
    """

    def test_skipped_does_not_fail(self):
        """
        Check that skipped results neither fail the report nor count as passed.
        """
        report = Report("subject", [CheckResult.passing("a"), CheckResult.skipped("b")])
        self.assertTrue(report.passed)
        self.assertEqual(report.names, ["a"])
        self.assertEqual(report.failures, [])
        report.raise_for_failure()

    def test_failure(self):
        """
        Check that a failure is raised with the report attached.
        """
        report = Report("QUH(3, 3)")
        report.add(CheckResult.passing("amicable"))
        report.add(CheckResult.failing("pair-identity", witness=(0, 0)))
        self.assertFalse(report)
        self.assertEqual(len(report), 2)
        self.assertEqual(report["pair-identity"].witness, (0, 0))
        self.assertRaises(KeyError, report.__getitem__, "butson")
        with self.assertRaises(VerificationError) as ctx:
            report.raise_for_failure()
        self.assertIs(ctx.exception.report, report)
        self.assertIn("QUH(3, 3): pair-identity", str(ctx.exception))
        self.assertTrue(report.render().startswith("QUH(3, 3): FAIL"))

    def test_extend(self):
        """
        Check that reports can be merged.
        """
        first = Report("first", [CheckResult.passing("a")])
        first.extend(Report("second", [CheckResult.passing("b")]))
        self.assertEqual([r.name for r in first], ["a", "b"])
