from django.template import Context, Template
from django.test import SimpleTestCase
from rest_framework.exceptions import ValidationError

from reports.serializers import build_report, input_digest, render_json
from reports.templatetags.report_filters import abelian_group, count, group_order, verdict


class ReportTests(SimpleTestCase):

    def test_field_order(self) -> None:
        report = build_report("homology", {"degree": 1}, {"builtin": "z2"}, homology=[
            {"degree": 0, "rank": 1, "torsion": []},
        ])
        self.assertEqual(
            list(report), ["schema_version", "command", "arguments", "input_digest", "homology", "passed"]
        )

    def test_passed_is_conjunction(self) -> None:
        ok = {"check": "a", "passed": True, "instances": 3, "counterexample": None, "details": {}}
        bad = {
            "check": "b", "passed": False, "instances": 1,
            "counterexample": {"input": "x", "left": "1", "right": "2"}, "details": {},
        }
        self.assertTrue(build_report("verify", {}, verdicts=[ok])["passed"])
        self.assertFalse(build_report("verify", {}, verdicts=[ok, bad])["passed"])

    def test_failed_verdict_needs_counterexample(self) -> None:
        bad = {"check": "b", "passed": False, "instances": 1, "counterexample": None, "details": {}}
        with self.assertRaises(ValidationError):
            build_report("verify", {}, verdicts=[bad])

    def test_torsion_coefficients_are_at_least_two(self) -> None:
        with self.assertRaises(ValidationError):
            build_report("homology", {}, homology=[{"degree": 0, "rank": 0, "torsion": [1]}])

    def test_digest_is_canonical(self) -> None:
        self.assertEqual(input_digest({"a": 1, "b": [1, 2]}), input_digest({"b": [1, 2], "a": 1}))
        self.assertNotEqual(input_digest({"a": 1}), input_digest({"a": 2}))
        self.assertTrue(input_digest({}).startswith("sha256:"))
        self.assertIsNone(input_digest(None))

    def test_render_is_stable(self) -> None:
        report = build_report("homology", {"degree": 0}, homology=[{"degree": 0, "rank": 1, "torsion": []}])
        self.assertEqual(render_json(report), render_json(dict(report)))


class FilterTests(SimpleTestCase):

    def test_count(self) -> None:
        self.assertEqual(count(16275), "16,275")
        self.assertEqual(count(16275, "instance"), "16,275 instances")
        self.assertEqual(count(1, "instance"), "1 instance")
        self.assertEqual(count("n/a", "instance"), "n/a")

    def test_group_order(self) -> None:
        self.assertEqual(group_order({"rank": 0, "torsion": [2, 2]}), "order 4")
        self.assertEqual(group_order({"rank": 0, "torsion": [2, 4, 512]}), "order 4,096")
        self.assertEqual(group_order({"rank": 1, "torsion": [2]}), "")
        self.assertEqual(group_order({"rank": 0, "torsion": []}), "")

    def test_abelian_group(self) -> None:
        self.assertEqual(abelian_group({"rank": 0, "torsion": []}), "0")
        self.assertEqual(abelian_group({"rank": 1, "torsion": [2]}), "Z + Z/2")
        self.assertEqual(abelian_group({"rank": 3, "torsion": [2, 4]}), "Z^3 + Z/2 + Z/4")

    def test_verdict(self) -> None:
        self.assertEqual(verdict(True), "ok")
        self.assertEqual(verdict(False), "FAIL")

    def test_in_template(self) -> None:
        rendered = Template("{% load report_filters %}{{ row|abelian_group }}").render(
            Context({"row": {"rank": 0, "torsion": [3]}})
        )
        self.assertEqual(rendered, "Z/3")
