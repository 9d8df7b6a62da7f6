"""
Run a verification suite and print a JSON report.

    python manage.py verify trace --seed 0 --instances 200
    python manage.py verify morita --ring z2 --n 2 --degree 2

Exit status 1 when any check fails; the report still goes to standard output.
"""
import time

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError
from django.template.loader import render_to_string

from barcons.serializers import load_monoid, load_ring
from reports.serializers import build_report, render_json
from reports.services import EXIT_VERIFY_FAILED, command_errors
from reports.suites import SUITES, SuiteOptions, run_suite


class Command(BaseCommand):
    help = "Run a verification suite (trace, operad, gamma, cyclic-identities, morita)"

    def add_arguments(self, parser):
        parser.add_argument("suite", choices=sorted(SUITES))
        parser.add_argument("--seed", type=int, default=settings.CYCLOTRACE_VERIFY_SEED)
        parser.add_argument("--instances", type=int, default=settings.CYCLOTRACE_VERIFY_INSTANCES)
        parser.add_argument("--monoid", help="Builtin monoid name or JSON document")
        parser.add_argument("--ring", help="Builtin ring name or JSON document")
        parser.add_argument("--n", type=int, default=2, help="Matrix size for morita")
        parser.add_argument("--degree", type=int, help="Top degree checked; each suite has its own default")
        parser.add_argument("--timing", action="store_true", help="Report elapsed time")

    def handle(self, *args, **options):
        suite = options["suite"]
        arguments = {
            "suite": suite,
            "seed": options["seed"],
            "instances": options["instances"],
            "monoid": options["monoid"],
            "ring": options["ring"],
            "n": options["n"],
            "degree": options["degree"],
        }
        started = time.perf_counter()
        with command_errors():
            if options["instances"] < 0:
                raise CommandError("--instances must be non-negative", returncode=2)
            documents = {}
            suite_options = SuiteOptions(n=options["n"], degree=options["degree"])
            if options["monoid"]:
                suite_options.monoid, documents["monoid"] = load_monoid(options["monoid"])
            if options["ring"]:
                suite_options.ring, documents["ring"] = load_ring(options["ring"])
            document = documents or None
            verdicts = [
                v.as_dict() for v in run_suite(suite, options["seed"], options["instances"], suite_options)
            ]
            timing = None
            if options["timing"]:
                timing = {"seconds": round(time.perf_counter() - started, 3)}
            report = build_report("verify", arguments, document, verdicts=verdicts, timing=timing)

        self.stdout.write(render_json(report))
        self.stderr.write(render_to_string("reports/verify.txt", {
            "suite": suite,
            "seed": options["seed"],
            "instances": options["instances"],
            "verdicts": report["verdicts"],
            "passed": report["passed"],
            "timing": timing,
        }), ending="")
        if not report["passed"]:
            failed = [v["check"] for v in report["verdicts"] if not v["passed"]]
            raise CommandError(f"verification failed: {', '.join(failed)}", returncode=EXIT_VERIFY_FAILED)
