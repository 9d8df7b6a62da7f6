"""
Integral homology of a bar, cyclic bar, Hochschild or Barratt-Eccles complex.

    python manage.py homology --input z2 --object bar --degree 3
"""
import time

from django.conf import settings
from django.core.management.base import BaseCommand
from django.template.loader import render_to_string

from reports.serializers import build_report, render_json
from reports.services import OBJECTS, command_errors, compute_homology, homology_rows


class Command(BaseCommand):
    help = "Compute homology up to a degree and print a JSON report"

    def add_arguments(self, parser):
        parser.add_argument(
            "--input", default="z2",
            help="Builtin name (z2, z3, z4, f2x, idem, gl2z2) or path to a JSON document",
        )
        parser.add_argument("--object", choices=OBJECTS, default="bar")
        parser.add_argument("--degree", type=int, default=settings.CYCLOTRACE_DEFAULT_TRUNCATION)
        parser.add_argument("--moore", action="store_true", help="Use the unnormalised complex")
        parser.add_argument("--arity", type=int, default=2, help="Arity n of E Sigma_n for be-operad")
        parser.add_argument("--timing", action="store_true", help="Report elapsed time")

    def handle(self, *args, **options):
        kind = options["object"]
        arguments = {
            "object": kind,
            "input": None if kind == "be-operad" else options["input"],
            "degree": options["degree"],
            "moore": options["moore"],
        }
        if kind == "be-operad":
            arguments["arity"] = options["arity"]
        started = time.perf_counter()
        with command_errors():
            table, document, name = compute_homology(
                kind, options["input"], options["degree"], options["moore"], options["arity"]
            )
            rows = homology_rows(table)
            timing = None
            if options["timing"]:
                timing = {"seconds": round(time.perf_counter() - started, 3)}
            report = build_report("homology", arguments, document, homology=rows, timing=timing)

        self.stdout.write(render_json(report))
        self.stderr.write(render_to_string("reports/homology.txt", {
            "object": kind,
            "name": name,
            "degree": options["degree"],
            "moore": options["moore"],
            "rows": rows,
            "timing": timing,
        }), ending="")
