import json
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from circle.management.commands.circle import unit


def run(*args, **options):
    out = StringIO()
    call_command(*args, stdout=out, **options)
    return [json.loads(line) for line in out.getvalue().splitlines() if line.strip()]


class CircleCommandTests(SimpleTestCase):
    def test_residuals(self):
        records = run("circle", "residuals", cutoff=16, nu="i")
        self.assertEqual(len(records), 11)
        for record in records:
            self.assertLess(record["max_residual"], 1e-10)
            self.assertEqual(record["K"], 16)

    def test_xproduct(self):
        (record,) = run("circle", "xproduct", z="i", z_prime="-1", cutoff=16)
        self.assertEqual(sorted(record["residuals"]), ["X11", "X12", "X21", "X22"])
        self.assertFalse(record["agrees"])

    def test_demo_transcendence(self):
        (record,) = run("circle", "demo-transcendence", q="1/2", cutoff=8)
        self.assertFalse(record["invertible"])

    def test_bad_parameter(self):
        with self.assertRaises(CommandError) as ctx:
            run("circle", "residuals", nu="2")
        self.assertEqual(ctx.exception.returncode, 2)
        with self.assertRaises(CommandError) as ctx:
            run("circle", "residuals", nu="north")
        self.assertEqual(ctx.exception.returncode, 2)

    def test_unit_parser(self):
        self.assertEqual(unit("i"), 1j)
        self.assertEqual(unit("-i"), -1j)
        self.assertEqual(unit("0.6+0.8i"), 0.6 + 0.8j)
        self.assertEqual(unit("-1"), -1)
