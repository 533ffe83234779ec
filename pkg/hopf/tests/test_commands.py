import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase


def run(*args, **options):
    out = StringIO()
    call_command(*args, stdout=out, **options)
    return [json.loads(line) for line in out.getvalue().splitlines() if line.strip()]


class HaarCommandTests(SimpleTestCase):
    def test_haar_of_c_c_star(self):
        (record,) = run("haar", "c*c'", q="1/2")
        self.assertEqual(record["haar"]["at_q"], "4/5")
        self.assertAlmostEqual(record["haar"]["numeric"]["re"], 0.8)
        self.assertEqual(record["expr"], "c*c'")

    def test_numeric_backend(self):
        (record,) = run("haar", "a*a'", q="0.5", backend="numeric")
        self.assertAlmostEqual(record["haar"]["numeric"]["re"], 0.8)
        self.assertNotIn("exact", record["haar"])

    def test_syntax_error_exit_code(self):
        with self.assertRaises(CommandError) as ctx:
            run("haar", "a + * c")
        self.assertEqual(ctx.exception.returncode, 2)

    def test_numeric_backend_rejects_q_outside_unit_interval(self):
        with self.assertRaises(CommandError) as ctx:
            run("haar", "a", q="2", backend="numeric")
        self.assertEqual(ctx.exception.returncode, 2)

    def test_output_file(self):
        with tempfile.TemporaryDirectory() as directory:
            target = Path(directory) / "haar.jsonl"
            self.assertEqual(run("haar", "1", out=str(target)), [])
            record = json.loads(target.read_text().strip())
            self.assertEqual(record["haar"]["at_q"], "1")


class FourierCommandTests(SimpleTestCase):
    def test_forward_then_inverse(self):
        (record,) = run("fourier", "a")
        self.assertTrue(record["round_trip"])
        self.assertEqual(record["levels"], ["1/2"])
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "coeffs.json"
            path.write_text(json.dumps(record))
            (back,) = run("fourier", str(path), inverse=True)
        self.assertEqual(back["expression"], "a")

    def test_inverse_rejects_garbage(self):
        with self.assertRaises(CommandError) as ctx:
            run("fourier", "{not json", inverse=True)
        self.assertEqual(ctx.exception.returncode, 2)


class BasisCommandTests(SimpleTestCase):
    def test_levels_up_to_one(self):
        records = run("basis", level="1", check=True)
        self.assertEqual([r["l"] for r in records], ["0", "1/2", "1"])
        for record in records:
            self.assertTrue(record["counit_ok"])
            self.assertTrue(record["corep_identity_ok"])
            self.assertLess(record["unitarity_residual"]["columns"], 1e-10)
        self.assertEqual(len(records[-1]["entries"]), 9)
        self.assertEqual(records[-1]["schur_exponent"], 2)

    def test_csv_dump(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "basis.csv"
            records = run("basis", level="1/2", csv=str(path))
            rows = path.read_text(encoding="utf-8").splitlines()
        self.assertEqual(len(records), 2)
        self.assertEqual(rows[0], "l,i,j,raw,radicand,gram")
        self.assertEqual(len(rows), 1 + 1 + 4)
