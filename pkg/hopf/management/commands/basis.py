import csv
import logging
from pathlib import Path

from console.management.base import Qsu2Command
from hopf import corep
from hopf.scalars import levels
from Qsu2.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("l", "i", "j", "raw", "radicand", "gram")


class Command(Qsu2Command):
    help = 'Corepresentation matrices T^l with Gram data, up to --level'

    def add_command_arguments(self, parser):
        parser.add_argument('--check', action='store_true', help='also verify the corepresentation identity exactly')
        parser.add_argument('--csv', default=None, help='also dump the matrix entries to this CSV file')

    def run(self, config, **options):
        records = list(self._records(config, options['check']))
        if options['csv']:
            self._dump(options['csv'], records)
        yield from records

    def _records(self, config, check):
        for level in levels(config.max_level):
            matrix = corep.corep(level)
            record = {
                "l": str(level),
                "schur_exponent": matrix.schur_exponent,
                "ratios": [str(r) for r in matrix.ratios],
                "entries": [
                    {
                        "i": str(i),
                        "j": str(j),
                        "raw": str(matrix.entry(i, j)),
                        "radicand": str(matrix.ratio(i) / matrix.ratio(j)),
                        "gram": str(matrix.gram_value(i, j)),
                    }
                    for i in matrix.weights
                    for j in matrix.weights
                ],
                "counit_ok": corep.check_counit(matrix),
            }
            if 0 < config.point < 1:
                record["unitarity_residual"] = corep.unitarity_residuals(matrix, config.point)
            if check:
                record["corep_identity_ok"] = corep.check_corep_identity(matrix)
            logger.debug("emitted level %s", level)
            yield record

    def _dump(self, path, records):
        try:
            with Path(path).open('w', newline='', encoding='utf-8') as handle:
                writer = csv.DictWriter(handle, fieldnames=CSV_COLUMNS)
                writer.writeheader()
                for record in records:
                    for entry in record["entries"]:
                        writer.writerow({"l": record["l"], **entry})
        except OSError as exc:
            raise ConfigurationError(f"cannot write to {path}: {exc}") from exc
        logger.info("wrote %s", path)
