"""
Shared base for the Qsu2 management commands.

Every command accepts --q, --backend, --level, --cutoff, --seed and
--out, builds a RunConfig from them and emits one JSON object per line.
Engine errors leave through CommandError with the error's exit code.
"""
import json
import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, TextIO

from django.core.management.base import BaseCommand, CommandError

from calculus.symbols import Symbol, dirac_symbol, multiplication_symbol, neutral
from console.config import RunConfig
from console.expressions import parse_expression, unparse
from hopf.algebra import AlgElem
from Qsu2.exceptions import ConfigurationError, Qsu2Error

logger = logging.getLogger(__name__)

NAMED_SYMBOLS = {
    'neutral': neutral,
    'dirac': dirac_symbol,
    'dirac-naive': lambda: dirac_symbol('naive'),
    'inverse-dirac': lambda: dirac_symbol('inverse'),
}


class Qsu2Command(BaseCommand):
    requires_system_checks = []
    requires_migrations_checks = False

    def add_arguments(self, parser):
        parser.add_argument('--q', default=None, help='evaluation point, "p/r" or a float in (0, 1)')
        parser.add_argument('--backend', choices=['exact', 'numeric'], default=None)
        parser.add_argument('--level', default=None, help='level cap L (half-integer)')
        parser.add_argument('--cutoff', type=int, default=None, help='circle frequency cutoff K')
        parser.add_argument('--seed', type=int, default=None)
        parser.add_argument('--out', default=None, help='write JSON lines to this file instead of stdout')
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def run(self, config: RunConfig, **options) -> Iterable[Dict[str, Any]]:
        raise NotImplementedError('subclasses of Qsu2Command must provide a run() method')

    def handle(self, *args, **options):
        try:
            config = RunConfig.from_options(options)
            with self._sink(config) as sink:
                for record in self.run(config, **options):
                    sink.write(json.dumps(record, sort_keys=True, default=str) + '\n')
        except Qsu2Error as exc:
            logger.debug("command failed with %s", type(exc).__name__)
            raise CommandError(str(exc), returncode=exc.exit_code) from exc

    @contextmanager
    def _sink(self, config: RunConfig) -> Iterator[TextIO]:
        if config.out is None:
            yield self.stdout
            return
        try:
            handle = Path(config.out).open('w', encoding='utf-8')
        except OSError as exc:
            raise ConfigurationError(f"cannot write to {config.out}: {exc}") from exc
        with handle:
            yield handle

    # helpers shared by the commands

    def read_source(self, source: str) -> str:
        """An inline argument, or the contents of the file it names."""
        path = Path(source)
        if len(source) < 512 and path.is_file():
            return path.read_text(encoding='utf-8')
        return source

    def element(self, source: str) -> AlgElem:
        return parse_expression(self.read_source(source).strip())

    def element_json(self, elem: AlgElem) -> Dict[str, Any]:
        payload = {"normal_form": str(elem)}
        text = unparse(elem)
        if text is not None:
            payload["expression"] = text
        return payload

    def symbol(self, source: str) -> Symbol:
        """A named symbol (neutral, dirac, dirac-naive, inverse-dirac, mult:EXPR) or symbol JSON."""
        if source in NAMED_SYMBOLS:
            return NAMED_SYMBOLS[source]()
        if source.startswith('mult:'):
            return multiplication_symbol(parse_expression(source[5:].strip()))
        try:
            payload = json.loads(self.read_source(source))
        except ValueError as exc:
            raise ConfigurationError(f"cannot read symbol {source!r}: {exc}") from exc
        return Symbol.from_json(payload, parse=parse_expression)
