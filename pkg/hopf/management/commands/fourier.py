import json
from fractions import Fraction

from console.management.base import Qsu2Command
from hopf import fourier
from hopf.corep import PrefixedElem
from Qsu2.exceptions import ConfigurationError


class Command(Qsu2Command):
    help = 'q-Fourier transform of an expression, or its inverse from a coefficient file'

    def add_command_arguments(self, parser):
        parser.add_argument('source', help='expression (or file containing one); with --inverse, a JSON file')
        parser.add_argument('--inverse', action='store_true')

    def run(self, config, **options):
        if options['inverse']:
            yield self.run_inverse(config, options['source'])
            return
        elem = self.element(options['source'])
        top = Fraction(elem.degree, 2) if options["level"] is None else config.max_level
        coeffs = fourier.transform(elem, top)
        record = {
            "expr": options['source'],
            "coefficients": coeffs.to_json(),
            "levels": [str(level) for level in fourier.levels_of(coeffs)],
            "round_trip": fourier.inverse(coeffs) == elem,
        }
        record.update(self.element_json(elem))
        yield record

    def run_inverse(self, config, source):
        try:
            payload = json.loads(self.read_source(source))
        except ValueError as exc:
            raise ConfigurationError(f"--inverse expects Fourier coefficients as JSON: {exc}") from exc
        if "coefficients" in payload:
            payload = payload["coefficients"]
        result = fourier.inverse(fourier.FourierCoeffs.from_json(payload))
        if isinstance(result, PrefixedElem):
            record = self.element_json(result.element)
            record["radicand"] = str(result.radicand)
            return record
        return self.element_json(result)
