from fractions import Fraction

from circle import representation
from console.management.base import Qsu2Command
from Qsu2.exceptions import ConfigurationError


def unit(text):
    """'1', '-1', 'i', '-i', '0.6+0.8i' or '0.6+0.8j'."""
    text = text.strip().replace(' ', '')
    named = {'i': 1j, '+i': 1j, '-i': -1j}
    if text in named:
        return named[text]
    try:
        return complex(text.replace('i', 'j'))
    except ValueError:
        raise ConfigurationError(f"cannot read {text!r} as a complex number") from None


class Command(Qsu2Command):
    help = "Woronowicz's representation as periodic pseudo-differential operators on the circle"

    def add_command_arguments(self, parser):
        parser.add_argument('action', choices=['residuals', 'xproduct', 'demo-transcendence'])
        parser.add_argument('--nu', default='1', help='unit parameter of the c-symbol')
        parser.add_argument('--z', default='1')
        parser.add_argument('--z-prime', dest='z_prime', default='1')
        parser.add_argument('--phase', choices=representation.PHASES, default='corrected')
        parser.add_argument('--coeffs', default='-1/2,1', help='P = r0 + r1 x + ... for demo-transcendence')

    def run(self, config, **options):
        action = options['action']
        if action == 'residuals':
            nu = unit(options['nu'])
            yield from representation.woronowicz_residuals(config.point, nu, config.cutoff, options['phase'])
            yield from representation.relation_residuals(config.point, nu, config.cutoff, options['phase'])
        elif action == 'xproduct':
            yield representation.su_matrix_product(
                unit(options['z']), unit(options['z_prime']), config.point, config.cutoff,
            )
        else:
            try:
                coeffs = [Fraction(r.strip()) for r in options['coeffs'].split(',')]
            except (ValueError, ZeroDivisionError):
                raise ConfigurationError(f"cannot read coefficients {options['coeffs']!r}") from None
            yield representation.transcendence_demo(coeffs, config.point, unit(options['nu']), config.cutoff)
