from fractions import Fraction

from calculus import psido
from console.management.base import Qsu2Command
from Qsu2.exceptions import ConfigurationError

ACTIONS = ('apply', 'compose', 'adjoint', 'symbol-of', 'order', 'key-lemma')


class Command(Qsu2Command):
    help = 'Global pseudo-differential operators: apply a symbol, compose, adjoint, extract, classify'

    def add_command_arguments(self, parser):
        parser.add_argument('action', choices=ACTIONS)
        parser.add_argument('symbol', help='neutral, dirac, dirac-naive, inverse-dirac, mult:EXPR or symbol JSON')
        parser.add_argument('operand', nargs='?', help='expression for apply, second symbol for compose')

    def run(self, config, **options):
        sigma = self.symbol(options['symbol'])
        top = config.max_level if options['level'] is not None else Fraction(1)
        action = options['action']
        operand = options['operand']
        if action in ('apply', 'compose') and operand is None:
            raise ConfigurationError(f"{action} needs a second argument")

        if action == 'apply':
            f = self.element(operand)
            result = psido.apply(sigma, f)
            record = {"action": action, "closed_form_agrees": result == psido.act(sigma, f)}
            record.update(self.element_json(result))
            yield record
        elif action == 'compose':
            beta = self.symbol(operand)
            extracted = psido.compose(sigma, beta, top)
            record = {"action": action, "symbol": extracted.to_json(top)}
            if beta.is_scalar:
                record["blockwise_product_agrees"] = psido.blocks_equal(psido.compose_scalar(sigma, beta), extracted, top)
            elif psido.fourier_order(sigma, top).homogeneous:
                record["principal"] = psido.composition_report(sigma, beta, top, config.point)
            yield record
        elif action == 'adjoint':
            beta = psido.adjoint(sigma, top)
            yield {
                "action": action,
                "symbol": beta.to_json(top),
                "order": psido.fourier_order(beta, top).to_json(),
            }
        elif action == 'symbol-of':
            extracted = psido.symbol_of(psido.PsDOp(sigma), top)
            yield {
                "action": action,
                "symbol": extracted.to_json(top),
                "round_trip": psido.blocks_equal(extracted, sigma, top),
            }
        elif action == 'order':
            yield {"action": action, "order": psido.fourier_order(sigma, top).to_json()}
        else:
            for level in (Fraction(k, 2) for k in range(int(2 * top) + 1)):
                yield psido.key_lemma_report(sigma, level, config.point)
