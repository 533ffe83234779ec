from fractions import Fraction

from calculus import spectral
from console.management.base import Qsu2Command
from hopf.scalars import half
from Qsu2.exceptions import ConfigurationError


class Command(Qsu2Command):
    help = 'Finite rank, compactness bound, row-sum eigenvalues and Fredholm index of symbols'

    def add_command_arguments(self, parser):
        parser.add_argument('action', choices=['rank', 'compactness', 'eigs', 'index'])
        parser.add_argument('symbol', nargs='?', help='named symbol or symbol JSON; not used by index')
        parser.add_argument('--N', dest='switch', default='1', help='switch level N of the index symbol')
        parser.add_argument('--m', dest='order', default='1', help='order m of the index symbol')
        parser.add_argument('--L', dest='truncation', default=None, help='index truncation level (default N+m+2)')
        parser.add_argument('--n', dest='window', default='2', help='compactness cut: levels l > n')
        parser.add_argument('--trials', type=int, default=50)
        parser.add_argument('--l', dest='block', default='1', help='level of the row-sum test')
        parser.add_argument('--row', default=None, help='row index i of the row-sum test (default all)')
        parser.add_argument('--at-q', action='store_true', help='ranks over Q at --q instead of Q(q)')

    def run(self, config, **options):
        action = options['action']
        at = config.point if options['at_q'] else None
        if action == 'index':
            report = spectral.fredholm_index(
                half(options['switch']),
                half(options['order']),
                options['truncation'],
                at=at,
            )
            yield report.to_json()
            return
        if options['symbol'] is None:
            raise ConfigurationError(f"{action} needs a symbol")
        sigma = self.symbol(options['symbol'])
        if action == 'rank':
            top = config.max_level if options['level'] is not None else Fraction(1)
            rank, dropped = spectral.truncated_rank(sigma, top, at)
            rank_next, dropped_next = spectral.truncated_rank(sigma, top + Fraction(1, 2), at)
            yield {
                "L": str(top),
                "rank": rank,
                "rank_next": rank_next,
                "stable": rank == rank_next,
                "dropped": dropped or dropped_next,
            }
        elif action == 'compactness':
            report = spectral.compactness_gap(
                sigma, half(options['window']), config.max_level, config.q_float,
                trials=options['trials'], seed=config.seed,
            )
            yield report.to_json()
        else:
            report = spectral.row_sum_eigencheck(
                sigma, half(options['block']), options['row'], q0=config.point,
            )
            yield report.to_json()
