from console.management.base import Qsu2Command
from hopf import algebra


class Command(Qsu2Command):
    help = 'Normal form and Haar value of an expression'

    def add_command_arguments(self, parser):
        parser.add_argument('expression', help="expression such as \"c*c'\", or a file containing one")

    def run(self, config, **options):
        elem = self.element(options['expression'])
        record = {"expr": options['expression'], "q": config.q, "haar": config.render(algebra.haar(elem))}
        record.update(self.element_json(elem))
        yield record
