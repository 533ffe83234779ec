from console import checks
from console.management.base import Qsu2Command
from Qsu2.exceptions import CheckFailed


class Command(Qsu2Command):
    help = 'Run the acceptance suite; one JSON line per check, exit 1 if any check fails'

    def add_command_arguments(self, parser):
        parser.add_argument('--quick', action='store_true', help='smaller random samples and truncations')
        parser.add_argument('--only', type=int, action='append', default=[], help='run only this check (repeatable)')

    def run(self, config, **options):
        failed = []
        for record in checks.run_checks(config.point, config.seed, options['quick'], options['only']):
            if not record.get('variant') and not record['passed']:
                failed.append(record['check'])
            yield record
        if failed:
            raise CheckFailed(f"checks failed: {', '.join(str(n) for n in failed)}")
