"""
Shared base for the simulator's management commands
"""
import logging

from django.core.management.base import BaseCommand, CommandError

from core.exceptions import EXIT_NEGATIVE, RunConfigError, command_exception_handler
from core.serializers import RunConfigSerializer
from helpers.common import dump_record, error_record, success_record
from hamiltonians.services import read_hamiltonian_source

logger = logging.getLogger(__name__)


class HamiltonianCommand(BaseCommand):
    """
    Reads a Hamiltonian, validates the run options and renders the result

    Subclasses set ``subcommand`` and implement ``run(hamiltonian, config,
    options)``. Output is either text or one JSON record per line. Domain
    negatives call ``negative()`` after their output is written.
    """
    subcommand = None
    takes_input = True
    requires_system_checks = []
    stealth_options = ('stdin',)

    def add_arguments(self, parser):
        if self.takes_input:
            parser.add_argument(
                'input',
                help='Hamiltonian JSON file, "-" for standard input, or a bundled fixture name',
            )
        parser.add_argument('--format', choices=['text', 'json'], default='text', help='Output format')
        parser.add_argument('--seed', type=int, default=None, help='Random seed (default NCSIM_SEED)')
        parser.add_argument('--workers', type=int, default=None, help='Thread count (default NCSIM_WORKERS)')
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def validate_config(self, options):
        serializer = RunConfigSerializer(data={
            'subcommand': self.subcommand,
            'input': options.get('input') or '-',
            'seed': options.get('seed'),
            'exhaustive_threshold': options.get('threshold'),
            'chem_accuracy': options.get('chem_accuracy'),
            'batch': 1 if options.get('batch') is None else options['batch'],
            'format': options.get('format') or 'text',
            'workers': options.get('workers'),
        })
        if not serializer.is_valid():
            field, errors = next(iter(serializer.errors.items()))
            raise RunConfigError(field, str(errors[0]))
        return serializer.validated_data

    def handle(self, *args, **options):
        context = {'command': self.subcommand, 'input': options.get('input', 'N/A')}
        try:
            self.config = self.validate_config(options)
            hamiltonian = None
            if self.takes_input:
                hamiltonian = read_hamiltonian_source(self.config['input'], stdin=options.get('stdin'))
            self.run(hamiltonian, self.config, options)
        except Exception as exc:
            raise command_exception_handler(exc, context)

    def run(self, hamiltonian, config, options):
        raise NotImplementedError('subclasses of HamiltonianCommand must provide a run() method')

    @property
    def as_json(self):
        return self.config['format'] == 'json'

    def write_lines(self, lines):
        for line in lines:
            self.stdout.write(line)

    def write_record(self, data, message='Success', **kwargs):
        self.stdout.write(dump_record(success_record(data, message, command=self.subcommand, **kwargs)))

    def write_error_record(self, errors, message, **kwargs):
        self.stdout.write(dump_record(error_record(errors, message, command=self.subcommand, **kwargs)))

    def negative(self, message):
        logger.info(f"{self.subcommand}: {message}")
        raise CommandError(message, returncode=EXIT_NEGATIVE)
