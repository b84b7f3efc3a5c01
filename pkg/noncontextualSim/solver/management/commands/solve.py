from pathlib import Path

from core.commands import HamiltonianCommand
from solver.models import EXHAUSTIVE, LOCAL_SEARCH
from solver.serializers import GroundResultSerializer
from solver.services import solve_hamiltonian, witness_document


class Command(HamiltonianCommand):
    help = 'Minimize the noncontextual objective: ground energy, witness, method and evaluation count'
    subcommand = 'solve'

    def add_command_arguments(self, parser):
        parser.add_argument('--method', choices=['auto', EXHAUSTIVE, LOCAL_SEARCH], default='auto')
        parser.add_argument('--threshold', type=int, default=None, help='Exhaustive search up to this many generators')
        parser.add_argument('--restarts', type=int, default=None, help='Local-search restarts')
        parser.add_argument('--witness-out', help='Write the witness as JSON to this file')

    def run(self, hamiltonian, config, options):
        solution = solve_hamiltonian(
            hamiltonian,
            method=options['method'],
            threshold=config['exhaustive_threshold'],
            restarts=options.get('restarts'),
            seed=config['seed'],
            workers=config['workers'],
        )
        if options.get('witness_out'):
            Path(options['witness_out']).write_text(witness_document(solution), encoding='utf-8')

        if self.as_json:
            self.write_record(GroundResultSerializer(solution).data)
            return

        result = solution.result
        q, r = solution.witness_maps()
        self.write_lines([
            f'energy: {result.energy!r}',
            f'method: {result.method}' + ('' if result.is_exact else ' (upper bound)'),
            f'q evaluations: {result.q_evaluations}',
            'q:',
        ])
        for label, value in q.items():
            self.stdout.write(f'  {label}: {value:+d}')
        self.stdout.write('r:')
        for label, value in r.items():
            self.stdout.write(f'  {label}: {value!r}')
