from approximation.serializers import ApproximationReportSerializer
from approximation.services import ORDER_MAGNITUDE, ORDER_TABLE, approximation_report
from core.commands import HamiltonianCommand
from helpers.common import dump_record, success_record


class Command(HamiltonianCommand):
    help = 'Approximate a contextual Hamiltonian by a noncontextual sub-Hamiltonian and report the errors'
    subcommand = 'approx'

    def add_command_arguments(self, parser):
        parser.add_argument('--batch', type=int, default=1, help='Greedy window size k')
        parser.add_argument('--brute-force', action='store_true', help='Search all subsets (small Hamiltonians only)')
        parser.add_argument('--chem-accuracy', type=float, default=None, help='Error unit in Hartree (default 0.0016)')
        parser.add_argument('--order', choices=[ORDER_MAGNITUDE, ORDER_TABLE], default=ORDER_MAGNITUDE)
        parser.add_argument('--max-qubits', type=int, default=None, help='Exact oracle qubit cap')

    def run(self, hamiltonian, config, options):
        report = approximation_report(
            hamiltonian,
            chem_accuracy=config['chem_accuracy'],
            batch=config['batch'],
            order=options['order'],
            brute_force=options['brute_force'],
            workers=config['workers'],
            seed=config['seed'],
            max_qubits=options.get('max_qubits'),
        )
        record = dump_record(success_record(
            ApproximationReportSerializer(report).data, command=self.subcommand
        ))
        if self.as_json:
            self.stdout.write(record)
            return

        full, noncon, generators = report.sizes
        self.write_lines([
            f'{"":14}{"energy":>22}{"error":>12}{"terms":>8}',
            f'{"full":14}{report.full_ground:>22.12f}{"":>12}{full:>8}',
            f'{"noncontextual":14}{report.noncon_ground:>22.12f}{report.eps_noncon:>12.4f}{noncon:>8}',
            f'{"diagonal":14}{report.diag_ground:>22.12f}{report.eps_diag:>12.4f}{"":>8}',
            f'|R| = {generators}; errors in units of {report.chem_accuracy!r} Ha ({report.method})',
            record,
        ])
