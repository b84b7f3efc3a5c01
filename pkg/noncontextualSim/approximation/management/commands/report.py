from approximation.serializers import TableRowSerializer
from approximation.services import ORDER_MAGNITUDE, ORDER_TABLE, table_rows
from core.commands import HamiltonianCommand


class Command(HamiltonianCommand):
    help = 'Run the greedy approximation over every bundled system and compare with the published table'
    subcommand = 'report'
    takes_input = False

    def add_command_arguments(self, parser):
        parser.add_argument('--batch', type=int, default=1, help='Greedy window size k')
        parser.add_argument('--chem-accuracy', type=float, default=None, help='Error unit in Hartree (default 0.0016)')
        parser.add_argument('--order', choices=[ORDER_MAGNITUDE, ORDER_TABLE], default=ORDER_MAGNITUDE)

    def run(self, hamiltonian, config, options):
        rows = table_rows(
            chem_accuracy=config['chem_accuracy'],
            batch=config['batch'],
            order=options['order'],
            workers=config['workers'],
            seed=config['seed'],
        )
        matched = all(row['sizes_match'] and row['eps_noncon_match'] and row['eps_diag_match'] for row in rows)

        if self.as_json:
            for row in rows:
                self.write_record(TableRowSerializer(row).data, row['label'])
        else:
            self.stdout.write(
                f'{"system":<12}{"n":>3}{"|S_full|":>10}{"|S_noncon|":>12}{"|R|":>5}'
                f'{"eps_noncon":>20}{"eps_diag":>20}'
            )
            for row in rows:
                report, published = row['report'], row['published']
                full, noncon, generators = report.sizes
                self.stdout.write(
                    f'{row["system"]:<12}{row["qubits"]:>3}'
                    f'{full:>10}{noncon:>12}{generators:>5}'
                    f'{report.eps_noncon:>12.3f} ({published["eps_noncon"]:>5})'
                    f'{report.eps_diag:>12.3f} ({published["eps_diag"]:>5})'
                    f'{"" if row["sizes_match"] and row["eps_noncon_match"] and row["eps_diag_match"] else "  MISMATCH"}'
                )
            self.stdout.write('published values in parentheses; errors in units of chemical accuracy')

        if not matched:
            self.negative('computed table differs from the published values')
