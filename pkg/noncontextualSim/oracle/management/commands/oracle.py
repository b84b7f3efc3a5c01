import math

from core.commands import HamiltonianCommand
from core.exceptions import DimensionMismatchError
from oracle.serializers import OracleResultSerializer
from oracle.services import expectation, ground_state
from pauli.services import parse_pauli


class Command(HamiltonianCommand):
    help = 'Exact ground energy by dense diagonalization, with optional Pauli expectations'
    subcommand = 'oracle'

    def add_command_arguments(self, parser):
        parser.add_argument('--expect', nargs='+', default=[], metavar='LABEL', help='Pauli labels to evaluate on the ground state')
        parser.add_argument('--max-qubits', type=int, default=None, help='Qubit cap (default NCSIM_ORACLE_MAX_QUBITS)')

    def run(self, hamiltonian, config, options):
        ops = [parse_pauli(label) for label in options['expect']]
        for op in ops:
            if op.n != hamiltonian.n:
                raise DimensionMismatchError(hamiltonian.n, op.n, message=f"{op.label} acts on {op.n} qubits, the Hamiltonian on {hamiltonian.n}")

        state = ground_state(hamiltonian, max_qubits=options.get('max_qubits'))
        expectations = {op.label: expectation(state.vector, op) for op in ops}
        if ops and state.is_degenerate:
            self.stderr.write('Ground space is degenerate; expectations depend on the chosen eigenvector')

        gap = None if math.isinf(state.gap) else state.gap
        if self.as_json:
            self.write_record(OracleResultSerializer({
                'energy': state.energy,
                'gap': gap,
                'degenerate': state.is_degenerate,
                'expectations': expectations,
            }).data)
            return

        self.write_lines([f'ground energy: {state.energy!r}', f'gap: {gap!r}'])
        for label, value in expectations.items():
            self.stdout.write(f'  <{label}> = {value!r}')
