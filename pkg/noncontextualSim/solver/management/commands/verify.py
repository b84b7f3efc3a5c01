from pathlib import Path

from core.commands import HamiltonianCommand
from epistemic.services import compile_objective, evaluate_objective, parse_state
from generators.services import generators_for
from solver.services import load_witness, verify_witness


class Command(HamiltonianCommand):
    help = 'Check that a witness state has energy strictly below a threshold (exit 1 if not)'
    subcommand = 'verify'

    def add_command_arguments(self, parser):
        parser.add_argument('--witness', required=True, help='Witness JSON file')
        parser.add_argument('--below', type=float, required=True, help='Energy threshold a')

    def run(self, hamiltonian, config, options):
        _, generator_set, decompositions = generators_for(hamiltonian)
        objective = compile_objective(hamiltonian, generator_set, decompositions)
        q_map, r_map = load_witness(Path(options['witness']).read_text(encoding='utf-8'))
        state = parse_state(objective, q_map, r_map)

        energy = evaluate_objective(objective, state)
        threshold = options['below']
        verified = verify_witness(objective, state, threshold)

        data = {'energy': energy, 'threshold': threshold, 'verified': verified}
        if self.as_json:
            if verified:
                self.write_record(data, 'Verified')
            else:
                self.write_error_record(data, 'Not verified')
        elif verified:
            self.stdout.write(self.style.SUCCESS(f'Verified: {energy!r} < {threshold!r}'))
        else:
            self.stdout.write(self.style.ERROR(f'Not verified: {energy!r} >= {threshold!r}'))

        if not verified:
            self.negative(f'witness energy {energy!r} is not below {threshold!r}')
