from pathlib import Path

from core.commands import HamiltonianCommand
from core.exceptions import DistributionSizeError
from epistemic.models import EpistemicState
from epistemic.serializers import EpistemicStateSerializer, ObjectiveSerializer
from epistemic.services import compile_objective, evaluate_objective, joint_distribution, parse_state
from generators.services import generators_for
from solver.services import load_witness


class Command(HamiltonianCommand):
    help = 'Dump the compiled objective and, for a given (q, r), its energy and joint distribution'
    subcommand = 'model'

    def add_command_arguments(self, parser):
        parser.add_argument('--q', nargs='+', type=int, help='Generator values in objective order')
        parser.add_argument('--r', nargs='+', type=float, help='Clique representative expectations in objective order')
        parser.add_argument('--witness', help='Witness JSON file as written by solve --witness-out')
        parser.add_argument('--max-bits', type=int, default=None, help='Joint table size guard (default NCSIM_JOINT_TABLE_MAX_BITS)')

    def _state(self, objective, options):
        if options.get('witness'):
            q_map, r_map = load_witness(Path(options['witness']).read_text(encoding='utf-8'))
            return parse_state(objective, q_map, r_map)
        if options.get('q') is None and options.get('r') is None:
            return None
        return EpistemicState.from_values(options.get('q') or (), options.get('r') or ())

    def run(self, hamiltonian, config, options):
        _, generator_set, decompositions = generators_for(hamiltonian)
        objective = compile_objective(hamiltonian, generator_set, decompositions)
        state = self._state(objective, options)

        data = {'objective': ObjectiveSerializer(objective).data}
        table = None
        if state is not None:
            data['state'] = EpistemicStateSerializer(state).data
            data['energy'] = evaluate_objective(objective, state)
            try:
                table = joint_distribution(state, generator_set, max_bits=options.get('max_bits'))
            except DistributionSizeError as exc:
                self.stderr.write(f'Joint distribution skipped: {exc}')
            else:
                data['joint'] = [
                    {'values': list(assignment), 'probability': probability}
                    for assignment, probability in table.items() if probability > 0
                ]

        if self.as_json:
            self.write_record(data)
            return

        self.write_lines([
            f'generators: {" ".join(objective.generator_labels)}',
            f'representatives: {" ".join(objective.representative_labels)}',
            f'constant: {objective.constant!r}',
        ])
        for term in objective.terms:
            subset = '*'.join(objective.generator_labels[j] for j in term.generator_indices) or 'I'
            self.stdout.write(f'  [{subset}] h_B={term.h_b!r} h_Bi={list(term.h_bi)!r}')
        if state is None:
            return
        self.stdout.write(f'energy: {data["energy"]!r}')
        if table is not None:
            self.stdout.write(f'joint distribution over ({", ".join(objective.representative_labels + objective.generator_labels)}):')
            for entry in data['joint']:
                values = ' '.join('+1' if value == 1 else '-1' for value in entry['values'])
                self.stdout.write(f'  {values}: {entry["probability"]!r}')
