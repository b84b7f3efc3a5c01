from core.commands import HamiltonianCommand
from generators.serializers import GeneratorSetSerializer, TermDecompositionSerializer
from generators.services import generators_for


class Command(HamiltonianCommand):
    help = 'Print the generator set R = G ∪ {C_i1} and every term\'s decomposition over it'
    subcommand = 'generators'

    def run(self, hamiltonian, config, options):
        _, generator_set, decompositions = generators_for(hamiltonian)
        rows = [
            {'label': term.label, 'decomposition': decompositions[term.label], 'generator_set': generator_set}
            for term in hamiltonian.terms
        ]

        if self.as_json:
            self.write_record({
                'generator_set': GeneratorSetSerializer(generator_set).data,
                'decompositions': TermDecompositionSerializer(rows, many=True).data,
            })
            return

        self.write_lines([
            f'G ({generator_set.generator_count}): {" ".join(generator_set.generator_labels())}',
            f'C ({generator_set.clique_count}): {" ".join(generator_set.representative_labels())}',
            f'|R| = {generator_set.size}',
        ])
        for row in rows:
            expression = row['decomposition'].describe(generator_set.generators, generator_set.representatives)
            self.stdout.write(f'  {row["label"]} = {expression}')
