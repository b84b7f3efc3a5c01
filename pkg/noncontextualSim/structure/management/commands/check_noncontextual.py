from core.commands import HamiltonianCommand
from structure.serializers import CertificateSerializer, StructureSerializer
from structure.services import build_structure, contextuality_certificate


class Command(HamiltonianCommand):
    help = 'Check whether a Hamiltonian\'s terms form a noncontextual set (exit 1 with a certificate if not)'
    subcommand = 'check_noncontextual'

    def run(self, hamiltonian, config, options):
        certificate = contextuality_certificate(hamiltonian.ops)

        if certificate is not None:
            labels = [op.label for op in certificate]
            if self.as_json:
                self.write_error_record(CertificateSerializer({'triple': labels}).data, 'Contextual')
            else:
                a, b, c = labels
                self.write_lines([
                    self.style.ERROR('Contextual'),
                    f'  {a} commutes with {b}',
                    f'  {b} commutes with {c}',
                    f'  {a} anticommutes with {c}',
                ])
            self.negative(f'contextual certificate {labels}')

        structure = build_structure(hamiltonian.ops)
        if self.as_json:
            self.write_record(StructureSerializer(structure).data, 'Noncontextual')
            return
        self.write_lines([
            self.style.SUCCESS('Noncontextual'),
            f'  universal ({len(structure.universal)}): {" ".join(op.label for op in structure.universal)}',
            f'  cliques: {structure.clique_count}',
        ])
        for i, clique in enumerate(structure.cliques):
            self.stdout.write(f'  C{i + 1}: {" ".join(op.label for op in clique)}')
