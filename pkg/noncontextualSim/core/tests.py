from io import StringIO
from pathlib import Path
import json
import tempfile

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from core.exceptions import EXIT_INPUT_ERROR, EXIT_NEGATIVE, InputError, command_exception_handler
from core.serializers import RunConfigSerializer
from helpers.common import dump_record, error_record, success_record


def run(*args, **options):
    """Run a management command and return its standard output"""
    out = StringIO()
    call_command(*args, stdout=out, stderr=StringIO(), **options)
    return out.getvalue()


def record(output):
    """The last line of a command's output parsed as a JSON record"""
    return json.loads(output.strip().splitlines()[-1])


class RunConfigSerializerTest(SimpleTestCase):
    """Validation of shared command options"""

    def test_defaults(self):
        serializer = RunConfigSerializer(data={'subcommand': 'solve'})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data['input'], '-')
        self.assertEqual(serializer.validated_data['batch'], 1)
        self.assertEqual(serializer.validated_data['format'], 'text')

    def test_rejections(self):
        for data in [
            {'subcommand': 'train'},
            {'subcommand': 'approx', 'batch': 0},
            {'subcommand': 'approx', 'chem_accuracy': -1.0},
            {'subcommand': 'solve', 'exhaustive_threshold': 63},
            {'subcommand': 'solve', 'workers': 0},
            {'subcommand': 'solve', 'seed': -1},
        ]:
            self.assertFalse(RunConfigSerializer(data=data).is_valid(), msg=str(data))


class ExceptionHandlerTest(SimpleTestCase):

    def test_exit_statuses(self):
        self.assertEqual(command_exception_handler(InputError('bad'), {}).returncode, EXIT_INPUT_ERROR)
        negative = CommandError('no', returncode=EXIT_NEGATIVE)
        self.assertIs(command_exception_handler(negative, {}), negative)
        with self.assertLogs('core.exceptions', level='ERROR'):
            self.assertEqual(command_exception_handler(RuntimeError('boom'), {}).returncode, EXIT_INPUT_ERROR)

    def test_records(self):
        self.assertEqual(success_record({'a': 1}, command='solve')['results'], {'data': {'a': 1}})
        self.assertFalse(error_record({'x': ['bad']}, 'Invalid')['status'])
        self.assertEqual(dump_record({'b': 1, 'a': 2}), '{"a": 2, "b": 1}')


class CheckNoncontextualCommandTest(SimpleTestCase):

    def test_contextual_exits_one_with_certificate(self):
        out = StringIO()
        with self.assertRaises(CommandError) as ctx:
            call_command('check_noncontextual', 'heh+_full', stdout=out)
        self.assertEqual(ctx.exception.returncode, EXIT_NEGATIVE)
        self.assertIn('Contextual', out.getvalue())
        self.assertIn('anticommutes with', out.getvalue())

    def test_contextual_json_certificate(self):
        out = StringIO()
        with self.assertRaises(CommandError):
            call_command('check_noncontextual', 'heh+_full', '--format', 'json', stdout=out)
        data = record(out.getvalue())
        self.assertFalse(data['status'])
        self.assertEqual(len(data['errors']['triple']), 3)

    def test_noncontextual_structure(self):
        output = run('check_noncontextual', 'heh+_noncon')
        self.assertIn('Noncontextual', output)
        self.assertIn('C1: IZ ZI', output)
        self.assertIn('C2: XX', output)

    def test_malformed_input_exits_two(self):
        with self.assertRaises(CommandError) as ctx:
            run('check_noncontextual', '-', stdin=StringIO('{"XQ": 1.0}'))
        self.assertEqual(ctx.exception.returncode, EXIT_INPUT_ERROR)
        self.assertIn('position 2', str(ctx.exception))

    def test_unknown_fixture_exits_two(self):
        with self.assertRaises(CommandError) as ctx:
            run('check_noncontextual', 'h2o_full')
        self.assertEqual(ctx.exception.returncode, EXIT_INPUT_ERROR)


class GeneratorsCommandTest(SimpleTestCase):

    def test_text(self):
        output = run('generators', 'lih_hempel_noncon')
        self.assertIn('G (2): ZZI IIZ', output)
        self.assertIn('C (2): IZI XXI', output)
        self.assertIn('|R| = 4', output)
        self.assertIn('YYI = -1 * ZZI*XXI', output)

    def test_json(self):
        data = record(run('generators', 'heh+_noncon', '--format', 'json'))
        self.assertTrue(data['status'])
        self.assertEqual(data['additional_info'], {'command': 'generators'})
        self.assertEqual(len(data['results']['data']['decompositions']), 4)


class ModelCommandTest(SimpleTestCase):

    def test_objective_only(self):
        output = run('model', 'heh+_noncon')
        self.assertIn('constant: -1.46658', output)
        self.assertIn('[ZZ] h_B=0.089735', output)
        self.assertNotIn('energy', output)

    def test_state_and_joint_table(self):
        data = record(run('model', 'heh+_noncon', '--q', '1', '--r', '0.6', '0.8', '--format', 'json'))['results']['data']
        self.assertEqual(len(data['joint']), 4)
        self.assertAlmostEqual(sum(entry['probability'] for entry in data['joint']), 1.0, places=12)
        for entry in data['joint']:
            self.assertEqual(entry['values'][-1], 1)

    def test_wrong_state_size_exits_two(self):
        with self.assertRaises(CommandError) as ctx:
            run('model', 'heh+_noncon', '--q', '1', '-1', '--r', '0.6', '0.8')
        self.assertEqual(ctx.exception.returncode, EXIT_INPUT_ERROR)

    def test_table_size_guard(self):
        err = StringIO()
        call_command('model', 'heh+_noncon', '--q', '1', '--r', '0.6', '0.8', '--max-bits', '2', stdout=StringIO(), stderr=err)
        self.assertIn('Joint distribution skipped', err.getvalue())


class SolveCommandTest(SimpleTestCase):

    def test_text(self):
        output = run('solve', 'heh+_noncon')
        self.assertIn('energy: -2.1802', output)
        self.assertIn('method: exhaustive', output)
        self.assertIn('ZZ: +1', output)

    def test_local_search_is_flagged(self):
        output = run('solve', 'heh+_noncon', '--method', 'local-search')
        self.assertIn('(upper bound)', output)

    def test_json_is_reproducible(self):
        first = run('solve', 'beh2_noncon', '--format', 'json', '--seed', '3')
        second = run('solve', 'beh2_noncon', '--format', 'json', '--seed', '3')
        self.assertEqual(first, second)
        data = record(first)['results']['data']
        self.assertEqual(data['generators'] + data['cliques'], 7)
        self.assertTrue(data['exact'])

    def test_contextual_input_is_rejected(self):
        with self.assertLogs('core.exceptions', level='ERROR'), self.assertRaises(CommandError) as ctx:
            run('solve', 'heh+_full')
        self.assertEqual(ctx.exception.returncode, EXIT_INPUT_ERROR)
        self.assertIn('Contextual', str(ctx.exception))

    def test_bad_threshold_exits_two(self):
        with self.assertRaises(CommandError) as ctx:
            run('solve', 'heh+_noncon', '--threshold', '99')
        self.assertEqual(ctx.exception.returncode, EXIT_INPUT_ERROR)


class VerifyCommandTest(SimpleTestCase):
    """solve --witness-out followed by verify"""

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.witness = str(Path(self.directory.name) / 'witness.json')
        output = run('solve', 'lih_hempel_noncon', '--format', 'json', '--witness-out', self.witness)
        self.energy = record(output)['results']['data']['energy']

    def tearDown(self):
        self.directory.cleanup()

    def test_above_energy_verifies(self):
        output = run('verify', 'lih_hempel_noncon', witness=self.witness, below=self.energy + 1e-6)
        self.assertIn('Verified', output)

    def test_at_energy_fails(self):
        out = StringIO()
        with self.assertRaises(CommandError) as ctx:
            call_command('verify', 'lih_hempel_noncon', witness=self.witness, below=self.energy, stdout=out)
        self.assertEqual(ctx.exception.returncode, EXIT_NEGATIVE)
        self.assertIn('Not verified', out.getvalue())

    def test_witness_for_other_hamiltonian_exits_two(self):
        with self.assertRaises(CommandError) as ctx:
            run('verify', 'heh+_noncon', witness=self.witness, below=0.0)
        self.assertEqual(ctx.exception.returncode, EXIT_INPUT_ERROR)


class OracleCommandTest(SimpleTestCase):

    def test_energy_and_expectations(self):
        data = record(run('oracle', 'heh+_noncon', '--expect', 'ZZ', '--format', 'json'))['results']['data']
        self.assertAlmostEqual(data['energy'], -2.1802929038, places=7)
        self.assertAlmostEqual(data['expectations']['ZZ'], 1.0, places=6)
        self.assertFalse(data['degenerate'])

    def test_label_size_mismatch_exits_two(self):
        with self.assertRaises(CommandError) as ctx:
            run('oracle', 'heh+_noncon', '--expect', 'Z')
        self.assertEqual(ctx.exception.returncode, EXIT_INPUT_ERROR)

    def test_qubit_cap_exits_two(self):
        with self.assertRaises(CommandError) as ctx:
            run('oracle', 'beh2_full', '--max-qubits', '4')
        self.assertEqual(ctx.exception.returncode, EXIT_INPUT_ERROR)


class ApproxCommandTest(SimpleTestCase):

    def test_text_table_and_record(self):
        output = run('approx', 'heh+_full')
        self.assertIn('noncontextual', output)
        data = record(output)['results']['data']
        self.assertEqual(data['noncon_terms'], 5)

    def test_bad_batch_exits_two(self):
        with self.assertRaises(CommandError) as ctx:
            run('approx', 'heh+_full', '--batch', '0')
        self.assertEqual(ctx.exception.returncode, EXIT_INPUT_ERROR)


class ReportCommandTest(SimpleTestCase):

    def test_published_table_reproduced(self):
        output = run('report', '--format', 'json')
        rows = [json.loads(line) for line in output.strip().splitlines()]
        self.assertEqual(len(rows), 4)
        self.assertTrue(all(row['status'] for row in rows))
