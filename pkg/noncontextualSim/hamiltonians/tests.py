from io import StringIO
import json

from django.test import SimpleTestCase

from core.exceptions import HamiltonianFormatError
from hamiltonians.models import Hamiltonian, PauliTerm
from hamiltonians.services import (
    fixture_names, hamiltonian_from_terms, load_expectations, load_fixture, load_hamiltonian,
    read_hamiltonian_source, serialize_hamiltonian,
)
from pauli.services import parse_pauli

SYSTEMS = ('heh+', 'lih_hempel', 'lih_kandala', 'beh2')


class LoadHamiltonianTest(SimpleTestCase):
    """Parsing and validating the JSON label map"""

    def test_diagonal_heh(self):
        """The identity goes to the offset and is not a term"""
        h = load_hamiltonian('{"II": -1.46658, "IZ": -0.39863, "ZI": -0.39863, "ZZ": 0.089735}')
        self.assertEqual(h.n, 2)
        self.assertEqual(h.identity_offset, -1.46658)
        self.assertEqual(len(h.terms), 3)
        self.assertEqual(h.term_count, 4)
        self.assertEqual(h.labels(), ['IZ', 'ZI', 'ZZ'])

    def test_single_term(self):
        h = load_hamiltonian('{"Z": 1.0}')
        self.assertEqual((h.n, len(h.terms), h.identity_offset), (1, 1, 0.0))
        self.assertFalse(h.has_identity_term)

    def test_length_mismatch(self):
        with self.assertRaises(HamiltonianFormatError):
            load_hamiltonian('{"IZ": 1.0, "ZZI": 1.0}')

    def test_duplicate_key(self):
        with self.assertRaises(HamiltonianFormatError) as ctx:
            load_hamiltonian('{"ZZ": 1.0, "ZZ": 2.0}')
        self.assertIn('duplicate', str(ctx.exception))

    def test_bad_label(self):
        with self.assertRaises(HamiltonianFormatError) as ctx:
            load_hamiltonian('{"XQ": 1.0}')
        self.assertIn('position 2', str(ctx.exception))

    def test_non_numeric_and_non_finite(self):
        for text in ['{"X": "1.0"}', '{"X": true}', '{"X": NaN}', '{"X": Infinity}', '{"X": null}']:
            with self.assertRaises(HamiltonianFormatError, msg=text):
                load_hamiltonian(text)

    def test_integer_too_large_for_float(self):
        with self.assertRaises(HamiltonianFormatError):
            load_hamiltonian('{"Z": ' + '9' * 400 + '}')

    def test_malformed_syntax(self):
        for text in ['{"X": 1.0', '[["X", 1.0]]', '']:
            with self.assertRaises(HamiltonianFormatError, msg=text):
                load_hamiltonian(text)

    def test_empty(self):
        h = load_hamiltonian('{}')
        self.assertEqual((h.n, len(h.terms), h.identity_offset), (0, 0, 0.0))
        self.assertEqual(serialize_hamiltonian(h), '{}')

    def test_zero_coefficient_kept_with_warning(self):
        with self.assertLogs('hamiltonians.services', level='WARNING') as logs:
            h = load_hamiltonian('{"XX": 0.0, "ZZ": 1.0}')
        self.assertEqual(h.zero_terms, ['XX'])
        self.assertIn('XX', logs.output[0])

    def test_stream_input(self):
        h = load_hamiltonian(StringIO('{"X": 0.5}'))
        self.assertEqual(h.coefficient('X'), 0.5)


class HamiltonianModelTest(SimpleTestCase):
    """Invariants of the Hamiltonian value type"""

    def test_identity_term_rejected(self):
        with self.assertRaises(HamiltonianFormatError):
            Hamiltonian(n=2, terms=(PauliTerm(parse_pauli('II'), 1.0),))

    def test_duplicate_term_rejected(self):
        term = PauliTerm(parse_pauli('XX'), 1.0)
        with self.assertRaises(HamiltonianFormatError):
            Hamiltonian(n=2, terms=(term, term))

    def test_coefficient_lookup(self):
        h = hamiltonian_from_terms([('II', -1.0), ('XZ', 0.25)])
        self.assertEqual(h.coefficient('XZ'), 0.25)
        self.assertEqual(h.coefficient('II'), -1.0)
        self.assertEqual(h.coefficient('ZZ'), 0.0)
        self.assertIn('XZ', h)

    def test_subset_keeps_order_and_offset(self):
        h = load_fixture('heh+_full')
        sub = h.subset(['XX', 'IZ'])
        self.assertEqual(sub.labels(), ['IZ', 'XX'])
        self.assertEqual(sub.identity_offset, h.identity_offset)
        self.assertEqual(sub.term_count, 3)
        with self.assertRaises(HamiltonianFormatError):
            h.subset(['YY'])

    def test_digest_tracks_content(self):
        a = load_hamiltonian('{"X": 1.0, "Z": 2.0}')
        b = load_hamiltonian('{"X": 1.0, "Z": 2.0}')
        c = load_hamiltonian('{"X": 1.0, "Z": 2.5}')
        self.assertEqual(a.digest, b.digest)
        self.assertNotEqual(a.digest, c.digest)


class SerializeTest(SimpleTestCase):
    """serialize_hamiltonian inverts load_hamiltonian"""

    def test_heh_noncon_map(self):
        text = serialize_hamiltonian(load_fixture('heh+_noncon'))
        self.assertEqual(json.loads(text), {
            'II': -1.46658, 'IZ': -0.39863, 'ZI': -0.39863, 'ZZ': 0.089735, 'XX': 0.099524,
        })

    def test_fixture_round_trips(self):
        """Every bundled Hamiltonian reloads to the same terms, order and offset"""
        for name in fixture_names():
            h = load_fixture(name)
            again = load_hamiltonian(serialize_hamiltonian(h))
            self.assertEqual(again, h, msg=name)
            self.assertEqual(list(again.as_mapping().items()), list(h.as_mapping().items()), msg=name)

    def test_float_repr_round_trip(self):
        h = hamiltonian_from_terms([('XY', 0.1 + 0.2), ('ZZ', -1e-300)])
        self.assertEqual(load_hamiltonian(serialize_hamiltonian(h)).as_mapping(), h.as_mapping())


class FixtureTest(SimpleTestCase):
    """Bundled Hamiltonians match the published term counts"""

    def setUp(self):
        self.expected = load_expectations()

    def test_term_counts(self):
        for system in SYSTEMS:
            row = self.expected[system]
            full = load_fixture(f'{system}_full')
            noncon = load_fixture(f'{system}_noncon')
            self.assertEqual(full.n, row['qubits'], msg=system)
            self.assertEqual(full.term_count, row['full_terms'], msg=system)
            self.assertEqual(noncon.term_count, row['noncon_terms'], msg=system)

    def test_noncon_is_subset_of_full(self):
        for system in SYSTEMS:
            full = load_fixture(f'{system}_full').as_mapping()
            for label, value in load_fixture(f'{system}_noncon').as_mapping().items():
                self.assertEqual(full[label], value, msg=f'{system} {label}')

    def test_fixture_name_forms(self):
        """Bare names, a fixtures/ prefix and a .json suffix all resolve"""
        for name in ['heh+_noncon', 'fixtures/heh+_noncon', 'heh+_noncon.json']:
            self.assertEqual(load_fixture(name).term_count, 5)
        with self.assertRaises(HamiltonianFormatError):
            load_fixture('expected')
        with self.assertRaises(HamiltonianFormatError):
            load_fixture('h2o_full')

    def test_read_source_from_stdin(self):
        h = read_hamiltonian_source('-', stdin=StringIO('{"ZZ": 1.0}'))
        self.assertEqual(h.labels(), ['ZZ'])
