from django.test import SimpleTestCase
import numpy as np

from core.exceptions import ContractViolationError
from generators.gf2 import gf2_rank, gf2_rref, gf2_solve
from generators.models import GeneratorSet, TermDecomposition
from generators.services import (
    build_gprime, build_R, generators_for, reconstruct, reduce_to_independent, validate_generator_set,
    verify_independent,
)
from hamiltonians.services import load_expectations, load_fixture
from pauli.models import Phase
from pauli.services import commutes, multiply_all, parse_pauli
from structure.services import build_structure, closure_under_inference, random_noncontextual_instance

SYSTEMS = ('heh+', 'lih_hempel', 'lih_kandala', 'beh2')


def signed(*labels):
    return [(Phase(), parse_pauli(label)) for label in labels]


def labels_of(ops):
    return [op.label for op in ops]


class GF2Test(SimpleTestCase):
    """Row reduction over GF(2)"""

    def test_rank(self):
        self.assertEqual(gf2_rank(np.array([[1, 0, 1], [0, 1, 1], [1, 1, 0]])), 2)
        self.assertEqual(gf2_rank(np.zeros((0, 4), dtype=np.uint8)), 0)

    def test_rref_pivots(self):
        rref, pivots = gf2_rref(np.array([[0, 1, 1], [1, 1, 0]]))
        self.assertEqual(pivots, [0, 1])
        np.testing.assert_array_equal(rref, [[1, 0, 1], [0, 1, 1]])

    def test_solve(self):
        rows = np.array([[1, 0, 0, 1], [0, 1, 1, 0]], dtype=np.uint8)
        np.testing.assert_array_equal(gf2_solve(rows, np.array([1, 1, 1, 1])), [1, 1])
        self.assertIsNone(gf2_solve(rows, np.array([1, 0, 0, 0])))
        np.testing.assert_array_equal(gf2_solve(rows[:0], np.zeros(4, dtype=np.uint8)), [])


class GPrimeTest(SimpleTestCase):

    def test_heh(self):
        rows = build_gprime(build_structure(load_fixture('heh+_noncon').ops))
        self.assertEqual([(phase.sign, op.label) for phase, op in rows], [(1, 'ZZ'), (1, 'ZZ')])

    def test_singleton_cliques(self):
        self.assertEqual(build_gprime(build_structure([parse_pauli('X'), parse_pauli('Z')])), [])

    def test_rows_commute_with_everything(self):
        for system in SYSTEMS:
            structure = build_structure(load_fixture(f'{system}_noncon').ops)
            for phase, op in build_gprime(structure):
                self.assertTrue(phase.is_real)
                for other in structure.ops:
                    self.assertTrue(commutes(op, other), msg=f'{system} {op} {other}')


class ReduceToIndependentTest(SimpleTestCase):
    """Multiplicative elimination"""

    def test_duplicate_rows(self):
        generators, expansions = reduce_to_independent(signed('ZZ', 'ZZ'))
        self.assertEqual(labels_of(generators), ['ZZ'])
        self.assertEqual(expansions, [TermDecomposition(1, (0,)), TermDecomposition(1, (0,))])

    def test_product_row(self):
        generators, expansions = reduce_to_independent(signed('ZI', 'IZ', 'ZZ'))
        self.assertEqual(labels_of(generators), ['ZI', 'IZ'])
        self.assertEqual(expansions[2], TermDecomposition(1, (0, 1)))

    def test_commuting_pair(self):
        generators, _ = reduce_to_independent(signed('XX', 'YY'))
        self.assertEqual(labels_of(generators), ['XX', 'YY'])

    def test_minus_identity_relation(self):
        """XX·YY·ZZ = -I is a relation, not an error; YY = -XX·ZZ"""
        generators, expansions = reduce_to_independent(signed('XX', 'YY', 'ZZ'))
        self.assertEqual(labels_of(generators), ['XX', 'ZZ'])
        self.assertEqual(expansions[1], TermDecomposition(-1, (0, 1)))
        self.assertTrue(verify_independent(generators))

    def test_input_signs_carry_into_expansions(self):
        """-ZZ, ZZ, XX: each signed input equals sign·Π G_j"""
        rows = [(Phase(2), parse_pauli('ZZ')), (Phase(0), parse_pauli('ZZ')), (Phase(0), parse_pauli('XX'))]
        generators, expansions = reduce_to_independent(rows)
        self.assertEqual(labels_of(generators), ['XX', 'ZZ'])
        self.assertEqual(expansions, [TermDecomposition(-1, (1,)), TermDecomposition(1, (1,)), TermDecomposition(1, (0,))])
        gset = GeneratorSet(n=2, generators=tuple(generators))
        for (phase, op), decomposition in zip(rows, expansions):
            self.assertEqual(reconstruct(gset, decomposition), (phase, op))

    def test_rejects_anticommuting_input(self):
        with self.assertRaises(ContractViolationError):
            reduce_to_independent(signed('X', 'Z'))

    def test_empty(self):
        self.assertEqual(reduce_to_independent([]), ([], []))

    def test_random_commuting_sets(self):
        """|G| equals the GF(2) rank and every input is regenerated"""
        rng = np.random.default_rng(8)
        for trial in range(60):
            n = int(rng.integers(2, 7))
            h = random_noncontextual_instance(n, 0, int(rng.integers(1, n + 1)), seed=trial)
            ops = h.ops
            extra = [multiply_all([ops[i] for i in rng.choice(len(ops), size=2)], n)[1] for _ in range(3)]
            rows = [(Phase(2 * int(rng.integers(2))), op) for op in ops + [op for op in extra if not op.is_identity]]
            generators, expansions = reduce_to_independent(rows)
            self.assertTrue(verify_independent(generators))
            self.assertEqual(len(generators), gf2_rank(np.array([[*op.x_bits, *op.z_bits] for _, op in rows])))
            gset = GeneratorSet(n=n, generators=tuple(generators))
            for (phase, op), decomposition in zip(rows, expansions):
                self.assertEqual(reconstruct(gset, decomposition), (phase, op))


class VerifyIndependentTest(SimpleTestCase):

    def test_examples(self):
        self.assertTrue(verify_independent([parse_pauli('ZI'), parse_pauli('IZ')]))
        self.assertFalse(verify_independent([parse_pauli(label) for label in ['ZI', 'IZ', 'ZZ']]))
        self.assertTrue(verify_independent([]))


class BuildRTest(SimpleTestCase):
    """Generator sets and term decompositions"""

    def setUp(self):
        self.expected = load_expectations()

    def test_heh(self):
        _, gset, decompositions = generators_for(load_fixture('heh+_noncon'))
        self.assertEqual(gset.generator_labels(), ['ZZ'])
        self.assertEqual(gset.representative_labels(), ['IZ', 'XX'])
        self.assertEqual(gset.size, 3)
        self.assertEqual(decompositions['ZI'], TermDecomposition(1, (0,), 0))
        self.assertEqual(decompositions['XX'], TermDecomposition(1, (), 1))
        self.assertEqual(decompositions['ZZ'], TermDecomposition(1, (0,), None))

    def test_hempel(self):
        _, gset, decompositions = generators_for(load_fixture('lih_hempel_noncon'))
        self.assertEqual(gset.generator_labels(), ['ZZI', 'IIZ'])
        self.assertEqual(gset.representative_labels(), ['IZI', 'XXI'])
        self.assertEqual(decompositions['YYI'], TermDecomposition(-1, (0,), 1))

    def test_generator_counts(self):
        """|R| = 3, 4, 5, 7 for the published noncontextual Hamiltonians"""
        for system in SYSTEMS:
            _, gset, _ = generators_for(load_fixture(f'{system}_noncon'))
            self.assertEqual(gset.size, self.expected[system]['generators'], msg=system)
            validate_generator_set(gset)

    def test_describe(self):
        _, gset, decompositions = generators_for(load_fixture('lih_hempel_noncon'))
        self.assertEqual(decompositions['YYI'].describe(gset.generators, gset.representatives), '-1 * ZZI*XXI')
        self.assertEqual(decompositions['ZZI'].describe(gset.generators, gset.representatives), '+1 * ZZI')

    def test_structure_mismatch(self):
        h = load_fixture('heh+_noncon')
        structure = build_structure(load_fixture('heh+_noncon').subset(['IZ', 'ZZ']).ops)
        with self.assertRaises(ContractViolationError):
            build_R(structure, h)

    def test_decompose_group_members(self):
        _, gset, _ = generators_for(load_fixture('heh+_noncon'))
        self.assertEqual(gset.decompose(parse_pauli('YY')), TermDecomposition(-1, (0,), 1))
        self.assertEqual(gset.decompose(parse_pauli('ZZ')), TermDecomposition(1, (0,)))
        self.assertIsNone(gset.decompose(parse_pauli('XI')))


class ReconstructionTest(SimpleTestCase):
    """Every term is exactly sign · Π G_j (· C_i1)"""

    def assert_reconstructs(self, hamiltonian, context):
        _, gset, decompositions = generators_for(hamiltonian)
        for term in hamiltonian.terms:
            phase, product = reconstruct(gset, decompositions[term.label])
            self.assertEqual(product, term.op, msg=f'{context} {term.label}')
            self.assertEqual(phase, Phase(), msg=f'{context} {term.label}')

    def test_fixtures(self):
        for system in SYSTEMS:
            self.assert_reconstructs(load_fixture(f'{system}_noncon'), system)

    def test_random_instances(self):
        rng = np.random.default_rng(500)
        for trial in range(500):
            n = int(rng.integers(1, 9))
            g = int(rng.integers(0, n))
            cliques = int(rng.integers(0, 2 * (n - g) + 2))
            h = random_noncontextual_instance(n, cliques, g, seed=trial)
            self.assert_reconstructs(h, f'n={n} N={cliques} g={g} seed={trial}')

    def test_terms_lie_in_closure(self):
        """Every term is in the closure under inference of R"""
        h = load_fixture('heh+_noncon')
        _, gset, _ = generators_for(h)
        closed = closure_under_inference(list(gset.generators) + list(gset.representatives))
        for op in h.ops:
            self.assertIn(op, closed)
