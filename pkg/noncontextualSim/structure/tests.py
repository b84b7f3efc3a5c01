from django.test import SimpleTestCase
import numpy as np

from core.exceptions import InfeasibleInstanceError, StructureError
from hamiltonians.services import load_fixture
from pauli.services import commutes, multiply, parse_pauli
from structure.services import (
    build_structure, closure_under_inference, contextuality_certificate, is_noncontextual, ladder_family,
    partition, random_anticommuting_family, random_noncontextual_instance, scramble, random_clifford_moves,
)

SYSTEMS = ('heh+', 'lih_hempel', 'lih_kandala', 'beh2')


def ops_of(*labels):
    return [parse_pauli(label) for label in labels]


def labels_of(ops):
    return [op.label for op in ops]


class PartitionTest(SimpleTestCase):
    """Universal set versus the rest"""

    def test_heh_noncon(self):
        universal, rest = partition(load_fixture('heh+_noncon').ops)
        self.assertEqual(labels_of(universal), ['ZZ'])
        self.assertEqual(labels_of(rest), ['IZ', 'XX', 'ZI'])

    def test_commuting_set(self):
        universal, rest = partition(ops_of('ZI', 'IZ', 'ZZ', 'XX'))
        self.assertEqual(len(universal), 4)
        self.assertEqual(rest, [])

    def test_single_qubit_pair(self):
        universal, rest = partition(ops_of('X', 'Z'))
        self.assertEqual(universal, [])
        self.assertEqual(labels_of(rest), ['X', 'Z'])

    def test_identity_and_duplicates_dropped(self):
        universal, rest = partition(ops_of('II', 'ZZ', 'ZZ'))
        self.assertEqual(labels_of(universal), ['ZZ'])


class NoncontextualityTest(SimpleTestCase):
    """The criterion and its certificate"""

    def test_fixtures(self):
        """Every published noncontextual subset passes; every full Hamiltonian fails"""
        for system in SYSTEMS:
            self.assertTrue(is_noncontextual(load_fixture(f'{system}_noncon').ops), msg=system)
            self.assertFalse(is_noncontextual(load_fixture(f'{system}_full').ops), msg=system)

    def test_commuting_set(self):
        self.assertTrue(is_noncontextual(ops_of('ZZI', 'IZZ', 'XXX')))

    def test_certificate(self):
        """First violating triple in canonical order"""
        certificate = contextuality_certificate(ops_of('ZI', 'IZ', 'XZ', 'XX'))
        self.assertEqual(labels_of(certificate), ['XZ', 'IZ', 'ZI'])

    def test_certificates_are_genuine(self):
        for system in SYSTEMS:
            a, b, c = contextuality_certificate(load_fixture(f'{system}_full').ops)
            self.assertTrue(commutes(a, b), msg=system)
            self.assertTrue(commutes(b, c), msg=system)
            self.assertFalse(commutes(a, c), msg=system)

    def test_build_structure_raises_with_certificate(self):
        with self.assertRaises(StructureError) as ctx:
            build_structure(load_fixture('heh+_full').ops)
        self.assertEqual(len(ctx.exception.triple), 3)
        self.assertIn('anticommutes', str(ctx.exception))

    def test_transitivity_brute_force(self):
        """The certificate search agrees with checking every triple of T"""
        rng = np.random.default_rng(17)
        for _ in range(150):
            n = int(rng.integers(1, 4))
            size = int(rng.integers(1, 8))
            ops = [parse_pauli(''.join(rng.choice(list('IXYZ'), size=n))) for _ in range(size)]
            _, rest = partition(ops)
            violated = any(
                commutes(a, b) and commutes(b, c) and not commutes(a, c)
                for a in rest for b in rest for c in rest if a != b and b != c and a != c
            )
            self.assertEqual(is_noncontextual(ops), not violated)


class BuildStructureTest(SimpleTestCase):

    def test_heh_cliques(self):
        structure = build_structure(load_fixture('heh+_noncon').ops)
        self.assertEqual(labels_of(structure.universal), ['ZZ'])
        self.assertEqual([labels_of(clique) for clique in structure.cliques], [['IZ', 'ZI'], ['XX']])
        self.assertEqual(labels_of(structure.representatives), ['IZ', 'XX'])

    def test_anticommuting_pair(self):
        structure = build_structure(ops_of('X', 'Z'))
        self.assertEqual(structure.clique_count, 2)
        self.assertEqual(structure.universal, ())

    def test_hempel_cliques(self):
        structure = build_structure(load_fixture('lih_hempel_noncon').ops)
        self.assertEqual(labels_of(structure.universal), ['IIZ', 'ZZI'])
        self.assertEqual(labels_of(structure.representatives), ['IZI', 'XXI'])

    def test_permutation_invariance(self):
        """Shuffling the input never changes the structure"""
        h = load_fixture('lih_kandala_noncon')
        expected = build_structure(h.ops)
        rng = np.random.default_rng(2)
        for _ in range(20):
            ops = list(h.ops)
            rng.shuffle(ops)
            self.assertEqual(build_structure(ops), expected)


class ClosureTest(SimpleTestCase):

    def test_commuting_pair_closure(self):
        closed = closure_under_inference(ops_of('ZI', 'IZ'))
        self.assertEqual(sorted(labels_of(closed)), ['IZ', 'ZI', 'ZZ'])

    def test_anticommuting_pair_is_closed(self):
        closed = closure_under_inference(ops_of('X', 'Z'))
        self.assertEqual(sorted(labels_of(closed)), ['X', 'Z'])

    def test_closed_under_commuting_products(self):
        closed = closure_under_inference(load_fixture('heh+_noncon').ops)
        for p in closed:
            for q in closed:
                if p != q and commutes(p, q):
                    self.assertIn(multiply(p, q)[1], closed | {parse_pauli('II')})


class RandomInstanceTest(SimpleTestCase):
    """Seeded generators of noncontextual Hamiltonians and anticommuting families"""

    def test_single_clique(self):
        h = random_noncontextual_instance(3, 1, 2, seed=7)
        self.assertTrue(is_noncontextual(h.ops))

    def test_anticommuting_cliques(self):
        h = random_noncontextual_instance(2, 3, 0, seed=1)
        self.assertEqual(len(h.terms), 3)
        structure = build_structure(h.ops)
        self.assertEqual(structure.clique_count, 3)

    def test_infeasible(self):
        for args in [(2, 6, 0), (3, 1, 3), (2, 0, 3), (0, 0, 0), (4, 4, 3)]:
            with self.assertRaises(InfeasibleInstanceError, msg=str(args)):
                random_noncontextual_instance(*args, seed=0)

    def test_requested_structure(self):
        """N cliques (N != 1) over g generators; N = 1 folds into the universal set"""
        rng = np.random.default_rng(23)
        for trial in range(100):
            n = int(rng.integers(1, 6))
            g = int(rng.integers(0, n))
            cliques = int(rng.integers(0, 2 * (n - g) + 2))
            h = random_noncontextual_instance(n, cliques, g, seed=trial)
            structure = build_structure(h.ops)
            self.assertEqual(structure.clique_count, 0 if cliques == 1 else cliques)

    def test_seed_reproducible(self):
        a = random_noncontextual_instance(4, 3, 2, seed=42)
        b = random_noncontextual_instance(4, 3, 2, seed=42)
        self.assertEqual(a, b)

    def test_anticommuting_family(self):
        for seed in range(30):
            n = 1 + seed % 4
            size = 2 * n + 1 - seed % 3
            family = random_anticommuting_family(n, size, seed=seed)
            self.assertEqual(len(set(family)), size)
            for i, p in enumerate(family):
                for q in family[i + 1:]:
                    self.assertFalse(commutes(p, q))

    def test_ladder_family_and_scramble(self):
        family = ladder_family(3)
        self.assertEqual(len(family), 7)
        moves = random_clifford_moves(3, np.random.default_rng(0))
        scrambled = scramble(family, moves)
        for i in range(len(family)):
            for j in range(len(family)):
                self.assertEqual(commutes(family[i], family[j]), commutes(scrambled[i], scrambled[j]))
