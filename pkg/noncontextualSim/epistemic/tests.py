import math

from django.test import SimpleTestCase, override_settings
import numpy as np

from core.exceptions import DimensionMismatchError, DistributionSizeError, EpistemicStateError
from epistemic.models import EpistemicState, ObjectiveTerm, OntologyTable
from epistemic.services import (
    compile_objective, energy_by_terms, evaluate_objective, expectation_of_term, joint_distribution,
    marginal_expectations, observable_A, parse_state,
)
from generators.models import GeneratorSet, TermDecomposition
from generators.services import generators_for
from hamiltonians.services import load_expectations, load_fixture, load_hamiltonian
from oracle.services import ground_energy
from pauli.models import PauliOp
from pauli.services import parse_pauli
from structure.services import random_noncontextual_instance

HEH_R = {'IZ': 0.9922982949760547, 'XX': -0.1238712791070418}


def placeholder_set(generators, cliques):
    """A generator set with the right coordinate counts for table tests"""
    dummy = PauliOp.identity(1)
    return GeneratorSet(n=1, generators=(dummy,) * generators, representatives=(dummy,) * cliques)


def random_state(rng, generators, cliques):
    q = tuple(int(value) for value in rng.choice([1, -1], size=generators))
    r = ()
    if cliques:
        vector = rng.normal(size=cliques)
        r = tuple(float(value) for value in vector / np.linalg.norm(vector))
    return EpistemicState(q, r)


class EpistemicStateTest(SimpleTestCase):
    """Validation of (q, r)"""

    def test_valid(self):
        state = EpistemicState((1, -1), (0.6, 0.8))
        self.assertEqual(state.q, (1, -1))
        self.assertEqual((state.generator_count, state.clique_count), (2, 2))

    def test_q_values(self):
        for q in [(0,), (1.7,), (True,), (2, 1)]:
            with self.assertRaises(EpistemicStateError, msg=str(q)):
                EpistemicState(q, ())

    def test_r_off_sphere(self):
        with self.assertRaises(EpistemicStateError):
            EpistemicState((), (0.6, 0.9))
        with self.assertRaises(EpistemicStateError):
            EpistemicState((), (math.nan, 1.0))

    def test_r_renormalized(self):
        """Norm errors between the two tolerances are rescaled"""
        state = EpistemicState.from_values([], [0.6 * (1 + 1e-9), 0.8 * (1 + 1e-9)])
        self.assertAlmostEqual(math.hypot(*state.r), 1.0, places=12)

    @override_settings(NCSIM_STATE_NORM_REJECT=1e-12)
    def test_reject_tolerance_from_settings(self):
        with self.assertRaises(EpistemicStateError):
            EpistemicState((), (0.6 * (1 + 1e-9), 0.8 * (1 + 1e-9)))

    def test_empty_r(self):
        self.assertEqual(EpistemicState((1,), ()).r, ())


class CompileObjectiveTest(SimpleTestCase):
    """Folding decompositions into h_B and h_Bi"""

    def compile(self, hamiltonian):
        _, gset, decompositions = generators_for(hamiltonian)
        return compile_objective(hamiltonian, gset, decompositions), gset, decompositions

    def test_heh_rows(self):
        objective, _, _ = self.compile(load_fixture('heh+_noncon'))
        self.assertEqual(objective.constant, -1.46658)
        self.assertEqual(objective.terms, (
            ObjectiveTerm((), 0.0, (-0.39863, 0.099524)),
            ObjectiveTerm((0,), 0.089735, (-0.39863, 0.0)),
        ))
        self.assertEqual(objective.generator_labels, ('ZZ',))
        self.assertEqual(objective.representative_labels, ('IZ', 'XX'))

    def test_identity_only(self):
        objective, _, _ = self.compile(load_hamiltonian('{"II": -1.0}'))
        self.assertEqual(objective.constant, -1.0)
        self.assertEqual(objective.terms, ())
        self.assertEqual(evaluate_objective(objective, EpistemicState()), -1.0)

    def test_diagonal_has_no_clique_coefficients(self):
        objective, _, _ = self.compile(load_hamiltonian('{"ZI": 0.5, "IZ": -0.25, "ZZ": 2.0}'))
        self.assertEqual(objective.clique_count, 0)
        for term in objective.terms:
            self.assertEqual(term.h_bi, ())
        self.assertEqual(evaluate_objective(objective, EpistemicState((1, 1))), 2.25)

    def test_row_lookup(self):
        objective, _, _ = self.compile(load_fixture('heh+_noncon'))
        self.assertEqual(objective.row_for([0]).h_b, 0.089735)
        self.assertIsNone(objective.row_for([0, 1]))


class EvaluateObjectiveTest(SimpleTestCase):

    def setUp(self):
        self.hamiltonian = load_fixture('heh+_noncon')
        _, self.gset, self.decompositions = generators_for(self.hamiltonian)
        self.objective = compile_objective(self.hamiltonian, self.gset, self.decompositions)

    def test_published_witness_energy(self):
        """The published parameters attain the sub-Hamiltonian's ground energy"""
        state = parse_state(self.objective, {'ZZ': 1}, HEH_R)
        energy = evaluate_objective(self.objective, state)
        self.assertAlmostEqual(energy, ground_energy(self.hamiltonian), delta=1e-9)
        self.assertAlmostEqual(energy, -2.1803, places=4)

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatchError):
            evaluate_objective(self.objective, EpistemicState((1, 1), (1.0, 0.0)))
        with self.assertRaises(DimensionMismatchError):
            evaluate_objective(self.objective, EpistemicState((1,), (1.0,)))

    def test_matches_term_by_term_energy(self):
        """Aggregated rows give the same energy as summing every term's expectation"""
        rng = np.random.default_rng(4)
        for trial in range(50):
            h = random_noncontextual_instance(4, int(rng.integers(0, 6)), int(rng.integers(0, 3)), seed=trial)
            _, gset, decompositions = generators_for(h)
            objective = compile_objective(h, gset, decompositions)
            state = random_state(rng, gset.generator_count, gset.clique_count)
            self.assertAlmostEqual(
                evaluate_objective(objective, state), energy_by_terms(h, decompositions, state), delta=1e-12
            )

    def test_parse_state_labels(self):
        with self.assertRaises(EpistemicStateError):
            parse_state(self.objective, {'ZZ': 1}, {'IZ': 1.0})
        with self.assertRaises(EpistemicStateError):
            parse_state(self.objective, {'ZZ': 1, 'ZI': 1}, HEH_R)


class ExpectationOfTermTest(SimpleTestCase):

    def test_examples(self):
        state = EpistemicState((1, -1), (0.5, math.sqrt(0.75)))
        self.assertEqual(expectation_of_term(TermDecomposition(1, (), 0), state), 0.5)
        self.assertEqual(expectation_of_term(TermDecomposition(1, (1,)), state), -1.0)
        self.assertEqual(expectation_of_term(TermDecomposition(-1, (0, 1), 0), state), 0.5)


class JointDistributionTest(SimpleTestCase):
    """Ontology tables and their marginals"""

    def test_delta_on_generators(self):
        table = joint_distribution(EpistemicState((1,), ()), placeholder_set(1, 0))
        self.assertEqual(table.probability((1,)), 1.0)
        self.assertEqual(table.probability((-1,)), 0.0)

    def test_pure_clique(self):
        table = joint_distribution(EpistemicState((), (1.0,)), placeholder_set(0, 1))
        self.assertEqual(table.probability((1,)), 1.0)

    def test_two_cliques(self):
        """P(c1, c2) = Π ½|c_i + r_i|"""
        s = 1 / math.sqrt(2)
        table = joint_distribution(EpistemicState((), (s, s)), placeholder_set(0, 2))
        self.assertAlmostEqual(table.probability((1, 1)), ((1 + s) / 2) ** 2, places=15)
        self.assertAlmostEqual(table.probability((1, 1)), 0.728553, places=6)
        self.assertAlmostEqual(table.probability((1, -1)), (1 + s) * (1 - s) / 4, places=15)
        self.assertAlmostEqual(sum(p for _, p in table.items()), 1.0, places=15)

    def test_round_trip(self):
        """1000 random states: marginals recover (q, r); tables are normalized and nonnegative"""
        rng = np.random.default_rng(1000)
        for _ in range(1000):
            bits = int(rng.integers(0, 11))
            cliques = int(rng.integers(0, bits + 1))
            state = random_state(rng, bits - cliques, cliques)
            table = joint_distribution(state, placeholder_set(bits - cliques, cliques))
            self.assertTrue(np.all(table.probabilities >= 0))
            self.assertAlmostEqual(math.fsum(table.probabilities), 1.0, delta=1e-12)
            q, r = marginal_expectations(table)
            np.testing.assert_allclose(q, state.q, rtol=0, atol=1e-12)
            np.testing.assert_allclose(r, state.r, rtol=0, atol=1e-12)

    def test_size_guard(self):
        with self.assertRaises(DistributionSizeError):
            joint_distribution(EpistemicState((1,) * 5, ()), placeholder_set(5, 0), max_bits=4)

    def test_marginals_of_uniform_and_point_tables(self):
        q, r = marginal_expectations(OntologyTable(2, 0, np.full(4, 0.25)))
        np.testing.assert_allclose(r, [0.0, 0.0])
        self.assertEqual(len(q), 0)
        q, r = marginal_expectations(OntologyTable(1, 1, np.array([0.0, 0.0, 1.0, 0.0])))
        np.testing.assert_allclose(r, [-1.0])
        np.testing.assert_allclose(q, [1.0])

    def test_marginals_reject_bad_tables(self):
        with self.assertRaises(EpistemicStateError):
            marginal_expectations(OntologyTable(1, 0, np.array([0.7, 0.7])))
        with self.assertRaises(EpistemicStateError):
            marginal_expectations(OntologyTable(1, 0, np.array([1.5, -0.5])))


class ObservableATest(SimpleTestCase):

    def test_weights_follow_representatives(self):
        _, gset, _ = generators_for(load_fixture('heh+_noncon'))
        weighted = observable_A(gset, (0.6, 0.8))
        self.assertEqual([(w, op.label) for w, op in weighted], [(0.6, 'IZ'), (0.8, 'XX')])
        with self.assertRaises(DimensionMismatchError):
            observable_A(gset, (1.0,))

    def test_expected_witness_labels_exist(self):
        """Published witness labels name real generators or representatives"""
        expected = load_expectations()['heh+']['witness']
        _, gset, _ = generators_for(load_fixture('heh+_noncon'))
        self.assertEqual(set(expected['q']), set(gset.generator_labels()))
        self.assertEqual(set(expected['r']), set(gset.representative_labels()))
        self.assertIsNotNone(gset.decompose(parse_pauli('ZI')))
