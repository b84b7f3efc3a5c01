import math

from django.test import SimpleTestCase
import numpy as np

from core.exceptions import ContractViolationError, EpistemicStateError
from epistemic.models import EpistemicState, ObjectiveFunction, ObjectiveTerm
from epistemic.services import evaluate_objective
from hamiltonians.services import load_expectations, load_fixture, load_hamiltonian
from oracle.services import expectation, ground_energy, ground_state
from solver.models import EXHAUSTIVE, LOCAL_SEARCH, ReducedCoefficients
from solver.services import (
    inner_minimize, load_witness, reduce_for_q, solve_ground, solve_hamiltonian, verify_witness, witness_document,
)
from structure.services import random_noncontextual_instance

SYSTEMS = ('heh+', 'lih_hempel', 'lih_kandala', 'beh2')


def linear_objective(weights, constant=0.0):
    """E(q) = constant + Σ w_j q_j, no cliques"""
    return ObjectiveFunction(
        constant=constant,
        generator_count=len(weights),
        clique_count=0,
        terms=tuple(ObjectiveTerm((j,), float(w), ()) for j, w in enumerate(weights)),
    )


class InnerMinimizeTest(SimpleTestCase):
    """Minimizing h0 + a·r on the unit sphere"""

    def test_opposes_a(self):
        r, energy = inner_minimize(ReducedCoefficients(h0=0.0, a=(3.0, 4.0), norm=5.0, unit=(0.6, 0.8)))
        self.assertEqual(r, (-0.6, -0.8))
        self.assertEqual(energy, -5.0)

    def test_zero_a_picks_first_axis(self):
        r, energy = inner_minimize(ReducedCoefficients(h0=1.5, a=(0.0, 0.0), norm=0.0))
        self.assertEqual(r, (1.0, 0.0))
        self.assertEqual(energy, 1.5)

    def test_no_cliques(self):
        self.assertEqual(inner_minimize(ReducedCoefficients(h0=-2.0, a=(), norm=0.0)), ((), -2.0))


class ReduceForQTest(SimpleTestCase):

    def setUp(self):
        self.solution = solve_hamiltonian(load_fixture('heh+_noncon'))
        self.objective = self.solution.objective

    def test_heh_reduced_coefficients(self):
        reduced = reduce_for_q(self.objective, (1,))
        self.assertAlmostEqual(reduced.h0, -1.46658 + 0.089735, places=12)
        np.testing.assert_allclose(reduced.a, [-0.79726, 0.099524], atol=1e-12)
        reduced = reduce_for_q(self.objective, (-1,))
        np.testing.assert_allclose(reduced.a, [0.0, 0.099524], atol=1e-12)

    def test_inner_minimum_is_the_objective(self):
        """h0 - |a| equals E(q, r*)"""
        for q in [(1,), (-1,)]:
            r, energy = inner_minimize(reduce_for_q(self.objective, q))
            self.assertAlmostEqual(energy, evaluate_objective(self.objective, EpistemicState(q, r)), delta=1e-12)


class SolveGroundTest(SimpleTestCase):
    """Ground energies and witnesses"""

    def test_heh_witness(self):
        solution = solve_hamiltonian(load_fixture('heh+_noncon'))
        q, r = solution.witness_maps()
        self.assertEqual(q, {'ZZ': 1})
        expected = load_expectations()['heh+']['witness']['r']
        for label, value in expected.items():
            self.assertAlmostEqual(r[label], value, delta=1e-9)
        self.assertAlmostEqual(solution.result.energy, -2.180293, places=5)
        self.assertTrue(solution.result.is_exact)

    def test_hempel_witness(self):
        """q fixes ZZI = -1 and IIZ = +1; the XXI coefficient vanishes there"""
        solution = solve_hamiltonian(load_fixture('lih_hempel_noncon'))
        q, r = solution.witness_maps()
        self.assertEqual(q, {'ZZI': -1, 'IIZ': 1})
        self.assertAlmostEqual(r['IZI'], 1.0, places=12)
        self.assertAlmostEqual(r['XXI'], 0.0, places=12)
        self.assertAlmostEqual(solution.result.energy, -7.9513019373, places=8)

    def test_fixtures_match_oracle(self):
        """Exact search reproduces exact diagonalization on every noncontextual fixture"""
        for system in SYSTEMS:
            h = load_fixture(f'{system}_noncon')
            solution = solve_hamiltonian(h)
            self.assertAlmostEqual(solution.result.energy, ground_energy(h), delta=1e-9, msg=system)

    def test_random_instances_match_oracle(self):
        """
        200 random noncontextual Hamiltonians: equal ground energies, and on
        a nondegenerate ground state G_j and C_i1 take the values q_j and r_i
        """
        rng = np.random.default_rng(200)
        for trial in range(200):
            n = int(rng.integers(1, 6))
            g = int(rng.integers(0, n))
            cliques = int(rng.integers(0, 2 * (n - g) + 2))
            h = random_noncontextual_instance(n, cliques, g, seed=trial)
            context = f'n={n} N={cliques} g={g} seed={trial}'
            solution = solve_hamiltonian(h)
            state = ground_state(h)
            self.assertAlmostEqual(solution.result.energy, state.energy, delta=1e-9, msg=context)

            if state.gap < 1e-4:
                continue
            gset, witness = solution.generator_set, solution.result.witness
            for op, value in zip(gset.generators, witness.q):
                self.assertAlmostEqual(expectation(state.vector, op), value, delta=1e-6, msg=context)
            for op, value in zip(gset.representatives, witness.r):
                self.assertAlmostEqual(expectation(state.vector, op), value, delta=1e-6, msg=context)

    def test_diagonal(self):
        solution = solve_hamiltonian(load_hamiltonian('{"ZI": -1.0, "IZ": -1.0}'))
        self.assertEqual(solution.result.energy, -2.0)
        self.assertEqual(solution.result.witness.q, (1, 1))
        self.assertEqual(solution.result.witness.r, ())

    def test_identity_only(self):
        self.assertEqual(solve_hamiltonian(load_hamiltonian('{"II": -1.0}')).result.energy, -1.0)

    def test_witness_attains_energy(self):
        for system in SYSTEMS:
            solution = solve_hamiltonian(load_fixture(f'{system}_noncon'))
            self.assertEqual(evaluate_objective(solution.objective, solution.result.witness), solution.result.energy)
            self.assertAlmostEqual(math.fsum(x * x for x in solution.result.witness.r), 1.0, places=12)

    def test_local_search_is_an_upper_bound(self):
        objective = solve_hamiltonian(load_fixture('beh2_noncon')).objective
        exact = solve_ground(objective, method=EXHAUSTIVE)
        for seed in range(5):
            approximate = solve_ground(objective, method=LOCAL_SEARCH, restarts=2, seed=seed)
            self.assertGreaterEqual(approximate.energy, exact.energy - 1e-12)
            self.assertFalse(approximate.is_exact)
            self.assertEqual(approximate.method, LOCAL_SEARCH)

    def test_auto_switches_on_threshold(self):
        objective = linear_objective([1.0, -2.0, 0.5])
        self.assertEqual(solve_ground(objective).method, EXHAUSTIVE)
        with self.assertLogs('solver.services', level='WARNING'):
            result = solve_ground(objective, threshold=2)
        self.assertEqual(result.method, LOCAL_SEARCH)

    def test_exhaustive_evaluation_count(self):
        result = solve_ground(linear_objective([1.0, -2.0, 0.5]))
        self.assertEqual(result.q_evaluations, 8)
        self.assertEqual(result.witness.q, (-1, 1, -1))
        self.assertEqual(result.energy, -3.5)

    def test_unknown_method(self):
        with self.assertRaises(ContractViolationError):
            solve_ground(linear_objective([1.0]), method='anneal')


class BlockEnumerationTest(SimpleTestCase):
    """Results do not depend on the worker count"""

    def test_workers_agree(self):
        weights = np.random.default_rng(15).uniform(-1.0, 1.0, size=15)
        objective = linear_objective(weights)
        expected_q = tuple(-1 if w > 0 else 1 for w in weights)
        results = [solve_ground(objective, method=EXHAUSTIVE, workers=workers) for workers in (1, 4)]
        for result in results:
            self.assertEqual(result.witness.q, expected_q)
            self.assertEqual(result.q_evaluations, 1 << 15)
        self.assertEqual(results[0].energy, results[1].energy)

    def test_ties_prefer_plus_one(self):
        """With every assignment tied the all-(+1) state wins"""
        objective = linear_objective([0.0] * 15)
        for workers in (1, 4):
            self.assertEqual(solve_ground(objective, method=EXHAUSTIVE, workers=workers).witness.q, (1,) * 15)


class VerifyWitnessTest(SimpleTestCase):

    def setUp(self):
        self.solution = solve_hamiltonian(load_fixture('heh+_noncon'))
        self.objective = self.solution.objective
        self.state = self.solution.result.witness

    def test_thresholds(self):
        energy = self.solution.result.energy
        self.assertTrue(verify_witness(self.objective, self.state, math.inf))
        self.assertTrue(verify_witness(self.objective, self.state, energy + 1e-9))
        self.assertFalse(verify_witness(self.objective, self.state, energy))


class WitnessDocumentTest(SimpleTestCase):

    def test_round_trip(self):
        solution = solve_hamiltonian(load_fixture('heh+_noncon'))
        q, r = load_witness(witness_document(solution))
        self.assertEqual((q, r), solution.witness_maps())

    def test_rejects_bad_documents(self):
        for text in ['{"q": {"ZZ": 2}, "r": {}}', '{"q": {}, "r": {"IZ": "x"}}', 'not json', '{"q": {}}']:
            with self.assertRaises(EpistemicStateError, msg=text):
                load_witness(text)
