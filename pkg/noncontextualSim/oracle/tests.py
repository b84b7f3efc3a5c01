import math

from django.test import SimpleTestCase
import numpy as np

from core.exceptions import ConsistencyError, OracleSizeError
from epistemic.services import observable_A
from hamiltonians.services import hamiltonian_from_terms, load_fixture, load_hamiltonian
from oracle.services import (
    common_eigenstate, ground_energy, ground_expectations, ground_state, pauli_matrix, to_matrix, weighted_matrix,
)
from pauli.models import PauliOp
from pauli.services import multiply, parse_pauli
from solver.services import solve_hamiltonian
from structure.services import random_anticommuting_family, random_noncontextual_instance

I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)


class PauliMatrixTest(SimpleTestCase):
    """Dense matrices in the qubit-0-most-significant basis"""

    def test_single_qubit(self):
        np.testing.assert_array_equal(pauli_matrix(parse_pauli('X')), X)
        np.testing.assert_array_equal(pauli_matrix(parse_pauli('Y')), Y)
        np.testing.assert_array_equal(pauli_matrix(parse_pauli('Z')), Z)
        np.testing.assert_array_equal(pauli_matrix(parse_pauli('I')), I2)

    def test_kronecker_order(self):
        np.testing.assert_array_equal(pauli_matrix(parse_pauli('ZI')), np.kron(Z, I2))
        np.testing.assert_array_equal(pauli_matrix(parse_pauli('XYZ')), np.kron(np.kron(X, Y), Z))

    def test_products_match_multiply(self):
        """1000 random pairs on up to 8 qubits: M(p)·M(q) = phase · M(pq)"""
        rng = np.random.default_rng(1000)
        for _ in range(1000):
            n = int(rng.integers(1, 9))
            p = PauliOp(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)))
            q = PauliOp(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)))
            phase, product = multiply(p, q)
            np.testing.assert_allclose(
                pauli_matrix(p) @ pauli_matrix(q), phase.value * pauli_matrix(product), atol=1e-14
            )

    def test_spectrum_of_single_paulis(self):
        for label in ['XZ', 'YY', 'IXZ', 'ZZZ']:
            eigenvalues = np.linalg.eigvalsh(pauli_matrix(parse_pauli(label)))
            np.testing.assert_allclose(eigenvalues, [-1.0] * (len(eigenvalues) // 2) + [1.0] * (len(eigenvalues) // 2), atol=1e-12)

    def test_size_cap(self):
        with self.assertRaises(OracleSizeError):
            pauli_matrix(parse_pauli('XX'), max_qubits=1)
        with self.assertRaises(OracleSizeError):
            to_matrix(load_fixture('beh2_full'), max_qubits=4)


class GroundEnergyTest(SimpleTestCase):

    def test_x_plus_z(self):
        self.assertAlmostEqual(ground_energy(load_hamiltonian('{"X": 1.0, "Z": 1.0}')), -math.sqrt(2), places=12)

    def test_offset_only(self):
        state = ground_state(load_hamiltonian('{"I": -0.5}'))
        self.assertEqual(state.energy, -0.5)
        self.assertEqual(state.gap, 0.0)
        self.assertTrue(state.is_degenerate)

    def test_diagonal_minimum(self):
        """For diagonal Hamiltonians the ground energy is the smallest diagonal entry"""
        rng = np.random.default_rng(9)
        for _ in range(20):
            labels = {''.join(rng.choice(list('IZ'), size=4)) for _ in range(6)} - {'IIII'}
            h = hamiltonian_from_terms([(label, float(rng.uniform(-1.0, 1.0))) for label in sorted(labels)])
            dense = to_matrix(h)
            self.assertAlmostEqual(ground_energy(h), float(np.min(np.real(np.diag(dense.entries)))), delta=1e-12)

    def test_published_full_energies(self):
        expected = {'heh+': -2.1806338514, 'lih_hempel': -7.9521997094, 'beh2': -1.9527999663}
        for system, energy in expected.items():
            self.assertAlmostEqual(ground_energy(load_fixture(f"{system}_full")), energy, places=7, msg=system)

    def test_ground_expectations(self):
        h = load_hamiltonian('{"Z": -1.0}')
        np.testing.assert_allclose(ground_expectations(h, [parse_pauli('Z'), parse_pauli('X')]), [1.0, 0.0], atol=1e-12)
        h = load_hamiltonian('{"XX": -1.0, "ZZ": -1.0}')
        values = ground_expectations(h, [parse_pauli('XX'), parse_pauli('ZZ'), parse_pauli('YY')])
        np.testing.assert_allclose(values, [1.0, 1.0, -1.0], atol=1e-12)


class AnticommutingFamilyTest(SimpleTestCase):
    """Σ a_i C_i over pairwise anticommuting C_i squares to |a|² I"""

    def test_unit_weights_give_involutions(self):
        rng = np.random.default_rng(100)
        for seed in range(100):
            n = 1 + seed % 4
            size = 1 + int(rng.integers(0, 2 * n + 1))
            family = random_anticommuting_family(n, size, seed=seed)
            weights = rng.normal(size=size)
            weights /= np.linalg.norm(weights)
            matrix = weighted_matrix(n, list(zip(weights, family)))
            np.testing.assert_allclose(matrix @ matrix, np.eye(1 << n), atol=1e-12)
            eigenvalues = np.linalg.eigvalsh(matrix)
            np.testing.assert_allclose(np.abs(eigenvalues), 1.0, atol=1e-10)

    def test_squared_expectations_bounded(self):
        """Σ ⟨C_i⟩² ≤ 1 for any normalized state"""
        rng = np.random.default_rng(101)
        for seed in range(100):
            n = 1 + seed % 4
            size = 1 + int(rng.integers(0, 2 * n + 1))
            family = random_anticommuting_family(n, size, seed=seed)
            state = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
            state /= np.linalg.norm(state)
            total = sum(np.vdot(state, pauli_matrix(op) @ state).real ** 2 for op in family)
            self.assertLessEqual(total, 1.0 + 1e-10, msg=f'seed={seed}')


class CommonEigenstateTest(SimpleTestCase):
    """A joint eigenstate of G_j = q_j and A(r) = +1 has the quasi-quantized energy"""

    def assert_state_energy(self, h, context):
        solution = solve_hamiltonian(h)
        gset, witness = solution.generator_set, solution.result.witness
        observables = [pauli_matrix(op) for op in gset.generators]
        values = list(witness.q)
        if gset.clique_count:
            observables.append(weighted_matrix(h.n, observable_A(gset, witness.r)))
            values.append(1)
        vector = common_eigenstate(h.n, observables, values)
        energy = float(np.real(np.vdot(vector, to_matrix(h).entries @ vector)))
        self.assertAlmostEqual(energy, solution.result.energy, delta=1e-9, msg=context)

    def test_fixtures(self):
        for system in ('heh+', 'lih_hempel', 'lih_kandala'):
            self.assert_state_energy(load_fixture(f'{system}_noncon'), system)

    def test_random_instances(self):
        for seed in range(30):
            n = 2 + seed % 3
            self.assert_state_energy(random_noncontextual_instance(n, 3, 1, seed=seed), f'seed={seed}')

    def test_inconsistent_values(self):
        with self.assertRaises(ConsistencyError):
            common_eigenstate(1, [pauli_matrix(parse_pauli('Z')), pauli_matrix(parse_pauli('Z'))], [1, -1])
