from django.test import SimpleTestCase
import numpy as np

from core.exceptions import ContractViolationError, DimensionMismatchError, PauliParseError
from pauli.models import PAULI_LETTERS, PauliOp, Phase
from pauli.services import (
    canonical_order, commutation_matrix, commutes, is_diagonal, multiply,
    multiply_all, parse_pauli, symplectic_matrix,
)


class ParsePauliTest(SimpleTestCase):
    """Label parsing and the bit layout of PauliOp"""

    def test_encoding(self):
        """Qubit i of the label is bit i of x and z"""
        self.assertEqual(parse_pauli('XX').x_bits, (1, 1))
        self.assertEqual(parse_pauli('XX').z_bits, (0, 0))
        self.assertEqual(parse_pauli('IZ').x_bits, (0, 0))
        self.assertEqual(parse_pauli('IZ').z_bits, (0, 1))
        op = parse_pauli('XYZ')
        self.assertEqual((op.x, op.z), (0b011, 0b110))

    def test_label_round_trip(self):
        """Every label survives parse then render"""
        for label in ['I', 'X', 'Y', 'Z', 'IXYZ', 'ZZZZZZ', 'YIYIII']:
            self.assertEqual(parse_pauli(label).label, label)

    def test_invalid_character_position(self):
        """Errors carry the 1-based position of the bad character"""
        with self.assertRaises(PauliParseError) as ctx:
            parse_pauli('XQ')
        self.assertEqual(ctx.exception.position, 2)
        self.assertIn('position 2', str(ctx.exception))

    def test_empty_label(self):
        with self.assertRaises(PauliParseError):
            parse_pauli('')

    def test_lowercase_rejected(self):
        with self.assertRaises(PauliParseError) as ctx:
            parse_pauli('Xz')
        self.assertEqual(ctx.exception.position, 2)

    def test_masks_must_fit(self):
        """Bits beyond n are a dimension error"""
        with self.assertRaises(DimensionMismatchError):
            PauliOp(2, x=0b100)

    def test_weight_and_identity(self):
        self.assertEqual(parse_pauli('XIYZ').weight, 3)
        self.assertTrue(parse_pauli('III').is_identity)
        self.assertEqual(PauliOp.identity(3).label, 'III')


class PhaseTest(SimpleTestCase):
    """Powers of i"""

    def test_multiplication_wraps(self):
        self.assertEqual(Phase(1) * Phase(3), Phase(0))
        self.assertEqual(Phase(5).exponent, 1)

    def test_sign(self):
        self.assertEqual(Phase.from_sign(-1).sign, -1)
        self.assertEqual(Phase().sign, 1)
        with self.assertRaises(ContractViolationError):
            Phase(1).sign

    def test_values(self):
        self.assertEqual(Phase(1).value, 1j)
        self.assertEqual(str(Phase(2)), '-1')


class CommutesTest(SimpleTestCase):
    """Symplectic inner product"""

    def test_examples(self):
        p = parse_pauli('XYZ')
        self.assertTrue(commutes(p, p))
        self.assertTrue(commutes(parse_pauli('XX'), parse_pauli('ZZ')))
        self.assertFalse(commutes(parse_pauli('IZ'), parse_pauli('XX')))

    def test_size_mismatch(self):
        with self.assertRaises(DimensionMismatchError):
            commutes(parse_pauli('X'), parse_pauli('XX'))

    def test_symmetric_and_identity_commutes(self):
        """commutes(p, q) == commutes(q, p); the identity commutes with everything"""
        rng = np.random.default_rng(11)
        for _ in range(200):
            n = int(rng.integers(1, 6))
            p = PauliOp(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)))
            q = PauliOp(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)))
            self.assertEqual(commutes(p, q), commutes(q, p))
            self.assertTrue(commutes(PauliOp.identity(n), p))

    def test_commutation_matrix_agrees(self):
        ops = [parse_pauli(label) for label in ['IZ', 'ZI', 'ZZ', 'XX', 'XY', 'YX']]
        matrix = commutation_matrix(ops)
        for i, p in enumerate(ops):
            for j, q in enumerate(ops):
                self.assertEqual(bool(matrix[i, j]), commutes(p, q))


class MultiplyTest(SimpleTestCase):
    """Phase-tracked products"""

    def test_examples(self):
        self.assertEqual(multiply(parse_pauli('X'), parse_pauli('Z')), (Phase(3), parse_pauli('Y')))
        self.assertEqual(multiply(parse_pauli('ZI'), parse_pauli('IZ')), (Phase(0), parse_pauli('ZZ')))
        self.assertEqual(multiply(parse_pauli('Y'), parse_pauli('Y')), (Phase(0), parse_pauli('I')))
        self.assertEqual(multiply(parse_pauli('X'), parse_pauli('Y')), (Phase(1), parse_pauli('Z')))
        self.assertEqual(multiply(parse_pauli('XX'), parse_pauli('YY')), (Phase(2), parse_pauli('ZZ')))

    def test_commuting_products_are_real(self):
        """Real phase iff the factors commute; the order of commuting factors does not matter"""
        rng = np.random.default_rng(5)
        for _ in range(300):
            n = int(rng.integers(1, 5))
            p = PauliOp(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)))
            q = PauliOp(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)))
            phase, product = multiply(p, q)
            self.assertEqual(phase.is_real, commutes(p, q))
            reverse_phase, reverse_product = multiply(q, p)
            self.assertEqual(product, reverse_product)
            if commutes(p, q):
                self.assertEqual(phase, reverse_phase)
            else:
                self.assertEqual(phase, reverse_phase * Phase(2))

    def test_single_qubit_table(self):
        """All 16 pairs: XY = iZ cyclically, reversed order gives -i"""
        cyclic = {('X', 'Y'): 'Z', ('Y', 'Z'): 'X', ('Z', 'X'): 'Y'}
        for a in PAULI_LETTERS:
            for b in PAULI_LETTERS:
                if a == 'I' or b == 'I':
                    expected = (Phase(0), parse_pauli(b if a == 'I' else a))
                elif a == b:
                    expected = (Phase(0), parse_pauli('I'))
                elif (a, b) in cyclic:
                    expected = (Phase(1), parse_pauli(cyclic[a, b]))
                else:
                    expected = (Phase(3), parse_pauli(cyclic[b, a]))
                self.assertEqual(multiply(parse_pauli(a), parse_pauli(b)), expected, msg=f'{a}{b}')

    def test_associativity_and_recovery(self):
        """(pq)r = p(qr) with phases, and p·(pq) gives back q"""
        rng = np.random.default_rng(17)

        def draw(n):
            return PauliOp(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)))

        for _ in range(500):
            n = int(rng.integers(1, 9))
            p, q, r = draw(n), draw(n), draw(n)
            a, pq = multiply(p, q)
            b, left = multiply(pq, r)
            c, qr = multiply(q, r)
            d, right = multiply(p, qr)
            self.assertEqual((a * b, left), (c * d, right))
            back_phase, back = multiply(p, pq)
            self.assertEqual(back, q)
            self.assertEqual(back_phase * a, Phase(0))

    def test_self_inverse(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            p = PauliOp(4, int(rng.integers(16)), int(rng.integers(16)))
            self.assertEqual(multiply(p, p), (Phase(0), PauliOp.identity(4)))

    def test_multiply_all(self):
        ops = [parse_pauli(label) for label in ['XX', 'YY', 'ZZ']]
        phase, product = multiply_all(ops, 2)
        self.assertTrue(product.is_identity)
        self.assertEqual(phase.sign, -1)
        self.assertEqual(multiply_all([], 3), (Phase(0), PauliOp.identity(3)))


class HelpersTest(SimpleTestCase):

    def test_is_diagonal(self):
        self.assertTrue(is_diagonal(parse_pauli('ZZI')))
        self.assertFalse(is_diagonal(parse_pauli('XXI')))
        self.assertTrue(is_diagonal(parse_pauli('I')))

    def test_canonical_order(self):
        ops = [parse_pauli(label) for label in ['ZI', 'XX', 'IZ', 'YI']]
        self.assertEqual([op.label for op in canonical_order(ops)], ['IZ', 'XX', 'YI', 'ZI'])

    def test_symplectic_rows(self):
        matrix = symplectic_matrix([parse_pauli('XYZ')])
        np.testing.assert_array_equal(matrix[0], [1, 1, 0, 0, 1, 1])
