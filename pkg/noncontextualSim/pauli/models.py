"""
Pauli strings in binary symplectic form

Qubit i is the i-th character of the label (leftmost is qubit 0) and is
stored at bit i of the ``x`` and ``z`` integer masks.
"""
from dataclasses import dataclass
from typing import Tuple

from core.exceptions import ContractViolationError, DimensionMismatchError

PAULI_LETTERS = 'IXYZ'

# (x, z) bit pair of each single-qubit letter
LETTER_BITS = {
    'I': (0, 0),
    'X': (1, 0),
    'Y': (1, 1),
    'Z': (0, 1),
}
_BITS_LETTER = {bits: letter for letter, bits in LETTER_BITS.items()}

_PHASE_VALUES = (1, 1j, -1, -1j)
_PHASE_LABELS = ('+1', '+i', '-1', '-i')


@dataclass(frozen=True)
class Phase:
    """A power of i, stored as its exponent mod 4"""
    exponent: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'exponent', self.exponent % 4)

    @classmethod
    def from_sign(cls, sign: int) -> 'Phase':
        if sign not in (1, -1):
            raise ContractViolationError('Phase.from_sign', f"sign must be +1 or -1, got {sign}")
        return cls(0 if sign == 1 else 2)

    @property
    def value(self) -> complex:
        return _PHASE_VALUES[self.exponent]

    @property
    def is_real(self) -> bool:
        return self.exponent % 2 == 0

    @property
    def sign(self) -> int:
        """The phase as +1/-1; imaginary phases have no sign"""
        if not self.is_real:
            raise ContractViolationError('Phase.sign', f"phase {self} is imaginary")
        return 1 if self.exponent == 0 else -1

    def __mul__(self, other: 'Phase') -> 'Phase':
        return Phase(self.exponent + other.exponent)

    def __str__(self):
        return _PHASE_LABELS[self.exponent]


@dataclass(frozen=True)
class PauliOp:
    """An unsigned n-qubit Pauli string"""
    n: int
    x: int = 0
    z: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ContractViolationError('PauliOp', f"qubit count must be positive, got {self.n}")
        limit = 1 << self.n
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise DimensionMismatchError(self.n, max(self.x, self.z).bit_length())

    @classmethod
    def identity(cls, n: int) -> 'PauliOp':
        return cls(n)

    @property
    def label(self) -> str:
        return ''.join(self.letter(i) for i in range(self.n))

    def letter(self, qubit: int) -> str:
        return _BITS_LETTER[(self.x >> qubit) & 1, (self.z >> qubit) & 1]

    @property
    def x_bits(self) -> Tuple[int, ...]:
        return tuple((self.x >> i) & 1 for i in range(self.n))

    @property
    def z_bits(self) -> Tuple[int, ...]:
        return tuple((self.z >> i) & 1 for i in range(self.n))

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def __str__(self):
        return self.label

    def __repr__(self):
        return f"PauliOp('{self.label}')"
