from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Tuple
import hashlib
import json
import math

from core.exceptions import DimensionMismatchError, HamiltonianFormatError
from pauli.models import PauliOp


@dataclass(frozen=True)
class PauliTerm:
    """A real coefficient on a non-identity Pauli string"""
    op: PauliOp
    coefficient: float

    def __post_init__(self):
        if not math.isfinite(self.coefficient):
            raise HamiltonianFormatError(f"non-finite coefficient for {self.op.label}")

    @property
    def label(self) -> str:
        return self.op.label


@dataclass(frozen=True)
class Hamiltonian:
    """
    Weighted Pauli strings plus the identity offset

    ``terms`` keeps input order and never contains the identity string.
    ``has_identity_term`` remembers whether the identity key was written,
    so term counts and serialization match the source exactly.
    """
    n: int
    terms: Tuple[PauliTerm, ...] = ()
    identity_offset: float = 0.0
    has_identity_term: bool = False
    _index: Dict[str, int] = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, 'terms', tuple(self.terms))
        if not math.isfinite(self.identity_offset):
            raise HamiltonianFormatError("non-finite identity coefficient")
        if self.identity_offset != 0.0 and not self.has_identity_term:
            object.__setattr__(self, 'has_identity_term', True)
        if self.terms and self.n < 1:
            raise HamiltonianFormatError("terms present on zero qubits")
        if self.has_identity_term and self.n < 1:
            raise HamiltonianFormatError("identity term needs a qubit count")

        index = {}
        for position, term in enumerate(self.terms):
            if term.op.n != self.n:
                raise DimensionMismatchError(self.n, term.op.n)
            if term.op.is_identity:
                raise HamiltonianFormatError("identity string belongs in identity_offset")
            if term.label in index:
                raise HamiltonianFormatError(f"duplicate term {term.label}")
            index[term.label] = position
        object.__setattr__(self, '_index', index)

    @property
    def ops(self) -> List[PauliOp]:
        return [term.op for term in self.terms]

    def labels(self) -> List[str]:
        return [term.label for term in self.terms]

    def coefficient(self, label: str) -> float:
        if set(label) == {'I'}:
            return self.identity_offset
        position = self._index.get(label)
        return 0.0 if position is None else self.terms[position].coefficient

    def __contains__(self, label: str) -> bool:
        return label in self._index

    @property
    def term_count(self) -> int:
        """Number of listed strings, identity included when present"""
        return len(self.terms) + (1 if self.has_identity_term else 0)

    @property
    def zero_terms(self) -> List[str]:
        return [term.label for term in self.terms if term.coefficient == 0.0]

    def as_mapping(self) -> Dict[str, float]:
        mapping = {}
        if self.has_identity_term:
            mapping['I' * self.n] = self.identity_offset
        for term in self.terms:
            mapping[term.label] = term.coefficient
        return mapping

    @property
    def digest(self) -> str:
        payload = json.dumps([self.n, list(self.as_mapping().items())])
        return hashlib.sha256(payload.encode()).hexdigest()

    def subset(self, labels: Iterable[str], keep_identity: bool = True) -> 'Hamiltonian':
        """Sub-Hamiltonian on ``labels`` in this Hamiltonian's term order"""
        wanted = set(labels)
        missing = wanted - set(self._index)
        if missing:
            raise HamiltonianFormatError(f"unknown terms {sorted(missing)}")
        return Hamiltonian(
            n=self.n,
            terms=tuple(term for term in self.terms if term.label in wanted),
            identity_offset=self.identity_offset if keep_identity else 0.0,
            has_identity_term=self.has_identity_term and keep_identity,
        )

    def __len__(self):
        return len(self.terms)
