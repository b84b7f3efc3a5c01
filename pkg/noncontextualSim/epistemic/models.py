"""
Epistemic states, ontology tables and the compiled energy objective
"""
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterator, Optional, Sequence, Tuple
import math

import numpy as np
from django.conf import settings

from core.exceptions import EpistemicStateError


def _norm_tolerances():
    return (
        getattr(settings, 'NCSIM_STATE_NORM_REJECT', 1e-6),
        getattr(settings, 'NCSIM_STATE_NORM_RENORMALIZE', 1e-12),
    )


@dataclass(frozen=True)
class EpistemicState:
    """
    (q, r): generator values q_j ∈ {+1, -1} and a unit vector r over cliques

    r off the unit sphere by more than the reject tolerance is an error;
    between the renormalize and reject tolerances it is rescaled. With no
    cliques r is empty and the norm condition does not apply.
    """
    q: Tuple[int, ...] = ()
    r: Tuple[float, ...] = ()

    def __post_init__(self):
        if any(isinstance(value, bool) or value not in (1, -1) for value in self.q):
            raise EpistemicStateError(f"q entries must be +1 or -1, got {list(self.q)}")
        q = tuple(int(value) for value in self.q)
        r = tuple(float(value) for value in self.r)
        if any(not math.isfinite(value) for value in r):
            raise EpistemicStateError("r entries must be finite")
        if r:
            reject, renormalize = _norm_tolerances()
            norm = math.sqrt(math.fsum(value * value for value in r))
            if abs(norm - 1.0) > reject:
                raise EpistemicStateError(f"|r| = {norm!r} is not 1")
            if abs(norm - 1.0) > renormalize:
                r = tuple(value / norm for value in r)
        object.__setattr__(self, 'q', q)
        object.__setattr__(self, 'r', r)

    @classmethod
    def from_values(cls, q: Sequence[float], r: Sequence[float]) -> 'EpistemicState':
        return cls(tuple(q), tuple(r))

    @property
    def generator_count(self) -> int:
        return len(self.q)

    @property
    def clique_count(self) -> int:
        return len(self.r)


@dataclass(frozen=True, eq=False)
class OntologyTable:
    """
    Joint probabilities over ontic states (c_1..c_N, g_1..g_|G|)

    ``probabilities`` is flat with c_1 as the most significant coordinate;
    index bit 0 stands for the value +1 and bit 1 for -1.
    """
    clique_count: int
    generator_count: int
    probabilities: np.ndarray

    @property
    def bits(self) -> int:
        return self.clique_count + self.generator_count

    def probability(self, assignment: Sequence[int]) -> float:
        if len(assignment) != self.bits:
            raise EpistemicStateError(f"assignment has {len(assignment)} values, table has {self.bits}")
        index = 0
        for value in assignment:
            if value not in (1, -1):
                raise EpistemicStateError(f"ontic values are +1 or -1, got {value}")
            index = (index << 1) | (0 if value == 1 else 1)
        return float(self.probabilities[index])

    def items(self) -> Iterator[Tuple[Tuple[int, ...], float]]:
        for index, assignment in enumerate(product((1, -1), repeat=self.bits)):
            yield assignment, float(self.probabilities[index])


@dataclass(frozen=True)
class ObjectiveTerm:
    """One distinct generator subset J_B with its aggregated coefficients"""
    generator_indices: Tuple[int, ...]
    h_b: float
    h_bi: Tuple[float, ...]


@dataclass(frozen=True)
class ObjectiveFunction:
    """
    E(q, r) = constant + Σ_B (h_B + Σ_i h_Bi r_i) Π_{j ∈ J_B} q_j
    """
    constant: float
    generator_count: int
    clique_count: int
    terms: Tuple[ObjectiveTerm, ...] = ()
    generator_labels: Tuple[str, ...] = field(default=(), compare=False)
    representative_labels: Tuple[str, ...] = field(default=(), compare=False)

    @cached_property
    def incidence(self) -> np.ndarray:
        """(rows, |G|) 0/1 matrix, 1 where generator j belongs to J_B"""
        matrix = np.zeros((len(self.terms), self.generator_count), dtype=np.int64)
        for row, term in enumerate(self.terms):
            matrix[row, list(term.generator_indices)] = 1
        return matrix

    @cached_property
    def h_b_vector(self) -> np.ndarray:
        return np.array([term.h_b for term in self.terms], dtype=float)

    @cached_property
    def h_bi_matrix(self) -> np.ndarray:
        matrix = np.zeros((len(self.terms), self.clique_count), dtype=float)
        for row, term in enumerate(self.terms):
            matrix[row, :] = term.h_bi
        return matrix

    def row_for(self, generator_indices: Sequence[int]) -> Optional[ObjectiveTerm]:
        key = tuple(sorted(generator_indices))
        for term in self.terms:
            if term.generator_indices == key:
                return term
        return None
