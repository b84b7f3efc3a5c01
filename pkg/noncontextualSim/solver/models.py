from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from epistemic.models import EpistemicState, ObjectiveFunction
from generators.models import GeneratorSet, TermDecomposition
from hamiltonians.models import Hamiltonian
from structure.models import NoncontextualStructure

EXHAUSTIVE = 'exhaustive'
LOCAL_SEARCH = 'local-search'


@dataclass(frozen=True)
class ReducedCoefficients:
    """For fixed q: E(r) = h0 + a·r"""
    h0: float
    a: Tuple[float, ...]
    norm: float
    unit: Optional[Tuple[float, ...]] = None


@dataclass(frozen=True)
class GroundResult:
    """Minimum found and the epistemic state attaining it"""
    energy: float
    witness: EpistemicState
    method: str
    q_evaluations: int

    @property
    def is_exact(self) -> bool:
        return self.method == EXHAUSTIVE


@dataclass(frozen=True)
class NoncontextualSolution:
    """Everything computed on the way from a Hamiltonian to its ground result"""
    hamiltonian: Hamiltonian
    structure: NoncontextualStructure
    generator_set: GeneratorSet
    decompositions: Dict[str, TermDecomposition]
    objective: ObjectiveFunction
    result: GroundResult

    def witness_maps(self):
        q = dict(zip(self.objective.generator_labels, self.result.witness.q))
        r = dict(zip(self.objective.representative_labels, self.result.witness.r))
        return q, r
