from dataclasses import dataclass
from typing import Tuple


@dataclass(frozen=True)
class ApproximationReport:
    """
    Ground energies of a Hamiltonian and of its noncontextual and diagonal
    approximations; errors are in units of chemical accuracy
    """
    full_ground: float
    noncon_ground: float
    diag_ground: float
    eps_noncon: float
    eps_diag: float
    kept_terms: Tuple[str, ...]
    full_terms: int
    noncon_terms: int
    generators: int
    chem_accuracy: float
    method: str = 'greedy'

    @property
    def sizes(self) -> Tuple[int, int, int]:
        """(|S_full|, |S_noncon|, |R|)"""
        return self.full_terms, self.noncon_terms, self.generators
