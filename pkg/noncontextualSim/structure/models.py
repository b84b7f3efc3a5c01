from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from core.exceptions import ConsistencyError
from pauli.models import PauliOp
from pauli.services import commutes


@dataclass(frozen=True)
class NoncontextualStructure:
    """
    The split S = Z ∪ C_1 ∪ ... ∪ C_N of a noncontextual term set

    Members are kept in canonical (label) order, so ``cliques[i][0]`` is
    the lexicographically smallest member and serves as the representative.
    """
    n: int
    universal: Tuple[PauliOp, ...] = ()
    cliques: Tuple[Tuple[PauliOp, ...], ...] = ()

    @property
    def representatives(self) -> Tuple[PauliOp, ...]:
        return tuple(clique[0] for clique in self.cliques)

    @property
    def clique_count(self) -> int:
        return len(self.cliques)

    @property
    def ops(self) -> List[PauliOp]:
        ops = list(self.universal)
        for clique in self.cliques:
            ops.extend(clique)
        return ops

    def clique_index(self) -> Dict[PauliOp, Optional[int]]:
        """Map each member to its clique, or None for the universal set"""
        index = {op: None for op in self.universal}
        for i, clique in enumerate(self.cliques):
            for op in clique:
                index[op] = i
        return index

    def validate(self):
        """Re-check the partition invariants pairwise"""
        ops = self.ops
        for u in self.universal:
            for op in ops:
                if not commutes(u, op):
                    raise ConsistencyError(f"{u} is listed as universal but anticommutes with {op}")
        for i, clique in enumerate(self.cliques):
            if not clique:
                raise ConsistencyError(f"clique {i} is empty")
            for a in clique:
                for b in clique:
                    if not commutes(a, b):
                        raise ConsistencyError(f"{a} and {b} share clique {i} but anticommute")
            for other in self.cliques[i + 1:]:
                for a in clique:
                    for b in other:
                        if commutes(a, b):
                            raise ConsistencyError(f"{a} and {b} are in different cliques but commute")
        return self
