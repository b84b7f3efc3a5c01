from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from pauli.models import PauliOp


@dataclass(frozen=True)
class TermDecomposition:
    """
    op = sign · Π_{j ∈ generator_indices} G_j · (C_{i1} if clique_index is not None)

    Generator indices are ascending; the empty product is the identity.
    """
    sign: int
    generator_indices: Tuple[int, ...] = ()
    clique_index: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, 'generator_indices', tuple(sorted(self.generator_indices)))

    @property
    def generator_mask(self) -> int:
        mask = 0
        for j in self.generator_indices:
            mask |= 1 << j
        return mask

    def describe(self, generators: Sequence[PauliOp], representatives: Sequence[PauliOp]) -> str:
        """Render as ``±1 * G_a*G_b [* C]`` using operator labels"""
        factors = [generators[j].label for j in self.generator_indices]
        if self.clique_index is not None:
            factors.append(representatives[self.clique_index].label)
        body = '*'.join(factors) if factors else 'I'
        return f"{'+1' if self.sign > 0 else '-1'} * {body}"


@dataclass(frozen=True)
class GeneratorSet:
    """R = G ∪ {C_{i1}}: the coordinate system of the ontic states"""
    n: int
    generators: Tuple[PauliOp, ...] = ()
    representatives: Tuple[PauliOp, ...] = ()

    @property
    def size(self) -> int:
        """|R|"""
        return len(self.generators) + len(self.representatives)

    @property
    def generator_count(self) -> int:
        return len(self.generators)

    @property
    def clique_count(self) -> int:
        return len(self.representatives)

    def generator_labels(self):
        return [op.label for op in self.generators]

    def representative_labels(self):
        return [op.label for op in self.representatives]

    def decompose(self, op: PauliOp) -> Optional[TermDecomposition]:
        """
        Signed decomposition of any member of the group generated by R

        Tries G alone, then G times each representative in turn; None when
        ``op`` lies outside the group.
        """
        from generators.services import decompose_over

        result = decompose_over(self.generators, op)
        if result is not None:
            return result
        for index, representative in enumerate(self.representatives):
            result = decompose_over(self.generators, op, representative=representative)
            if result is not None:
                return TermDecomposition(result.sign, result.generator_indices, index)
        return None
