"""
Independent generators for a noncontextual structure

G' collects the universal operators and every A_ij = C_ij·C_i1. The
column-by-column elimination below reduces G' to an independent commuting
set G; together with the clique representatives it forms R, and every
Hamiltonian term is recorded as a signed product over R.
"""
from typing import Dict, List, Optional, Sequence, Tuple
import logging

import numpy as np

from core.exceptions import ConsistencyError, ContractViolationError
from generators.gf2 import gf2_rank, gf2_solve
from generators.models import GeneratorSet, TermDecomposition
from hamiltonians.models import Hamiltonian
from pauli.models import PauliOp, Phase
from pauli.services import commutation_matrix, commutes, multiply, multiply_all, symplectic_matrix
from structure.models import NoncontextualStructure
from structure.services import build_structure

logger = logging.getLogger(__name__)

_LETTER_RANK = {'X': 0, 'Y': 1, 'Z': 2}


def build_gprime(structure: NoncontextualStructure) -> List[Tuple[Phase, PauliOp]]:
    """Universal operators with phase +1, then A_ij = C_ij·C_i1 for j ≥ 2"""
    rows = [(Phase(), op) for op in structure.universal]
    for clique in structure.cliques:
        representative = clique[0]
        for member in clique[1:]:
            phase, product = multiply(member, representative)
            if not phase.is_real:
                raise ConsistencyError(f"{member}·{representative} has phase {phase}")
            rows.append((phase, product))
    return rows


class _SignedRow:
    __slots__ = ('sign', 'op')

    def __init__(self, sign: int, op: PauliOp):
        self.sign = sign
        self.op = op

    def absorb(self, other: '_SignedRow'):
        """row ← row · other, folding the product phase into the sign"""
        phase, product = multiply(self.op, other.op)
        if not phase.is_real:
            raise ConsistencyError(
                f"row product {self.op}·{other.op} has phase {phase}; rows do not commute"
            )
        self.sign *= other.sign * phase.sign
        self.op = product


def _eliminate(rows: List[_SignedRow], n: int) -> List[PauliOp]:
    """
    Column-by-column multiplicative elimination

    Per column: one X row clears the other X rows, one Z row clears the
    other Z rows; if both exist, Y rows are cleared by multiplying with
    both, otherwise one Y row clears the other Y rows. The (at most two)
    clearing rows become generators and leave the active set.
    """
    active = list(rows)
    pivots: List[Tuple[int, int, PauliOp]] = []

    for column in range(n):
        by_letter = {'X': [], 'Y': [], 'Z': []}
        for row in active:
            letter = row.op.letter(column)
            if letter != 'I':
                by_letter[letter].append(row)

        chosen = []
        x_pivot = by_letter['X'][0] if by_letter['X'] else None
        z_pivot = by_letter['Z'][0] if by_letter['Z'] else None
        if x_pivot is not None:
            for row in by_letter['X'][1:]:
                row.absorb(x_pivot)
            chosen.append(x_pivot)
        if z_pivot is not None:
            for row in by_letter['Z'][1:]:
                row.absorb(z_pivot)
            chosen.append(z_pivot)
        if x_pivot is not None and z_pivot is not None:
            for row in by_letter['Y']:
                row.absorb(x_pivot)
                row.absorb(z_pivot)
        elif by_letter['Y']:
            y_pivot = by_letter['Y'][0]
            for row in by_letter['Y'][1:]:
                row.absorb(y_pivot)
            chosen.append(y_pivot)

        for row in chosen:
            pivots.append((column, _LETTER_RANK[row.op.letter(column)], row.op))
            logger.debug(f"Pivot at column {column}: {row.sign:+d} {row.op}")
        active = [row for row in active if all(row is not pivot for pivot in chosen)]

    for row in active:
        if not row.op.is_identity:
            raise ConsistencyError(f"row {row.op} survived elimination")
        if row.sign < 0:
            # a product of signed inputs equal to -I: a relation among the inputs
            logger.debug("Elimination left a -I row")

    return [op for _, _, op in sorted(pivots, key=lambda item: (item[0], item[1]))]


def decompose_over(generators: Sequence[PauliOp], op: PauliOp,
                   matrix: Optional[np.ndarray] = None,
                   representative: Optional[PauliOp] = None) -> Optional[TermDecomposition]:
    """
    Express ``op`` as ±Π G_j (· representative), or None if it is outside the group

    Solves for the generator subset over GF(2), then fixes the sign with
    one exact product.
    """
    n = op.n
    if matrix is None:
        matrix = symplectic_matrix(list(generators), n)
    target = op
    if representative is not None:
        target = PauliOp(n, op.x ^ representative.x, op.z ^ representative.z)
    solution = gf2_solve(matrix, symplectic_matrix([target], n)[0])
    if solution is None:
        return None

    indices = tuple(int(j) for j in np.flatnonzero(solution))
    factors = [generators[j] for j in indices]
    if representative is not None:
        factors.append(representative)
    phase, product = multiply_all(factors, n)
    if product != op or not phase.is_real:
        raise ConsistencyError(f"product of factors for {op} gave {phase} {product}")
    return TermDecomposition(sign=phase.sign, generator_indices=indices)


def reconstruct(generator_set: GeneratorSet, decomposition: TermDecomposition) -> Tuple[Phase, PauliOp]:
    """sign · Π G_j · (C_{i1}) evaluated with exact phases"""
    factors = [generator_set.generators[j] for j in decomposition.generator_indices]
    if decomposition.clique_index is not None:
        factors.append(generator_set.representatives[decomposition.clique_index])
    phase, product = multiply_all(factors, generator_set.n)
    return phase * Phase.from_sign(decomposition.sign), product


def verify_decomposition(generator_set: GeneratorSet, decomposition: TermDecomposition, op: PauliOp) -> bool:
    phase, product = reconstruct(generator_set, decomposition)
    return product == op and phase.exponent == 0


def reduce_to_independent(rows: Sequence[Tuple[Phase, PauliOp]]) -> Tuple[List[PauliOp], List[TermDecomposition]]:
    """
    Reduce mutually commuting signed operators to an independent set G

    Returns G and, for every signed input phase·op, the decomposition with
    phase·op = sign·Π G_j. |G| equals the GF(2) rank of the inputs.
    """
    if not rows:
        return [], []
    ops = [op for _, op in rows]
    n = ops[0].n
    if not commutation_matrix(ops).all():
        raise ContractViolationError('reduce_to_independent', 'input operators do not all commute')

    signed = []
    for phase, op in rows:
        if not phase.is_real:
            raise ContractViolationError('reduce_to_independent', f"input {op} carries imaginary phase {phase}")
        signed.append(_SignedRow(phase.sign, op))

    generators = _eliminate(signed, n)

    matrix = symplectic_matrix(generators, n)
    expansions = []
    for phase, op in rows:
        decomposition = decompose_over(generators, op, matrix=matrix)
        if decomposition is None:
            raise ConsistencyError(f"{op} is not generated by the reduced set")
        expansions.append(TermDecomposition(phase.sign * decomposition.sign, decomposition.generator_indices))
    return generators, expansions


def verify_independent(ops: Sequence[PauliOp]) -> bool:
    """For commuting operators, independence is GF(2) linear independence"""
    if not ops:
        return True
    return gf2_rank(symplectic_matrix(list(ops))) == len(ops)


def validate_generator_set(generator_set: GeneratorSet) -> GeneratorSet:
    """Check the size bounds and commutation pattern of R"""
    n = generator_set.n
    gens, reps = generator_set.generators, generator_set.representatives
    if reps and len(gens) > n - 1:
        raise ConsistencyError(f"|G|={len(gens)} exceeds n-1={n - 1} with cliques present")
    if len(gens) > n or generator_set.size > 2 * n + 1:
        raise ConsistencyError(f"|R|={generator_set.size} exceeds 2n+1={2 * n + 1}")
    if not verify_independent(gens):
        raise ConsistencyError("generators are not independent")
    for i, g in enumerate(gens):
        for other in gens[i + 1:]:
            if not commutes(g, other):
                raise ConsistencyError(f"generators {g} and {other} anticommute")
        for rep in reps:
            if not commutes(g, rep):
                raise ConsistencyError(f"generator {g} anticommutes with representative {rep}")
    for i, rep in enumerate(reps):
        for other in reps[i + 1:]:
            if commutes(rep, other):
                raise ConsistencyError(f"representatives {rep} and {other} commute")
    return generator_set


def build_R(structure: NoncontextualStructure,
            hamiltonian: Hamiltonian) -> Tuple[GeneratorSet, Dict[str, TermDecomposition]]:
    """
    Generator set plus a verified decomposition of every non-identity term

    Universal terms decompose over G alone; a clique member C_ij is
    expanded as ±(Π G_j)·C_i1.
    """
    support = set(hamiltonian.ops)
    if support != set(structure.ops):
        raise ContractViolationError('build_R', 'structure does not match the Hamiltonian support')

    n = hamiltonian.n
    generators, _ = reduce_to_independent(build_gprime(structure))
    generator_set = validate_generator_set(GeneratorSet(
        n=n,
        generators=tuple(generators),
        representatives=structure.representatives,
    ))

    matrix = symplectic_matrix(generators, n)
    clique_of = structure.clique_index()
    decompositions: Dict[str, TermDecomposition] = {}
    for term in hamiltonian.terms:
        index = clique_of[term.op]
        representative = None if index is None else generator_set.representatives[index]
        decomposition = decompose_over(generators, term.op, matrix=matrix, representative=representative)
        if decomposition is None:
            raise ConsistencyError(f"term {term.label} is outside the group generated by R")
        decomposition = TermDecomposition(decomposition.sign, decomposition.generator_indices, index)
        if not verify_decomposition(generator_set, decomposition, term.op):
            raise ConsistencyError(f"reconstruction of {term.label} failed")
        decompositions[term.label] = decomposition

    logger.info(
        f"Generator set: |G|={generator_set.generator_count}, N={generator_set.clique_count}, "
        f"|R|={generator_set.size}"
    )
    return generator_set, decompositions


def generators_for(hamiltonian: Hamiltonian) -> Tuple[NoncontextualStructure, GeneratorSet, Dict[str, TermDecomposition]]:
    """Structure, generator set and decompositions of a noncontextual Hamiltonian"""
    structure = build_structure(hamiltonian.ops)
    generator_set, decompositions = build_R(structure, hamiltonian)
    return structure, generator_set, decompositions
