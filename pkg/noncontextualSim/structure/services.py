"""
Noncontextuality criterion and the universal/clique partition

A term set S is noncontextual when commutation is an equivalence relation
on T, the members of S that fail to commute with everything. The classes
are the cliques; members of different cliques anticommute.
"""
from typing import Iterable, List, Optional, Sequence, Set, Tuple
import logging

import numpy as np

from core.exceptions import InfeasibleInstanceError, SizeLimitError, StructureError
from hamiltonians.models import Hamiltonian, PauliTerm
from pauli.models import PauliOp
from pauli.services import canonical_order, commutation_matrix, commutes, multiply
from structure.models import NoncontextualStructure

logger = logging.getLogger(__name__)


def _prepare(ops: Iterable[PauliOp]) -> List[PauliOp]:
    """Drop identities and duplicates, then sort canonically"""
    return canonical_order({op for op in ops if not op.is_identity})


def partition(ops: Sequence[PauliOp]) -> Tuple[List[PauliOp], List[PauliOp]]:
    """Split into (Z, T): operators commuting with all of ``ops``, and the rest"""
    ops = _prepare(ops)
    if not ops:
        return [], []
    universal_mask = commutation_matrix(ops).all(axis=1)
    universal = [op for op, flag in zip(ops, universal_mask) if flag]
    rest = [op for op, flag in zip(ops, universal_mask) if not flag]
    return universal, rest


def contextuality_certificate(ops: Sequence[PauliOp]) -> Optional[Tuple[PauliOp, PauliOp, PauliOp]]:
    """
    First (A, B, C) in canonical order with A~B, B~C and A, C anticommuting

    Only T is searched: a universal B would commute with any A and C.
    Returns None when the set is noncontextual.
    """
    _, rest = partition(ops)
    if len(rest) < 3:
        return None
    comm = commutation_matrix(rest)
    for a in range(len(rest)):
        row = comm[a]
        for b in np.flatnonzero(row):
            if b == a:
                continue
            violating = np.flatnonzero(comm[b] & ~row)
            if violating.size:
                return rest[a], rest[b], rest[violating[0]]
    return None


def is_noncontextual(ops: Sequence[PauliOp]) -> bool:
    return contextuality_certificate(ops) is None


def build_structure(ops: Sequence[PauliOp]) -> NoncontextualStructure:
    """
    Partition a noncontextual set into Z and cliques

    Each member of T joins the first clique whose representative it
    commutes with; since T is canonically ordered the representative is the
    smallest member and cliques come out ordered by representative.
    """
    ops = _prepare(ops)
    n = ops[0].n if ops else 0
    certificate = contextuality_certificate(ops)
    if certificate is not None:
        raise StructureError(triple=certificate)

    universal, rest = partition(ops)
    cliques: List[List[PauliOp]] = []
    for op in rest:
        for clique in cliques:
            if commutes(clique[0], op):
                clique.append(op)
                break
        else:
            cliques.append([op])

    structure = NoncontextualStructure(
        n=n,
        universal=tuple(universal),
        cliques=tuple(tuple(clique) for clique in cliques),
    ).validate()
    logger.debug(
        f"Structure: |Z|={len(structure.universal)}, N={structure.clique_count}, "
        f"representatives={[str(op) for op in structure.representatives]}"
    )
    return structure


def closure_under_inference(ops: Sequence[PauliOp], limit: int = 4096) -> Set[PauliOp]:
    """Smallest superset closed under products of commuting pairs, signs ignored"""
    closed = set(_prepare(ops))
    frontier = list(closed)
    while frontier:
        fresh = []
        current = list(closed)
        for p in frontier:
            for q in current:
                if p == q or not commutes(p, q):
                    continue
                _, product = multiply(p, q)
                if not product.is_identity and product not in closed:
                    closed.add(product)
                    fresh.append(product)
                    if len(closed) > limit:
                        raise SizeLimitError(len(closed), limit, what="Closure size")
        frontier = fresh
    return closed


# ----------------------------------------------------------------------------
# Random instances
# ----------------------------------------------------------------------------

def ladder_family(n: int, start: int = 0) -> List[PauliOp]:
    """
    2m+1 pairwise anticommuting strings on qubits start..n-1 (m = n - start)

    Z..Z X I..I and Z..Z Y I..I for each position, plus the all-Z string.
    """
    family = []
    prefix = 0
    for qubit in range(start, n):
        bit = 1 << qubit
        family.append(PauliOp(n, bit, prefix))
        family.append(PauliOp(n, bit, prefix | bit))
        prefix |= bit
    if n > start:
        family.append(PauliOp(n, 0, prefix))
    return family


def _conjugate(op: PauliOp, move: Tuple[str, int, int]) -> PauliOp:
    """Apply one elementary Clifford move to the symplectic bits (sign dropped)"""
    kind, a, b = move
    x, z = op.x, op.z
    abit, bbit = 1 << a, 1 << b
    if kind == 'H':
        xa, za = x & abit, z & abit
        x = (x & ~abit) | za
        z = (z & ~abit) | xa
    elif kind == 'S':
        if x & abit:
            z ^= abit
    else:
        # CNOT control a, target b
        if x & abit:
            x ^= bbit
        if z & bbit:
            z ^= abit
    return PauliOp(op.n, x, z)


def random_clifford_moves(n: int, rng: np.random.Generator, count: int = None) -> List[Tuple[str, int, int]]:
    count = 4 * n if count is None else count
    moves = []
    for _ in range(count):
        kind = rng.choice(['H', 'S', 'CNOT']) if n > 1 else rng.choice(['H', 'S'])
        a = int(rng.integers(n))
        b = a
        if kind == 'CNOT':
            b = int(rng.integers(n - 1))
            b = b + 1 if b >= a else b
        moves.append((str(kind), a, b))
    return moves


def scramble(ops: Sequence[PauliOp], moves: Sequence[Tuple[str, int, int]]) -> List[PauliOp]:
    """Conjugate every operator by the same Clifford sequence; commutation is preserved"""
    result = []
    for op in ops:
        for move in moves:
            op = _conjugate(op, move)
        result.append(op)
    return result


def random_anticommuting_family(n: int, size: int, seed=None) -> List[PauliOp]:
    """``size`` pairwise anticommuting strings on n qubits, size ≤ 2n+1"""
    if not 0 <= size <= 2 * n + 1:
        raise InfeasibleInstanceError(n, size, 0)
    rng = np.random.default_rng(seed)
    family = ladder_family(n)
    chosen = [family[i] for i in sorted(rng.choice(len(family), size=size, replace=False))]
    return scramble(chosen, random_clifford_moves(n, rng))


def random_noncontextual_instance(n: int, cliques: int, generators: int, seed=None) -> Hamiltonian:
    """
    Random Hamiltonian whose support has N cliques over g generators

    Generators are Z on qubits 0..g-1; clique representatives come from a
    ladder family on the other qubits and clique members are representatives
    times products of generators. A single clique commutes with everything,
    so N = 1 folds into the universal set and the analysed structure has
    N = 0 with |G| = g + 1.
    """
    n_cliques, g = cliques, generators
    free = n - g
    if (
        n < 1 or n_cliques < 0 or g < 0 or g > n
        or (n_cliques >= 1 and g > n - 1)
        or n_cliques > 2 * free + 1
    ):
        raise InfeasibleInstanceError(n, n_cliques, g)

    rng = np.random.default_rng(seed)
    ops: List[PauliOp] = []

    # Triangular masks guarantee rank g
    masks = set()
    for j in range(g):
        lower = int(rng.integers(0, 1 << j)) if j else 0
        masks.add((1 << j) | lower)
    if g:
        for _ in range(int(rng.integers(0, 3))):
            masks.add(int(rng.integers(1, 1 << g)))
    ops.extend(PauliOp(n, 0, mask) for mask in sorted(masks))

    family = ladder_family(n, start=g)
    if n_cliques:
        picks = sorted(int(i) for i in rng.choice(len(family), size=n_cliques, replace=False))
        for pick in picks:
            rep = family[pick]
            ops.append(rep)
            if g:
                extra = min(int(rng.integers(0, 3)), (1 << g) - 1)
                member_masks = set()
                while len(member_masks) < extra:
                    member_masks.add(int(rng.integers(1, 1 << g)))
                ops.extend(PauliOp(n, rep.x, rep.z ^ mask) for mask in sorted(member_masks))

    ops = canonical_order(scramble(ops, random_clifford_moves(n, rng)))
    coefficients = rng.uniform(-1.0, 1.0, size=len(ops))
    terms = tuple(PauliTerm(op, float(c)) for op, c in zip(ops, coefficients))
    logger.debug(f"Random instance n={n} N={n_cliques} g={g} seed={seed}: {len(terms)} terms")
    return Hamiltonian(n=n, terms=terms)
