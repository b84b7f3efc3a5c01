"""
The quasi-quantized model over a generator set R = G ∪ {C_i1}

An epistemic state (q, r) fixes every generator value and gives each
clique representative the expectation r_i; every other term's expectation
follows from its signed decomposition over R.
"""
from typing import Dict, List, Mapping, Sequence, Tuple
import logging
import math

import numpy as np
from django.conf import settings

from core.exceptions import DimensionMismatchError, DistributionSizeError, EpistemicStateError, ObjectiveError
from epistemic.models import EpistemicState, ObjectiveFunction, ObjectiveTerm, OntologyTable
from generators.models import GeneratorSet, TermDecomposition
from hamiltonians.models import Hamiltonian
from pauli.models import PauliOp

logger = logging.getLogger(__name__)

TABLE_NORMALIZATION_TOLERANCE = 1e-12


def compile_objective(hamiltonian: Hamiltonian, generator_set: GeneratorSet,
                      decompositions: Mapping[str, TermDecomposition]) -> ObjectiveFunction:
    """Fold every term's sign into h_B or h_Bi, aggregated by generator subset"""
    n_cliques = generator_set.clique_count
    rows: Dict[Tuple[int, ...], List] = {}
    for term in hamiltonian.terms:
        decomposition = decompositions.get(term.label)
        if decomposition is None:
            raise ObjectiveError(f"no decomposition for term {term.label}")
        row = rows.setdefault(decomposition.generator_indices, [0.0, [0.0] * n_cliques])
        weight = decomposition.sign * term.coefficient
        if decomposition.clique_index is None:
            row[0] += weight
        else:
            row[1][decomposition.clique_index] += weight

    terms = tuple(
        ObjectiveTerm(generator_indices=key, h_b=value[0], h_bi=tuple(value[1]))
        for key, value in sorted(rows.items())
    )
    objective = ObjectiveFunction(
        constant=hamiltonian.identity_offset,
        generator_count=generator_set.generator_count,
        clique_count=n_cliques,
        terms=terms,
        generator_labels=tuple(generator_set.generator_labels()),
        representative_labels=tuple(generator_set.representative_labels()),
    )
    logger.debug(f"Compiled objective: {len(terms)} generator subsets from {len(hamiltonian.terms)} terms")
    return objective


def _check_dimensions(objective: ObjectiveFunction, state: EpistemicState):
    if state.generator_count != objective.generator_count:
        raise DimensionMismatchError(objective.generator_count, state.generator_count,
                                     message=f"q has {state.generator_count} entries, objective has {objective.generator_count} generators")
    if state.clique_count != objective.clique_count:
        raise DimensionMismatchError(objective.clique_count, state.clique_count,
                                     message=f"r has {state.clique_count} entries, objective has {objective.clique_count} cliques")


def evaluate_objective(objective: ObjectiveFunction, state: EpistemicState) -> float:
    _check_dimensions(objective, state)
    q, r = state.q, state.r
    energy = objective.constant
    for term in objective.terms:
        parity = 1
        for j in term.generator_indices:
            parity *= q[j]
        value = term.h_b
        for i, coefficient in enumerate(term.h_bi):
            value += coefficient * r[i]
        energy += value * parity
    return energy


def expectation_of_term(decomposition: TermDecomposition, state: EpistemicState) -> float:
    """ε·Π q_j, times r_i for clique members"""
    value = float(decomposition.sign)
    for j in decomposition.generator_indices:
        value *= state.q[j]
    if decomposition.clique_index is not None:
        value *= state.r[decomposition.clique_index]
    return value


def energy_by_terms(hamiltonian: Hamiltonian, decompositions: Mapping[str, TermDecomposition],
                    state: EpistemicState) -> float:
    """Σ coefficient·⟨term⟩ + offset, term by term"""
    energy = hamiltonian.identity_offset
    for term in hamiltonian.terms:
        energy += term.coefficient * expectation_of_term(decompositions[term.label], state)
    return energy


def joint_distribution(state: EpistemicState, generator_set: GeneratorSet, max_bits: int = None) -> OntologyTable:
    """
    P(c, g) = Π_j δ(g_j, q_j) · Π_i ½|c_i + r_i|

    The table is a Kronecker product of per-coordinate factors.
    """
    if state.generator_count != generator_set.generator_count or state.clique_count != generator_set.clique_count:
        raise DimensionMismatchError(
            (generator_set.generator_count, generator_set.clique_count),
            (state.generator_count, state.clique_count),
        )
    limit = settings.NCSIM_JOINT_TABLE_MAX_BITS if max_bits is None else max_bits
    bits = state.clique_count + state.generator_count
    if bits > limit:
        raise DistributionSizeError(bits, limit)

    table = np.ones(1, dtype=float)
    for r_i in state.r:
        table = np.kron(table, np.array([0.5 * abs(1.0 + r_i), 0.5 * abs(-1.0 + r_i)]))
    for q_j in state.q:
        table = np.kron(table, np.array([1.0, 0.0]) if q_j == 1 else np.array([0.0, 1.0]))
    return OntologyTable(state.clique_count, state.generator_count, table)


def marginal_expectations(table: OntologyTable) -> Tuple[np.ndarray, np.ndarray]:
    """⟨G_j⟩ and ⟨C_i1⟩ as 2p - 1 of each coordinate's +1 marginal"""
    probabilities = np.asarray(table.probabilities, dtype=float)
    if probabilities.shape != (1 << table.bits,):
        raise EpistemicStateError(f"table has {probabilities.size} entries for {table.bits} coordinates")
    if np.any(probabilities < 0):
        raise EpistemicStateError("table has negative probabilities")
    total = math.fsum(probabilities)
    if abs(total - 1.0) > TABLE_NORMALIZATION_TOLERANCE:
        raise EpistemicStateError(f"table sums to {total!r}")

    cube = probabilities.reshape((2,) * table.bits) if table.bits else probabilities.reshape(())
    expectations = np.empty(table.bits, dtype=float)
    for axis in range(table.bits):
        others = tuple(a for a in range(table.bits) if a != axis)
        plus = cube.sum(axis=others)[0] if others else cube[0]
        expectations[axis] = 2.0 * plus - 1.0
    return expectations[table.clique_count:], expectations[:table.clique_count]


def observable_A(generator_set: GeneratorSet, r: Sequence[float]) -> List[Tuple[float, PauliOp]]:
    """Σ r_i C_i1 as weighted operators; squares to the identity when |r| = 1"""
    if len(r) != generator_set.clique_count:
        raise DimensionMismatchError(generator_set.clique_count, len(r))
    return [(float(weight), op) for weight, op in zip(r, generator_set.representatives)]


def parse_state(objective: ObjectiveFunction, q_values: Mapping[str, int], r_values: Mapping[str, float]) -> EpistemicState:
    """Build a state from label-keyed maps in the objective's coordinate order"""
    missing_q = set(objective.generator_labels) - set(q_values)
    missing_r = set(objective.representative_labels) - set(r_values)
    extra = (set(q_values) - set(objective.generator_labels)) | (set(r_values) - set(objective.representative_labels))
    if missing_q or missing_r or extra:
        raise EpistemicStateError(
            f"state labels do not match generators {list(objective.generator_labels)} "
            f"and representatives {list(objective.representative_labels)}"
        )
    return EpistemicState(
        tuple(q_values[label] for label in objective.generator_labels),
        tuple(r_values[label] for label in objective.representative_labels),
    )
