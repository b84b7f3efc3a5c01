"""
Ground-state search over epistemic states

For fixed q the objective is h0(q) + a(q)·r, minimized over the unit
sphere at r = -a/|a| with value h0 - |a|. The outer problem over
q ∈ {±1}^|G| is enumerated exhaustively for small |G| and otherwise
handled by a seeded multi-restart local search.
"""
from typing import Sequence, Tuple
import concurrent.futures
import json
import logging
import math

import numpy as np
from django.conf import settings

from core.exceptions import ContractViolationError, DimensionMismatchError, EpistemicStateError
from core.utils import log_duration
from epistemic.models import EpistemicState, ObjectiveFunction
from epistemic.services import compile_objective, evaluate_objective
from generators.services import generators_for
from hamiltonians.models import Hamiltonian
from solver.models import EXHAUSTIVE, LOCAL_SEARCH, GroundResult, NoncontextualSolution, ReducedCoefficients
from solver.serializers import WitnessSerializer

logger = logging.getLogger(__name__)

BLOCK_SIZE = 1 << 14
TIE_TOLERANCE = 1e-12


def _parities(values: np.ndarray) -> np.ndarray:
    """Bit parity of non-negative int64 values"""
    values = values.copy()
    for shift in (32, 16, 8, 4, 2, 1):
        values ^= values >> shift
    return values & 1


def _signs_from_q(objective: ObjectiveFunction, q: Sequence[int]) -> np.ndarray:
    """m_B(q) = Π_{j ∈ J_B} q_j for every objective row"""
    flipped = np.array([1 if value == -1 else 0 for value in q], dtype=np.int64)
    parity = (objective.incidence @ flipped) % 2 if len(q) else np.zeros(len(objective.terms), dtype=np.int64)
    return 1.0 - 2.0 * parity


def reduce_for_q(objective: ObjectiveFunction, q: Sequence[int]) -> ReducedCoefficients:
    if len(q) != objective.generator_count:
        raise DimensionMismatchError(objective.generator_count, len(q))
    signs = _signs_from_q(objective, q)
    h0 = objective.constant + float(signs @ objective.h_b_vector)
    a = signs @ objective.h_bi_matrix
    norm = float(np.linalg.norm(a))
    unit = tuple(float(value) for value in a / norm) if norm > 0 else None
    return ReducedCoefficients(h0=h0, a=tuple(float(value) for value in a), norm=norm, unit=unit)


def inner_minimize(reduced: ReducedCoefficients) -> Tuple[Tuple[float, ...], float]:
    """r* = -a/|a| with energy h0 - |a|; e_1 when a = 0; empty r without cliques"""
    size = len(reduced.a)
    if size == 0:
        return (), reduced.h0
    if reduced.norm > 0:
        return tuple(-value for value in reduced.unit), reduced.h0 - reduced.norm
    return (1.0,) + (0.0,) * (size - 1), reduced.h0


def _energies(objective: ObjectiveFunction, signs: np.ndarray) -> np.ndarray:
    """Reduced objective h0 - |a| for a batch of sign rows, shape (k, rows)"""
    h0 = objective.constant + signs @ objective.h_b_vector
    a = signs @ objective.h_bi_matrix
    return h0 - np.sqrt(np.einsum('ij,ij->i', a, a))


def _index_masks(objective: ObjectiveFunction) -> np.ndarray:
    """Row masks with generator j at bit |G|-1-j, so q_0 is the most significant"""
    g = objective.generator_count
    weights = np.array([1 << (g - 1 - j) for j in range(g)], dtype=np.int64)
    return objective.incidence @ weights if g else np.zeros(len(objective.terms), dtype=np.int64)


def _q_from_index(index: int, g: int) -> Tuple[int, ...]:
    return tuple(-1 if (index >> (g - 1 - j)) & 1 else 1 for j in range(g))


def _best_in_block(objective: ObjectiveFunction, masks: np.ndarray, start: int, stop: int) -> Tuple[float, int]:
    indices = np.arange(start, stop, dtype=np.int64)
    signs = 1.0 - 2.0 * _parities(indices[:, None] & masks[None, :])
    energies = _energies(objective, signs)
    best = float(energies.min())
    first = int(np.flatnonzero(energies <= best + TIE_TOLERANCE * max(1.0, abs(best)))[0])
    return best, start + first


def _exhaustive(objective: ObjectiveFunction, workers: int) -> Tuple[Tuple[int, ...], int]:
    g = objective.generator_count
    total = 1 << g
    masks = _index_masks(objective)
    blocks = [(start, min(start + BLOCK_SIZE, total)) for start in range(0, total, BLOCK_SIZE)]

    if workers > 1 and len(blocks) > 1:
        results = []
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
            future_to_block = {
                executor.submit(_best_in_block, objective, masks, start, stop): (start, stop)
                for start, stop in blocks
            }
            for future in concurrent.futures.as_completed(future_to_block):
                results.append(future.result())
    else:
        results = [_best_in_block(objective, masks, start, stop) for start, stop in blocks]

    # Merge independent of completion order: lowest energy, then lowest q index
    best = min(energy for energy, _ in results)
    tolerance = TIE_TOLERANCE * max(1.0, abs(best))
    index = min(index for energy, index in results if energy <= best + tolerance)
    return _q_from_index(index, g), total


def _local_search(objective: ObjectiveFunction, restarts: int, seed) -> Tuple[Tuple[int, ...], int]:
    """Steepest-descent single-bit flips from seeded random starts"""
    g = objective.generator_count
    rng = np.random.default_rng(seed)
    incidence = objective.incidence
    flip_effect = 1.0 - 2.0 * incidence.T.astype(float)
    evaluations = 0
    best_q, best_energy = None, math.inf

    for _ in range(max(1, restarts)):
        q = np.where(rng.integers(0, 2, size=g) == 1, -1, 1)
        signs = _signs_from_q(objective, q)
        energy = float(_energies(objective, signs[None, :])[0])
        evaluations += 1
        while g:
            neighbours = signs[None, :] * flip_effect
            energies = _energies(objective, neighbours)
            evaluations += g
            j = int(np.argmin(energies))
            if energies[j] < energy - TIE_TOLERANCE * max(1.0, abs(energy)):
                q[j] = -q[j]
                signs = neighbours[j]
                energy = float(energies[j])
            else:
                break
        candidate = tuple(int(value) for value in q)
        tolerance = TIE_TOLERANCE * max(1.0, abs(energy))
        if energy < best_energy - tolerance or (
            abs(energy - best_energy) <= tolerance and _lexicographic_key(candidate) < _lexicographic_key(best_q)
        ):
            best_q, best_energy = candidate, energy

    return best_q, evaluations


def _lexicographic_key(q):
    """+1 sorts before -1"""
    return tuple(0 if value == 1 else 1 for value in q)


@log_duration(threshold=1.0)
def solve_ground(objective: ObjectiveFunction, method: str = 'auto', threshold: int = None,
                 restarts: int = None, seed=None, workers: int = None) -> GroundResult:
    """
    Minimize the objective over epistemic states

    ``auto`` enumerates all 2^|G| assignments when |G| is at most the
    threshold; ties go to the lexicographically smallest q with +1 < -1.
    Local search returns an upper bound and is flagged as such.
    """
    threshold = settings.NCSIM_EXHAUSTIVE_THRESHOLD if threshold is None else threshold
    restarts = settings.NCSIM_LOCAL_SEARCH_RESTARTS if restarts is None else restarts
    seed = settings.NCSIM_SEED if seed is None else seed
    workers = settings.NCSIM_WORKERS if workers is None else workers

    g = objective.generator_count
    if method == 'auto':
        method = EXHAUSTIVE if g <= threshold else LOCAL_SEARCH
    if method == EXHAUSTIVE:
        if g > 62:
            raise ContractViolationError('solve_ground', f"exhaustive search over {g} generators")
        q, evaluations = _exhaustive(objective, workers)
    elif method == LOCAL_SEARCH:
        logger.warning(f"|G|={g}: using local search, the energy is an upper bound")
        q, evaluations = _local_search(objective, restarts, seed)
    else:
        raise ContractViolationError('solve_ground', f"unknown method {method!r}")

    r, _ = inner_minimize(reduce_for_q(objective, q))
    witness = EpistemicState(q, r)
    energy = evaluate_objective(objective, witness)
    logger.info(f"Ground solve ({method}): energy={energy!r} after {evaluations} q evaluations")
    return GroundResult(energy=energy, witness=witness, method=method, q_evaluations=evaluations)


def verify_witness(objective: ObjectiveFunction, state: EpistemicState, threshold: float) -> bool:
    """True iff the state's energy is strictly below the threshold"""
    return evaluate_objective(objective, state) < threshold


def solve_hamiltonian(hamiltonian: Hamiltonian, **options) -> NoncontextualSolution:
    """Structure, generators, objective and ground result for a noncontextual Hamiltonian"""
    structure, generator_set, decompositions = generators_for(hamiltonian)
    objective = compile_objective(hamiltonian, generator_set, decompositions)
    result = solve_ground(objective, **options)
    return NoncontextualSolution(
        hamiltonian=hamiltonian,
        structure=structure,
        generator_set=generator_set,
        decompositions=decompositions,
        objective=objective,
        result=result,
    )


def witness_document(solution: NoncontextualSolution) -> str:
    """Label-keyed witness as JSON text, readable by ``load_witness``"""
    q, r = solution.witness_maps()
    return json.dumps({'q': q, 'r': r}, indent=4)


def load_witness(text) -> Tuple[dict, dict]:
    """Parse a witness document into (q by generator label, r by representative label)"""
    if hasattr(text, 'read'):
        text = text.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise EpistemicStateError(f"witness is not valid JSON: {exc.msg}")
    serializer = WitnessSerializer(data=data)
    if not serializer.is_valid():
        field, errors = next(iter(serializer.errors.items()))
        raise EpistemicStateError(f"{field}: {errors[0] if isinstance(errors, list) else errors}")
    return dict(serializer.validated_data['q']), dict(serializer.validated_data['r'])
