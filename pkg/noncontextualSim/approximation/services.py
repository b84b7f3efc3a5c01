"""
Noncontextual and diagonal approximations of contextual Hamiltonians
"""
from itertools import combinations
from typing import Dict, List, Sequence, Tuple
import concurrent.futures
import logging

import numpy as np
from django.conf import settings

from approximation.models import ApproximationReport
from core.exceptions import ContractViolationError, SizeLimitError
from core.utils import log_duration
from hamiltonians.models import Hamiltonian, PauliTerm
from hamiltonians.services import load_expectations, load_fixture
from oracle.services import ground_energy
from pauli.services import is_diagonal
from solver.services import solve_hamiltonian
from structure.services import is_noncontextual

logger = logging.getLogger(__name__)

ORDER_MAGNITUDE = 'magnitude'
ORDER_TABLE = 'table'

# Published systems and the bundled full Hamiltonian for each
TABLE_SYSTEMS = ('heh+', 'lih_hempel', 'lih_kandala', 'beh2')


def candidate_order(hamiltonian: Hamiltonian, order: str = ORDER_MAGNITUDE) -> List[PauliTerm]:
    """
    Greedy visiting order

    ``magnitude``: decreasing |coefficient|, ties by label. ``table``: the
    input order. Zero coefficients come last either way.
    """
    terms = list(hamiltonian.terms)
    if order == ORDER_MAGNITUDE:
        return sorted(terms, key=lambda term: (-abs(term.coefficient), term.label))
    if order == ORDER_TABLE:
        return [term for _, term in sorted(enumerate(terms), key=lambda item: (item[1].coefficient == 0.0, item[0]))]
    raise ContractViolationError('candidate_order', f"unknown order {order!r}")


def _best_window_subset(kept, window: Sequence[PauliTerm], workers: int) -> Tuple[PauliTerm, ...]:
    """Heaviest subset of the window that keeps the set noncontextual"""
    subsets = []
    for size in range(len(window), 0, -1):
        for chosen in combinations(range(len(window)), size):
            weight = sum(abs(window[i].coefficient) for i in chosen)
            subsets.append((-weight, chosen))
    subsets.sort()

    def check(entry):
        _, chosen = entry
        return is_noncontextual(kept + [window[i].op for i in chosen])

    if workers > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
            verdicts = list(executor.map(check, subsets))
    else:
        verdicts = [check(entry) for entry in subsets]

    for entry, passed in zip(subsets, verdicts):
        if passed:
            return tuple(window[i] for i in entry[1])
    return ()


@log_duration(threshold=1.0)
def greedy_noncontextual(hamiltonian: Hamiltonian, batch: int = 1, order: str = ORDER_MAGNITUDE,
                         workers: int = None) -> Hamiltonian:
    """
    Keep terms while the kept set stays noncontextual

    With ``batch`` k > 1 the next k candidates are examined together and
    the heaviest noncontextual-preserving subset of them is kept; the rest
    of the window is rejected. k = 1 is the one-by-one rule. The identity
    offset is always kept.
    """
    if batch < 1:
        raise ContractViolationError('greedy_noncontextual', f"batch must be positive, got {batch}")
    workers = settings.NCSIM_WORKERS if workers is None else workers

    candidates = candidate_order(hamiltonian, order)
    kept_ops = []
    kept_labels = []
    for start in range(0, len(candidates), batch):
        window = candidates[start:start + batch]
        if batch == 1:
            accepted = tuple(window) if is_noncontextual(kept_ops + [window[0].op]) else ()
        else:
            accepted = _best_window_subset(kept_ops, window, workers)
        for term in window:
            if term in accepted:
                kept_ops.append(term.op)
                kept_labels.append(term.label)
                logger.debug(f"Greedy kept {term.label} ({term.coefficient!r})")
            else:
                logger.debug(f"Greedy rejected {term.label} ({term.coefficient!r})")

    result = hamiltonian.subset(kept_labels)
    logger.info(f"Greedy selection kept {result.term_count} of {hamiltonian.term_count} terms")
    return result


def diagonal_subset(hamiltonian: Hamiltonian) -> Hamiltonian:
    return hamiltonian.subset([term.label for term in hamiltonian.terms if is_diagonal(term.op)])


def diagonal_ground_energy(hamiltonian: Hamiltonian, max_qubits: int = None) -> float:
    """Minimum over computational basis states of a diagonal Hamiltonian"""
    off_diagonal = [term.label for term in hamiltonian.terms if not is_diagonal(term.op)]
    if off_diagonal:
        raise ContractViolationError('diagonal_ground_energy', f"off-diagonal terms {off_diagonal[:3]}")
    n = hamiltonian.n
    limit = settings.NCSIM_DIAGONAL_MAX_QUBITS if max_qubits is None else max_qubits
    if n > limit:
        raise SizeLimitError(n, limit, what="Qubit count")

    basis = np.arange(1 << n, dtype=np.int64)
    energies = np.full(basis.shape, hamiltonian.identity_offset, dtype=float)
    for term in hamiltonian.terms:
        parity = np.zeros(basis.shape, dtype=np.int64)
        for qubit in range(n):
            if (term.op.z >> qubit) & 1:
                parity ^= (basis >> qubit) & 1
        energies += term.coefficient * (1.0 - 2.0 * parity)
    return float(energies.min())


def brute_force_noncontextual(hamiltonian: Hamiltonian, reference: float = None,
                              max_terms: int = None, **solve_options) -> Hamiltonian:
    """
    Noncontextual sub-Hamiltonian whose ground energy is closest to ``reference``

    Every subset of the non-identity terms is tried; ties prefer more
    terms, then the earlier subset in input order.
    """
    limit = settings.NCSIM_BRUTE_FORCE_MAX_TERMS if max_terms is None else max_terms
    labels = hamiltonian.labels()
    if len(labels) > limit:
        raise SizeLimitError(len(labels), limit, what="Brute-force term count")
    if reference is None:
        reference = ground_energy(hamiltonian)

    ops = hamiltonian.ops
    best_key, best_labels = None, []
    checked = 0
    for mask in range(1 << len(labels)):
        chosen = [i for i in range(len(labels)) if (mask >> i) & 1]
        if not is_noncontextual([ops[i] for i in chosen]):
            continue
        checked += 1
        subset = hamiltonian.subset([labels[i] for i in chosen])
        energy = solve_hamiltonian(subset, **solve_options).result.energy
        key = (abs(energy - reference), -len(chosen), mask)
        if best_key is None or key < best_key:
            best_key, best_labels = key, [labels[i] for i in chosen]

    logger.info(f"Brute force: {checked} noncontextual subsets of {1 << len(labels)}")
    return hamiltonian.subset(best_labels)


def approximation_report(hamiltonian: Hamiltonian, chem_accuracy: float = None, batch: int = 1,
                         order: str = ORDER_MAGNITUDE, brute_force: bool = False,
                         workers: int = None, seed=None, max_qubits: int = None) -> ApproximationReport:
    """Full, noncontextual and diagonal ground energies with errors in chemical-accuracy units"""
    chem_accuracy = settings.NCSIM_CHEM_ACCURACY if chem_accuracy is None else chem_accuracy
    if chem_accuracy <= 0:
        raise ContractViolationError('approximation_report', 'chemical accuracy must be positive')

    full_ground = ground_energy(hamiltonian, max_qubits=max_qubits)

    solve_options = {'seed': seed, 'workers': workers}
    if brute_force:
        noncon = brute_force_noncontextual(hamiltonian, reference=full_ground, **solve_options)
    else:
        noncon = greedy_noncontextual(hamiltonian, batch=batch, order=order, workers=workers)
    solution = solve_hamiltonian(noncon, **solve_options)

    diag_ground = diagonal_ground_energy(diagonal_subset(hamiltonian))

    report = ApproximationReport(
        full_ground=full_ground,
        noncon_ground=solution.result.energy,
        diag_ground=diag_ground,
        eps_noncon=abs(solution.result.energy - full_ground) / chem_accuracy,
        eps_diag=abs(diag_ground - full_ground) / chem_accuracy,
        kept_terms=tuple(noncon.as_mapping()),
        full_terms=hamiltonian.term_count,
        noncon_terms=noncon.term_count,
        generators=solution.generator_set.size,
        chem_accuracy=chem_accuracy,
        method='brute-force' if brute_force else 'greedy',
    )
    logger.info(
        f"Approximation: sizes={report.sizes}, eps_noncon={report.eps_noncon:.3f}, eps_diag={report.eps_diag:.3f}"
    )
    return report


def within_published(value: float, published: float) -> bool:
    """Published errors have two significant figures: allow 2% or 0.05 units"""
    return abs(value - published) <= max(0.02 * abs(published), 0.05)


def table_rows(**options) -> List[Dict]:
    """Computed and published rows for every bundled system"""
    expectations = load_expectations()
    rows = []
    for system in TABLE_SYSTEMS:
        published = expectations[system]
        report = approximation_report(load_fixture(f'{system}_full'), **options)
        rows.append({
            'system': system,
            'label': published['system'],
            'qubits': published['qubits'],
            'report': report,
            'published': published,
            'sizes_match': report.sizes == (
                published['full_terms'], published['noncon_terms'], published['generators']
            ),
            'eps_noncon_match': within_published(report.eps_noncon, published['eps_noncon']),
            'eps_diag_match': within_published(report.eps_diag, published['eps_diag']),
        })
    return rows
