"""
Loading, validation and serialization of Pauli Hamiltonians

The text format is a JSON object mapping Pauli labels to coefficients,
the same ``{Pauli operator: coefficient}`` shape the published tables use.
"""
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Tuple, Union
import json
import logging
import sys

from core.exceptions import HamiltonianFormatError
from hamiltonians.models import Hamiltonian, PauliTerm
from hamiltonians.serializers import HamiltonianSerializer
from pauli.services import parse_pauli

logger = logging.getLogger(__name__)

FIXTURE_DIR = Path(__file__).resolve().parent / 'fixtures'
EXPECTATIONS_FILE = 'expected.json'


def _reject_duplicates(pairs: List[Tuple[str, object]]) -> Dict[str, object]:
    mapping = {}
    for key, value in pairs:
        if key in mapping:
            raise HamiltonianFormatError(f"duplicate key {key!r}")
        mapping[key] = value
    return mapping


def _reject_constant(name: str):
    raise HamiltonianFormatError(f"non-finite coefficient {name}")


def _first_error(errors) -> str:
    if isinstance(errors, dict):
        key, value = next(iter(errors.items()))
        inner = _first_error(value)
        return inner if key in ('terms', 'non_field_errors') else f"{key}: {inner}"
    if isinstance(errors, (list, tuple)) and errors:
        return _first_error(errors[0])
    return str(errors)


def hamiltonian_from_mapping(mapping: Mapping[str, float]) -> Hamiltonian:
    """Build a Hamiltonian from an already validated label map, keeping its order"""
    n = 0
    offset = 0.0
    has_identity = False
    terms = []
    for label, coefficient in mapping.items():
        op = parse_pauli(label)
        n = op.n
        if op.is_identity:
            offset = float(coefficient)
            has_identity = True
            continue
        terms.append(PauliTerm(op, float(coefficient)))
    return Hamiltonian(n=n, terms=tuple(terms), identity_offset=offset, has_identity_term=has_identity)


def load_hamiltonian(text: Union[str, bytes, object]) -> Hamiltonian:
    """
    Parse and validate Hamiltonian text

    Accepts a string or a readable character stream. The identity string
    goes to ``identity_offset``; duplicate keys, mixed label lengths and
    non-finite values are rejected.
    """
    if hasattr(text, 'read'):
        text = text.read()
    if isinstance(text, bytes):
        text = text.decode('utf-8')

    try:
        data = json.loads(text, object_pairs_hook=_reject_duplicates, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise HamiltonianFormatError(f"malformed syntax at line {exc.lineno} column {exc.colno}: {exc.msg}")

    if not isinstance(data, dict):
        raise HamiltonianFormatError("expected an object mapping Pauli labels to coefficients")

    serializer = HamiltonianSerializer(data={'terms': data})
    if not serializer.is_valid():
        raise HamiltonianFormatError(_first_error(serializer.errors))

    hamiltonian = hamiltonian_from_mapping(serializer.validated_data['terms'])

    if hamiltonian.zero_terms:
        logger.warning(f"Terms with zero coefficient kept: {', '.join(hamiltonian.zero_terms)}")
    logger.info(f"Loaded Hamiltonian: {hamiltonian.n} qubits, {hamiltonian.term_count} terms")
    return hamiltonian


def serialize_hamiltonian(hamiltonian: Hamiltonian) -> str:
    """Inverse of load_hamiltonian; floats are written with their shortest exact repr"""
    mapping = hamiltonian.as_mapping()
    if not mapping:
        return '{}'
    return json.dumps(mapping, indent=4)


def fixture_names() -> List[str]:
    return sorted(
        path.stem for path in FIXTURE_DIR.glob('*.json') if path.name != EXPECTATIONS_FILE
    )


def fixture_path(name: str) -> Path:
    """Resolve ``heh+_noncon``, ``fixtures/heh+_noncon`` or ``heh+_noncon.json``"""
    stem = Path(name).name
    if stem.endswith('.json'):
        stem = stem[:-5]
    path = FIXTURE_DIR / f'{stem}.json'
    if stem == Path(EXPECTATIONS_FILE).stem or not path.exists():
        raise HamiltonianFormatError(
            f"no such input file or fixture {name!r} (fixtures: {', '.join(fixture_names())})"
        )
    return path


def load_fixture(name: str) -> Hamiltonian:
    return load_hamiltonian(fixture_path(name).read_text(encoding='utf-8'))


def load_expectations() -> Dict[str, dict]:
    """Published term counts, error columns and witness settings per system"""
    return json.loads((FIXTURE_DIR / EXPECTATIONS_FILE).read_text(encoding='utf-8'))


def read_hamiltonian_source(source: str, stdin=None) -> Hamiltonian:
    """Load from ``-`` (standard input), a file path, or a bundled fixture name"""
    if source == '-':
        return load_hamiltonian(stdin if stdin is not None else sys.stdin)
    path = Path(source)
    if path.is_file():
        try:
            return load_hamiltonian(path.read_text(encoding='utf-8'))
        except UnicodeDecodeError:
            raise HamiltonianFormatError(f"{source} is not UTF-8 text")
    return load_fixture(source)


def hamiltonian_from_terms(terms: Iterable[Tuple[str, float]]) -> Hamiltonian:
    """Convenience constructor from (label, coefficient) pairs"""
    return hamiltonian_from_mapping(_reject_duplicates(list(terms)))
