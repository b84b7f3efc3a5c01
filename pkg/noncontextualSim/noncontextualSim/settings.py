"""
Django settings for noncontextualSim project.

The project has no database and no HTTP surface: Django provides the
settings layer, management commands, cache framework, logging setup and
the test runner for the simulation apps.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""


import os
from pathlib import Path
from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Load environment variables from .env file
load_dotenv(override=True)

# Nothing is signed or served; a local default keeps commands usable without a .env
SECRET_KEY = os.getenv('SECRET_KEY', 'noncontextualsim-local-only')

DEBUG = os.getenv('DEBUG', 'False') == 'True'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',

    'rest_framework',

    'core',
    'pauli',
    'hamiltonians',
    'structure',
    'generators',
    'epistemic',
    'solver',
    'oracle',
    'approximation',
]

# No ORM models; the dummy backend is what Django falls back to
DATABASES = {}

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

# DRF is used for validation and rendering only
REST_FRAMEWORK = {
    'UNAUTHENTICATED_USER': None,
    'COERCE_DECIMAL_TO_STRING': False,
}


# ==============================================================================
# SIMULATION SETTINGS
# ==============================================================================

def _env_int(name, default):
    value = os.getenv(name)
    if value in (None, ''):
        return default
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {value!r}")


def _env_float(name, default):
    value = os.getenv(name)
    if value in (None, ''):
        return default
    try:
        return float(value)
    except ValueError:
        raise ValueError(f"{name} must be a number, got {value!r}")


# Exhaustive q enumeration is used up to this many generators
NCSIM_EXHAUSTIVE_THRESHOLD = _env_int('NCSIM_EXHAUSTIVE_THRESHOLD', 22)

# Local search beyond the threshold
NCSIM_LOCAL_SEARCH_RESTARTS = _env_int('NCSIM_LOCAL_SEARCH_RESTARTS', 64)

NCSIM_SEED = _env_int('NCSIM_SEED', 0)

# Default thread count for the solver and batch greedy
NCSIM_WORKERS = _env_int('NCSIM_WORKERS', 1)

# Chemical accuracy in Hartree
NCSIM_CHEM_ACCURACY = _env_float('NCSIM_CHEM_ACCURACY', 0.0016)

# Dense exact diagonalization cap (dim 4096 at 12 qubits)
NCSIM_ORACLE_MAX_QUBITS = _env_int('NCSIM_ORACLE_MAX_QUBITS', 12)

# Diagonal energies enumerate all 2**n basis states
NCSIM_DIAGONAL_MAX_QUBITS = _env_int('NCSIM_DIAGONAL_MAX_QUBITS', 22)

# Joint distribution tables hold 2**(N + |G|) entries
NCSIM_JOINT_TABLE_MAX_BITS = _env_int('NCSIM_JOINT_TABLE_MAX_BITS', 24)

# Brute-force sub-Hamiltonian search over at most this many terms
NCSIM_BRUTE_FORCE_MAX_TERMS = _env_int('NCSIM_BRUTE_FORCE_MAX_TERMS', 16)

# Epistemic state norm tolerances: reject above, renormalize between
NCSIM_STATE_NORM_REJECT = _env_float('NCSIM_STATE_NORM_REJECT', 1e-6)
NCSIM_STATE_NORM_RENORMALIZE = _env_float('NCSIM_STATE_NORM_RENORMALIZE', 1e-12)

NCSIM_LOG_LEVEL = os.getenv('NCSIM_LOG_LEVEL', 'INFO')

if NCSIM_WORKERS < 1:
    raise ValueError("NCSIM_WORKERS must be at least 1")


# Logging
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'file': {
            'level': 'INFO',
            'class': 'logging.FileHandler',
            'filename': BASE_DIR / 'logs' / 'ncsim.log',
            'formatter': 'verbose',
        },
        'console': {
            'level': 'WARNING',
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'root': {
        'handlers': ['console', 'file'],
        'level': NCSIM_LOG_LEVEL,
    },
    'loggers': {
        'django': {
            'handlers': ['console', 'file'],
            'level': 'INFO',
            'propagate': False,
        },
    },
}

# Create logs directory if it doesn't exist
os.makedirs(BASE_DIR / 'logs', exist_ok=True)

# Oracle results are memoized per Hamiltonian digest
CACHES = {
    'default': {
        'BACKEND': 'django.core.cache.backends.locmem.LocMemCache',
        'LOCATION': 'noncontextualsim-cache',
        'TIMEOUT': None,
    }
}
