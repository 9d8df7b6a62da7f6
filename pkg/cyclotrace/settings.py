"""
Django settings for the cyclotrace project.

The project has no database and no URL routing: Django provides the
configuration layer, the management-command CLI, the template engine for
human-readable report tables and the test runner.
"""

import os
from pathlib import Path
from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Load environment variables from .env file
load_dotenv(BASE_DIR / '.env')


SECRET_KEY = os.environ.get('DJANGO_SECRET_KEY', 'cyclotrace-offline-key')

DEBUG = os.environ.get('DEBUG', 'False') == 'True'

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    'rest_framework',
    # Project apps
    'injcat',
    'basedsets',
    'simplicial',
    'abelian',
    'barcons',
    'operad',
    'tracehh',
    'gammaspace',
    'reports.apps.ReportsConfig',
]

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [],
            'autoescape': False,
        },
    },
]

# Nothing is persisted; reports are written to standard output.
DATABASES = {}

USE_I18N = False

USE_TZ = True

TIME_ZONE = 'UTC'

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Computation limits and defaults

CYCLOTRACE_DEFAULT_TRUNCATION = int(os.environ.get('CYCLOTRACE_DEFAULT_TRUNCATION', 5))

# Number of entries in a tabulated ring operation (|R|^2 for a ring with |R| elements).
CYCLOTRACE_MATRIX_TABLE_LIMIT = int(os.environ.get('CYCLOTRACE_MATRIX_TABLE_LIMIT', 2 ** 20))

# Pairs examined by the brute-force unit search.
CYCLOTRACE_UNIT_SEARCH_LIMIT = int(os.environ.get('CYCLOTRACE_UNIT_SEARCH_LIMIT', 2 ** 20))

# Tensor generators in one degree of a Hochschild complex.
CYCLOTRACE_HOCHSCHILD_LIMIT = int(os.environ.get('CYCLOTRACE_HOCHSCHILD_LIMIT', 2 ** 18))

CYCLOTRACE_SUM_DIAGRAM_LIMIT = int(os.environ.get('CYCLOTRACE_SUM_DIAGRAM_LIMIT', 20000))

# Upper bound on |M|^|S| when a Gamma-space is evaluated on a based set.
CYCLOTRACE_GAMMA_LIMIT = int(os.environ.get('CYCLOTRACE_GAMMA_LIMIT', 100000))

CYCLOTRACE_VERIFY_SEED = int(os.environ.get('CYCLOTRACE_VERIFY_SEED', 0))
CYCLOTRACE_VERIFY_INSTANCES = int(os.environ.get('CYCLOTRACE_VERIFY_INSTANCES', 200))

CYCLOTRACE_REPORT_SCHEMA_VERSION = '1.0'

LOG_LEVEL = os.environ.get('LOG_LEVEL', 'INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'standard': {
            'format': '%(asctime)s [%(levelname)s] %(name)s: %(message)s'
        },
    },
    'handlers': {
        'console': {
            # StreamHandler writes to stderr; stdout carries the JSON report.
            'class': 'logging.StreamHandler',
            'formatter': 'standard',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': LOG_LEVEL,
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
        'abelian': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
        'tracehh': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
        'reports': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
}
