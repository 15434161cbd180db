"""
Django settings for spectralbvp project.

The project hosts no web surface: Django provides configuration, the
management-command CLI, the run ledger database and the test runner.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

from pathlib import Path
import os
from dotenv import load_dotenv

load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# Only used for signing; nothing in this project is served over HTTP.
SECRET_KEY = os.getenv('DJANGO_SECRET_KEY', 'spectralbvp-local-development-key')

DEBUG = os.getenv('DJANGO_DEBUG', 'false').lower() == 'true'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',
    # Third party
    'rest_framework',
    # Local apps
    'problems',
    'spectral',
    'modes',
    'denominators',
    'solver',
    'runs',
]


# Database
# The run ledger lives in a local SQLite file unless overridden.

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.environ.get('SPECTRAL_DB_PATH', str(BASE_DIR / 'spectralbvp.sqlite3')),
    }
}


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Logging

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': os.getenv('SPECTRAL_LOG_LEVEL', 'WARNING'),
    },
}


# Solver defaults. Every numeric default of the library and the CLI lives here.

SPECTRAL_SOLVER = {
    'K': int(os.getenv('SPECTRAL_K', 50)),
    'GRID': (int(os.getenv('SPECTRAL_GRID_NX', 101)), int(os.getenv('SPECTRAL_GRID_NY', 101))),
    'EPSILON': float(os.getenv('SPECTRAL_EPSILON', 0.5)),
    'K_MAX': int(os.getenv('SPECTRAL_K_MAX', 10_000)),
    'DEGENERACY_TOL': float(os.getenv('SPECTRAL_DEGENERACY_TOL', 1e-8)),
    'RESIDUAL_TOL': float(os.getenv('SPECTRAL_RESIDUAL_TOL', 1e-8)),
    # |mantissa / M_hat| cut-off: cross-check for tabulated forms, detector for the rest
    'RESONANCE_TOL': float(os.getenv('SPECTRAL_RESONANCE_TOL', 0.1)),
    'ORTHOGONALITY_TOL': float(os.getenv('SPECTRAL_ORTHOGONALITY_TOL', 1e-10)),
    'RATIO_MATCH_TOL': float(os.getenv('SPECTRAL_RATIO_MATCH_TOL', 1e-12)),
    'ADMISSIBLE_DELTA4': float(os.getenv('SPECTRAL_ADMISSIBLE_DELTA4', 0.3)),
    'WORKERS': int(os.getenv('SPECTRAL_WORKERS', 1)),
}
