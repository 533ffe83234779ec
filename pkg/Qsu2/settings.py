"""
Django settings for the Qsu2 project.

The project has no HTTP surface and no database: Django provides the
settings layer, the management-command CLI and the test runner for the
SU_q(2) apps (hopf, calculus, circle, console).

Every tunable is read from the environment, optionally seeded from a
``.env`` file at the repository root.
"""
import os
from pathlib import Path

from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

load_dotenv(BASE_DIR / '.env')

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get("SECRET_KEY", "qsu2-local-development-key")

DEBUG = os.environ.get("DEBUG", "False") == "True"

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'hopf',
    'calculus',
    'circle',
    'console',
]

# No models anywhere; SimpleTestCase never touches a connection.
DATABASES = {}

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Computation defaults (overridable per run with --q, --backend, ...)

QSU2_CACHE_DIR = os.environ.get("QSU2_CACHE_DIR") or None
QSU2_Q = os.environ.get("QSU2_Q", "1/2")
QSU2_BACKEND = os.environ.get("QSU2_BACKEND", "exact")
QSU2_MAX_LEVEL = os.environ.get("QSU2_MAX_LEVEL", "3")
QSU2_CUTOFF = int(os.environ.get("QSU2_CUTOFF", "32"))
QSU2_SEED = int(os.environ.get("QSU2_SEED", "0"))
QSU2_LOG_LEVEL = os.environ.get("QSU2_LOG_LEVEL", "WARNING")


# Logging

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
            'stream': 'ext://sys.stderr',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console'],
            'level': QSU2_LOG_LEVEL,
            'propagate': False,
        }
        for app in ('hopf', 'calculus', 'circle', 'console')
    },
}
