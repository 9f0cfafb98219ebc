"""
Django settings for bordered_floer project.

Generated by 'django-admin startproject' using Django 5.2.6.

The project has no HTTP surface: everything runs through management
commands (verify, mor, box, compare, cfk2cfd, export_fixtures).
"""

import os
from pathlib import Path
from decouple import config
import dj_database_url

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

ENGINE_VERSION = '1.0.0'
REPORT_SCHEMA_VERSION = 1

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config('SECRET_KEY', default='django-insecure-bfx-local-engine-key')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'f2core',
    'torus_algebra',
    'bordered',
    'gradings',
    'involutive',
    'knotlib',
    'verification',
]

MIDDLEWARE = []


# Database
# Verification runs are stored here when `verify --record` is used.

DATABASE_URL = config('DATABASE_URL', default=None)

if DATABASE_URL:
    DATABASES = {
        'default': dj_database_url.parse(DATABASE_URL, conn_max_age=600)
    }
else:
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.sqlite3',
            'NAME': BASE_DIR / 'db.sqlite3',
        }
    }


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Engine Settings
BFX_THREADS = config('BFX_THREADS', default=os.cpu_count() or 1, cast=int)
BFX_DIVERGENCE_DEPTH = config('BFX_DIVERGENCE_DEPTH', default=64, cast=int)
BFX_MAX_U_POWER = config('BFX_MAX_U_POWER', default=64, cast=int)
BFX_ORACLE_LIMIT = config('BFX_ORACLE_LIMIT', default=200, cast=int)

# standard, rotated or shifted; see gradings.group.CONVENTIONS
BFX_GRADING_CONVENTION = config('BFX_GRADING_CONVENTION', default='standard')

BFX_FIXTURE_DIR = Path(config('BFX_FIXTURE_DIR', default=str(BASE_DIR / 'knotlib' / 'fixtures' / 'v1')))
BFX_REPORT_DIR = Path(config('BFX_REPORT_DIR', default=str(BASE_DIR / 'reports')))

BFX_LOG_LEVEL = config('BFX_LOG_LEVEL', default='INFO')


# Logging Configuration
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'file': {
            'level': 'DEBUG',
            'class': 'logging.FileHandler',
            'filename': BASE_DIR / 'bordered_floer.log',
            'formatter': 'simple',
        },
        'console': {
            'level': 'WARNING',
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console', 'file'] if DEBUG else ['console'],
            'level': BFX_LOG_LEVEL,
            'propagate': False,
        }
        for app in INSTALLED_APPS
    },
}

# Sentry Configuration (Optional)
SENTRY_DSN = config('SENTRY_DSN', default=None)
if SENTRY_DSN:
    import sentry_sdk
    from sentry_sdk.integrations.django import DjangoIntegration

    sentry_sdk.init(
        dsn=SENTRY_DSN,
        integrations=[DjangoIntegration()],
        traces_sample_rate=0.0,
        send_default_pii=False
    )
