"""Pytest wiring for the Django test suite (mirrors `manage.py test`)."""
import os

import django
import pytest

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'bordered_floer.settings')
django.setup()

collect_ignore = ['examples']


@pytest.fixture(scope='session', autouse=True)
def _django_test_databases():
    from django.test.utils import (setup_databases, setup_test_environment,
                                   teardown_databases, teardown_test_environment)

    setup_test_environment()
    old_config = setup_databases(verbosity=0, interactive=False)
    yield
    teardown_databases(old_config, verbosity=0)
    teardown_test_environment()
