"""Root conftest for qdeform.

Registers tests/qcalc_fixtures.py as a pytest plugin so the shared
fixtures and marker hooks are discoverable from every test module.
"""

pytest_plugins = ("tests.qcalc_fixtures",)
