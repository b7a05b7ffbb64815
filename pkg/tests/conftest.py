"""
Shared fixtures for the artinlab test suite.
"""

import pytest

from artinlab.numth import cached_prime_table


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: desk-scale acceptance runs (minutes)")


@pytest.fixture(scope="session")
def small_table():
    """Primes up to 10^5."""
    return cached_prime_table(10**5)


@pytest.fixture(scope="session")
def million_table():
    """Primes up to 10^6."""
    return cached_prime_table(10**6)


@pytest.fixture
def clean_env(monkeypatch):
    """Strip ARTINLAB_* variables so settings come from defaults."""
    import os

    for name in list(os.environ):
        if name.startswith("ARTINLAB_"):
            monkeypatch.delenv(name, raising=False)
    return monkeypatch
