import pytest

from halfwave.checks import ProfileCache


@pytest.fixture(scope="session")
def cache():
    """Shared solve cache: profiles are expensive enough to compute once per run."""
    return ProfileCache()


@pytest.fixture(scope="session")
def grid(cache):
    return cache.grid()


@pytest.fixture(scope="session")
def q05(cache):
    return cache.profile(0.5)


@pytest.fixture(scope="session")
def sweep_profiles(cache):
    return cache.sweep_profiles()
