import pytest

from glideals.ideals import IdealEngine


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    """One on-disk basis cache for the whole session, so the large graded
    components are built exactly once."""
    return tmp_path_factory.mktemp("basis-cache")


@pytest.fixture(scope="session")
def engine(cache_dir):
    return IdealEngine(cache_dir=cache_dir)
