import pytest
from hypothesis import settings

from ehrkit import corpus

settings.register_profile("ehrkit", deadline=None, max_examples=40)
settings.load_profile("ehrkit")


@pytest.fixture(scope="session")
def corpus_polytopes():
    """Every bundled corpus entry, loaded once per session."""
    return {name: corpus.load(name) for name in corpus.names()}


@pytest.fixture(scope="session")
def corpus_families():
    return corpus.families()
