import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("ci")

from ig_lab.config import Caps
from ig_lab.corpus import corpus_biorders
from ig_lab.session import IgContext


@pytest.fixture(scope="session")
def corpus():
    return corpus_biorders()


@pytest.fixture(scope="session")
def contexts(corpus):
    """One warm IgContext per corpus biorder, shared across the whole run."""
    return {name: IgContext(bi, Caps()) for name, bi in corpus.items()}
