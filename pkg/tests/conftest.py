import sys
from pathlib import Path

import pytest

from monobn import random_network

sys.path.insert(0, str(Path(__file__).parent))


def corpus_network(seed: int):
    """Deterministic corpus member: <= 10 binary variables, <= 4 observables."""
    n_nodes = 4 + seed % 7
    n_obs = min(1 + seed % 4, n_nodes - 1)
    return random_network(
        n_nodes=n_nodes,
        seed=seed,
        n_observables=n_obs,
        polytree=(seed % 5 == 0),
        monotone_bias=0.6 if seed % 2 else 0.3,
    )


@pytest.fixture(scope="session")
def corpus500():
    return [corpus_network(seed) for seed in range(500)]


@pytest.fixture(scope="session")
def corpus200(corpus500):
    return corpus500[:200]
