import numpy as np
import pytest

from ecsim.states import HybridState, KetFactor, ProductTerm


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_coherent_state(rng, modes=2, terms=3, scale=1.2):
    tlist = []
    for _ in range(terms):
        coeff = complex(*rng.uniform(-1, 1, 2))
        factors = tuple(
            KetFactor.coherent(complex(*rng.uniform(-scale, scale, 2)))
            for _ in range(modes)
        )
        tlist.append(ProductTerm(coeff, factors))
    return HybridState(modes, tuple(tlist))


def random_mixed_state(rng, modes=2, terms=3, scale=1.2):
    tlist = []
    for _ in range(terms):
        coeff = complex(*rng.uniform(-1, 1, 2))
        factors = []
        for _ in range(modes):
            if rng.uniform() < 0.5:
                factors.append(KetFactor.fock(int(rng.integers(0, 3))))
            else:
                factors.append(KetFactor.coherent(complex(*rng.uniform(-scale, scale, 2))))
        tlist.append(ProductTerm(coeff, tuple(factors)))
    return HybridState(modes, tuple(tlist))
