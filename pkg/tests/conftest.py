import numpy as np
import pytest

from critslice.family import MapParams


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


def random_map(rng, d_choices=(2, 3, 4, 5), scale=2.0, beta_floor=0.05):
    """Random non-degenerate member with comfortably nonzero beta."""
    while True:
        d = int(rng.choice(d_choices))
        alpha = complex(rng.normal(0, scale), rng.normal(0, scale))
        beta = complex(rng.normal(0, scale), rng.normal(0, scale))
        gamma = complex(rng.normal(0, scale), rng.normal(0, scale))
        if abs(beta) < beta_floor or abs(alpha) < 0.05 or abs(gamma) < 0.05:
            continue
        p = MapParams(alpha, beta, gamma, d)
        if abs(p.degeneracy) > 1e-3:
            return p


@pytest.fixture
def random_maps(rng):
    def make(n, **kw):
        return [random_map(rng, **kw) for _ in range(n)]

    return make
