import numpy as np
import pytest


@pytest.fixture
def make_density():
    """Factory for random valid density matrices of a given dimension."""

    def _make(rng, dim):
        x = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        m = x @ x.conj().T
        return m / np.real(np.trace(m))

    return _make
