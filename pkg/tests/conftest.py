import numpy as np
import pytest

from renyimi import TfimModel, ground_state

SEED = 20250810


def random_state(L, rng):
    v = rng.standard_normal(2**L) + 1j * rng.standard_normal(2**L)
    return v / np.linalg.norm(v)


def random_density(L, rng):
    dim = 2**L
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = a @ a.conj().T
    return rho / np.real(np.trace(rho))


def zero_state(L):
    v = np.zeros(2**L, dtype=complex)
    v[0] = 1.0
    return v


def plus_state(L):
    return np.full(2**L, 2.0 ** (-L / 2), dtype=complex)


def ghz_state(L):
    v = np.zeros(2**L, dtype=complex)
    v[0] = v[-1] = 1.0 / np.sqrt(2.0)
    return v


def bell_state():
    return ghz_state(2)


@pytest.fixture(scope="session")
def critical():
    """Factory for cached critical ground states keyed by L."""
    cache = {}

    def get(L):
        if L not in cache:
            method = "dense" if L <= 10 else "lanczos"
            cache[L] = ground_state(TfimModel(L), method=method).state
        return cache[L]

    return get
