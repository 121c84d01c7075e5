import numpy as np
import pytest

from gpc.products import (
    GeneralProduct,
    builtin_integer_multiplication,
    builtin_symmetric_photon,
    builtin_tensor,
    builtin_trilinear_geometric,
    builtin_wedge
)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def random_vector(rng):
    def make(d):
        return rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return make


@pytest.fixture
def random_factors(random_vector):
    def make(p):
        return [random_vector(d) for d in p.input_dims]
    return make


@pytest.fixture
def random_sparse_product(rng):
    """Random product with dims <= 4, arity 2 or 3 and a few nonzero coefficients"""
    def make():
        arity = int(rng.integers(2, 4))
        input_dims = tuple(int(d) for d in rng.integers(1, 5, size=arity))
        output_dim = int(rng.integers(1, 6))
        keys = set()
        entries = []
        for _ in range(int(rng.integers(1, 10))):
            key = (int(rng.integers(output_dim)),) + tuple(int(rng.integers(d)) for d in input_dims)
            if key in keys:
                continue
            keys.add(key)
            entries.append((key[0], key[1:], complex(rng.standard_normal(), rng.standard_normal())))
        return GeneralProduct.from_entries(arity, input_dims, output_dim, entries, name="random")
    return make


@pytest.fixture
def builtins():
    return [
        builtin_tensor(2, 3),
        builtin_wedge(3),
        builtin_symmetric_photon(4),
        builtin_trilinear_geometric(5),
        builtin_integer_multiplication(30),
    ]


@pytest.fixture
def singlet_amplitudes():
    return np.array([0.0, 1.0, -1.0, 0.0]) / np.sqrt(2.0)


@pytest.fixture
def bell_density():
    bell = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)
    return np.outer(bell, bell.conj())
