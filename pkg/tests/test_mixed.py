import numpy as np
import pytest

from gpc.mixed import (
    DensityMatrix,
    Ensemble,
    WitnessOutcome,
    ensemble_to_density,
    ppt_witness,
    random_ensemble,
    sample_biseparable,
    separable_companion
)
from gpc.products import (
    GeneralProduct,
    builtin_tensor,
    builtin_wedge,
    compose_with_factor_maps,
    universal_map
)
from gpc.utils.errors import InputError, UnsupportedProductError


@pytest.fixture
def invertible(rng):
    def make(d):
        return rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)) + 3 * np.eye(d)
    return make


def test_pure_product_density():
    e0, e1 = np.eye(2)
    rho = ensemble_to_density(builtin_tensor(2, 2), Ensemble.from_pairs([(1.0, [e0, e0])]))
    expected = np.zeros((4, 4))
    expected[0, 0] = 1.0
    np.testing.assert_allclose(rho.entries, expected, atol=1e-15)


def test_classical_mixture_density():
    e0, e1 = np.eye(2)
    ensemble = Ensemble.from_pairs([(0.5, [e0, e0]), (0.5, [e1, e1])])
    rho = ensemble_to_density(builtin_tensor(2, 2), ensemble)
    np.testing.assert_allclose(rho.entries, np.diag([0.5, 0.0, 0.0, 0.5]), atol=1e-15)


def test_wedge_mixture_is_the_singlet_projector(rng):
    singlet = np.array([0.0, 1.0, -1.0, 0.0]) / np.sqrt(2.0)
    for _ in range(10):
        rho = ensemble_to_density(builtin_wedge(2), random_ensemble(builtin_wedge(2), 4, rng))
        np.testing.assert_allclose(rho.entries, np.outer(singlet, singlet), atol=1e-12)


def test_random_mixtures_are_density_matrices(rng, builtins):
    for p in builtins:
        for _ in range(100):
            rho = ensemble_to_density(p, random_ensemble(p, int(rng.integers(1, 5)), rng))
            assert rho.dim == p.output_dim
            assert rho.trace == pytest.approx(1.0, abs=1e-12)
            assert rho.eigenvalues()[0] >= -1e-12
            np.testing.assert_array_equal(rho.entries, rho.entries.conj().T)


def test_companion_under_tensor_is_the_density_itself(rng):
    p = builtin_tensor(2, 3)
    ensemble = random_ensemble(p, 4, rng)
    sigma, check = separable_companion(p, ensemble)
    assert check <= 1e-12
    np.testing.assert_allclose(sigma.entries, ensemble_to_density(p, ensemble).entries, atol=1e-12)


def test_companion_reproduces_density(rng, invertible):
    products = [builtin_wedge(3), compose_with_factor_maps(builtin_tensor(2, 2), [invertible(2), invertible(2)])]
    for p in products:
        for _ in range(100):
            _, check = separable_companion(p, random_ensemble(p, 3, rng))
            assert check <= 1e-10


def test_ppt_on_bell_state(bell_density):
    result = ppt_witness(builtin_tensor(2, 2), bell_density)
    assert result.outcome is WitnessOutcome.QUANTUM_CORRELATED
    assert result.conclusive
    assert result.min_pt_eigenvalue == pytest.approx(-0.5, abs=1e-10)


def test_ppt_on_classical_mixture():
    result = ppt_witness(builtin_tensor(2, 2), DensityMatrix(np.diag([0.5, 0.0, 0.0, 0.5])))
    assert result.outcome is WitnessOutcome.UNDETECTED
    assert result.conclusive
    assert result.min_pt_eigenvalue >= -1e-10


def test_bell_state_embedded_through_injective_map(rng):
    bell = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)
    for _ in range(50):
        matrix = rng.standard_normal((5, 4)) + 1j * rng.standard_normal((5, 4))
        p = GeneralProduct.from_universal_matrix(matrix, (2, 2))
        result = ppt_witness(p, DensityMatrix.pure(matrix @ bell))
        assert result.outcome is WitnessOutcome.QUANTUM_CORRELATED
        assert result.min_pt_eigenvalue == pytest.approx(-0.5, abs=1e-8)


def test_bell_state_under_invertible_factor_maps(rng, invertible):
    bell = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)
    for _ in range(50):
        p = compose_with_factor_maps(builtin_tensor(2, 2), [invertible(2), invertible(2)])
        rho = DensityMatrix.pure(universal_map(p).matrix @ bell)
        result = ppt_witness(p, rho)
        assert result.outcome is WitnessOutcome.QUANTUM_CORRELATED
        assert result.conclusive
        assert result.min_preimage_eigenvalue >= -1e-10
        assert result.min_pt_eigenvalue == pytest.approx(-0.5, abs=1e-8)


def test_separable_mixtures_are_undetected(rng, invertible):
    for d_a, d_b in ((2, 2), (2, 3)):
        for _ in range(100):
            p = compose_with_factor_maps(builtin_tensor(d_a, d_b), [invertible(d_a), invertible(d_b)])
            rho = ensemble_to_density(p, random_ensemble(p, int(rng.integers(1, 5)), rng))
            result = ppt_witness(p, rho)
            assert result.outcome is WitnessOutcome.UNDETECTED
            assert result.conclusive


def test_state_outside_range_is_quantum_correlated():
    matrix = np.vstack([np.eye(4), np.zeros((1, 4))])
    p = GeneralProduct.from_universal_matrix(matrix, (2, 2))
    rho = np.zeros((5, 5))
    rho[4, 4] = 1.0
    result = ppt_witness(p, rho)
    assert result.outcome is WitnessOutcome.QUANTUM_CORRELATED
    assert result.range_residual == pytest.approx(1.0)


def test_undetected_is_inconclusive_in_larger_dims(rng):
    p = builtin_tensor(3, 3)
    result = ppt_witness(p, ensemble_to_density(p, random_ensemble(p, 2, rng)))
    assert result.outcome is WitnessOutcome.UNDETECTED
    assert not result.conclusive


def test_ppt_refuses_non_injective_map(singlet_amplitudes):
    with pytest.raises(UnsupportedProductError, match="non-injective universal map"):
        ppt_witness(builtin_wedge(2), DensityMatrix.pure(singlet_amplitudes))
    assert not universal_map(builtin_wedge(2)).is_injective()


def test_ppt_refuses_other_arities():
    p = GeneralProduct.from_universal_matrix(np.eye(8), (2, 2, 2))
    with pytest.raises(UnsupportedProductError):
        ppt_witness(p, np.eye(8) / 8)


@pytest.mark.parametrize("pairs", [
    [],
    [(1.5, [[1.0], [1.0]]), (-0.5, [[1.0], [1.0]])],
    [(0.5, [[1.0], [1.0]])],
    [(1.0, [])],
])
def test_ensemble_validation(pairs):
    with pytest.raises(InputError):
        Ensemble.from_pairs(pairs)


def test_ensemble_arity_mismatch():
    ensemble = Ensemble.from_pairs([(1.0, [[1.0, 0.0]])])
    with pytest.raises(InputError):
        ensemble_to_density(builtin_tensor(2, 2), ensemble)


def test_zero_product_is_rejected():
    a = np.array([1.0, 2.0])
    with pytest.raises(InputError, match="zero product"):
        ensemble_to_density(builtin_wedge(2), Ensemble.from_pairs([(1.0, [a, a])]))


def test_density_matrix_validation():
    with pytest.raises(InputError):
        DensityMatrix(np.array([[1.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(InputError):
        DensityMatrix(np.diag([1.5, -0.5]))
    with pytest.raises(InputError):
        DensityMatrix(np.eye(2))
    assert DensityMatrix(np.eye(2), normalized=False).trace == pytest.approx(2.0)


def test_biseparable_sample(rng):
    p = GeneralProduct.from_universal_matrix(np.eye(8), (2, 2, 2))
    sample = sample_biseparable(p, 2, rng)
    assert set(sample.cut_weights) == {"AB|C", "BC|A", "CA|B"}
    assert sum(sample.cut_weights.values()) == pytest.approx(1.0)
    assert sample.density.dim == 8
    assert sample.density.trace == pytest.approx(1.0, abs=1e-12)
    assert sample.summary()["dim"] == 8
    with pytest.raises(InputError):
        sample_biseparable(builtin_tensor(2, 2), 2, rng)
