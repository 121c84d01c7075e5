import numpy as np
import pytest

from gpc.catalog.primes import prime_sieve
from gpc.catalog.scenarios import geometric_exact_residual, geometric_target, photon_target
from gpc.factorizers import (
    Outcome,
    preimage_analysis,
    schmidt_decompose,
    subspace_projection_residual,
    symmetric_rank_certificate
)
from gpc.factorizers.base import relative_residual
from gpc.products import (
    StateVector,
    apply,
    builtin_integer_multiplication,
    builtin_symmetric_photon,
    builtin_tensor,
    builtin_trilinear_geometric,
    builtin_wedge
)
from gpc.utils.errors import InputError, UnsupportedProductError


def test_schmidt_of_singlet(singlet_amplitudes):
    result = schmidt_decompose(singlet_amplitudes, 2, 2)
    np.testing.assert_allclose(result.coefficients, [1 / np.sqrt(2), 1 / np.sqrt(2)], atol=1e-10)
    assert result.rank == 2


def test_schmidt_of_product_state(random_vector):
    a, b = random_vector(3), random_vector(4)
    result = schmidt_decompose(np.kron(a, b), 3, 4)
    assert result.rank == 1
    assert np.sum(result.coefficients ** 2) == pytest.approx(1.0, abs=1e-10)
    rebuilt = result.coefficients[0] * np.kron(result.left_vectors[:, 0], result.right_vectors[:, 0])
    v = np.kron(a, b)
    np.testing.assert_allclose(rebuilt, v / np.linalg.norm(v), atol=1e-10)


def test_schmidt_rejects_bad_input():
    with pytest.raises(InputError):
        schmidt_decompose(np.ones(5), 2, 2)
    with pytest.raises(InputError):
        schmidt_decompose(np.zeros(4), 2, 2)


def test_preimage_certifies_bell_under_tensor(singlet_amplitudes):
    certificate = preimage_analysis(builtin_tensor(2, 2), singlet_amplitudes)
    assert certificate.outcome is Outcome.CERTIFIED_ENTANGLED
    assert certificate.evidence["schmidt_rank"] == 2


def test_preimage_builds_factors_for_product_state(random_factors):
    p = builtin_tensor(3, 2)
    target = apply(p, random_factors(p)).amplitudes
    certificate = preimage_analysis(p, target)
    assert certificate.outcome is Outcome.FACTORIZABLE
    assert relative_residual(p, certificate.factors, target) <= 1e-10


def test_preimage_abstains_on_wedge(singlet_amplitudes):
    certificate = preimage_analysis(builtin_wedge(2), singlet_amplitudes)
    assert certificate.outcome is Outcome.ABSTAIN
    assert certificate.evidence["nullspace_dim"] == 3


def test_preimage_range_certificate_for_every_prime():
    p = builtin_integer_multiplication(100)
    sieve = prime_sieve(100)
    for label in np.flatnonzero(sieve):
        target = StateVector.basis(p.output_dim, int(label) - 2, basis_start=2)
        certificate = preimage_analysis(p, target)
        assert certificate.outcome is Outcome.CERTIFIED_ENTANGLED, label
        assert certificate.evidence["reason"] == "not in range of the universal map"
        assert certificate.evidence["range_residual"] == pytest.approx(1.0)


def test_composite_basis_state_is_in_range():
    p = builtin_integer_multiplication(20)
    certificate = preimage_analysis(p, StateVector.basis(p.output_dim, 12 - 2, basis_start=2))
    assert certificate.outcome is Outcome.ABSTAIN


def test_photon_rank_certificate():
    certificate = symmetric_rank_certificate(builtin_symmetric_photon(4), photon_target(4))
    assert certificate.outcome is Outcome.CERTIFIED_ENTANGLED
    assert certificate.evidence["rank"] == 4
    np.testing.assert_allclose(certificate.evidence["singular_values"], np.ones(4), atol=1e-12)
    assert certificate.exact_residual == pytest.approx(np.sqrt(2) / 2, abs=1e-6)


def test_photon_products_are_factorized(random_vector):
    p = builtin_symmetric_photon(4)
    for _ in range(50):
        target = apply(p, [random_vector(4), random_vector(4)]).amplitudes
        certificate = symmetric_rank_certificate(p, target)
        assert certificate.outcome is Outcome.FACTORIZABLE
        assert relative_residual(p, certificate.factors, target) <= 1e-8


def test_photon_single_mode_pair_is_factorized():
    p = builtin_symmetric_photon(3)
    e = np.eye(3)
    for target in (apply(p, [e[0], e[0]]), apply(p, [e[0], e[2]])):
        certificate = symmetric_rank_certificate(p, target)
        assert certificate.outcome is Outcome.FACTORIZABLE
        assert relative_residual(p, certificate.factors, target.amplitudes) <= 1e-8


def test_photon_certificate_rejects_asymmetric_target():
    target = np.zeros(16)
    target[1] = 1.0
    with pytest.raises(InputError):
        symmetric_rank_certificate(builtin_symmetric_photon(4), target)


def test_family_certificates_refuse_other_products(singlet_amplitudes):
    with pytest.raises(UnsupportedProductError):
        symmetric_rank_certificate(builtin_tensor(2, 2), singlet_amplitudes)
    with pytest.raises(UnsupportedProductError):
        subspace_projection_residual(builtin_wedge(2), singlet_amplitudes)


def test_trilinear_projection_at_one_half():
    p = builtin_trilinear_geometric(16)
    certificate = subspace_projection_residual(p, geometric_target(0.5, 16), tol_fact=1e-5)
    assert certificate.outcome is Outcome.FACTORIZABLE
    assert certificate.exact_residual == pytest.approx(3.205e-6, rel=1e-3)
    assert certificate.exact_residual == pytest.approx(geometric_exact_residual(0.5, 16), rel=1e-9)


def test_trilinear_projection_at_point_eight():
    p = builtin_trilinear_geometric(16)
    target = geometric_target(0.8, 16)
    assert target.norm == pytest.approx(1.66624, abs=1e-5)
    certificate = subspace_projection_residual(p, target, tol_fact=1e-5)
    assert certificate.outcome is Outcome.CERTIFIED_ENTANGLED
    assert certificate.exact_residual == pytest.approx(0.4203, abs=1e-3)


def test_trilinear_projection_factors_attain_exact_residual():
    p = builtin_trilinear_geometric(16)
    target = geometric_target(0.7, 16)
    certificate = subspace_projection_residual(p, target)
    achieved = relative_residual(p, certificate.factors, target.amplitudes)
    assert achieved == pytest.approx(certificate.exact_residual, abs=1e-12)
