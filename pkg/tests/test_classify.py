import json

import numpy as np
import pytest

from gpc.catalog.scenarios import photon_target
from gpc.factorizers import (
    AlsConfig,
    Certificate,
    Outcome,
    Tolerances,
    Verdict,
    classify,
    classify_bipartitions
)
from gpc.factorizers.classify import _verdict, residual_of
from gpc.products import (
    GeneralProduct,
    apply,
    builtin_symmetric_photon,
    builtin_tensor,
    builtin_trilinear_geometric,
    builtin_integer_multiplication,
    builtin_wedge,
    compose_with_factor_maps
)
from gpc.utils.errors import InputError
from gpc.utils.serialization import report_to_dict

FAST = AlsConfig(starts=4)


def test_wedge_singlet_is_factorizable(singlet_amplitudes):
    report = classify(builtin_wedge(2), singlet_amplitudes, FAST)
    assert report.verdict is Verdict.FACTORIZABLE
    assert report.relative_residual <= 1e-8
    assert [c.name for c in report.certificates] == ["preimage"]
    assert report.certificates[0].outcome is Outcome.ABSTAIN


def test_tensor_singlet_is_certified(singlet_amplitudes):
    report = classify(builtin_tensor(2, 2), singlet_amplitudes, FAST)
    assert report.verdict is Verdict.CERTIFIED_ENTANGLED
    assert report.relative_residual == pytest.approx(1.0 / np.sqrt(2.0), abs=1e-6)


def test_reported_factors_are_self_consistent(singlet_amplitudes):
    for p in (builtin_wedge(2), builtin_tensor(2, 2)):
        report = classify(p, singlet_amplitudes, FAST)
        assert abs(residual_of(report, p, singlet_amplitudes) - report.relative_residual) <= 1e-12


def test_photon_target_runs_family_certificate_first():
    report = classify(builtin_symmetric_photon(4), photon_target(4), FAST)
    assert [c.name for c in report.certificates] == ["symmetric_rank", "preimage"]
    assert report.verdict is Verdict.CERTIFIED_ENTANGLED


CLOSURE_FAMILIES = [
    (builtin_tensor(2, 3), 25),
    (builtin_wedge(2), 25),
    (builtin_wedge(3), 25),
    (builtin_symmetric_photon(3), 25),
    (builtin_trilinear_geometric(3), 25),
    (builtin_integer_multiplication(12), 10),
]


@pytest.mark.parametrize("p, trials", CLOSURE_FAMILIES, ids=[p.describe() for p, _ in CLOSURE_FAMILIES])
def test_closure_under_invertible_factor_maps(p, trials, rng, random_factors):
    def invertible(d):
        return rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)) + 3 * np.eye(d)

    for _ in range(trials):
        maps = [invertible(d) for d in p.input_dims]
        composed = compose_with_factor_maps(p, maps)
        factors = random_factors(p)
        target = apply(p, factors).amplitudes
        # apply(composed, T^-1 f) == apply(p, f)
        pulled = [np.linalg.solve(t, f) for t, f in zip(maps, factors)]
        np.testing.assert_allclose(apply(composed, pulled).amplitudes, target, atol=1e-10)

        report = classify(composed, target, AlsConfig(starts=8))
        assert report.relative_residual <= 1e-8, composed.describe()
        assert report.verdict is Verdict.FACTORIZABLE


@pytest.mark.parametrize("p", [
    builtin_tensor(2, 3),
    builtin_wedge(3),
    builtin_wedge(4),
    builtin_symmetric_photon(4),
    builtin_trilinear_geometric(5),
    builtin_integer_multiplication(30),
], ids=lambda p: p.describe())
def test_every_product_output_is_factorizable(p, random_factors):
    for _ in range(17):
        target = apply(p, random_factors(p)).amplitudes
        report = classify(p, target, AlsConfig(starts=8))
        assert report.verdict is Verdict.FACTORIZABLE, report.relative_residual
        assert report.relative_residual <= 1e-8


def _abstain():
    return Certificate("preimage", Outcome.ABSTAIN)


@pytest.mark.parametrize("residual, expected", [
    (1e-9, Verdict.FACTORIZABLE),
    (1e-8, Verdict.FACTORIZABLE),
    (1e-5, Verdict.INCONCLUSIVE),
    (1e-3, Verdict.NUMERICALLY_ENTANGLED),
    (0.5, Verdict.NUMERICALLY_ENTANGLED),
])
def test_verdict_thresholds(residual, expected):
    assert _verdict([_abstain()], residual, Tolerances()) is expected


def test_first_decisive_certificate_wins():
    certificates = [
        _abstain(),
        Certificate("a", Outcome.CERTIFIED_ENTANGLED),
        Certificate("b", Outcome.FACTORIZABLE),
    ]
    assert _verdict(certificates, 0.0, Tolerances()) is Verdict.CERTIFIED_ENTANGLED


def test_tolerances_are_validated():
    with pytest.raises(InputError):
        Tolerances(tol_fact=1e-2, tol_ent=1e-3)
    with pytest.raises(InputError):
        Tolerances(rel_tol=0.0)


def test_bipartitions_of_bell_times_qubit():
    p = GeneralProduct.from_universal_matrix(np.eye(8), (2, 2, 2))
    bell = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)
    target = np.kron(bell, [1.0, 0.0])
    reports = classify_bipartitions(p, target, FAST)
    assert list(reports) == ["AB|C", "BC|A", "CA|B"]
    assert reports["AB|C"].verdict is Verdict.FACTORIZABLE
    assert reports["BC|A"].verdict is Verdict.CERTIFIED_ENTANGLED
    assert reports["CA|B"].verdict is Verdict.CERTIFIED_ENTANGLED


def test_bipartitions_need_three_factors(singlet_amplitudes):
    with pytest.raises(InputError):
        classify_bipartitions(builtin_tensor(2, 2), singlet_amplitudes)


def test_report_json_is_deterministic():
    p = builtin_wedge(3)
    target = apply(p, [np.array([1.0, 2.0, 0.5]), np.array([0.0, 1.0, 1j])]).amplitudes
    first = report_to_dict(classify(p, target, AlsConfig(starts=3, seed=11)))
    second = report_to_dict(classify(p, target, AlsConfig(starts=3, seed=11)))
    assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)
    assert first["verdict"] == "FACTORIZABLE"
    assert first["config"]["als"]["seed"] == 11


def test_report_carries_documented_fields(singlet_amplitudes):
    data = report_to_dict(classify(builtin_wedge(2), singlet_amplitudes, FAST))
    assert set(data) == {
        "tool_version", "product", "verdict", "relative_residual", "factors", "certificates",
        "starts_used", "sweeps_used", "best_start", "residual_history", "config",
    }
    assert data["starts_used"] == 4
    assert 0 <= data["best_start"] < 4
    assert set(data["config"]) == {"als", "tolerances"}
    assert data["config"]["als"]["polish"] is True
