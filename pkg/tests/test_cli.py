import json

import numpy as np
import pytest

from gpc.main import EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_OK, main, parse_params
from gpc.products import builtin_wedge
from gpc.utils.errors import InputError
from gpc.utils.serialization import save_product, write_json

SINGLET = {"dim": 4, "amplitudes": [[0.0, 0.0], [0.7071067811865476, 0.0], [-0.7071067811865476, 0.0], [0.0, 0.0]]}


def e(index, dim=2):
    amplitudes = [[0.0, 0.0] for _ in range(dim)]
    amplitudes[index] = [1.0, 0.0]
    return {"dim": dim, "amplitudes": amplitudes}


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for key in ("GPC_SEED", "GPC_LOG_LEVEL", "GPC_LOG_FILE"):
        monkeypatch.delenv(key, raising=False)


@pytest.fixture
def singlet_file(tmp_path):
    return str(write_json(SINGLET, tmp_path / "singlet.json"))


def test_validate_builtin(capsys):
    assert main(["validate", "--product", "builtin:tensor(2,2)"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "injective: true" in out
    assert "rank: 4" in out


def test_validate_product_file(tmp_path, capsys):
    path = save_product(builtin_wedge(2), tmp_path / "wedge.json")
    assert main(["validate", "--product", str(path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "injective: false" in out
    assert "arity: 2" in out


def test_validate_rejects_out_of_bounds_entry(tmp_path, capsys):
    path = write_json(
        {"arity": 2, "input_dims": [2, 2], "output_dim": 4, "entries": [{"out": 0, "in": [0, 5], "re": 1.0}]},
        tmp_path / "bad.json",
    )
    assert main(["validate", "--product", str(path)]) == EXIT_INPUT
    err = capsys.readouterr().err.strip().splitlines()
    assert len(err) == 1
    assert err[0].startswith("error: E_INPUT")


def test_validate_reports_invalid_json(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"arity": 2,\n', encoding="utf-8")
    assert main(["validate", "--product", str(path)]) == EXIT_INPUT
    assert "line" in capsys.readouterr().err


@pytest.mark.parametrize("product, verdict", [
    ("builtin:wedge(2)", "FACTORIZABLE"),
    ("builtin:tensor(2,2)", "CERTIFIED_ENTANGLED"),
])
def test_factorize_singlet(product, verdict, singlet_file, tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["factorize", "--product", product, "--state", singlet_file, "--starts", "4", "--out", str(out)])
    assert code == EXIT_OK
    assert f"verdict: {verdict}" in capsys.readouterr().out
    report = json.loads(out.read_text())
    assert report["verdict"] == verdict
    assert report["config"]["als"]["starts"] == 4


def test_factorize_reports_are_byte_identical(singlet_file, tmp_path):
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    for path in (first, second):
        args = ["factorize", "--product", "builtin:wedge(2)", "--state", singlet_file,
                "--starts", "3", "--seed", "5", "--out", str(path)]
        assert main(args) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    meta = json.loads((tmp_path / "first.meta.json").read_text())
    assert meta["argv"][0] == "factorize"
    assert "created_at" in meta


def test_factorize_bipartitions(tmp_path, capsys):
    state = {"dim": 8, "amplitudes": [[0.0, 0.0] for _ in range(8)]}
    state["amplitudes"][0] = [0.7071067811865476, 0.0]
    state["amplitudes"][6] = [0.7071067811865476, 0.0]
    state_path = write_json(state, tmp_path / "bell_zero.json")
    product_path = tmp_path / "three_qubits.json"
    entries = [{"out": 4 * a + 2 * b + c, "in": [a, b, c], "re": 1.0} for a in (0, 1) for b in (0, 1) for c in (0, 1)]
    write_json({"arity": 3, "input_dims": [2, 2, 2], "output_dim": 8, "entries": entries}, product_path)

    out = tmp_path / "cuts.json"
    code = main(["factorize", "--product", str(product_path), "--state", str(state_path),
                 "--bipartitions", "--starts", "2", "--out", str(out)])
    assert code == EXIT_OK
    printed = capsys.readouterr().out
    assert "AB|C: FACTORIZABLE" in printed
    assert "BC|A: CERTIFIED_ENTANGLED" in printed
    cuts = [r["cut"] for r in json.loads(out.read_text())["bipartitions"]]
    assert cuts == ["AB|C", "BC|A", "CA|B"]


def test_factorize_rejects_malformed_state(tmp_path, capsys):
    path = write_json({"dim": 4, "amplitudes": [[1.0, 0.0], [0.0]]}, tmp_path / "bad_state.json")
    code = main(["factorize", "--product", "builtin:wedge(2)", "--state", str(path), "--out", str(tmp_path / "r.json")])
    assert code == EXIT_INPUT
    assert capsys.readouterr().err.startswith("error: E_INPUT")


def test_factorize_requires_state(capsys):
    assert main(["factorize", "--product", "builtin:wedge(2)"]) == EXIT_INPUT
    assert "error: E_INPUT" in capsys.readouterr().err


@pytest.mark.parametrize("product", ["builtin:symmetric_photon(4)", "builtin:trilinear_geometric(8)"])
def test_universal_check(product, tmp_path):
    out = tmp_path / "universal.json"
    assert main(["universal-check", "--product", product, "--trials", "100", "--out", str(out)]) == EXIT_OK
    summary = json.loads(out.read_text())
    assert summary["passed"] is True
    assert summary["max_deviation"] <= 1e-12


def test_universal_check_needs_trials(tmp_path):
    args = ["universal-check", "--product", "builtin:wedge(2)", "--trials", "0", "--out", str(tmp_path / "u.json")]
    assert main(args) == EXIT_INPUT


def test_primes_csv(tmp_path):
    out = tmp_path / "primes.csv"
    assert main(["primes", "--max", "100", "--out", str(out)]) == EXIT_OK
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "q,c_q,is_prime"
    assert len(lines) == 1 + 97
    zero_rows = [line for line in lines[1:] if line.split(",")[1] == "0"]
    assert len(zero_rows) == 23
    assert "13,0,True" in lines


def test_catalog_list(capsys):
    assert main(["catalog", "list"]) == EXIT_OK
    out = capsys.readouterr().out
    for name in ("wedge_singlet", "trilinear_geometric", "photon_4mode", "prime_basis"):
        assert name in out


def test_catalog_run_all(tmp_path):
    out = tmp_path / "catalog.json"
    assert main(["catalog", "run", "--all", "--starts", "4", "--out", str(out)]) == EXIT_OK
    scenarios = json.loads(out.read_text())["scenarios"]
    assert [s["name"] for s in scenarios] == ["wedge_singlet", "trilinear_geometric", "photon_4mode", "prime_basis"]
    assert all(s["passed"] for s in scenarios)


def test_catalog_run_all_as_csv(tmp_path):
    out = tmp_path / "catalog.csv"
    assert main(["catalog", "run", "--all", "--starts", "4", "--format", "csv", "--out", str(out)]) == EXIT_OK
    assert out.read_text().splitlines()[0] == "name,passed,verdict,relative_residual,failed_checks"


def test_catalog_run_with_param(tmp_path):
    out = tmp_path / "trilinear.json"
    args = ["catalog", "run", "trilinear_geometric", "--param", "q=0.8", "--starts", "4", "--out", str(out)]
    assert main(args) == EXIT_OK
    data = json.loads(out.read_text())
    assert data["params"]["q"] == 0.8
    assert data["report"]["verdict"] == "CERTIFIED_ENTANGLED"


def test_catalog_unknown_scenario(capsys):
    assert main(["catalog", "run", "bell_pair"]) == EXIT_INPUT
    assert capsys.readouterr().err.startswith("error: E_SCENARIO")


def test_catalog_needs_name_or_all():
    assert main(["catalog", "run"]) == EXIT_INPUT


def test_mixed_ppt_refuses_wedge(singlet_file, tmp_path, capsys):
    args = ["mixed", "--check", "ppt", "--product", "builtin:wedge(2)", "--state", singlet_file,
            "--out", str(tmp_path / "m.json")]
    assert main(args) == EXIT_INPUT
    err = capsys.readouterr().err
    assert err.startswith("error: E_UNSUPPORTED")
    assert "non-injective universal map" in err


def test_mixed_ppt_on_tensor_singlet(singlet_file, tmp_path, capsys):
    out = tmp_path / "ppt.json"
    args = ["mixed", "--check", "ppt", "--product", "builtin:tensor(2,2)", "--state", singlet_file, "--out", str(out)]
    assert main(args) == EXIT_OK
    assert "QUANTUM_CORRELATED" in capsys.readouterr().out
    result = json.loads(out.read_text())
    assert result["min_pt_eigenvalue"] == pytest.approx(-0.5, abs=1e-10)


def test_mixed_reconstruct_under_tensor(tmp_path):
    ensemble = {"items": [{"p": 0.5, "factors": [e(0), e(0)]}, {"p": 0.5, "factors": [e(1), e(1)]}]}
    ensemble_path = write_json(ensemble, tmp_path / "ensemble.json")
    out = tmp_path / "reconstruct.json"
    args = ["mixed", "--check", "reconstruct", "--product", "builtin:tensor(2,2)",
            "--ensemble", str(ensemble_path), "--out", str(out)]
    assert main(args) == EXIT_OK
    summary = json.loads(out.read_text())
    assert summary["passed"] is True
    assert summary["sigma_prime_trace"] == pytest.approx(1.0)


def test_mixed_ppt_needs_input():
    assert main(["mixed", "--check", "ppt", "--product", "builtin:tensor(2,2)"]) == EXIT_INPUT


def test_invalid_seed_from_environment(monkeypatch):
    monkeypatch.setenv("GPC_SEED", "not-a-number")
    assert main(["catalog", "list"]) == EXIT_INPUT


def test_parse_params():
    assert parse_params(["q=0.8", "N=12"]) == {"q": 0.8, "N": 12}
    with pytest.raises(InputError):
        parse_params(["q"])
    with pytest.raises(InputError):
        parse_params(["q=abc"])
    assert np.isclose(parse_params(["tol_fact=1e-5"])["tol_fact"], 1e-5)


def test_catalog_run_single_as_csv(tmp_path):
    out = tmp_path / "wedge.csv"
    args = ["catalog", "run", "wedge_singlet", "--starts", "4", "--format", "csv", "--out", str(out)]
    assert main(args) == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == "name,passed,verdict,relative_residual,failed_checks"
    assert len(lines) == 2
    assert lines[1].startswith("wedge_singlet,True,FACTORIZABLE,")


def test_unwritable_output_is_one_line_error(tmp_path, capsys):
    blocker = tmp_path / "file.txt"
    blocker.write_text("not a directory", encoding="utf-8")
    code = main(["primes", "--max", "10", "--out", str(blocker / "primes.csv")])
    assert code == EXIT_INPUT
    err = capsys.readouterr().err.strip().splitlines()
    assert len(err) == 1
    assert err[0].startswith("error: E_IO")


def test_missing_state_file_is_io_error(tmp_path, capsys):
    code = main(["factorize", "--product", "builtin:wedge(2)", "--state", str(tmp_path / "missing.json"),
                 "--out", str(tmp_path / "r.json")])
    assert code == EXIT_INPUT
    assert capsys.readouterr().err.startswith("error: E_IO")
