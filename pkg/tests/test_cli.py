import json

import pytest

from ellgen.chern import Manifold
from ellgen.cli import main
from ellgen.series import USeries


@pytest.fixture
def k3_file(tmp_path):
    path = tmp_path / "k3.json"
    path.write_text(
        json.dumps({"name": "K3", "dim": 4, "pontryagin_numbers": {"[1]": "-48"}})
    )
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_genus_text_output(capsys, k3_file):
    code, out, _ = run(capsys, "genus", "--manifold", k3_file, "--genus", "ell2", "--uorder", "4")
    assert code == 0
    assert out.startswith("2 + 48 q^(1/2)")


def test_genus_json_roundtrip(capsys, k3_file):
    code, out, _ = run(
        capsys, "genus", "--manifold", k3_file, "--genus", "ell1", "--uorder", "6",
        "--format", "json",
    )
    assert code == 0
    series = USeries.from_json(json.loads(out))
    assert series == USeries({0: -16, 2: -384, 4: -384}, 6)


def test_genus_zero_manifold(capsys, tmp_path):
    path = tmp_path / "zero.json"
    path.write_text(json.dumps({"name": "z", "dim": 8, "pontryagin_numbers": {}}))
    code, out, err = run(capsys, "genus", "--manifold", str(path), "--genus", "ell1", "--uorder", "4")
    assert code == 0
    assert out.startswith("0")
    assert "assuming 0" in err  # missing-number warning


def test_genus_quadric_ahat_zero(capsys, tmp_path):
    path = tmp_path / "quadric.json"
    path.write_text(
        json.dumps({"name": "q", "dim": 8, "pontryagin_numbers": {"[1,1]": "8", "[2]": "14"}})
    )
    code, out, _ = run(capsys, "genus", "--manifold", str(path), "--genus", "ahat")
    assert code == 0
    assert out.startswith("0")


def test_genus_malformed_json(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "genus", "--manifold", str(path), "--genus", "ahat")
    assert code == 2
    assert "error" in err


def test_genus_wrong_weight_partition(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"name": "b", "dim": 4, "pontryagin_numbers": {"[2]": "1"}}))
    code, _, err = run(capsys, "genus", "--manifold", str(path), "--genus", "ahat")
    assert code == 2


def test_genus_dimension_error(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"name": "b", "dim": 6, "pontryagin_numbers": {}}))
    code, _, err = run(capsys, "genus", "--manifold", str(path), "--genus", "ahat")
    assert code == 3


def test_hypersurface_quadric(capsys):
    code, out, _ = run(capsys, "hypersurface", "--ambient", "5", "--degree", "2", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["manifold"]["pontryagin_numbers"] == {"[1,1]": "8", "[2]": "14"}
    assert obj["signature"] == "2"
    assert obj["ahat"] == "0"
    ell2 = USeries.from_json(obj["ell2"])
    assert ell2.coeff(1) == 2


def test_hypersurface_cp2(capsys):
    code, out, _ = run(capsys, "hypersurface", "--ambient", "3", "--degree", "1")
    assert code == 0
    assert "signature = 1" in out


def test_hypersurface_bad_dimension(capsys):
    code, _, err = run(capsys, "hypersurface", "--ambient", "4", "--degree", "2")
    assert code == 3
    assert "not a multiple of 4" in err


def test_hypersurface_bad_degree(capsys):
    code, _, _ = run(capsys, "hypersurface", "--ambient", "5", "--degree", "0")
    assert code == 2


def test_bundles_pretty(capsys):
    code, out, _ = run(capsys, "bundles", "--n", "2", "--uorder", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "B0 = 1·1"
    assert lines[1] == "B1 = -Λ^1(T) + 8·1"


def test_verify_cancellation(capsys):
    code, out, _ = run(capsys, "verify", "--check", "cancellation", "--samples", "10")
    assert code == 0
    report = json.loads(out)
    assert report["pass"] is True
    assert report["residual"] == "0"


def test_verify_modular_relation(capsys):
    code, out, _ = run(
        capsys, "verify", "--check", "modular-relation", "--n", "2", "--uorder", "12",
        "--samples", "3",
    )
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_verify_route_equivalence(capsys):
    code, out, _ = run(
        capsys, "verify", "--check", "route-equivalence", "--n", "1", "--uorder", "5",
        "--samples", "3",
    )
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_verify_transformation_laws(capsys):
    code, out, _ = run(capsys, "verify", "--check", "transformation-laws", "--tau", "i")
    assert code == 0
    report = json.loads(out)
    assert report["pass"] is True
    assert report["delta_residual"] < 1e-9


def test_verify_seed_reproducible(capsys):
    _, out1, _ = run(capsys, "verify", "--check", "modular-relation", "--n", "1",
                     "--uorder", "8", "--samples", "2", "--seed", "5")
    _, out2, _ = run(capsys, "verify", "--check", "modular-relation", "--n", "1",
                     "--uorder", "8", "--samples", "2", "--seed", "5")
    assert out1 == out2


def test_sobolev_command(capsys):
    code, out, _ = run(capsys, "sobolev", "--m", "16", "--b", "1.0")
    assert code == 0
    report = json.loads(out)
    assert report["residual"] < 1e-10
    assert report["C_b"] > 0
    assert report["R"] > 0


def test_uorder_env_override(capsys, k3_file, monkeypatch):
    monkeypatch.setenv("GENUS_DEFAULT_UORDER", "6")
    code, out, _ = run(capsys, "genus", "--manifold", k3_file, "--genus", "ell2",
                       "--format", "json")
    assert code == 0
    assert json.loads(out)["order"] == 6


def test_manifold_json_roundtrip_via_cli_schema():
    m = Manifold("q", 8, {(1, 1): 8, (2,): 14})
    assert Manifold.from_json(json.loads(json.dumps(m.to_json()))) == m
