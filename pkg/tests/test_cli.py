import json
import math

import pytest

from seqphoton.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main, to_json


@pytest.fixture(autouse=True)
def out_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("SEQPHOTON_OUT_DIR", str(tmp_path))
    return tmp_path


def _only_file(d, pattern="*"):
    files = sorted(d.glob(pattern))
    assert len(files) == 1, files
    return files[0]


def test_simulate_ghz_json(out_dir):
    assert main(["simulate", "--kind", "ghz", "--n", "4", "--seed", "7"]) == EXIT_OK
    rep = json.loads(_only_file(out_dir).read_text())
    assert rep["fidelity"] == pytest.approx(1.0, abs=1e-12)
    assert len(rep["amplitudes"]) == 16 and rep["amplitudes"][0][1] == 0.0
    assert "bit_convention" in rep


def test_simulate_ca_cluster_stabilizers(out_dir):
    args = ["simulate", "--kind", "cluster", "--n", "3", "--atom", "ca40", "--alpha", "0.7853981634"]
    assert main(args) == EXIT_OK
    rep = json.loads(_only_file(out_dir).read_text())
    assert rep["stabilizers"] == pytest.approx([1.0, 1.0, 1.0], abs=1e-10)
    assert rep["compiled"]["lc"]["passed"]


def test_simulate_ca_bad_alpha_is_verification_failure():
    assert main(["simulate", "--kind", "cluster", "--n", "3", "--atom", "ca40", "--alpha", "0.7"]) == EXIT_FAIL


@pytest.mark.parametrize("args", [
    ["simulate", "--n", "0"],
    ["simulate", "--kind", "w"],
    ["simulate", "--alpha", "0.3"],
    ["simulate", "--atom", "ca40", "--alpha", "2"],
    ["simulate", "--seed", "-1"],
    ["budget", "--p-photon", "1.3e-2?"],
    ["budget", "--p-photon", "1.5"],
    ["budget", "--cavity-rate", "1e3"],
    ["frobnicate"],
])
def test_usage_errors(args):
    assert main(args) == EXIT_USAGE


def test_simulate_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["simulate", "--kind", "cluster", "--n", "5", "--seed", "123", "--out", str(p)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_simulate_seed_drives_mu(tmp_path):
    mus = set()
    for seed in range(8):
        p = tmp_path / f"{seed}.json"
        main(["simulate", "--n", "2", "--seed", str(seed), "--out", str(p)])
        mus.add(json.loads(p.read_text())["mu"])
    assert mus == {0, 1}


def test_simulate_csv(out_dir):
    assert main(["simulate", "--kind", "ghz", "--n", "2", "--format", "csv", "--atom", "rb87"]) == EXIT_OK
    text = _only_file(out_dir).read_bytes()
    assert b"\r" not in text
    lines = text.decode().splitlines()
    assert lines[[l.startswith("#") for l in lines].index(False)] == "index,bits,re,im"


@pytest.mark.parametrize("atom", ["abstract", "ca40", "rb87"])
def test_verify(atom, capsys, tmp_path):
    out = tmp_path / "v.json"
    assert main(["verify", "--atom", atom, "--out", str(out)]) == EXIT_OK
    printed = capsys.readouterr().out
    assert "FAIL" not in printed
    rep = json.loads(out.read_text())
    assert rep["passed"] and all(r["passed"] for r in rep["rows"])
    if atom == "rb87":
        dark = [r for r in rep["rows"] if r["check"].startswith("<") and "|H|" in r["check"]]
        assert len(dark) == 4 and all(r["value"] < 1e-12 for r in dark)


def test_budget_defaults(out_dir):
    assert main(["budget"]) == EXIT_OK
    rep = json.loads(_only_file(out_dir).read_text())
    row = rep["rows"][-1]
    assert row["n"] == 10 and row["p_cavity_chain"] == pytest.approx(0.0492, abs=1e-4)
    assert rep["header"]["seed"] == 0 and rep["header"]["p_photon"] == 0.74
    assert rep["header"]["loss_tolerant"] is True


def test_budget_small(out_dir):
    assert main(["budget", "--p-photon", "0.167", "--n", "2", "--format", "csv"]) == EXIT_OK
    lines = _only_file(out_dir).read_text().splitlines()
    body = [l for l in lines if not l.startswith("#")]
    assert body[0] == "n,p_cavity_chain,p_spdc_chain,ratio"
    n, cav, spdc, ratio = body[2].split(",")
    assert n == "2" and float(cav) == pytest.approx(0.0279, abs=1e-4) and float(spdc) == 1e-6
    assert any(l.startswith("# seed:") for l in lines)


def test_budget_monte_carlo(out_dir):
    assert main(["budget", "--shots", "200000", "--seed", "5"]) == EXIT_OK
    mc = json.loads(_only_file(out_dir).read_text())["monte_carlo"]
    lo, hi = mc["ci_5sigma"]
    assert lo <= 0.74 ** 10 <= hi


def test_to_json_formatting():
    text = to_json({"b": 0.1, "a": [1, 2.0, complex(1, -2)], "c": None, "d": math.inf})
    assert text.index('"a"') < text.index('"b"')
    assert "0.10000000000000001" in text
    assert "[1.0, -2.0]" in text and '"d": null' in text
