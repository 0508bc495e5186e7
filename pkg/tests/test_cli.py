import json
import subprocess
import sys

import pytest

from hypercode import cli

K4 = "4 4\n0111\n1011\n1101\n1110\n"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bounds_c1(capsys):
    code, out, err = run(capsys, "bounds", "--ensemble", "c1", "--t", "2", "--rate", "0.5")
    assert code == 0
    assert float(out) == pytest.approx(0.09276, abs=1e-4)
    assert json.loads(err.splitlines()[0])["command"] == "bounds"


def test_bounds_radius(capsys, tmp_path):
    dest = tmp_path / "r.json"
    code, out, _ = run(capsys, "bounds", "--radius", "refined", "--t", "3", "--delta1", "0.25", "--out", str(dest))
    assert code == 0
    assert float(out) == pytest.approx(0.25**1.5 / 5.94, rel=0.01)
    assert json.loads(dest.read_text())["formula"] == "refined"


def test_bounds_chernov(capsys, tmp_path):
    dest = tmp_path / "curve.csv"
    code, out, _ = run(capsys, "bounds", "--ensemble", "c2chernov", "--code", "hamming_15", "--t", "3",
                       "--points", "20", "--out", str(dest))
    assert code == 0
    assert float(out) == pytest.approx(0.2307, abs=5e-4)
    assert dest.read_text().startswith("omega,F\n")


def test_bounds_bad_combination(capsys):
    assert run(capsys, "bounds", "--t", "2")[0] == 2
    assert run(capsys, "bounds", "--radius", "bh", "--t", "3", "--delta1", "0.2")[0] == 2
    assert run(capsys, "bounds", "--ensemble", "c1", "--t", "2", "--rate", "1.5")[0] == 2


def test_construct_random(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "--model", "random", "--t", "3", "--m", "4", "--n", "3",
                       "--seed", "7", "--out", str(tmp_path / "c"))
    assert code == 0
    assert "N=12" in out.splitlines()
    manifest = (tmp_path / "c" / "manifest.txt").read_text()
    assert "N=12" in manifest and "seed=7" in manifest


def test_construct_path(capsys, tmp_path):
    g = tmp_path / "k4.txt"
    g.write_text(K4)
    code, out, _ = run(capsys, "construct", "--model", "path", "--graph", str(g), "--t", "3")
    assert code == 0
    lines = out.splitlines()
    assert "n=9" in lines and "N=36" in lines
    assert float(lines[-1].split("=")[1]) == pytest.approx(4 / 3)


def test_construct_missing_m(capsys):
    assert run(capsys, "construct", "--model", "random", "--t", "3", "--n", "3")[0] == 2


def test_usage_exit_code_subprocess():
    proc = subprocess.run([sys.executable, "-m", "hypercode", "construct", "--t", "3"], capture_output=True)
    assert proc.returncode == 2


@pytest.fixture
def manifest(tmp_path, capsys):
    run(capsys, "construct", "--model", "random", "--t", "2", "--m", "7", "--n", "7", "--code", "hamming_7",
        "--seed", "3", "--out", str(tmp_path / "code"))
    return tmp_path / "code" / "manifest.txt"


def test_decode_codeword(capsys, manifest, tmp_path):
    zero = "0" * 49
    code, out, _ = run(capsys, "decode", "--manifest", str(manifest), "--word", zero, "--out", str(tmp_path / "d"))
    assert code == 0 and out.strip() == zero
    assert (tmp_path / "d.txt").read_text().strip() == zero
    assert json.loads((tmp_path / "d.json").read_text())["success"]


def test_decode_single_error_trace(capsys, manifest, tmp_path):
    y = ["0"] * 49
    y[11] = "1"
    (tmp_path / "truth.txt").write_text("0" * 49 + "\n")
    code, out, _ = run(capsys, "decode", "--manifest", str(manifest), "--word", "".join(y), "--depth", "2",
                       "--trace", str(tmp_path / "t.csv"), "--truth", str(tmp_path / "truth.txt"))
    assert code == 0 and out.strip() == "0" * 49
    rows = (tmp_path / "t.csv").read_text().splitlines()[1:]
    assert rows[-1].endswith(",0")


def test_decode_failure_exit(capsys, manifest):
    word = ("1101001" * 7)
    code, out, _ = run(capsys, "decode", "--manifest", str(manifest), "--word", word, "--decoder", "bh",
                       "--max-iters", "2")
    if code == 1:
        assert json.loads(out)["success"] is False
    else:
        assert code == 0


def test_decode_io_errors(capsys, manifest, tmp_path):
    assert run(capsys, "decode", "--manifest", str(tmp_path / "none.txt"), "--word", "0")[0] == 2
    assert run(capsys, "decode", "--manifest", str(manifest), "--word", "0101")[0] == 2
    assert run(capsys, "decode", "--manifest", str(manifest), "--word", "01x")[0] == 2


def test_simulate_deterministic(capsys, manifest, tmp_path):
    outs = []
    for jobs in ("1", "4", "1"):
        dest = tmp_path / f"s{len(outs)}.csv"
        code, _, _ = run(capsys, "simulate", "--manifest", str(manifest), "--sweep", "0..4", "--trials", "25",
                         "--seed", "1", "--jobs", jobs, "--out", str(dest))
        assert code == 0
        outs.append(dest.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_simulate_ensemble(capsys):
    code, out, _ = run(capsys, "simulate", "--ensemble", "C3", "--t", "2", "--m", "2", "--n", "2", "--rows", "1",
                       "--trials", "20", "--format", "json")
    assert code == 0
    assert json.loads(out)["config"]["seed"] == cli.DEFAULT_SEED


def test_seed_environment(capsys, monkeypatch):
    monkeypatch.setenv(cli.SEED_ENV, "99")
    _, out, err = run(capsys, "simulate", "--ensemble", "C1", "--t", "2", "--m", "2", "--n", "2", "--rows", "1",
                      "--trials", "3")
    assert json.loads(err.splitlines()[0])["seed"] == 99


def test_spectrum(capsys):
    code, out, _ = run(capsys, "spectrum", "--t", "2", "--rate", "0.5", "--points", "10")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "omega,c1,c3,random_linear" and len(lines) == 11


def test_config_replay(capsys, tmp_path, manifest):
    cfg = tmp_path / "cfg.json"
    dest = tmp_path / "a.csv"
    run(capsys, "--save-config", str(cfg), "simulate", "--manifest", str(manifest), "--sweep", "1,3",
        "--trials", "5", "--out", str(dest))
    first = dest.read_bytes()
    dest.unlink()
    code, _, _ = run(capsys, "--config", str(cfg))
    assert code == 0 and dest.read_bytes() == first


def test_no_subcommand(capsys):
    assert run(capsys)[0] == 2
