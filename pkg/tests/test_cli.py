import json
import logging
from fractions import Fraction

import pytest

from crlab.cli import main
from crlab.errors import ConfigError
from crlab.files import parse_config_file, parse_point_file, parse_scalar_file
from crlab.scalar import GAUSSIAN, RATIONAL, GaussianRational


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return _write


def load(out, name):
    return json.loads((out / name).read_text())


def test_scalar_file_grammar(write, caplog):
    assert len(parse_scalar_file(write("a.txt", "0\n1\n1/2\n"), RATIONAL)) == 3
    S = parse_scalar_file(write("g.txt", "1/2+1/3*i\n"), GAUSSIAN)
    assert list(S) == [GaussianRational(Fraction(1, 2), Fraction(1, 3))]
    with caplog.at_level(logging.WARNING):
        assert len(parse_scalar_file(write("d.txt", "0\n0\n"), RATIONAL)) == 1
    assert "duplicate" in caplog.text
    assert len(parse_scalar_file(write("c.txt", "# header\n\n3  # three\ninf\n"), RATIONAL)) == 2


def test_file_errors_carry_location(write):
    with pytest.raises(ConfigError, match="b.txt:2"):
        parse_scalar_file(write("b.txt", "1\nx\n"), RATIONAL)
    with pytest.raises(ConfigError, match="p.txt:1"):
        parse_point_file(write("p.txt", "1 2 3\n"), RATIONAL)
    with pytest.raises(ConfigError, match="k.cfg:1"):
        parse_config_file(write("k.cfg", "no equals\n"))


def test_crossratio_command(write, tmp_path):
    out = tmp_path / "run"
    assert main(["crossratio", "--input", write("a.txt", "0\n1\n2\n3\n"), "--out-dir", str(out)]) == 0
    doc = load(out, "crossratio.json")
    assert (doc["size_A"], doc["size_C"]) == (4, 6)
    manifest = load(out, "manifest.json")
    assert manifest["config"]["command"] == "crossratio"
    assert {"crlab", "python", "numpy", "kernel_backend"} <= set(manifest["versions"])
    assert "wall_time_s" in manifest and manifest["seed"] == 0
    assert (out / "cross_ratios.csv").read_text().splitlines()[0] == "value"


def test_energy_command(write, tmp_path):
    out = tmp_path / "e"
    assert main(["energy", "--input", write("a.txt", "0\n1\n2\n3\n"), "--out-dir", str(out)]) == 0
    assert load(out, "energy.json")["Q"] == 96
    out5 = tmp_path / "e5"
    assert main(["energy", "--input", write("b.txt", "0\n1\n2\n3\n4\n"), "--threshold-t", "1/3",
                 "--out-dir", str(out5)]) == 0
    doc = load(out5, "energy.json")
    assert (doc["P"], doc["size_G"], doc["size_C"], doc["t"]) == (240, 60, 18, "1/3")
    assert doc["size_G1"] + doc["size_G2"] == 60


@pytest.mark.parametrize("argv", [
    ["rich", "--family", "ap", "--sizes", "5", "--k", "24"],
    ["setalg", "--family", "gp", "--sizes", "6", "--k", "2", "--l", "1"],
    ["omega", "--family", "ap", "--sizes", "4"],
    ["omega", "--directions", "0,1/2,1/3", "--radii", "1,2,4"],
    ["sweep", "--family", "gp", "--sizes", "4..8"],
    ["search", "--statistic", "A+A", "--n", "4", "--iterations", "50"],
    ["crossratio", "--family", "random", "--sizes", "6", "--mode", "gaussian", "--height", "5"],
])
def test_commands_succeed(argv, tmp_path):
    out = tmp_path / "o"
    assert main([*argv, "--out-dir", str(out)]) == 0
    assert (out / "manifest.json").exists()


def test_incidence_command(write, tmp_path):
    out = tmp_path / "i"
    pts = write("p.txt", "".join(f"{x} {y}\n" for x in range(3) for y in range(3)))
    curves = write("c.txt", "L 1 -1 0\nL -1 1 1\n")
    assert main(["incidence", "--input", pts, "--curves", curves, "--out-dir", str(out)]) == 0
    assert load(out, "incidence.json")["incidences"] == 5
    out2 = tmp_path / "i2"
    assert main(["incidence", "--family", "ap", "--sizes", "4", "--curves", curves, "--out-dir", str(out2)]) == 0
    assert load(out2, "incidence.json")["size_C"] == 6


def test_config_file_and_precedence(write, tmp_path):
    data = write("a.txt", "0\n1\n2\n3\n4\n")
    cfg = write("run.cfg", f"input = {data}\nthreshold-t = 1/4\nout-dir = {tmp_path / 'cfg'}\n")
    assert main(["energy", "--config", cfg]) == 0
    assert load(tmp_path / "cfg", "energy.json")["t"] == "1/4"
    assert main(["energy", "--config", cfg, "--threshold-t", "2/3"]) == 0
    assert load(tmp_path / "cfg", "energy.json")["t"] == "2/3"


def test_exit_codes(write, tmp_path, monkeypatch):
    out = str(tmp_path / "x")
    data = write("a.txt", "0\n1\n2\n3\n")
    assert main(["crossratio", "--input", str(tmp_path / "missing"), "--out-dir", out]) == 2
    assert main(["crossratio", "--input", write("bad.txt", "1\nfoo\n"), "--out-dir", out]) == 2
    assert main(["crossratio", "--out-dir", out]) == 2
    assert main(["crossratio", "--input", data, "--family", "gp", "--out-dir", out]) == 2
    assert main(["energy", "--input", data, "--threshold-t", "3/2", "--out-dir", out]) == 2
    assert main(["crossratio", "--config", write("k.cfg", "bogus = 1\n"), "--out-dir", out]) == 2
    assert main(["crossratio", "--family", "gp", "--sizes", "300", "--budget", "1000", "--out-dir", out]) == 3
    monkeypatch.setenv("CRL_BUDGET", "10")
    assert main(["crossratio", "--family", "gp", "--sizes", "40", "--out-dir", out]) == 3
    assert main(["crossratio", "--family", "gp", "--sizes", "40", "--budget", "1e9", "--out-dir", out]) == 0


def test_verify_failure_exit_code(tmp_path, monkeypatch):
    import crlab.verify as verify

    def broken(count=1, seed=0):
        raise verify.IdentityViolation("planted")

    monkeypatch.setitem(verify.CHECKS, "3 golden values", broken)
    assert main(["verify", "--quick", "--out-dir", str(tmp_path / "v")]) == 4


@pytest.mark.slow
def test_verify_defaults(tmp_path, capsys):
    assert main(["verify", "--out-dir", str(tmp_path / "v")]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 11 and all(line.startswith("PASS") for line in lines)
