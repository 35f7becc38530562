import csv
import io
import math
import subprocess
import sys

import numpy as np
import pytest

from octolct import cli, oos1, transform as tr
from octolct.grid import Grid, OctField

GENERIC = ["--A1=1,1,1,2,0.5,-0.3", "--A2=0,-1,1,0.5,0.2,0.1", "--A3=2,1,1,1,-0.4,0.3"]


def run(*argv):
    out = io.StringIO()
    code = cli.main([str(a) for a in argv], out)
    return code, out.getvalue()


def kv(text):
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line)


@pytest.fixture
def small(tmp_path):
    path = tmp_path / "g.oos1"
    code, _ = run("gen", "-o", path, "--n", 16, "--halfwidth", 6, "--kind", "random_smooth", "--seed", 5)
    assert code == 0
    return path


def test_gen_default_gaussian(tmp_path):
    path = tmp_path / "g.oos1"
    code, text = run("gen", "-o", path)
    assert code == 0
    assert path.stat().st_size == 68 + 8 * 8 * 32 ** 3
    meta = kv(text)
    assert meta["grid_n"] == "32,32,32" and meta["bytes"] == str(path.stat().st_size)
    f = oos1.read(path)
    assert f.grid == Grid.centered((32, 32, 32), 8.0)
    assert f.comp[0].max() == pytest.approx(math.exp(-3 * 0.25 ** 2 / 2))


def test_gen_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for p in (a, b):
        assert run("gen", "-o", p, "--kind", "random_smooth", "--seed", 9, "--n", 8, "--halfwidth", 3)[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_parity_probe(tmp_path):
    from octolct.grid import parity8
    path = tmp_path / "p"
    assert run("gen", "-o", path, "--kind", "parity_probe", "--probe", "x1", "--n", 16, "--halfwidth", 6)[0] == 0
    parts = parity8(oos1.read(path))
    assert [k for k, v in parts.items() if np.any(v.comp)] == ["oee"]


def test_gen_anisotropic(tmp_path):
    path = tmp_path / "p"
    assert run("gen", "-o", path, "--n", "8,10,12", "--halfwidth", "2,3,4")[0] == 0
    assert oos1.read(path).grid == Grid.centered((8, 10, 12), (2.0, 3.0, 4.0))


@pytest.mark.parametrize("argv", [["--n", 15], ["--n", "8,8"], ["--sigma", -1], ["--components", "9"],
                                  ["--halfwidth", "x"]])
def test_gen_invalid(tmp_path, argv):
    assert run("gen", "-o", tmp_path / "x", *argv)[0] == 3


def test_gen_unwritable(tmp_path):
    assert run("gen", "-o", tmp_path / "missing" / "x", "--n", 8)[0] == 2


def test_transform_invert_roundtrip(small, tmp_path):
    F, back = tmp_path / "F", tmp_path / "back"
    code, text = run("transform", small, F, *GENERIC)
    assert code == 0
    meta = kv(text)
    assert float(meta["roundtrip_rel_err"]) <= 1e-10
    assert meta["operation"] == "forward" and meta["convention"] == "unitary"
    code, text = run("invert", F, back, *GENERIC, "--path", "fft")
    assert code == 0
    f, b = oos1.read(small), oos1.read(back)
    assert b.grid.same_as(f.grid)
    assert np.sqrt(np.sum((b.comp - f.comp) ** 2) / np.sum(f.comp ** 2)) <= 1e-10


def test_transform_matches_library(small, tmp_path):
    out = tmp_path / "F"
    assert run("transform", small, out, *GENERIC, "--convention", "literal")[0] == 0
    P = tr.OLCTParamsTriple.build((1, 1, 1, 2, 0.5, -0.3), (0, -1, 1, 0.5, 0.2, 0.1), (2, 1, 1, 1, -0.4, 0.3))
    ref = tr.oolct3d(oos1.read(small), P, tr.TransformOptions(phase_convention="literal"))
    assert np.array_equal(oos1.read(out).comp, ref.comp)


def test_transform_zero(tmp_path):
    z = tmp_path / "z"
    oos1.write(z, OctField.zeros(Grid.centered((8, 8, 8), 3.0)))
    for cmd in ("transform", "invert"):
        assert run(cmd, z, tmp_path / "o")[0] == 0
        assert not np.any(oos1.read(tmp_path / "o").comp)


def test_transform_deterministic(small, tmp_path):
    outs = []
    for name in ("a", "b"):
        assert run("transform", small, tmp_path / name, *GENERIC)[0] == 0
        outs.append((tmp_path / name).read_bytes())
    assert outs[0] == outs[1]


def test_transform_errors(small, tmp_path, capsys):
    code, _ = run("transform", small, tmp_path / "o", "--A1=1,2,0,2,0,0")
    assert code == 3
    assert "axis 1 (A1)" in capsys.readouterr().err
    code, _ = run("invert", small, tmp_path / "o", "--A3=1,0,0,1")
    assert code == 3
    assert "axis 3" in capsys.readouterr().err
    assert run("transform", small, tmp_path / "o", "--A2=a,b")[0] == 3
    assert run("transform", tmp_path / "nope", tmp_path / "o")[0] == 2
    bad = tmp_path / "bad"
    bad.write_bytes(b"OOS1garbage")
    assert run("transform", bad, tmp_path / "o")[0] == 2
    assert "malformed" in capsys.readouterr().err


def read_csv(text):
    return list(csv.reader(io.StringIO(text)))


def test_verify_all(small):
    code, text = run("verify", small, *GENERIC)
    assert code == 0
    rows = read_csv(text)
    assert tuple(rows[0]) == cli.CSV_COLUMNS
    assert text.splitlines()[0] == ",".join(cli.CSV_COLUMNS)
    names = [r[0] for r in rows[1:]]
    assert names == ["energy", "pitt", "log", "hausdorff_young", "local_1"]
    for r in rows[1:]:
        rec = dict(zip(cli.CSV_COLUMNS, r))
        assert rec["holds"] in ("true", "false") and rec["convention"] == "unitary"
        assert rec["grid_n"] == "16x16x16" and rec["grid_halfwidth"] == "6.0x6.0x6.0"
        assert (rec["b1"], rec["b2"], rec["b3"]) == ("1.0", "-1.0", "1.0")
        for col in ("lhs", "rhs", "constant", "slack"):
            assert repr(float(rec[col])) == rec[col]


def test_verify_energy_fourier(tmp_path):
    path = tmp_path / "g"
    assert run("gen", "-o", path)[0] == 0
    code, text = run("verify", path, "--check", "energy", "--path", "fft")
    rec = dict(zip(cli.CSV_COLUMNS, read_csv(text)[1]))
    assert float(rec["lhs"]) / float(rec["rhs"]) == pytest.approx(1.0, abs=1e-6)


def test_verify_pitt_alpha_zero_matches_energy(small):
    _, text = run("verify", small, *GENERIC, "--check", "pitt", "--alpha", 0)
    pitt = dict(zip(cli.CSV_COLUMNS, read_csv(text)[1]))
    _, text = run("verify", small, *GENERIC, "--check", "energy")
    energy = dict(zip(cli.CSV_COLUMNS, read_csv(text)[1]))
    assert pitt["lhs"] == energy["lhs"]


def test_verify_csv_file_deterministic(small, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        code, text = run("verify", small, *GENERIC, "--csv", p, "--check", "all", "--alpha", 0.7)
        assert code == 0 and kv(text)["rows"] == "5"
    assert a.read_bytes() == b.read_bytes()
    assert run("verify", small, "--csv", tmp_path / "no" / "x.csv")[0] == 2


@pytest.mark.parametrize("argv", [["--check", "pitt", "--alpha", 2], ["--check", "pitt", "--alpha", -1],
                                  ["--check", "local", "--alpha", 1], ["--check", "hy", "--p", 2.5],
                                  ["--check", "local", "--mask-ball-r", 0],
                                  ["--check", "local", "--mask-ball-r", 1e-6],
                                  ["--check", "all", "--alpha", 2.2]])
def test_verify_invalid_check(small, argv):
    assert run("verify", small, *argv)[0] == 4


def test_verify_zero_signal(tmp_path):
    z = tmp_path / "z"
    oos1.write(z, OctField.zeros(Grid.centered((8, 8, 8), 3.0)))
    assert run("verify", z)[0] == 4


def test_verify_local_2(small):
    _, text = run("verify", small, "--check", "local", "--alpha", 1.5)
    assert read_csv(text)[1][0] == "local_2"


def test_selftest():
    code, text = run("selftest")
    assert code == 0
    for group in ("table", "pairs", "parity", "paths", "roundtrip"):
        assert f"{group}: PASS" in text
    assert "selftest: PASS" in text


def test_selftest_fault_injection():
    code, text = run("selftest", "--inject-fault", "table")
    assert code == 1
    assert "table: FAIL" in text and "FAIL table" in text
    # the corruption is scoped to the injected run
    assert run("selftest")[0] == 0


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "octolct.cli", "selftest"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert "selftest: PASS" in proc.stdout
