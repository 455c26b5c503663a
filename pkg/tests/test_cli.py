"""Tests for the command-line surface: formats, determinism, exit codes."""

import json
import math

import numpy as np
import pytest

from squeezelab import cli, verify


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_photon_csv_structure(capsys, tmp_path):
    path = tmp_path / "photon.csv"
    code = cli.main(["photon", "--m", "0", "--r", "0", "--tail-eps", "1e-12",
                     "--out", str(path)])
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# squeezelab")
    assert lines[1].startswith("# config ")
    cfg = json.loads(lines[1][len("# config "):])
    assert cfg["command"] == "photon" and cfg["m"] == 0
    assert lines[-2] == "n,probability"
    assert lines[-1] == "0,1"


def test_photon_output_is_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    cli.main(["photon", "--m", "7", "--r", "1.4", "--out", str(a)])
    cli.main(["photon", "--m", "7", "--r", "1.4", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_photon_json_round_trips_floats(capsys):
    code, out, _ = run(capsys, "photon", "--m", "1", "--r", "0.6",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "v1"
    assert doc["columns"] == ["n", "probability"]
    p1 = dict((r[0], r[1]) for r in doc["rows"])[1]
    want = math.tanh(0.6) ** 0 / math.cosh(0.6) ** 3  # closed form at n=1
    assert p1 == pytest.approx(want, rel=1e-12)


def test_photon_csv_floats_survive_round_trip(capsys):
    code, out, _ = run(capsys, "photon", "--m", "2", "--r", "0.8")
    rows = [line for line in out.splitlines() if not line.startswith("#")][1:]
    vals = [float(line.split(",")[1]) for line in rows]
    from squeezelab import SqueezedNumberState, photon_distribution
    table = photon_distribution(SqueezedNumberState(2, 0.8))
    assert vals == [float(v) for v in table.probs]  # 17 significant digits


def test_quad_momentum_peaks(capsys):
    code, out, _ = run(capsys, "quad", "--kind", "momentum", "--m", "7",
                       "--r", "1.4", "--points", "3001")
    assert code == 0
    rows = [line.split(",") for line in out.splitlines()
            if line and not line.startswith("#")][1:]
    dens = np.array([float(r[1]) for r in rows])
    count = sum(1 for i in range(1, len(dens) - 1)
                if dens[i] > dens[i - 1] and dens[i] > dens[i + 1]
                and dens[i] > 1e-6 * dens.max())
    assert count == 8


def test_quad_amplitude_columns(capsys):
    code, out, _ = run(capsys, "quad", "--kind", "position", "--m", "1",
                       "--r", "0.2", "--points", "5", "--min", "-1", "--max", "1",
                       "--amplitude")
    header = [line for line in out.splitlines() if not line.startswith("#")][0]
    assert header == "coord,prob,re,im"


def test_quad_fock_limit_matches_hermite_density(capsys):
    # momentum density at r=0 is the plain Fock density
    code, out, _ = run(capsys, "quad", "--kind", "momentum", "--m", "3",
                       "--r", "0", "--points", "41", "--min", "-4", "--max", "4")
    rows = [line.split(",") for line in out.splitlines()
            if line and not line.startswith("#")][1:]
    for sp, spr in ((float(r[0]), float(r[1])) for r in rows):
        h3 = 8 * sp ** 3 - 12 * sp
        want = h3 ** 2 * math.exp(-sp * sp) / (math.sqrt(math.pi) * 8 * 6)
        assert spr == pytest.approx(want, abs=1e-12)


def test_qfunc_grid_and_slice_companion(tmp_path):
    out = tmp_path / "q.csv"
    code = cli.main(["qfunc", "--m", "0", "--r", "0", "--re-min", "-1",
                     "--re-max", "1", "--im-min", "-1", "--im-max", "1",
                     "--n-re", "2", "--n-im", "2", "--out", str(out)])
    assert code == 0
    rows = [line.split(",") for line in out.read_text().splitlines()
            if line and not line.startswith("#")][1:]
    assert len(rows) == 4  # 2x2 smoke grid
    want = math.exp(-2.0) / math.pi  # Q of vacuum at |alpha|^2 = 2
    assert float(rows[0][2]) == pytest.approx(want, rel=1e-12)
    companion = tmp_path / "q_slice.csv"
    assert companion.exists()
    slice_rows = [line for line in companion.read_text().splitlines()
                  if line and not line.startswith("#")][1:]
    assert len(slice_rows) == 2


def test_qfunc_im_slow_axis_row_order(capsys):
    code, out, _ = run(capsys, "qfunc", "--m", "0", "--r", "0",
                       "--re-min", "-1", "--re-max", "1",
                       "--im-min", "-2", "--im-max", "2",
                       "--n-re", "3", "--n-im", "2")
    rows = [line.split(",") for line in out.splitlines()
            if line and not line.startswith("#")][1:]
    res = [float(r[0]) for r in rows[:4]]
    ims = [float(r[1]) for r in rows[:4]]
    assert res == [-1.0, 0.0, 1.0, -1.0]       # re is the fast axis
    assert ims == [-2.0, -2.0, -2.0, 2.0]      # im advances once per row sweep


def test_semiclassical_flags_forbidden_rows(capsys):
    code, out, _ = run(capsys, "semiclassical", "--m", "7", "--r", "1.4",
                       "--points", "50")
    assert code == 0
    rows = [line.split(",") for line in out.splitlines()
            if line and not line.startswith("#")][1:]
    bound = math.exp(1.4) * math.sqrt(7.5)
    for y, _, _, valid in ((float(r[0]), r[1], r[2], int(r[3])) for r in rows):
        assert valid == (1 if y < bound else 0)
    assert any(int(r[3]) == 0 for r in rows)  # the range extends past the boundary


def test_semiclassical_empty_window_warns(capsys):
    code, out, err = run(capsys, "semiclassical", "--m", "2", "--r", "0.3",
                         "--points", "10", "--y-min", "40", "--y-max", "50")
    assert code == 0
    assert "invalid" in err
    rows = [line.split(",") for line in out.splitlines()
            if line and not line.startswith("#")][1:]
    assert all(int(r[3]) == 0 for r in rows)


def test_maxima_command_photon(capsys):
    code, out, _ = run(capsys, "maxima", "--representation", "photon",
                       "--m", "7", "--r", "1.4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert [row[0] for row in doc["rows"]] == [1, 11, 37, 89]
    assert doc["meta"]["count"] == 4


def test_transition_command(capsys):
    code, out, _ = run(capsys, "transition", "--m", "4", "--r-lo", "0.1",
                       "--r-hi", "1.4", "--step", "0.02", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert abs(doc["meta"]["r_star"] - 0.5 * math.log(4)) < 0.15


def test_transition_below_range_exits_4(capsys):
    code, out, err = run(capsys, "transition", "--m", "2", "--r-lo", "1.0",
                         "--r-hi", "1.2", "--step", "0.05")
    assert code == 4
    assert "below" in err


def test_bad_arguments_exit_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["photon", "--m", "notanint", "--r", "1.0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["photon", "--m", "-3", "--r", "1.0"])
    assert exc.value.code == 2


def test_verify_single_suite_passes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "parity")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "v1" and doc["passed"]


def test_verify_failure_exits_3(capsys, monkeypatch):
    def failing_suite(max_m=12):
        return [{"name": "stub", "measured": 1.0, "limit": 0.0, "passed": False}]
    monkeypatch.setitem(verify.SUITES, "parity", failing_suite)
    code, out, _ = run(capsys, "verify", "--suite", "parity")
    assert code == 3
    assert not json.loads(out)["passed"]


def test_threads_env_is_validated(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("SQUEEZELAB_THREADS", "2")
    out = tmp_path / "q.csv"
    code = cli.main(["qfunc", "--m", "1", "--r", "0.5", "--re-min", "-1",
                     "--re-max", "1", "--im-min", "-1", "--im-max", "1",
                     "--n-re", "4", "--n-im", "8", "--out", str(out)])
    assert code == 0
    monkeypatch.setenv("SQUEEZELAB_THREADS", "x")
    with pytest.raises(SystemExit) as exc:
        cli.main(["qfunc", "--m", "1", "--r", "0.5", "--n-re", "3", "--n-im", "3",
                  "--out", str(out)])
    assert exc.value.code == 2


def test_threads_env_does_not_change_output(tmp_path, monkeypatch):
    args = ["qfunc", "--m", "7", "--r", "1.4", "--re-min", "-2", "--re-max", "2",
            "--im-min", "-8", "--im-max", "8", "--n-re", "7", "--n-im", "33"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    monkeypatch.delenv("SQUEEZELAB_THREADS", raising=False)
    cli.main(args + ["--out", str(a)])
    monkeypatch.setenv("SQUEEZELAB_THREADS", "4")
    cli.main(args + ["--out", str(b)])
    assert a.read_bytes() == b.read_bytes()
