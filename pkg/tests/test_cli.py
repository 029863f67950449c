import os
import subprocess
import sys

import numpy as np
import pytest

from kac_spectral import cli
from kac_spectral.coefficients import table_from_csv


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_version_flag():
    with pytest.raises(SystemExit) as info:
        cli.main(["--version"])
    assert info.value.code == 0


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        cli.main(["frobnicate"])
    assert info.value.code == 2


def test_verify_quick(capsys):
    code, out, _ = run_cli(capsys, "verify", "--quick")
    assert code == 0
    assert "FAIL" not in out
    lines = [ln for ln in out.splitlines() if ln]
    assert lines[-1].startswith("verify:")
    assert "checks passed" in lines[-1]


def test_coeffs_writes_table(capsys, tmp_path):
    path = os.path.join(tmp_path, "table.csv")
    code, out, _ = run_cli(capsys, "coeffs", "--s", "0.5", "--N", "8",
                           "--out", path)
    assert code == 0
    table = table_from_csv(path)
    assert table.N == 8 and table.s == 0.5
    assert "lambda_1" in out


def test_coeffs_rejects_bad_truncation(capsys):
    code, out, _ = run_cli(capsys, "coeffs", "--N", "2")
    assert code == 1
    assert "FAIL,coeffs" in out


def test_solve_and_diagnose_round_trip(capsys, tmp_path):
    cfg = os.path.join(tmp_path, "run.cfg")
    with open(cfg, "w") as fh:
        fh.write("N = 12\nK = 4\nT = 0.02\ndt = 1e-3\nsnapshot_every = 10\n"
                 "initial.kind = random_smooth\ninitial.amplitude = 1e-2\n")
    out_dir = os.path.join(tmp_path, "out")
    code, out, _ = run_cli(capsys, "solve", "--config", cfg,
                           "--out_dir", out_dir)
    assert code == 0
    assert "sup" in out
    snaps = sorted(p for p in os.listdir(out_dir) if p.startswith("snapshot"))
    assert snaps == ["snapshot_000000.csv", "snapshot_000010.csv",
                     "snapshot_000020.csv"]

    diag_dir = os.path.join(tmp_path, "diag")
    code, out, _ = run_cli(capsys, "diagnose", "--snapshots", out_dir,
                           "--out", diag_dir, "--k-max", "4")
    assert code == 0
    for name, version in (("gevrey_fits.csv", "# kac-gevrey v1"),
                          ("theorem_probe.csv", "# kac-theorem-probe v1"),
                          ("supnorm_probe.csv", "# kac-supnorm v1")):
        with open(os.path.join(diag_dir, name)) as fh:
            assert fh.readline().startswith(version)
    fits = np.loadtxt(os.path.join(diag_dir, "gevrey_fits.csv"),
                      delimiter=",", skiprows=3)
    assert fits.shape == (2, 5)  # the two t > 0 snapshots
    sup = np.loadtxt(os.path.join(diag_dir, "supnorm_probe.csv"),
                     delimiter=",", skiprows=3)
    assert sup.shape == (27, 4)  # all (k,l,p) in {0,1,2}^3


def test_solve_flag_overrides_config(capsys, tmp_path):
    cfg = os.path.join(tmp_path, "run.cfg")
    with open(cfg, "w") as fh:
        fh.write("N = 12\nK = 4\nT = 0.004\ndt = 1e-3\n")
    out_dir = os.path.join(tmp_path, "o1")
    code, _, _ = run_cli(capsys, "solve", "--config", cfg, "--K", "2",
                         "--out_dir", out_dir)
    assert code == 0
    with open(os.path.join(out_dir, "snapshot_000000.csv")) as fh:
        assert "K=2" in fh.readline()


def test_solve_missing_config_is_usage_error(capsys, tmp_path):
    code, _, err = run_cli(capsys, "solve", "--config",
                           os.path.join(tmp_path, "absent.cfg"))
    assert code == 2
    assert "absent.cfg" in err


def test_solve_bad_config_content(capsys, tmp_path):
    cfg = os.path.join(tmp_path, "run.cfg")
    with open(cfg, "w") as fh:
        fh.write("warp = 9\n")
    code, out, _ = run_cli(capsys, "solve", "--config", cfg)
    assert code == 1
    assert out.startswith("FAIL,config,")


def test_diagnose_empty_directory(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "diagnose", "--snapshots", str(tmp_path))
    assert code == 1
    assert out.startswith("FAIL,diagnose")


def test_hypo_writes_curve(capsys, tmp_path):
    path = os.path.join(tmp_path, "hypo.csv")
    code, out, _ = run_cli(capsys, "hypo", "--N", "16", "--xi", "0,1,4",
                           "--out", path)
    assert code == 0
    with open(path) as fh:
        assert fh.readline().startswith("# kac-hypo v1")
    rows = np.loadtxt(path, delimiter=",", skiprows=3)
    assert rows.shape == (3, 2)
    assert np.all(rows[:, 1] > 0.0)


def test_bobylev_cross_check(capsys):
    code, out, _ = run_cli(capsys, "bobylev", "--max-degree", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "k,l,alpha_gamma,alpha_oracle,rel_err"
    assert "FAIL" not in out
    assert "worst" in lines[-1]


def test_console_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "kac_spectral.cli", "--version"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "kac-spectral" in proc.stdout
