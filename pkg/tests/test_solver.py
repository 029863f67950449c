import json
import math
import os

import numpy as np
import pytest

from kac_spectral.solver import (PicardDivergenceError, SolverConfig,
                                 contraction_probe, run, step_imex)
from kac_spectral.state import (NormKind, SpectralState, init_state, norm,
                                random_smooth, single_mode, state_from_csv)

L = 2.0 * math.pi


def small_config(**overrides):
    base = dict(s=0.5, N=12, K=4, L=L, dt=4e-3, T=4e-2, mode="imex",
                initial=random_smooth(seed=3, decay=1.0, amplitude=1e-2),
                snapshot_every=5)
    base.update(overrides)
    return SolverConfig(**base)


def test_config_validation():
    with pytest.raises(ValueError):
        small_config(mode="euler")
    with pytest.raises(ValueError):
        small_config(dt=0.0)
    with pytest.raises(ValueError):
        small_config(dt=1.0, T=0.5)
    with pytest.raises(ValueError):
        small_config(picard_tol=0.0)
    with pytest.raises(ValueError):
        small_config(N=2)


def test_imex_solves_the_implicit_system(table16):
    st0 = init_state(random_smooth(seed=4, decay=1.0, amplitude=0.05),
                     10, 3, L)
    dt = 0.01
    out = step_imex(st0, dt, table16, include_gamma=False)
    xi = st0.xi()
    for col in range(st0.c.shape[1]):
        m = np.eye(10, dtype=complex) + dt * (
            1j * xi[col] * (np.diag(np.sqrt(np.arange(1.0, 10)), 1)
                            + np.diag(np.sqrt(np.arange(1.0, 10)), -1))
            + np.diag(table16.lam[:10]))
        direct = np.linalg.solve(m, st0.c[:, col])
        assert np.max(np.abs(out.c[:, col] - direct)) < 1e-13


def test_linear_step_never_amplifies(table16):
    st0 = init_state(random_smooth(seed=5, decay=0.5, amplitude=1.0),
                     12, 4, L)
    out = step_imex(st0, 0.05, table16, include_gamma=False)
    assert norm(out, NormKind.L2) <= norm(st0, NormKind.L2) * (1 + 1e-14)


def test_factorization_cache_reuse(table16):
    table16._solver_cache.clear()
    st0 = init_state(single_mode(3, 1, 1e-3), 8, 2, L)
    step_imex(st0, 0.01, table16)
    step_imex(st0, 0.01, table16)
    assert len(table16._solver_cache) == 1
    step_imex(st0, 0.02, table16)
    assert len(table16._solver_cache) == 2
    table16._solver_cache.clear()


def test_first_order_accuracy(table16):
    # endpoint error against a dt/160 reference halves with the step
    def endpoint(dt):
        cfg = small_config(dt=dt, initial=random_smooth(
            seed=3, decay=1.0, amplitude=0.1), snapshot_every=0)
        return run(cfg, table=table16).snapshots[-1][1].c

    ref = endpoint(4e-2 / 160)
    e1 = np.linalg.norm(endpoint(4e-3) - ref)
    e2 = np.linalg.norm(endpoint(2e-3) - ref)
    assert 1.6 < e1 / e2 < 3.4


def test_methods_agree_on_small_data(table16):
    # the schemes differ only in their O(dt) treatment of the bilinear
    # term, so their gap is bounded by the self-refinement errors
    def endpoint(mode, dt):
        return run(small_config(mode=mode, dt=dt),
                   table=table16).snapshots[-1][1].c

    a, a_half = endpoint("imex", 4e-3), endpoint("imex", 2e-3)
    b, b_half = endpoint("picard", 4e-3), endpoint("picard", 2e-3)
    gap = np.linalg.norm(a - b)
    refine = np.linalg.norm(a - a_half) + np.linalg.norm(b - b_half)
    assert gap <= 2.5 * refine
    assert gap < 1e-4 * np.linalg.norm(a)


def test_mass_and_energy_rows_frozen(table16):
    # the zero Fourier column of rows 0 and 2 is conserved by both schemes
    for mode in ("imex", "picard"):
        cfg = small_config(mode=mode, initial=random_smooth(
            seed=6, decay=1.0, amplitude=0.05))
        summary = run(cfg, table=table16)
        first = summary.snapshots[0][1]
        last = summary.snapshots[-1][1]
        K = first.K
        for row in (0, 2):
            assert abs(last.c[row, K] - first.c[row, K]) \
                < 1e-13 * abs(first.c[row, K])


def test_picard_rejects_large_data(table16):
    cfg = small_config(mode="picard", dt=2e-2, T=2e-2,
                       initial=random_smooth(seed=3, decay=1.0, amplitude=5.0))
    with pytest.raises(PicardDivergenceError):
        run(cfg, table=table16)


def test_contraction_probe_scaling(table16):
    def probe(amp):
        cfg = small_config(mode="picard", dt=1e-2, T=2e-2,
                           initial=random_smooth(seed=3, decay=1.0,
                                                 amplitude=amp))
        return contraction_probe(cfg, table=table16)

    full = probe(2e-3)
    half = probe(1e-3)
    assert 0.0 < full < 1.0
    # first Picard ratio is linear in the data size
    assert abs(full / half - 2.0) < 0.4
    with pytest.raises(ValueError):
        contraction_probe(small_config(mode="imex"), table=table16)


def test_run_writes_documented_outputs(table16, tmp_path):
    cfg = small_config()
    out_dir = os.path.join(tmp_path, "run")
    summary = run(cfg, out_dir=out_dir, table=table16)

    hist = os.path.join(out_dir, "norm_history.csv")
    with open(hist) as fh:
        head = fh.readline()
        config_line = fh.readline()
        columns = fh.readline().strip()
    assert head.startswith("# kac-run v1")
    assert config_line.startswith("# config:")
    assert columns == "t,norm_10,norm_hs2_10"
    rows = np.loadtxt(hist, delimiter=",", skiprows=3)
    assert rows.shape == (11, 3)  # ten steps plus t = 0

    # snapshots at steps 0, 5 and 10
    names = sorted(p for p in os.listdir(out_dir) if p.startswith("snapshot"))
    assert names == ["snapshot_000000.csv", "snapshot_000005.csv",
                     "snapshot_000010.csv"]
    final, s_read = state_from_csv(summary.final_state_path)
    assert s_read == cfg.s
    assert np.array_equal(final.c, summary.snapshots[-1][1].c)

    with open(os.path.join(out_dir, "run_summary.json")) as fh:
        blob = json.load(fh)
    assert blob["version"] == "kac-run v1"
    assert blob["sup_norm_10"] == summary.sup_norm_10
    assert blob["config"]["N"] == 12
    assert blob["final_state_path"] == summary.final_state_path


def test_run_is_deterministic(table16):
    a = run(small_config(), table=table16)
    b = run(small_config(), table=table16)
    assert a.norm_history == b.norm_history
    assert np.array_equal(a.snapshots[-1][1].c, b.snapshots[-1][1].c)


def test_run_table_coverage_check(table8):
    with pytest.raises(ValueError):
        run(small_config(N=16), table=table8)
    with pytest.raises(ValueError):
        run(small_config(s=0.25, N=8), table=table8)


def test_sup_norm_tracks_history(table16):
    summary = run(small_config(), table=table16)
    assert summary.sup_norm_10 == max(h[1] for h in summary.norm_history)
    assert summary.norm_history[0][1] == pytest.approx(1e-2, abs=1e-17)
