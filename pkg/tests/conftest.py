import math
import time

import pytest

import kac_spectral as ks


@pytest.fixture(scope="session")
def table8():
    return ks.build_tables(8, 0.5)


@pytest.fixture(scope="session")
def table16():
    return ks.build_tables(16, 0.5)


@pytest.fixture(scope="session")
def table34():
    return ks.build_tables(34, 0.5)


@pytest.fixture(scope="session")
def table64():
    return ks.build_tables(64, 0.5)


@pytest.fixture(scope="session")
def canonical_imex(table64, tmp_path_factory):
    """Canonical run (config.py defaults) with on-disk outputs.

    Yields (config, summary, snapshot lookup by time, out_dir, seconds).
    """
    resolved = ks.canonical_run()
    out_dir = str(tmp_path_factory.mktemp("canonical"))
    t0 = time.perf_counter()
    summary = ks.run(resolved.solver, out_dir=out_dir, table=table64)
    elapsed = time.perf_counter() - t0
    snaps = {round(st.time, 10): st for _, st in summary.snapshots}
    return resolved.solver, summary, snaps, out_dir, elapsed


@pytest.fixture(scope="session")
def canonical_picard(table64):
    resolved = ks.canonical_run()
    cfg = ks.SolverConfig(**{**resolved.solver.__dict__, "mode": "picard"})
    t0 = time.perf_counter()
    summary = ks.run(cfg, table=table64)
    elapsed = time.perf_counter() - t0
    return cfg, summary, elapsed


@pytest.fixture
def small_state():
    return ks.init_state(ks.random_smooth(seed=11, decay=1.0, amplitude=1e-2),
                         N=12, K=5, L=2.0 * math.pi)
