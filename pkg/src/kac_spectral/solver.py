"""Time integration: first-order IMEX scheme and the fixed-point iteration.

Both modes treat the linear part implicitly through the same prefactored
complex tridiagonal solve per Fourier mode.  The factorization of
I + dt (i xi V + diag(lambda)) needs no pivoting: the Hermitian part is
I + dt diag(lambda) >= I, so every leading principal submatrix is strictly
accretive and the elimination pivots cannot vanish (asserted regardless).

    factor:  w_0 = b_0,  l_n = a_n / w_{n-1},  w_n = b_n - l_n c_{n-1}
    solve:   y_0 = d_0,  y_n = d_n - l_n y_{n-1}
             x_{N-1} = y_{N-1} / w_{N-1},  x_n = (y_n - c_n x_{n+1}) / w_n

with a, b, c the sub/main/super diagonals; all 2K+1 modes are swept in one
vectorized recurrence over the Hermite index.
"""

import io
import json
import math
import os
from dataclasses import dataclass, field, asdict

import numpy as np

from .coefficients import CoeffTable, build_tables
from .operators import apply_gamma
from .state import (InitialData, NormKind, SpectralState, init_state, norm,
                    state_to_csv)

RUN_CSV_VERSION = "kac-run v1"

# Successive-difference ratios are only meaningful above rounding noise in
# the iterates; differences below this floor (relative to the step input)
# are excluded from contraction statistics.
_RATIO_FLOOR = 1e-14


class PicardDivergenceError(RuntimeError):
    """Iteration diverged: initial data violates the smallness condition."""


@dataclass
class SolverConfig:
    s: float = 0.5
    N: int = 64
    K: int = 64
    L: float = 2.0 * math.pi
    dt: float = 1e-3
    T: float = 1.0
    mode: str = "imex"
    picard_tol: float = 1e-12
    picard_max_iters: int = 20
    initial: InitialData = field(
        default_factory=lambda: InitialData(kind="single_mode", amplitude=1e-3))
    snapshot_every: int = 100

    def __post_init__(self):
        if self.mode not in ("imex", "picard"):
            raise ValueError(f"mode must be imex or picard, got {self.mode!r}")
        if not self.dt > 0.0:
            raise ValueError("dt must be > 0")
        if self.dt > self.T:
            raise ValueError("dt must not exceed T")
        if not self.picard_tol > 0.0:
            raise ValueError("picard_tol must be > 0")
        if self.N < 4 or self.K < 0 or self.L <= 0.0:
            raise ValueError("invalid truncation or domain length")


@dataclass
class RunSummary:
    norm_history: list  # (t, ||g||_(1,0), ||H^{s/2} g||_(1,0)) per step
    contraction_factors: list
    final_state_path: str | None
    config: SolverConfig
    snapshots: list  # (t, SpectralState) kept in memory for diagnostics
    sup_norm_10: float


def _factorization(table: CoeffTable, dt: float, N: int, K: int, L: float):
    key = (dt, N, K, L)
    fact = table._solver_cache.get(key)
    if fact is not None:
        return fact
    xi = 2.0 * np.pi * np.arange(-K, K + 1) / L
    roots = np.sqrt(np.arange(1.0, N))
    b = 1.0 + dt * table.lam[:N]
    sup = 1j * dt * xi[None, :] * roots[:, None]      # row n couples to n+1
    w = np.empty((N, 2 * K + 1), dtype=complex)
    lfac = np.zeros((N, 2 * K + 1), dtype=complex)
    w[0] = b[0]
    for n in range(1, N):
        lfac[n] = sup[n - 1] / w[n - 1]               # subdiagonal = sup by symmetry
        w[n] = b[n] - lfac[n] * sup[n - 1]
    assert np.min(np.abs(w)) > 0.0, "singular tridiagonal factor"
    fact = (lfac, w, sup)
    table._solver_cache[key] = fact
    return fact


def _tridiag_solve(fact, d: np.ndarray) -> np.ndarray:
    lfac, w, sup = fact
    N = d.shape[0]
    y = np.empty_like(d)
    y[0] = d[0]
    for n in range(1, N):
        y[n] = d[n] - lfac[n] * y[n - 1]
    x = np.empty_like(d)
    x[N - 1] = y[N - 1] / w[N - 1]
    for n in range(N - 2, -1, -1):
        x[n] = (y[n] - sup[n] * x[n + 1]) / w[n]
    return x


def _norm10(c: np.ndarray, K: int, L: float) -> float:
    xi = 2.0 * np.pi * np.arange(-K, K + 1) / L
    return float(np.sqrt(np.sum((1.0 + xi * xi)[None, :] * np.abs(c) ** 2)))


def step_imex(state: SpectralState, dt: float, table: CoeffTable,
              include_gamma: bool = True) -> SpectralState:
    """One step of implicit linear part, explicit bilinear part."""
    if not dt > 0.0:
        raise ValueError("dt must be > 0")
    fact = _factorization(table, dt, state.N, state.K, state.L)
    rhs = state.c.copy()
    if include_gamma:
        rhs += dt * apply_gamma(state, state, table).c
    return state.with_c(_tridiag_solve(fact, rhs), time=state.time + dt)


def _step_picard(state: SpectralState, dt: float, table: CoeffTable,
                 tol: float, max_iters: int) -> tuple[SpectralState, list]:
    """One implicit step solved by fixed-point iteration.

    Iterate m + 1 solves (I + dt P) u = g_old + dt Gamma(u_m, u); the second
    slot is resolved by lagged inner sweeps reusing the factorization.
    Returns the accepted state and the measurable contraction ratios.
    """
    fact = _factorization(table, dt, state.N, state.K, state.L)
    K, L = state.K, state.L
    floor = _RATIO_FLOOR * max(_norm10(state.c, K, L), 1e-300)
    u = state.c
    deltas = []
    for _ in range(max_iters):
        v = u
        for _ in range(64):
            rhs = state.c + dt * apply_gamma(state.with_c(u),
                                             state.with_c(v), table).c
            v_new = _tridiag_solve(fact, rhs)
            sweep = _norm10(v_new - v, K, L)
            v = v_new
            if sweep <= 0.01 * tol:
                break
        else:
            raise PicardDivergenceError(
                "inner sweeps for the lagged bilinear term did not settle; "
                "initial data too large for the contraction regime")
        deltas.append(_norm10(v - u, K, L))
        u = v
        if deltas[-1] <= tol:
            break
        ratios_so_far = _ratios(deltas, floor)
        if len(ratios_so_far) >= 3 and all(r >= 1.0 for r in ratios_so_far[-3:]):
            raise PicardDivergenceError(
                f"successive-difference ratios {ratios_so_far[-3:]} >= 1; "
                "initial data exceeds the smallness threshold")
    else:
        raise PicardDivergenceError(
            f"no contraction to {tol} within {max_iters} iterations")
    return state.with_c(u, time=state.time + dt), _ratios(deltas, floor)


def _ratios(deltas: list, floor: float) -> list:
    out = []
    for a, b in zip(deltas, deltas[1:]):
        if a > floor and b > floor:
            out.append(b / a)
    return out


def run(config: SolverConfig, out_dir: str | None = None,
        table: CoeffTable | None = None) -> RunSummary:
    """Advance the configured initial state to T, recording norms per step.

    Snapshots are taken at step 0, every snapshot_every steps, and at T;
    they are retained on the summary and, when out_dir is given, written as
    CSV files together with the norm history and a JSON run summary.
    """
    if table is None:
        table = build_tables(config.N, config.s)
    elif table.N < config.N or table.s != config.s:
        raise ValueError("supplied table does not cover the configuration")
    state = init_state(config.initial, config.N, config.K, config.L)
    n_steps = int(round(config.T / config.dt))
    hs_kind = NormKind.HS2_WEIGHTED_10

    history = [(0.0, norm(state, NormKind.H10), norm(state, hs_kind, config.s))]
    snapshots = [(0.0, state)]
    factors: list = []
    for step in range(1, n_steps + 1):
        if config.mode == "imex":
            state = step_imex(state, config.dt, table)
        else:
            state, ratios = _step_picard(state, config.dt, table,
                                         config.picard_tol,
                                         config.picard_max_iters)
            if ratios:
                factors.append(max(ratios))
        t = step * config.dt
        state = state.with_c(state.c, time=t)
        history.append((t, norm(state, NormKind.H10),
                        norm(state, hs_kind, config.s)))
        if (config.snapshot_every and step % config.snapshot_every == 0) \
                or step == n_steps:
            snapshots.append((t, state))

    sup10 = max(h[1] for h in history)
    final_path = None
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        _write_history(os.path.join(out_dir, "norm_history.csv"),
                       history, config)
        for t, snap in snapshots:
            step = int(round(t / config.dt))
            path = os.path.join(out_dir, f"snapshot_{step:06d}.csv")
            state_to_csv(snap, path, config.s)
        final_path = os.path.join(out_dir, f"snapshot_{n_steps:06d}.csv")
        _write_summary_json(os.path.join(out_dir, "run_summary.json"),
                            config, sup10, factors, final_path)
    return RunSummary(norm_history=history, contraction_factors=factors,
                      final_state_path=final_path, config=config,
                      snapshots=snapshots, sup_norm_10=sup10)


def contraction_probe(config: SolverConfig,
                      table: CoeffTable | None = None) -> float:
    """Largest per-step contraction factor of the fixed-point iteration."""
    if config.mode != "picard":
        raise ValueError("contraction probe requires picard mode")
    summary = run(config, table=table)
    return max(summary.contraction_factors, default=0.0)


def config_echo(config: SolverConfig) -> dict:
    flat = asdict(config)
    initial = flat.pop("initial")
    for key, value in initial.items():
        flat[f"initial.{key}"] = value
    return flat


def _echo_line(config: SolverConfig) -> str:
    items = config_echo(config)
    return " ".join(f"{k}={items[k]}" for k in sorted(items))


def _write_history(path: str, history: list, config: SolverConfig) -> None:
    buf = io.StringIO()
    buf.write(f"# {RUN_CSV_VERSION}, mode={config.mode}, s={config.s:.17g}\n")
    buf.write(f"# config: {_echo_line(config)}\n")
    buf.write("t,norm_10,norm_hs2_10\n")
    for t, n10, nhs in history:
        buf.write(f"{t:.17g},{n10:.17g},{nhs:.17g}\n")
    with open(path, "w") as fh:
        fh.write(buf.getvalue())


def _write_summary_json(path: str, config: SolverConfig, sup10: float,
                        factors: list, final_path: str) -> None:
    doc = {
        "version": RUN_CSV_VERSION,
        "config": config_echo(config),
        "sup_norm_10": sup10,
        "amplification_c0": sup10 / config.initial.amplitude,
        "max_contraction_factor": max(factors, default=None),
        "final_state_path": final_path,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
