"""Command-line orchestration.

Subcommands: coeffs, solve, diagnose, hypo, verify, bobylev.  Exit codes:
0 success, 1 failed checks or invalid configuration content (with
machine-parsable FAIL,<check>,<detail> lines on stdout), 2 usage errors
(unknown flags or subcommands, missing files).
"""

import argparse
import glob
import itertools
import math
import os
import sys

import numpy as np

from . import __version__
from . import baselines
from .config import ConfigError, build_run, parse_config_file
from .coefficients import (beta_kernel, build_tables, capital_lambda_bound,
                           eigenvalue, eigenvalue_asymptote,
                           mu_tilde_envelope, table_from_csv, table_to_csv)
from .diagnostics import (bobylev_agreement, coercivity_constants, gevrey_fit,
                          hypoelliptic_ratio, least_squares_line, sample_state,
                          supnorm_probe, theorem_bound_probe, trilinear_ratio)
from .hermite import (HermiteCoeffs, apply_ladder, factorial_norm_bound,
                      hermite_eval, ladder_action, monomial_derivative_norm)
from .operators import (apply_gamma, apply_linearized, apply_transport,
                        transport_block)
from .solver import SolverConfig, run, step_imex
from .state import (InitialData, NormKind, SpectralState, apply_weight,
                    init_state, norm, random_smooth, single_mode,
                    state_from_csv, state_to_csv)

VERIFY_SEED = 1234


class CheckFailure(AssertionError):
    pass


def _need(cond: bool, detail: str) -> None:
    if not cond:
        raise CheckFailure(detail)


# --------------------------------------------------------------- verify checks

def _check_closed_forms() -> None:
    lam1 = eigenvalue(1, 0.5)
    _need(abs(lam1 - 8.0 * math.sin(math.pi / 8.0)) < 1e-8,
          f"lambda_1={lam1!r}")
    from .coefficients import capital_lambda
    lam10 = capital_lambda(1, 0, 0.5)
    target = 16.0 * (math.sin(math.pi / 8.0) - math.sin(math.pi / 8.0) ** 3 / 3.0)
    _need(abs(lam10 - target) < 1e-8, f"Lambda_(1,0)={lam10!r} vs {target!r}")
    _need(abs(eigenvalue(2, 0.5)) < 1e-8, "lambda_2 not ~0")
    b = beta_kernel(math.pi / 4.0, 0.5)
    ref = math.cos(math.pi / 8.0) / math.sin(math.pi / 8.0) ** 2
    _need(abs(b - ref) < 1e-12, f"beta(pi/4)={b!r}")
    _need(abs(eigenvalue_asymptote(1, 0.5)
              - 2.0 ** 1.5 * 2.0 * math.gamma(0.5)) < 1e-12,
          "asymptote constant at s=1/2")


def _quick_table():
    # covers the m <= 32 consistency range; cached across checks in a run
    if not hasattr(_quick_table, "cache"):
        _quick_table.cache = build_tables(34, 0.5)
    return _quick_table.cache


def _check_table_structure() -> None:
    table = _quick_table()
    for k in range(1, table.N, 2):
        _need(not np.any(table.alpha[k, :table.N - k]), f"alpha row {k} not 0")
    _need(table.alpha[0, 0] == 0.0, "alpha_(0,0) not 0")
    _need(table.lam[0] == 0.0 and abs(table.lam[2]) < 1e-8, "kernel eigenvalues")
    for m in range(1, 33):
        resid = table.lam[m] + table.alpha[0, m] + table.alpha[m, 0]
        _need(abs(resid) < 1e-8, f"consistency residual {resid!r} at m={m}")
    _need(np.all(table.lam >= -1e-10) and table.lam[1] > 0.0,
          "eigenvalue positivity")


def _check_lambda_sandwich() -> None:
    table = _quick_table()
    logL = table.log_capital_lambda
    nmax = (table.N - 1) // 2
    for n in range(1, nmax + 1):
        for m in range(0, table.N - 2 * n - 1, 2):
            even, odd = math.exp(logL[n, m]), math.exp(logL[n, m + 1])
            _need(even / math.sqrt(2.0) <= odd * (1 + 1e-12)
                  and odd <= even * (1 + 1e-12),
                  f"sandwich fails at (n,m)=({n},{m})")


def _check_beta_function_bound() -> None:
    table = _quick_table()
    logL = table.log_capital_lambda
    for n in range(1, (table.N - 1) // 2 + 1):
        for m in range(0, table.N - 2 * n, 2):
            bound = capital_lambda_bound(n, m, table.s)
            _need(math.exp(logL[n, m]) <= bound * (1 + 1e-12),
                  f"Beta bound fails at (n,m)=({n},{m})")


def _check_envelope() -> None:
    table = _quick_table()
    def cells(n_hi, m_hi):
        for n in range(1, n_hi + 1):
            for m in range(0, min(m_hi + 1, table.N - 2 * n)):
                yield table.alpha[2 * n, m] / mu_tilde_envelope(n, m, table.s)
    c_small = max(cells(4, 8))
    c_large = max(cells((table.N - 1) // 2, table.N))
    _need(np.isfinite(c_large) and c_large <= c_small * 1.25,
          f"envelope constant grew {c_small!r} -> {c_large!r}")
    env = [mu_tilde_envelope(n, 0, 0.5) for n in range(1, 9)]
    _need(all(a > b for a, b in zip(env, env[1:])), "envelope not decreasing")


def _check_hermite_norms() -> None:
    for n in range(0, 41):
        _need(abs(monomial_derivative_norm(1, 0, n)
                  - math.sqrt(2 * n + 1)) < 1e-10, f"|v psi_{n}|")
        _need(abs(monomial_derivative_norm(0, 1, n)
                  - 0.5 * math.sqrt(2 * n + 1)) < 1e-10, f"|d_v psi_{n}|")
    _need(monomial_derivative_norm(0, 0, 7) == 1.0, "orthonormality")
    _need(factorial_norm_bound(1, 0, 0) == 2.0, "bound (1,0,0)")
    _need(abs(factorial_norm_bound(2, 3, 10) - 4.0 * math.sqrt(360360.0))
          < 1e-9, "bound (2,3,10)")
    for k in range(7):
        for l in range(7 - k):
            for n in range(0, 41):
                exact = monomial_derivative_norm(k, l, n)
                _need(exact <= factorial_norm_bound(k, l, n) + 1e-10,
                      f"norm bound violated at (k,l,n)=({k},{l},{n})")


def _check_ladder_algebra() -> None:
    rng = np.random.default_rng(VERIFY_SEED)
    f = HermiteCoeffs(rng.standard_normal(24) + 1j * rng.standard_normal(24))
    g = HermiteCoeffs(rng.standard_normal(24) + 1j * rng.standard_normal(24))
    mv = apply_ladder(f, "mult_v").coeffs
    rl = apply_ladder(f, "raise").coeffs.copy()
    low = apply_ladder(f, "lower").coeffs
    rl[:len(low)] += low
    _need(np.allclose(mv, rl, atol=1e-14), "mult_v != raise + lower")
    up = ladder_action(f.coeffs, "raise")
    down = ladder_action(g.coeffs, "lower")
    _need(abs(np.vdot(up[:24], g.coeffs) - np.vdot(f.coeffs[:len(down)], down))
          < 1e-12 * f.norm() * g.norm(), "ladder adjointness")
    comp = ladder_action(ladder_action(f.coeffs, "lower"), "raise")
    target = (np.arange(24) + 0.5) * f.coeffs
    _need(np.allclose(comp + 0.5 * f.coeffs, target, atol=1e-12),
          "oscillator relation")
    _need(abs(hermite_eval(0, 0.0) - (2 * math.pi) ** -0.25) < 1e-14
          and hermite_eval(1, 0.0) == 0.0, "psi values at 0")


def _check_weights_and_norms() -> None:
    st = init_state(random_smooth(seed=VERIFY_SEED, decay=1.0, amplitude=0.7),
                    N=24, K=12, L=2 * math.pi)
    fwd = apply_weight(st, 0.8, 0.3, "forward", 0.5)
    back = apply_weight(fwd, 0.8, 0.3, "inverse", 0.5)
    _need(np.max(np.abs(back.c - st.c)) < 1e-12, "forward o inverse != id")
    ident = apply_weight(st, 0.0, 0.0, "forward", 0.5)
    _need(np.array_equal(ident.c, st.c), "t=0 weight not identity")
    single = init_state(single_mode(3, 0, 1.0), N=8, K=2, L=2 * math.pi)
    _need(abs(norm(single, NormKind.HS2_WEIGHTED_10, 0.5) - 3.5 ** 0.25) < 1e-12,
          "oscillator-weighted norm on psi_3")
    gs = norm(st, NormKind.GS_WEIGHTED, 0.5, t=0.4, delta1=0.2)
    _need(abs(gs - norm(apply_weight(st, 0.4, 0.2, "forward", 0.5),
                        NormKind.H10)) < 1e-12, "GS norm factorization")
    # reality of the random initial datum
    _need(np.max(np.abs(st.c[:, ::-1].conj() - st.c)) < 1e-15, "reality")
    # subadditivity of the weight exponent on a sample grid
    e = 2.0 * 0.5 / (2.0 * 0.5 + 1.0)
    for m, n, xi, eta in itertools.product((0, 1, 5, 17), (0, 2, 9),
                                           (0.0, 1.5, 40.0), (0.0, -3.0, 8.0)):
        lhs = (math.sqrt(m + n + 0.5) + math.hypot(1.0, xi)) ** e
        rhs = (math.sqrt(m + 0.5) + math.hypot(1.0, eta)) ** e \
            + (math.sqrt(n + 0.5) + math.hypot(1.0, xi - eta)) ** e
        _need(lhs <= rhs + 1e-12, f"subadditivity at {(m, n, xi, eta)}")
    for delta in (0.05, 0.4, 1.0):
        for x in (0.0, 0.3, 2.0, 10.0):
            for y in (0.0, 0.7, 5.0):
                fx = math.exp(x) / (1 + delta * math.exp(x))
                fy = math.exp(y) / (1 + delta * math.exp(y))
                fxy = math.exp(x + y) / (1 + delta * math.exp(x + y))
                _need(fxy <= 3.0 * fx * fy + 1e-12,
                      f"saturating multiplier bound at {(delta, x, y)}")
    # Cauchy-Schwarz interpolation of the pure exponential weight
    for dt_w in (0.05, 0.2):
        a = norm(st, NormKind.GS_WEIGHTED, 0.5, t=dt_w) ** 2
        b = norm(st, NormKind.GS_WEIGHTED, 0.5, t=2 * dt_w)
        _need(a <= b * norm(st, NormKind.H10) * (1 + 1e-12),
              "weight interpolation inequality")


def _check_state_io(tmp_dir: str) -> None:
    st = init_state(random_smooth(seed=7, decay=0.5, amplitude=1e-2),
                    N=10, K=6, L=5.0)
    path = os.path.join(tmp_dir, "state_roundtrip.csv")
    state_to_csv(st, path, 0.5)
    back, s_back = state_from_csv(path)
    _need(s_back == 0.5 and back.L == st.L and back.time == st.time,
          "state header round trip")
    _need(np.array_equal(back.c, st.c), "state values round trip")
    table = build_tables(8, 0.5)
    tpath = os.path.join(tmp_dir, "coeffs_roundtrip.csv")
    table_to_csv(table, tpath)
    tback = table_from_csv(tpath)
    _need(np.array_equal(tback.alpha, table.alpha)
          and np.array_equal(tback.lam, table.lam)
          and np.array_equal(tback.log_capital_lambda,
                             table.log_capital_lambda, equal_nan=True),
          "coeff table round trip")


def _check_operators() -> None:
    table = _quick_table()
    L = 2 * math.pi
    st = sample_state(24, 8, L, VERIFY_SEED)
    lin = apply_linearized(st, table)
    _need(np.allclose(lin.c, table.lam[:24, None] * st.c), "diagonal action")
    ker = init_state(single_mode(2, 1, 1.0), N=24, K=8, L=L)
    _need(norm(apply_linearized(ker, table), NormKind.L2) < 1e-8,
          "psi_2 not annihilated")
    tr = apply_transport(st)
    _need(np.max(np.abs(tr.c[:, 8])) == 0.0, "zero mode transported")
    sym = complex(np.vdot(st.c, tr.c))
    _need(abs(sym.real) < 1e-12 * norm(st, NormKind.L2) ** 2,
          "transport not skew")
    blk = transport_block(3.0, 24, table)
    dense = blk.dense()
    _need(np.allclose(dense + dense.conj().T, 2 * np.diag(table.lam[:24])),
          "Hermitian part of block")
    zero = apply_gamma(init_state(single_mode(0, 0, 1.0), 8, 2, L),
                       init_state(single_mode(0, 0, 1.0), 8, 2, L), table)
    _need(norm(zero, NormKind.L2) == 0.0, "Gamma(psi0,psi0) != 0")
    psi2 = init_state(single_mode(2, 0, 1.0), 8, 2, L)
    psi0 = init_state(single_mode(0, 0, 1.0), 8, 2, L)
    scale = math.sqrt(L) / abs(psi2.c[2, 2] * psi0.c[0, 2])
    out = apply_gamma(psi2, psi0, table)
    got = out.c[2, 2] * scale
    _need(abs(got - table.alpha[2, 0]) < 1e-10, f"alpha_(2,0) via Gamma: {got}")
    # bilinearity
    f1, f2, g1 = (sample_state(16, 4, L, [VERIFY_SEED, i]) for i in range(3))
    lhs = apply_gamma(f1.with_c(f1.c + 2.0 * f2.c), g1, table).c
    rhs = apply_gamma(f1, g1, table).c + 2.0 * apply_gamma(f2, g1, table).c
    _need(np.max(np.abs(lhs - rhs)) < 1e-12 * np.max(np.abs(rhs)),
          "bilinearity in the first slot")
    # linearized operator from the bilinear one: Kg = -G(psi0,g) - G(g,psi0)
    gmix = sample_state(16, 0, L, [VERIFY_SEED, 9])
    one0 = SpectralState(c=np.zeros((16, 1), complex), L=L)
    one0.c[0, 0] = math.sqrt(L)
    recon = -(apply_gamma(one0, gmix, table).c + apply_gamma(gmix, one0, table).c)
    _need(np.max(np.abs(recon - table.lam[:16, None] * gmix.c)) < 1e-8,
          "kernel identity vs diagonal eigenvalues")


def _check_tridiag_solver() -> None:
    table = _quick_table()
    L = 2 * math.pi
    st = sample_state(12, 3, L, [VERIFY_SEED, 4])
    stepped = step_imex(st, 0.37, table, include_gamma=False)
    xi = st.xi()
    for col in range(7):
        m = np.eye(12) + 0.37 * transport_block(xi[col], 12, table).dense()
        direct = np.linalg.solve(m, st.c[:, col])
        _need(np.max(np.abs(direct - stepped.c[:, col])) < 1e-12,
              f"tridiagonal solve mismatch in column {col}")
    decayed = step_imex(st, 0.5, table, include_gamma=False)
    _need(norm(decayed, NormKind.L2) <= norm(st, NormKind.L2),
          "linear step increased the L2 norm")


def _check_coercivity() -> None:
    table = _quick_table()
    lo, hi = coercivity_constants(table, 32, 200, VERIFY_SEED)
    _need(lo > 0.0 and np.isfinite(hi), f"bracket ({lo}, {hi})")
    r0 = 1.0 / 0.5 ** 0.5
    r1 = (table.lam[1] + 1.0) / 1.5 ** 0.5
    _need(abs(r0 - 1.4142) < 1e-3 and abs(r1 - 3.3162) < 1e-3,
          f"basis ratios {r0}, {r1}")
    # every Rayleigh quotient sits between the extreme per-mode ratios
    per_mode = (table.lam[:32] + 1.0) / (np.arange(32) + 0.5) ** table.s
    _need(per_mode.min() - 1e-9 <= lo and hi <= per_mode.max() + 1e-9,
          f"bracket ({lo}, {hi}) outside mode range")


def _check_asymptotics() -> None:
    for s in (0.25, 0.5, 0.75):
        r256 = eigenvalue(256, s) / eigenvalue_asymptote(256, s)
        r4096 = eigenvalue(4096, s) / eigenvalue_asymptote(4096, s)
        _need(abs(r4096 - 1.0) < 0.2, f"s={s}: ratio at 4096 is {r4096}")
        _need(abs(r4096 - 1.0) < abs(r256 - 1.0),
              f"s={s}: no approach to 1 ({r256} -> {r4096})")


def _check_bobylev() -> None:
    table = build_tables(16, 0.5)
    for k in range(9):
        for l in range(9 - k):
            ag, ao = bobylev_agreement(table, k, l)
            ref = table.alpha[k, l]
            if abs(ref) < 1e-12:
                _need(abs(ag) < 1e-8 and abs(ao) < 1e-8,
                      f"(k,l)=({k},{l}) zero case: {ag}, {ao}")
            else:
                _need(abs(ag - ao) < 1e-7 * abs(ref),
                      f"(k,l)=({k},{l}): {ag} vs {ao}")


def _check_hypoelliptic() -> None:
    xi_list = baselines.HYPO_XI
    table = build_tables(256, 0.5)
    ratios = hypoelliptic_ratio(xi_list, 256, table, 0.5)
    _need(all(r > 0.0 for r in ratios), f"nonpositive ratio in {ratios}")
    _need(ratios[0] <= 2.0 / 7.0 + 1e-9, f"R(0)={ratios[0]} above basis bound")
    for xi, r, frozen in zip(xi_list, ratios, baselines.HYPO_R):
        _need(abs(r - frozen) <= 0.10 * frozen,
              f"R({xi})={r} drifted from frozen {frozen}")


def _check_trilinear_stability() -> None:
    table = build_tables(64, 0.5)
    r32 = trilinear_ratio(table, 32, 8, 200, VERIFY_SEED)
    r64 = trilinear_ratio(table, 64, 8, 200, VERIFY_SEED)
    _need(np.isfinite(r32) and np.isfinite(r64) and r32 > 0.0,
          f"degenerate ratios {r32}, {r64}")
    _need(r64 <= 1.1 * r32, f"ratio grew under refinement: {r32} -> {r64}")


def _check_solver_smoke() -> None:
    cfg = SolverConfig(s=0.5, N=16, K=8, dt=1e-3, T=0.05, mode="imex",
                       initial=random_smooth(seed=VERIFY_SEED, decay=1.0,
                                             amplitude=1e-3),
                       snapshot_every=0)
    table = build_tables(16, 0.5)
    a = run(cfg, table=table)
    b = run(cfg, table=table)
    _need(a.norm_history == b.norm_history, "rerun not bit-identical")
    cfg_p = SolverConfig(**{**cfg.__dict__, "mode": "picard"})
    p = run(cfg_p, table=table)
    end_gap = np.max(np.abs(p.snapshots[-1][1].c - a.snapshots[-1][1].c))
    _need(end_gap < 1e-6, f"imex/picard endpoint gap {end_gap}")


QUICK_CHECKS = [
    ("closed_forms", _check_closed_forms),
    ("table_structure", _check_table_structure),
    ("lambda_sandwich", _check_lambda_sandwich),
    ("beta_function_bound", _check_beta_function_bound),
    ("coefficient_envelope", _check_envelope),
    ("hermite_norm_bound", _check_hermite_norms),
    ("ladder_algebra", _check_ladder_algebra),
    ("weights_and_norms", _check_weights_and_norms),
    ("operators", _check_operators),
    ("tridiagonal_solver", _check_tridiag_solver),
    ("coercivity", _check_coercivity),
]

FULL_CHECKS = QUICK_CHECKS + [
    ("eigenvalue_asymptotics", _check_asymptotics),
    ("bobylev_oracle", _check_bobylev),
    ("hypoelliptic_baselines", _check_hypoelliptic),
    ("trilinear_stability", _check_trilinear_stability),
    ("solver_smoke", _check_solver_smoke),
]


def _cmd_verify(args) -> int:
    import tempfile
    checks = list(QUICK_CHECKS if args.quick else FULL_CHECKS)
    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        checks.insert(9, ("serialization", lambda: _check_state_io(tmp)))
        for name, fn in checks:
            try:
                fn()
            except CheckFailure as exc:
                failures += 1
                print(f"FAIL,{name},{exc}")
            except Exception as exc:  # noqa: BLE001 - report, do not crash
                failures += 1
                print(f"FAIL,{name},unexpected {type(exc).__name__}: {exc}")
            else:
                print(f"PASS,{name}")
    print(f"verify: {len(checks) - failures}/{len(checks)} checks passed")
    return 1 if failures else 0


# ------------------------------------------------------------- other commands

def _cmd_coeffs(args) -> int:
    table = build_tables(args.N, args.s, args.tol)
    out = args.out or f"coeffs_s{args.s:g}_N{args.N}.csv"
    table_to_csv(table, out)
    print(f"wrote {out} (lambda_1={table.lam[1]:.12g}, "
          f"lambda_2={table.lam[2]:.3g})")
    return 0


def _cmd_solve(args) -> int:
    raw = parse_config_file(args.config) if args.config else {}
    for key, value in vars(args).items():
        if key in ("config", "command", "fn") or value is None:
            continue
        raw[key.replace("_DOT_", ".")] = value
    resolved = build_run(raw)
    table = build_tables(resolved.solver.N, resolved.solver.s)
    summary = run(resolved.solver, out_dir=resolved.out_dir, table=table)
    print(f"completed {resolved.solver.mode} run to T={resolved.solver.T}: "
          f"sup ||g||_(1,0) = {summary.sup_norm_10:.6e}; outputs in "
          f"{resolved.out_dir}")
    return 0


def _cmd_diagnose(args) -> int:
    paths = sorted(glob.glob(os.path.join(args.snapshots, "snapshot_*.csv")))
    if not paths:
        print(f"FAIL,diagnose,no snapshot_*.csv under {args.snapshots}")
        return 1
    loaded = [state_from_csv(p) for p in paths]
    s = loaded[0][1]
    states = [st for st, _ in loaded]
    states.sort(key=lambda st: st.time)
    g0_norm = norm(states[0], NormKind.H10)
    os.makedirs(args.out, exist_ok=True)

    fits = gevrey_fit([st for st in states if st.time > 0.0], s)
    fit_path = os.path.join(args.out, "gevrey_fits.csv")
    with open(fit_path, "w") as fh:
        fh.write(f"# kac-gevrey v1, s={s:.17g}, snapshots={len(fits)}\n")
        fh.write(f"# config: source={args.snapshots} s={s:.17g}\n")
        fh.write("t,slope,intercept,r_squared,exponent_used\n")
        for f in fits:
            fh.write(f"{f.t:.17g},{f.slope:.17g},{f.intercept:.17g},"
                     f"{f.r_squared:.17g},{f.exponent_used:.17g}\n")

    final = states[-1]
    probe = theorem_bound_probe(final, args.k_max, s, g0_norm)
    probe_path = os.path.join(args.out, "theorem_probe.csv")
    with open(probe_path, "w") as fh:
        fh.write(f"# kac-theorem-probe v1, s={s:.17g}, t={final.time:.17g}, "
                 f"C={probe.C:.17g}\n")
        fh.write(f"# config: source={args.snapshots} k_max={args.k_max} "
                 f"g0_norm={g0_norm:.17g}\n")
        fh.write("k,B_k,C_k\n")
        for k, bk, ck in probe.rows:
            fh.write(f"{k},{bk:.17g},{ck:.17g}\n")

    sup_path = os.path.join(args.out, "supnorm_probe.csv")
    with open(sup_path, "w") as fh:
        fh.write(f"# kac-supnorm v1, s={s:.17g}, t={final.time:.17g}\n")
        fh.write(f"# config: source={args.snapshots}\n")
        fh.write("k,l,p,value\n")
        for k, l, p in itertools.product(range(3), repeat=3):
            val = supnorm_probe(final, k, l, p)
            fh.write(f"{k},{l},{p},{val:.17g}\n")
    print(f"wrote {fit_path}, {probe_path}, {sup_path}")
    return 0


def _cmd_hypo(args) -> int:
    xi_list = [float(x) for x in args.xi.split(",")]
    table = build_tables(args.N, args.s)
    ratios = hypoelliptic_ratio(xi_list, args.N, table, args.s)
    out = args.out or f"hypo_s{args.s:g}_N{args.N}.csv"
    with open(out, "w") as fh:
        fh.write(f"# kac-hypo v1, s={args.s:.17g}, N={args.N}\n")
        fh.write(f"# config: s={args.s:.17g} N={args.N} xi={args.xi}\n")
        fh.write("xi,R\n")
        for xi, r in zip(xi_list, ratios):
            fh.write(f"{xi:.17g},{r:.17g}\n")
    print(f"wrote {out}; min R = {min(ratios):.6g}")
    return 0


def _cmd_bobylev(args) -> int:
    table = build_tables(max(16, args.max_degree + 2), args.s)
    worst = 0.0
    failures = 0
    print("k,l,alpha_gamma,alpha_oracle,rel_err")
    for k in range(args.max_degree + 1):
        for l in range(args.max_degree + 1 - k):
            ag, ao = bobylev_agreement(table, k, l)
            ref = abs(table.alpha[k, l])
            if ref < 1e-12:
                ok = abs(ag) < 1e-8 and abs(ao) < 1e-8
                rel = max(abs(ag), abs(ao))
            else:
                rel = abs(ag - ao) / ref
                ok = rel < 1e-7
            worst = max(worst, rel)
            if not ok:
                failures += 1
                print(f"FAIL,bobylev,(k={k},l={l}) rel_err={rel:.3e}")
            print(f"{k},{l},{ag:.12e},{ao:.12e},{rel:.3e}")
    print(f"bobylev: worst deviation {worst:.3e}")
    return 1 if failures else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kac-spectral",
        description="Spectral solver and verification suite for the "
                    "non-cutoff Kac equation in fluctuation form")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="build and write a coefficient table")
    p.add_argument("--s", type=float, default=0.5)
    p.add_argument("--N", type=int, default=8)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_coeffs)

    p = sub.add_parser("solve", help="run the time integrator")
    p.add_argument("--config", default=None, help="key = value file")
    from .config import SCHEMA
    for key in SCHEMA:
        p.add_argument(f"--{key}", dest=key.replace(".", "_DOT_"),
                       default=None, metavar="VALUE")
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("diagnose", help="decay fits and bound probes "
                                        "on a snapshot directory")
    p.add_argument("--snapshots", required=True)
    p.add_argument("--out", default="diagnostics")
    p.add_argument("--k-max", type=int, default=8, dest="k_max")
    p.set_defaults(fn=_cmd_diagnose)

    p = sub.add_parser("hypo", help="hypoelliptic ratio curve")
    p.add_argument("--s", type=float, default=0.5)
    p.add_argument("--N", type=int, default=256)
    p.add_argument("--xi", default="0,1,4,16,64,256,1024")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_hypo)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--quick", action="store_true")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("bobylev", help="cross-validate the bilinear term "
                                       "against the Fourier-side kernel")
    p.add_argument("--s", type=float, default=0.5)
    p.add_argument("--max-degree", type=int, default=8, dest="max_degree")
    p.set_defaults(fn=_cmd_bobylev)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print(f"FAIL,config,{exc}")
        return 1
    except (ValueError, RuntimeError) as exc:
        print(f"FAIL,{args.command},{exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
