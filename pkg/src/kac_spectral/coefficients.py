"""Collision-coefficient quadratures and the precomputed coefficient table.

The cross section beta(theta) = |cos(theta/2)| / |sin(theta/2)|^(1+2s) on
|theta| <= pi/4 has a non-integrable singularity at theta = 0; every
integral here pairs it with a factor vanishing at least quadratically, and
every integrand is assembled in log space so that neither the singular
factor nor high powers of sin/cos are ever materialized alone.  The naive
forms (1 - cos^k theta etc.) lose all relative accuracy against the
theta^(-1-2s) amplification at the deep quadrature nodes, so the expm1/log1p
forms used below are load-bearing, not cosmetic.

Quantities:
    Lambda_{n,m} = int beta sin^{2n} cos^m        (n >= 1)
    alpha_{2n,m} = sqrt(binom(2n+m, 2n)) Lambda_{n,m}
    alpha_{0,m}  = int beta (cos^m - 1)           (m >= 1)
    lambda_k     = int beta (1 - cos^k)           (k odd)
                   int beta (1 - cos^k - sin^k)   (k even)
with all integrals over [-pi/4, pi/4]; odd-first-index alpha vanish.
"""

import csv
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .quadrature import integrate, integrate_log

THETA_MAX = math.pi / 4.0

COEFFS_CSV_VERSION = "kac-coeffs v1"


def _check_s(s: float) -> None:
    if not 0.0 < s < 1.0:
        raise ValueError(f"singularity exponent s must be in (0,1), got {s}")


def beta_kernel(theta, s: float):
    """Cross section beta(theta); even, positive, singular at theta = 0."""
    _check_s(s)
    theta = np.asarray(theta, dtype=float)
    if np.any(theta == 0.0):
        raise ValueError("beta is non-integrable at theta = 0")
    if np.any(np.abs(theta) > THETA_MAX + 1e-15):
        raise ValueError("cross section is supported on |theta| <= pi/4")
    half = 0.5 * np.abs(theta)
    out = np.abs(np.cos(half)) / np.abs(np.sin(half)) ** (1.0 + 2.0 * s)
    return out if out.ndim else float(out)


def _log_beta(theta: np.ndarray, s: float) -> np.ndarray:
    half = 0.5 * theta
    return np.log(np.cos(half)) - (1.0 + 2.0 * s) * np.log(np.sin(half))


def _log_cos(theta: np.ndarray) -> np.ndarray:
    # cos(theta) = 1 - 2 sin^2(theta/2), exact also for tiny theta
    return np.log1p(-2.0 * np.sin(0.5 * theta) ** 2)


def capital_lambda_log(n: int, m: int, s: float, *,
                       rel_tol: float = 1e-12) -> float:
    """log of Lambda_{n,m}; node sums in log space, safe for large n."""
    _check_s(s)
    if n < 1:
        raise ValueError("Lambda requires n >= 1 (integrand ~ theta^(2n-1-2s))")
    if m < 0:
        raise ValueError("m must be >= 0")

    def log_f(theta):
        return (_log_beta(theta, s) + 2.0 * n * np.log(np.sin(theta))
                + m * _log_cos(theta))

    return math.log(2.0) + integrate_log(
        log_f, 0.0, THETA_MAX, rel_tol=rel_tol,
        context=f"Lambda n={n} m={m} s={s}")


def capital_lambda(n: int, m: int, s: float, *, rel_tol: float = 1e-12) -> float:
    """Lambda_{n,m} itself (exp of the log variant)."""
    return math.exp(capital_lambda_log(n, m, s, rel_tol=rel_tol))


def capital_lambda_bound(n: int, m: int, s: float) -> float:
    """Explicit Beta-function bound for even column index m.

    Lambda_{n,2q} <= 2^(3/2+2s) B(n-s, q+1):  beta(theta) equals
    2^(1+2s) cos^(2+2s)(theta/2) / sin^(1+2s)(theta), cos(theta/2) <= 1 and
    cos^(2q) <= sqrt(2) cos^(2q+1) on [0, pi/4], and the remaining integral
    is exactly half the Euler integral for B(n-s, q+1).
    """
    _check_s(s)
    if n < 1 or m < 0 or m % 2:
        raise ValueError("bound applies to n >= 1 and even m >= 0")
    q = m // 2
    log_b = gammaln(n - s) + gammaln(q + 1.0) - gammaln(n - s + q + 1.0)
    return math.exp((1.5 + 2.0 * s) * math.log(2.0) + log_b)


def _alpha_zero(m: int, s: float, rel_tol: float) -> float:
    # alpha_{0,m} = int beta (cos^m - 1) < 0; magnitude composed in log space
    def f(theta):
        with np.errstate(divide="ignore"):
            log_mag = _log_beta(theta, s) + np.log(-np.expm1(m * _log_cos(theta)))
        return np.exp(log_mag)

    return -2.0 * float(integrate(f, 0.0, THETA_MAX, rel_tol=rel_tol,
                                  context=f"alpha(0,{m}) s={s}"))


def alpha(k: int, l: int, s: float, *, rel_tol: float = 1e-12) -> float:
    """Collision coefficient alpha_{k,l}: Gamma(psi_k, psi_l) = alpha psi_{k+l}."""
    _check_s(s)
    if k < 0 or l < 0:
        raise ValueError("indices must be >= 0")
    if k % 2 or (k == 0 and l == 0):
        return 0.0
    if k == 0:
        return _alpha_zero(l, s, rel_tol)
    n = k // 2
    log_binom = 0.5 * (gammaln(k + l + 1.0) - gammaln(k + 1.0)
                       - gammaln(l + 1.0))
    return math.exp(log_binom + capital_lambda_log(n, l, s, rel_tol=rel_tol))


def eigenvalue(k: int, s: float, *, rel_tol: float = 1e-12) -> float:
    """Eigenvalue lambda_k of the linearized operator; lambda_0 := 0."""
    _check_s(s)
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return 0.0

    if k % 2:
        def f(theta):
            with np.errstate(divide="ignore"):
                log_mag = (_log_beta(theta, s)
                           + np.log(-np.expm1(k * _log_cos(theta))))
            return np.exp(log_mag)
    else:
        def f(theta):
            dip = -np.expm1(k * _log_cos(theta)) \
                - np.exp(k * np.log(np.sin(theta)))
            with np.errstate(divide="ignore", invalid="ignore"):
                log_mag = _log_beta(theta, s) + np.log(np.maximum(dip, 0.0))
            return np.where(dip > 0.0, np.exp(log_mag), 0.0)

    return 2.0 * float(integrate(f, 0.0, THETA_MAX, rel_tol=rel_tol,
                                 abs_tol=1e-13,
                                 context=f"lambda_{k} s={s}"))


def eigenvalue_asymptote(k: int, s: float) -> float:
    """Sharp large-k equivalent (2^(1+s)/s) Gamma(1-s) k^s."""
    _check_s(s)
    if k < 1:
        raise ValueError("asymptote defined for k >= 1")
    return 2.0 ** (1.0 + s) / s * math.gamma(1.0 - s) * float(k) ** s


def mu_tilde_envelope(n: int, m: int, s: float) -> float:
    """Decay envelope mu_tilde_{n,m}/n^(3/4) bounding alpha_{2n,m} up to a constant."""
    _check_s(s)
    if n < 1 or m < 0:
        raise ValueError("envelope defined for n >= 1, m >= 0")
    return ((1.0 + m / n) ** s * (1.0 + n / (m + 1.0)) ** 0.25
            / n ** 0.75)


@dataclass
class CoeffTable:
    """Immutable precomputed coefficient set for one (s, N).

    alpha[k, l] is stored for k + l < N (zero pattern included); lam[k] for
    k < N; log_capital_lambda[n, m] for n >= 1, 2n + m < N, NaN elsewhere.
    Treat instances as frozen once built; _solver_cache is scratch space for
    factorizations keyed on solver parameters and never affects values.
    """

    s: float
    N: int
    alpha: np.ndarray
    lam: np.ndarray
    log_capital_lambda: np.ndarray
    build_tolerance: float
    _solver_cache: dict = field(default_factory=dict, repr=False, compare=False)


def _resolve_workers(workers: int | None) -> int:
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get("KAC_SPECTRAL_THREADS", "")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        return 1


def build_tables(N: int, s: float, tol: float = 1e-10,
                 workers: int | None = None) -> CoeffTable:
    """Build the full coefficient table for truncation N.

    Deterministic for fixed inputs regardless of worker count: cells are
    computed independently and assembled by index.  Raises if any quadrature
    fails to converge (message carries the offending indices) or if a table
    invariant is violated.
    """
    _check_s(s)
    if N < 4:
        raise ValueError("N must be >= 4")
    if tol < 1e-12:
        raise ValueError("tol below 1e-12 is not resolvable in doubles")
    rel_tol = min(tol, 1e-12)

    nmax = (N - 1) // 2
    log_lam_jobs = [(n, m) for n in range(1, nmax + 1) for m in range(N - 2 * n)]

    def lam_cell(k):
        return eigenvalue(k, s, rel_tol=rel_tol)

    def alpha0_cell(m):
        return _alpha_zero(m, s, rel_tol)

    def log_lambda_cell(job):
        n, m = job
        return capital_lambda_log(n, m, s, rel_tol=rel_tol)

    n_workers = _resolve_workers(workers)
    if n_workers > 1:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            lam = np.array(list(pool.map(lam_cell, range(N))))
            alpha0 = np.array(list(pool.map(alpha0_cell, range(1, N))))
            log_lam_vals = list(pool.map(log_lambda_cell, log_lam_jobs))
    else:
        lam = np.array([lam_cell(k) for k in range(N)])
        alpha0 = np.array([alpha0_cell(m) for m in range(1, N)])
        log_lam_vals = [log_lambda_cell(job) for job in log_lam_jobs]

    log_capital = np.full((nmax + 1, N), np.nan)
    for (n, m), v in zip(log_lam_jobs, log_lam_vals):
        log_capital[n, m] = v

    alpha_arr = np.zeros((N, N))
    alpha_arr[0, 1:] = alpha0
    for n in range(1, nmax + 1):
        k = 2 * n
        for m in range(N - k):
            log_binom = 0.5 * (gammaln(k + m + 1.0) - gammaln(k + 1.0)
                               - gammaln(m + 1.0))
            alpha_arr[k, m] = math.exp(log_binom + log_capital[n, m])

    table = CoeffTable(s=s, N=N, alpha=alpha_arr, lam=lam,
                       log_capital_lambda=log_capital, build_tolerance=tol)
    _check_invariants(table)
    return table


def _check_invariants(table: CoeffTable) -> None:
    N, tol = table.N, table.build_tolerance
    if abs(table.lam[0]) > 0.0 or abs(table.lam[2]) > tol:
        raise AssertionError("lambda_0 and lambda_2 must vanish")
    if np.any(table.lam < -tol):
        raise AssertionError("negative eigenvalue in table")
    for k in range(1, N, 2):
        if np.any(table.alpha[k, :N - k] != 0.0):
            raise AssertionError(f"odd-index alpha row {k} not zero")
    # lambda_m = -alpha_{0,m} - alpha_{m,0}: two independent quadrature routes
    m = np.arange(1, N)
    resid = table.lam[1:] + table.alpha[0, 1:] + table.alpha[m, 0]
    scale = np.maximum(1.0, table.lam[1:])
    if np.max(np.abs(resid) / scale) > 10.0 * tol:
        worst = int(m[np.argmax(np.abs(resid) / scale)])
        raise AssertionError(f"consistency identity fails at m={worst}")


def table_to_csv(table: CoeffTable, path: str) -> None:
    """Serialize with 17 significant digits (bit-exact round trip)."""
    buf = io.StringIO()
    buf.write(f"# {COEFFS_CSV_VERSION}, s={table.s:.17g}, N={table.N}\n")
    buf.write(f"# config: s={table.s:.17g} N={table.N} "
              f"tol={table.build_tolerance:.17g}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "k", "l", "value"])
    for k in range(table.N):
        for l in range(table.N - k):
            w.writerow(["alpha", k, l, f"{table.alpha[k, l]:.17g}"])
    for k in range(table.N):
        w.writerow(["lambda", k, 0, f"{table.lam[k]:.17g}"])
    nmax = (table.N - 1) // 2
    for n in range(1, nmax + 1):
        for m in range(table.N - 2 * n):
            w.writerow(["logLambda", n, m,
                        f"{table.log_capital_lambda[n, m]:.17g}"])
    with open(path, "w") as fh:
        fh.write(buf.getvalue())


def table_from_csv(path: str) -> CoeffTable:
    with open(path) as fh:
        header = fh.readline().strip()
        if not header.startswith(f"# {COEFFS_CSV_VERSION}"):
            raise ValueError(f"not a {COEFFS_CSV_VERSION} file: {path}")
        fields = dict(part.strip().split("=") for part
                      in header.split(",")[1:])
        s, N = float(fields["s"]), int(fields["N"])
        tol = 1e-10
        pos = fh.tell()
        line = fh.readline()
        if line.startswith("# config:"):
            for item in line[len("# config:"):].split():
                key, _, val = item.partition("=")
                if key == "tol":
                    tol = float(val)
        else:
            fh.seek(pos)
        reader = csv.reader(fh)
        head = next(reader)
        if head != ["kind", "k", "l", "value"]:
            raise ValueError(f"unexpected column header {head} in {path}")
        alpha_arr = np.zeros((N, N))
        lam = np.zeros(N)
        log_capital = np.full(((N - 1) // 2 + 1, N), np.nan)
        for kind, k, l, value in reader:
            k, l, value = int(k), int(l), float(value)
            if kind == "alpha":
                alpha_arr[k, l] = value
            elif kind == "lambda":
                lam[k] = value
            elif kind == "logLambda":
                log_capital[k, l] = value
            else:
                raise ValueError(f"unknown row kind {kind!r} in {path}")
    return CoeffTable(s=s, N=N, alpha=alpha_arr, lam=lam,
                      log_capital_lambda=log_capital, build_tolerance=tol)
