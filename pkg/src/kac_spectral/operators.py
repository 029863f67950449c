"""The three pieces of the equation, applied to spectral states.

Per Fourier mode j the linearized evolution is governed by the complex
tridiagonal block i xi_j V + diag(lambda), where V is the symmetric
velocity-multiplication matrix V[n][n+1] = sqrt(n+1); the transport part is
exactly skew-Hermitian (norm preserving), the collision part diagonal PSD.
The bilinear term maps Hermite degrees (k, l) to k + l, so it is a
convolution in the Hermite index and a pointwise product in x, evaluated
pseudospectrally with 2/3-rule dealiasing.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.fft

from .coefficients import CoeffTable, _log_beta
from .quadrature import integrate
from .state import SpectralState

BOBYLEV_MAX_DEGREE = 12
THETA_MAX = math.pi / 4.0


@dataclass
class TransportBlock:
    """Matrix data of P = i xi V + diag(lambda) for one Fourier mode."""

    xi: float
    N: int
    diag: np.ndarray
    offdiag: np.ndarray

    def dense(self) -> np.ndarray:
        m = np.diag(self.diag.astype(complex))
        ij = 1j * self.xi * self.offdiag
        m += np.diag(ij, 1) + np.diag(ij, -1)
        return m


def transport_block(xi: float, N: int, table: CoeffTable) -> TransportBlock:
    if N < 2:
        raise ValueError("block needs N >= 2")
    if table.N < N:
        raise ValueError(f"table truncation {table.N} < requested {N}")
    return TransportBlock(xi=float(xi), N=N, diag=table.lam[:N].copy(),
                          offdiag=np.sqrt(np.arange(1.0, N)))


def apply_linearized(state: SpectralState, table: CoeffTable) -> SpectralState:
    """Diagonal collision operator: c[n][j] -> lambda_n c[n][j]."""
    if table.N < state.N:
        raise ValueError(f"table truncation {table.N} < state {state.N}")
    return state.with_c(table.lam[:state.N, None] * state.c)


def apply_transport(state: SpectralState) -> SpectralState:
    """v d_x in coefficients: out[n] = i xi (sqrt(n) c[n-1] + sqrt(n+1) c[n+1]).

    The raised degree N is dropped (projection truncation).
    """
    c = state.c
    n = np.arange(state.N)[:, None]
    down = np.zeros_like(c)
    down[1:] = c[:-1]
    up = np.zeros_like(c)
    up[:-1] = c[1:]
    out = 1j * state.xi()[None, :] * (np.sqrt(n) * down + np.sqrt(n + 1) * up)
    return state.with_c(out)


def _grid_size(K: int) -> int:
    # 2/3 rule for a quadratic product: at least 3(2K+1)/2 physical points
    return scipy.fft.next_fast_len(int(np.ceil(1.5 * (2 * K + 1))))


def _to_grid(c: np.ndarray, K: int, M: int, L: float) -> np.ndarray:
    spec = np.zeros((c.shape[0], M), dtype=complex)
    spec[:, :K + 1] = c[:, K:]
    if K:
        spec[:, M - K:] = c[:, :K]
    return scipy.fft.ifft(spec, axis=1) * (M / math.sqrt(L))


def _from_grid(vals: np.ndarray, K: int, M: int, L: float) -> np.ndarray:
    d = scipy.fft.fft(vals, axis=1) * (math.sqrt(L) / M)
    out = np.empty((vals.shape[0], 2 * K + 1), dtype=complex)
    out[:, K:] = d[:, :K + 1]
    if K:
        out[:, :K] = d[:, M - K:]
    return out


def apply_gamma(f: SpectralState, g: SpectralState,
                table: CoeffTable) -> SpectralState:
    """Bilinear collision term Gamma(f, g) on the shared truncation.

    Output Hermite coefficient n collects alpha_{k,l} f_k(x) g_l(x) over
    k + l = n with k even; x-products are evaluated on a dealiased physical
    grid, so the result is exact for the retained modes up to rounding.
    """
    if f.c.shape != g.c.shape or f.L != g.L:
        raise ValueError("states must share (N, K, L)")
    if table.N < f.N:
        raise ValueError(f"table truncation {table.N} < state {f.N}")
    N, K, L = f.N, f.K, f.L
    M = _grid_size(K)
    vf = _to_grid(f.c, K, M, L)
    vg = _to_grid(g.c, K, M, L)
    h = np.zeros((N, M), dtype=complex)
    for k in range(0, N, 2):
        rows = N - k
        h[k:] += table.alpha[k, :rows, None] * (vf[k][None, :] * vg[:rows])
    return f.with_c(_from_grid(h, K, M, L))


def mu_hat_transform(n: int, xi) -> np.ndarray:
    """Fourier transform of sqrt(mu) psi_n: (-i)^n xi^n e^{-xi^2/2}/sqrt(n!)."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    xi = np.asarray(xi, dtype=float)
    return ((-1j) ** n * xi ** n * np.exp(-0.5 * xi * xi)
            / math.sqrt(math.factorial(n)))


def gamma_bobylev_oracle(k: int, l: int, s: float, xi_grid,
                         rel_tol: float = 1e-12) -> np.ndarray:
    """Fourier transform of sqrt(mu) Gamma(psi_k, psi_l) on xi_grid.

    Independent cross-validation route for apply_gamma: integrates the
    closed-form collision kernel in Fourier variables,

        int beta(theta) [even_part(F_k)(xi sin theta) F_l(xi cos theta)
                         - F_k(0) F_l(xi)] dtheta,

    where F_n is mu_hat_transform.  The even part kills odd k; for k = 0 the
    bracket reduces exactly to (cos^l - 1) F_l(xi); for even k >= 2 the
    bracket vanishes like theta^k at 0.  The singular prefactor is paired
    with sin^k theta in log space so deep quadrature nodes neither overflow
    nor produce inf * 0.
    """
    if k < 0 or l < 0:
        raise ValueError("degrees must be >= 0")
    if k + l > BOBYLEV_MAX_DEGREE:
        raise ValueError(f"oracle limited to k + l <= {BOBYLEV_MAX_DEGREE}")
    xi = np.asarray(xi_grid, dtype=float)
    if k % 2 or (k == 0 and l == 0):
        return np.zeros(xi.shape, dtype=complex)

    if k == 0:
        def f(theta):
            cosl_m1 = np.expm1(l * np.log1p(-2.0 * np.sin(0.5 * theta) ** 2))
            with np.errstate(divide="ignore"):
                mag = np.exp(_log_beta(theta, s) + np.log(-cosl_m1))
            return -mag[:, None] * mu_hat_transform(l, xi)[None, :]
    else:
        fac = (-1j) ** (k + l) / math.sqrt(math.factorial(k)
                                           * math.factorial(l))

        def f(theta):
            sin, cos = np.sin(theta), np.cos(theta)
            paired = np.exp(_log_beta(theta, s) + k * np.log(sin))
            xs = xi[None, :] * sin[:, None]
            xc = xi[None, :] * cos[:, None]
            return (fac * paired[:, None] * xi[None, :] ** k
                    * np.exp(-0.5 * xs * xs)
                    * xc ** l * np.exp(-0.5 * xc * xc))

    val = integrate(f, 0.0, THETA_MAX, rel_tol=rel_tol, abs_tol=1e-15,
                    context=f"bobylev k={k} l={l} s={s}")
    return 2.0 * np.asarray(val)
