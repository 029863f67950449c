"""Hermite-basis calculus for the velocity variable.

The basis psi_n is orthonormal in L2(R) and diagonalizes the harmonic
oscillator H = -d^2/dv^2 + v^2/4 with eigenvalue n + 1/2.  psi_0 is the
square root of the centered Maxwellian with unit variance.  Everything here
is exact ladder algebra on coefficient vectors; the only floating-point
content is sqrt factors.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

LADDER_OPS = ("raise", "lower", "mult_v", "deriv_v")


class TruncationOverflowError(ValueError):
    """A ladder composition needs more Hermite degrees than allowed."""


@dataclass
class HermiteCoeffs:
    """Coefficients of a velocity function in the psi_n basis."""

    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.atleast_1d(np.asarray(self.coeffs))

    @property
    def degree_max(self) -> int:
        return len(self.coeffs) - 1

    def norm(self) -> float:
        # orthonormal basis: L2 norm is the coefficient 2-norm
        return float(np.linalg.norm(self.coeffs))


def hermite_eval(n: int, v):
    """Evaluate psi_n at velocity v (scalar or array).

    Upward three-term recurrence psi_{n+1} = (v psi_n - sqrt(n) psi_{n-1})
    / sqrt(n+1); stable because psi_n grows with n below the classical
    turning point, which covers |v| <= 20 for n <= 200.
    """
    if n < 0:
        raise ValueError("Hermite degree must be >= 0")
    v = np.asarray(v, dtype=float)
    p_prev = np.zeros_like(v)
    p = (2.0 * np.pi) ** (-0.25) * np.exp(-0.25 * v * v)
    for m in range(n):
        p, p_prev = (v * p - np.sqrt(m) * p_prev) / np.sqrt(m + 1.0), p
    return p if p.ndim else float(p)


def hermite_matrix(n_max: int, v: np.ndarray) -> np.ndarray:
    """All rows psi_0..psi_{n_max} at the points v, shape (n_max+1, len(v))."""
    v = np.asarray(v, dtype=float)
    out = np.empty((n_max + 1, len(v)))
    out[0] = (2.0 * np.pi) ** (-0.25) * np.exp(-0.25 * v * v)
    if n_max >= 1:
        out[1] = v * out[0]
    for m in range(1, n_max):
        out[m + 1] = (v * out[m] - np.sqrt(m) * out[m - 1]) / np.sqrt(m + 1.0)
    return out


def ladder_action(arr: np.ndarray, op: str) -> np.ndarray:
    """Apply a ladder operator along axis 0 of a coefficient array.

    Rules on coefficients (degree index m, any trailing axes):
        raise:   out[m] = sqrt(m)   * arr[m-1]
        lower:   out[m] = sqrt(m+1) * arr[m+1]
        mult_v:  raise + lower
        deriv_v: (lower - raise) / 2
    raise/mult_v/deriv_v lengthen the array by one degree, lower shortens it.
    """
    if op not in LADDER_OPS:
        raise ValueError(f"unknown ladder op {op!r}; valid: {LADDER_OPS}")
    n = arr.shape[0]
    if op == "lower":
        out = np.sqrt(np.arange(1.0, n)).reshape((-1,) + (1,) * (arr.ndim - 1)) \
            * arr[1:]
        return out
    raised = np.zeros((n + 1,) + arr.shape[1:], dtype=arr.dtype)
    raised[1:] = np.sqrt(np.arange(1.0, n + 1)).reshape(
        (-1,) + (1,) * (arr.ndim - 1)) * arr
    if op == "raise":
        return raised
    lowered = np.zeros_like(raised)
    lowered[:n - 1] = ladder_action(arr, "lower")
    if op == "mult_v":
        return raised + lowered
    return 0.5 * (lowered - raised)


def apply_ladder(f: HermiteCoeffs, op: str) -> HermiteCoeffs:
    """A+ f, A- f, v f, or d/dv f as a new coefficient vector."""
    return HermiteCoeffs(ladder_action(f.coeffs, op))


def monomial_derivative_norm(k: int, l: int, n: int,
                             max_degree: int | None = None) -> float:
    """Exact L2 norm of v^k d_v^l psi_n by composed ladder actions.

    The result occupies degrees n-k-l .. n+k+l, so a configured truncation
    must satisfy max_degree >= n+k+l; a too-small truncation raises rather
    than silently clipping (norm identities must stay exact).
    """
    if min(k, l, n) < 0:
        raise ValueError("k, l, n must be >= 0")
    if max_degree is not None and n + k + l > max_degree:
        raise TruncationOverflowError(
            f"v^{k} d_v^{l} psi_{n} needs degree {n + k + l} "
            f"> truncation {max_degree}")
    vec = np.zeros(n + 1)
    vec[n] = 1.0
    for _ in range(l):
        vec = ladder_action(vec, "deriv_v")
    for _ in range(k):
        vec = ladder_action(vec, "mult_v")
    return float(np.linalg.norm(vec))


def factorial_norm_bound(k: int, l: int, n: int) -> float:
    """Upper bound 2^k sqrt((k+l+n)!/n!) for the norm of v^k d_v^l psi_n.

    Evaluated in log space; no raw factorials, so large indices are safe.
    """
    if min(k, l, n) < 0:
        raise ValueError("k, l, n must be >= 0")
    return float(np.exp(k * np.log(2.0)
                        + 0.5 * (gammaln(k + l + n + 1) - gammaln(n + 1))))
