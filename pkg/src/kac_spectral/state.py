"""Hermite x Fourier coefficient tensor for g(t, x, v) on a periodic domain.

Convention, used everywhere: g(x, v) = sum_{n,j} c[n][j] psi_n(v)
exp(i xi_j x) / sqrt(L) with xi_j = 2 pi j / L, so the discrete Parseval
identity is exactly ||g||_{L2}^2 = sum |c[n][j]|^2.  Columns are ordered
j = -K..K; index K is the zero mode.
"""

import csv
import enum
import io
import math
from dataclasses import dataclass, replace

import numpy as np

STATE_CSV_VERSION = "kac-state v1"


class NormKind(enum.Enum):
    L2 = "l2"
    H10 = "h10"
    HS2_WEIGHTED_10 = "hs2_10"
    GS_WEIGHTED = "gs"


class WeightOverflowError(OverflowError):
    """Forward exponential weight exceeds double range."""


@dataclass
class SpectralState:
    """Value type; operations return new states and never mutate."""

    c: np.ndarray
    L: float
    time: float = 0.0

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=complex)
        if self.c.ndim != 2 or self.c.shape[1] % 2 == 0:
            raise ValueError("coefficient tensor must be (N, 2K+1)")

    @property
    def N(self) -> int:
        return self.c.shape[0]

    @property
    def K(self) -> int:
        return self.c.shape[1] // 2

    def xi(self) -> np.ndarray:
        """Discrete wavenumbers xi_j = 2 pi j / L, ordered j = -K..K."""
        return 2.0 * np.pi * np.arange(-self.K, self.K + 1) / self.L

    def with_c(self, c: np.ndarray, time: float | None = None) -> "SpectralState":
        return replace(self, c=c, time=self.time if time is None else time)


def bracket_xi(xi: np.ndarray) -> np.ndarray:
    """Japanese bracket <xi> = sqrt(1 + xi^2)."""
    return np.sqrt(1.0 + np.asarray(xi, dtype=float) ** 2)


def _weight_exponent(state: SpectralState, s: float) -> np.ndarray:
    """(sqrt(n + 1/2) + <xi_j>)^(2s/(2s+1)) on the (n, j) lattice."""
    n = np.arange(state.N)[:, None]
    bx = bracket_xi(state.xi())[None, :]
    return (np.sqrt(n + 0.5) + bx) ** (2.0 * s / (2.0 * s + 1.0))


def norm(state: SpectralState, kind: NormKind, s: float | None = None,
         t: float = 0.0, delta1: float = 0.0) -> float:
    """Weighted norms of the state.

    L2 and H10 need no s; HS2_WEIGHTED_10 applies the oscillator weight
    (n + 1/2)^(s/2) inside the H10 sum; GS_WEIGHTED applies the exponential
    weight of apply_weight first, then takes H10.
    """
    a2 = np.abs(state.c) ** 2
    bx2 = bracket_xi(state.xi())[None, :] ** 2
    if kind is NormKind.L2:
        return float(math.sqrt(np.sum(a2)))
    if kind is NormKind.H10:
        return float(math.sqrt(np.sum(bx2 * a2)))
    if s is None:
        raise ValueError(f"{kind} requires the exponent s")
    if kind is NormKind.HS2_WEIGHTED_10:
        osc = (np.arange(state.N)[:, None] + 0.5) ** s
        return float(math.sqrt(np.sum(osc * bx2 * a2)))
    if kind is NormKind.GS_WEIGHTED:
        return norm(apply_weight(state, t, delta1, "forward", s), NormKind.H10)
    raise ValueError(f"unknown norm kind {kind!r}")


def apply_weight(state: SpectralState, t: float, delta1: float,
                 direction: str, s: float) -> SpectralState:
    """Diagonal exponential weight exp(t w)/(1 + delta1 exp(t w)), w as above.

    direction "forward" multiplies, "inverse" divides by the same factor, so
    the two compose to the identity up to rounding.  A forward exponent above
    700 would overflow and is rejected with the offending lattice site.
    """
    if direction not in ("forward", "inverse"):
        raise ValueError("direction must be 'forward' or 'inverse'")
    if t < 0.0:
        raise ValueError("weight time must be >= 0")
    if not 0.0 <= delta1 <= 1.0:
        raise ValueError("delta1 must lie in [0, 1]")
    e = t * _weight_exponent(state, s)
    if np.max(e) > 700.0:
        n, j = np.unravel_index(np.argmax(e), e.shape)
        raise WeightOverflowError(
            f"weight exponent {e[n, j]:.3g} > 700 at n={n}, j={j - state.K}, "
            f"t={t}")
    w = np.exp(e) / (1.0 + delta1 * np.exp(e))
    if direction == "inverse":
        w = 1.0 / w
    return state.with_c(state.c * w)


# ---------------------------------------------------------------- initial data

@dataclass(frozen=True)
class InitialData:
    """Descriptor for deterministic initial states.

    kind "single_mode": unit mass on lattice site (n, j).
    kind "gaussian_bump": psi_profile(v) times a periodized Gaussian in x
        centered at x_center with width x_width (defined directly by its
        Fourier coefficients exp(-x_width^2 xi^2 / 2 - i xi x_center)).
    kind "random_smooth": complex Gaussian coefficients damped by
        ((1+n)(1+|j|))^(-decay), reality-symmetrized, seeded.
    amplitude is always the target H^{(1,0)} norm of the built state.
    """

    kind: str
    amplitude: float = 1e-3
    n: int = 0
    j: int = 0
    x_center: float = 0.0
    x_width: float = 0.5
    profile: int = 0
    seed: int = 0
    decay: float = 1.0


def single_mode(n: int, j: int, amplitude: float) -> InitialData:
    return InitialData(kind="single_mode", amplitude=amplitude, n=n, j=j)


def gaussian_bump(x_center: float, x_width: float, profile: int,
                  amplitude: float) -> InitialData:
    return InitialData(kind="gaussian_bump", amplitude=amplitude,
                       x_center=x_center, x_width=x_width, profile=profile)


def random_smooth(seed: int, decay: float, amplitude: float) -> InitialData:
    return InitialData(kind="random_smooth", amplitude=amplitude, seed=seed,
                       decay=decay)


def init_state(spec: InitialData, N: int, K: int, L: float) -> SpectralState:
    """Build the descriptor's state scaled to ||.||_{(1,0)} = amplitude."""
    c = np.zeros((N, 2 * K + 1), dtype=complex)
    if spec.kind == "single_mode":
        if not (0 <= spec.n < N and -K <= spec.j <= K):
            raise ValueError(f"mode (n={spec.n}, j={spec.j}) outside truncation")
        c[spec.n, spec.j + K] = 1.0
    elif spec.kind == "gaussian_bump":
        if not 0 <= spec.profile < N:
            raise ValueError(f"hermite profile {spec.profile} outside truncation")
        xi = 2.0 * np.pi * np.arange(-K, K + 1) / L
        c[spec.profile] = np.exp(-0.5 * spec.x_width ** 2 * xi ** 2
                                 - 1j * xi * spec.x_center)
    elif spec.kind == "random_smooth":
        rng = np.random.default_rng(spec.seed)
        damp = ((1.0 + np.arange(N))[:, None]
                * (1.0 + np.abs(np.arange(-K, K + 1)))[None, :]) ** (-spec.decay)
        z = rng.standard_normal((N, K + 1)) + 1j * rng.standard_normal((N, K + 1))
        z[:, 0] = z[:, 0].real  # zero mode real, so g is real-valued
        c[:, K:] = z
        c[:, :K] = np.conj(z[:, :0:-1])
        c *= damp
    else:
        raise ValueError(f"unknown initial-data kind {spec.kind!r}")
    state = SpectralState(c=c, L=L, time=0.0)
    raw = norm(state, NormKind.H10)
    if raw == 0.0:
        raise ValueError("initial-data spec has zero norm; cannot scale")
    return state.with_c(c * (spec.amplitude / raw))


# ---------------------------------------------------------------- persistence

def state_to_csv(state: SpectralState, path: str, s: float) -> None:
    buf = io.StringIO()
    buf.write(f"# {STATE_CSV_VERSION}, s={s:.17g}, N={state.N}, K={state.K}, "
              f"L={state.L:.17g}, time={state.time:.17g}\n")
    buf.write(f"# config: N={state.N} K={state.K} L={state.L:.17g} "
              f"s={s:.17g} time={state.time:.17g}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "j", "re", "im"])
    for n in range(state.N):
        for j in range(-state.K, state.K + 1):
            z = state.c[n, j + state.K]
            w.writerow([n, j, f"{z.real:.17g}", f"{z.imag:.17g}"])
    with open(path, "w") as fh:
        fh.write(buf.getvalue())


def state_from_csv(path: str) -> tuple[SpectralState, float]:
    """Read a snapshot; returns (state, s recorded at write time)."""
    with open(path) as fh:
        header = fh.readline().strip()
        if not header.startswith(f"# {STATE_CSV_VERSION}"):
            raise ValueError(f"not a {STATE_CSV_VERSION} file: {path}")
        fields = dict(part.strip().split("=") for part in header.split(",")[1:])
        s = float(fields["s"])
        N, K = int(fields["N"]), int(fields["K"])
        L, time = float(fields["L"]), float(fields["time"])
        pos = fh.tell()
        if not fh.readline().startswith("# config:"):
            fh.seek(pos)
        reader = csv.reader(fh)
        head = next(reader)
        if head != ["n", "j", "re", "im"]:
            raise ValueError(f"unexpected column header {head} in {path}")
        c = np.zeros((N, 2 * K + 1), dtype=complex)
        for n, j, re, im in reader:
            c[int(n), int(j) + K] = float(re) + 1j * float(im)
    return SpectralState(c=c, L=L, time=time), s
