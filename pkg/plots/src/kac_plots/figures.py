"""The four figure kinds, one function each.

Every function takes (src csv, output path), draws with a fixed style, and
returns the number of series it put on the axes.  Output format follows the
output extension (anything matplotlib's Agg backend can save).  PNG output
carries a fixed Software tag so identical inputs give identical bytes.
"""

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .readers import read_gevrey, read_hypo, read_lambdas, read_state

FLOOR = 1e-16  # color floor; coefficients at rounding level all look alike

_STYLE = {
    "figure.figsize": (6.4, 4.2),
    "figure.dpi": 110,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "savefig.bbox": "tight",
}


def _save(fig, out: str) -> None:
    kwargs = {}
    if out.lower().endswith(".png"):
        kwargs["metadata"] = {"Software": "kac-plots"}
    fig.savefig(out, **kwargs)
    plt.close(fig)


def heatmap(src: str, out: str) -> int:
    """Coefficient magnitudes on the (n, xi) lattice, log color scale."""
    fields, mag = read_state(src)
    k = int(fields["K"])
    length = float(fields.get("L", "6.283185307179586"))
    xi = 2.0 * math.pi * np.arange(-k, k + 1) / length
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        mesh = ax.pcolormesh(xi, np.arange(mag.shape[0]),
                             np.log10(np.maximum(mag, FLOOR)),
                             shading="nearest", cmap="viridis")
        fig.colorbar(mesh, ax=ax, label="log10 |c[n, j]|")
        ax.set_xlabel("xi_j")
        ax.set_ylabel("n")
        ax.set_title(f"coefficient decay, t = {fields.get('time', '?')}")
        _save(fig, out)
    return 1


def slope_vs_t(src: str, out: str) -> int:
    """Fitted decay radius per snapshot; fit quality on a twin axis when
    the file carries it."""
    _, cols = read_gevrey(src)
    series = 1
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        ax.plot(cols["t"], cols["slope"], "o-", color="tab:blue",
                label="slope")
        ax.set_xlabel("t")
        ax.set_ylabel("slope delta(t)")
        if "r_squared" in cols:
            twin = ax.twinx()
            twin.plot(cols["t"], cols["r_squared"], "s--", color="tab:gray",
                      label="r_squared")
            twin.set_ylabel("r_squared")
            twin.set_ylim(0.0, 1.05)
            twin.grid(False)
            series += 1
        ax.set_title("phase-space decay radius vs time")
        _save(fig, out)
    return series


def eig_asymptote(src: str, out: str) -> int:
    """lambda_k together with (2^(1+s)/s) Gamma(1-s) k^s."""
    s, k, lam = read_lambdas(src)
    pos = k >= 1
    asym = (2.0 ** (1.0 + s) / s) * math.gamma(1.0 - s) * k[pos] ** s
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        ax.loglog(k[pos], lam[pos], "o", color="tab:blue", label="lambda_k")
        ax.loglog(k[pos], asym, "-", color="tab:orange", label="asymptote")
        ax.set_xlabel("k")
        ax.set_ylabel("lambda")
        ax.set_title(f"collision eigenvalues vs k^s, s = {s:g}")
        ax.legend()
        _save(fig, out)
    return 2


def hypo_ratio(src: str, out: str) -> int:
    """Generalized-eigenvalue lower bound per frequency."""
    cols = read_hypo(src)
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        ax.plot(cols["xi"], cols["R"], "o-", color="tab:blue")
        ax.set_xscale("symlog", linthresh=1.0)
        ax.set_xlabel("xi")
        ax.set_ylabel("R(xi)")
        ax.set_title("hypoelliptic ratio")
        _save(fig, out)
    return 1
