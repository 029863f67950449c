"""Render figures from kac-spectral CSV outputs.

Four kinds, each reading exactly one documented CSV schema:

    heatmap        kac-state v1    coefficient magnitudes in the (n, xi) plane
    slope_vs_t     kac-gevrey v1   fitted decay radius per snapshot
    eig_asymptote  kac-coeffs v1   lambda_k against the k^s asymptote
    hypo_ratio     kac-hypo v1     R(xi) curve

SERIES_PER_KIND documents how many series a full-schema input produces;
inputs missing optional columns degrade to fewer series, never to wrong
ones.  Inputs are never mutated, and nothing is written when the input
fails validation.
"""

import os
from dataclasses import dataclass

from . import figures
from .readers import SchemaError

__version__ = "0.1.0"

_RENDERERS = {
    "heatmap": figures.heatmap,
    "slope_vs_t": figures.slope_vs_t,
    "eig_asymptote": figures.eig_asymptote,
    "hypo_ratio": figures.hypo_ratio,
}

SERIES_PER_KIND = {
    "heatmap": 1,        # the color mesh
    "slope_vs_t": 2,     # slope, r_squared (1 without an r_squared column)
    "eig_asymptote": 2,  # lambda_k, asymptote
    "hypo_ratio": 1,     # R(xi)
}


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    src: str
    out: str


@dataclass(frozen=True)
class RenderResult:
    out: str
    series: int


def render(spec: FigureSpec) -> RenderResult:
    """Render one figure; returns the output path and the series count."""
    renderer = _RENDERERS.get(spec.kind)
    if renderer is None:
        raise SchemaError(f"unknown figure kind {spec.kind!r}; expected one "
                          f"of {', '.join(sorted(_RENDERERS))}")
    if not os.path.exists(spec.src):
        raise FileNotFoundError(spec.src)
    series = renderer(spec.src, spec.out)
    return RenderResult(out=spec.out, series=series)


__all__ = ["FigureSpec", "RenderResult", "SchemaError", "SERIES_PER_KIND",
           "render", "__version__"]
