"""Schema-checked readers for the solver's CSV files.

Every file starts with a version header `# <name> v1, key=value, ...`,
optionally a `# config: ...` echo line, then a column-header row and data.
Readers validate the version tag and the columns they need and hand back
plain dicts of numpy arrays; anything off is a SchemaError naming the file
and the offending column, so batch runs fail loudly instead of plotting
garbage.
"""

import csv

import numpy as np


class SchemaError(ValueError):
    """Input file does not match the documented CSV schema."""


def read_header(path: str, version: str) -> dict:
    with open(path) as fh:
        first = fh.readline().strip()
    if not first.startswith(f"# {version}"):
        raise SchemaError(f"{path}: expected a '# {version}' header, "
                          f"got {first[:60]!r}")
    fields = {}
    for part in first.split(",")[1:]:
        if "=" in part:
            key, _, value = part.strip().partition("=")
            fields[key] = value
    return fields


def read_columns(path: str, version: str, required: list[str],
                 optional: list[str] = ()) -> tuple[dict, dict]:
    """Return (header fields, column dict). Missing optional columns are
    simply absent from the dict; missing required ones raise."""
    fields = read_header(path, version)
    with open(path) as fh:
        rows = [r for r in csv.reader(
            ln for ln in fh if not ln.startswith("#"))]
    if not rows:
        raise SchemaError(f"{path}: no column-header row")
    head, data = rows[0], rows[1:]
    for col in required:
        if col not in head:
            raise SchemaError(f"{path}: missing required column {col!r}")
    if not data:
        raise SchemaError(f"{path}: no data rows")
    out = {}
    for col in list(required) + [c for c in optional if c in head]:
        i = head.index(col)
        try:
            out[col] = np.array([float(r[i]) for r in data])
        except (ValueError, IndexError) as exc:
            raise SchemaError(f"{path}: column {col!r} not numeric ({exc})")
    return fields, out


def read_state(path: str) -> tuple[dict, np.ndarray]:
    """kac-state v1 snapshot -> (header fields, |c| on the (n, j) grid)."""
    fields, cols = read_columns(path, "kac-state v1",
                                ["n", "j", "re", "im"])
    try:
        n_max = int(fields["N"]) - 1
        k = int(fields["K"])
    except (KeyError, ValueError):
        raise SchemaError(f"{path}: header must carry integer N and K")
    mag = np.zeros((n_max + 1, 2 * k + 1))
    n_idx = cols["n"].astype(int)
    j_idx = cols["j"].astype(int) + k
    if n_idx.min() < 0 or n_idx.max() > n_max \
            or j_idx.min() < 0 or j_idx.max() > 2 * k:
        raise SchemaError(f"{path}: (n, j) indices outside the header's "
                          f"N={n_max + 1}, K={k}")
    mag[n_idx, j_idx] = np.hypot(cols["re"], cols["im"])
    return fields, mag


def read_gevrey(path: str) -> tuple[dict, dict]:
    return read_columns(path, "kac-gevrey v1", ["t", "slope"],
                        optional=["r_squared", "intercept", "exponent_used"])


def read_lambdas(path: str) -> tuple[float, np.ndarray, np.ndarray]:
    """kac-coeffs v1 -> (s, k, lambda_k) from the 'lambda' rows."""
    fields = read_header(path, "kac-coeffs v1")
    with open(path) as fh:
        rows = [r for r in csv.reader(
            ln for ln in fh if not ln.startswith("#"))]
    if not rows:
        raise SchemaError(f"{path}: no column-header row")
    head, data = rows[0], rows[1:]
    for col in ("kind", "k", "value"):
        if col not in head:
            raise SchemaError(f"{path}: missing required column {col!r}")
    if not data:
        raise SchemaError(f"{path}: no data rows")
    i_kind, i_k, i_val = head.index("kind"), head.index("k"), \
        head.index("value")
    lam_rows = [r for r in data if r[i_kind] == "lambda"]
    if not lam_rows:
        raise SchemaError(f"{path}: no 'lambda' rows")
    try:
        s = float(fields["s"])
    except (KeyError, ValueError):
        raise SchemaError(f"{path}: header must carry s")
    try:
        k = np.array([float(r[i_k]) for r in lam_rows])
        lam = np.array([float(r[i_val]) for r in lam_rows])
    except ValueError as exc:
        raise SchemaError(f"{path}: column 'k' or 'value' not numeric "
                          f"({exc})")
    return s, k, lam


def read_hypo(path: str) -> dict:
    _, cols = read_columns(path, "kac-hypo v1", ["xi", "R"])
    return cols
