"""Plain key = value run configuration.

One flat namespace, documented defaults, unknown keys rejected.  The same
keys are accepted as CLI flags (--key value), which override file values.
All randomness in a run flows from the single `seed` key: the random initial
data inherits it unless initial.seed is set explicitly.
"""

import math
from dataclasses import dataclass

from .state import InitialData
from .solver import SolverConfig


class ConfigError(ValueError):
    """Invalid run configuration content."""


def _parse_bool_mode(value: str) -> str:
    if value not in ("imex", "picard"):
        raise ConfigError(f"mode must be imex or picard, got {value!r}")
    return value


def _parse_kind(value: str) -> str:
    if value not in ("single_mode", "gaussian_bump", "random_smooth"):
        raise ConfigError(f"unknown initial.kind {value!r}")
    return value


# key -> (converter, default); defaults define the canonical reference run
SCHEMA = {
    "s": (float, 0.5),
    "N": (int, 64),
    "K": (int, 64),
    "L": (float, 2.0 * math.pi),
    "dt": (float, 1e-3),
    "T": (float, 1.0),
    "mode": (_parse_bool_mode, "imex"),
    "picard_tol": (float, 1e-12),
    "picard_max_iters": (int, 20),
    "initial.kind": (_parse_kind, "single_mode"),
    "initial.amplitude": (float, 1e-3),
    "initial.n": (int, 3),
    "initial.j": (int, 2),
    "initial.x_center": (float, 0.0),
    "initial.x_width": (float, 0.5),
    "initial.profile": (int, 0),
    "initial.seed": (int, None),
    "initial.decay": (float, 1.0),
    "snapshot_every": (int, 50),
    "seed": (int, 1234),
    "out_dir": (str, "runs"),
}


def parse_config_file(path: str) -> dict:
    """Read key = value lines; '#' starts a comment; blank lines ignored."""
    raw = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            key, _, value = line.partition("=")
            raw[key.strip()] = value.strip()
    return raw


def resolve(raw: dict) -> dict:
    """Apply defaults and types; reject unknown keys."""
    unknown = sorted(set(raw) - set(SCHEMA))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    out = {}
    for key, (conv, default) in SCHEMA.items():
        if key in raw and raw[key] is not None:
            try:
                out[key] = conv(raw[key])
            except ConfigError:
                raise
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"bad value for {key}: {raw[key]!r} ({exc})")
        else:
            out[key] = default
    if out["initial.seed"] is None:
        out["initial.seed"] = out["seed"]
    return out


@dataclass
class ResolvedRun:
    solver: SolverConfig
    seed: int
    out_dir: str
    values: dict


def build_run(raw: dict) -> ResolvedRun:
    values = resolve(raw)
    initial = InitialData(
        kind=values["initial.kind"],
        amplitude=values["initial.amplitude"],
        n=values["initial.n"],
        j=values["initial.j"],
        x_center=values["initial.x_center"],
        x_width=values["initial.x_width"],
        profile=values["initial.profile"],
        seed=values["initial.seed"],
        decay=values["initial.decay"],
    )
    try:
        solver = SolverConfig(
            s=values["s"], N=values["N"], K=values["K"], L=values["L"],
            dt=values["dt"], T=values["T"], mode=values["mode"],
            picard_tol=values["picard_tol"],
            picard_max_iters=values["picard_max_iters"],
            initial=initial, snapshot_every=values["snapshot_every"])
    except ValueError as exc:
        raise ConfigError(str(exc))
    return ResolvedRun(solver=solver, seed=values["seed"],
                       out_dir=values["out_dir"], values=values)


def canonical_run() -> ResolvedRun:
    """The reference configuration every frozen baseline refers to."""
    return build_run({})
