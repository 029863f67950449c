"""Spectral solver and verification suite for the non-cutoff Kac equation
in fluctuation form: Hermite modes in velocity, Fourier modes in position.
"""

__version__ = "0.1.0"

from .coefficients import (CoeffTable, alpha, beta_kernel, build_tables,
                           capital_lambda, capital_lambda_bound,
                           capital_lambda_log, eigenvalue,
                           eigenvalue_asymptote, mu_tilde_envelope,
                           table_from_csv, table_to_csv)
from .config import ConfigError, build_run, canonical_run, parse_config_file
from .diagnostics import (DecayFit, TheoremBoundTable, bobylev_agreement,
                          coercivity_constants, gevrey_fit, hypoelliptic_ratio,
                          least_squares_line, supnorm_probe,
                          theorem_bound_probe, trilinear_ratio)
from .hermite import (HermiteCoeffs, TruncationOverflowError, apply_ladder,
                      factorial_norm_bound, hermite_eval,
                      monomial_derivative_norm)
from .operators import (apply_gamma, apply_linearized, apply_transport,
                        gamma_bobylev_oracle, mu_hat_transform,
                        transport_block)
from .quadrature import QuadratureError, integrate, integrate_log
from .solver import (PicardDivergenceError, RunSummary, SolverConfig,
                     contraction_probe, run, step_imex)
from .state import (InitialData, NormKind, SpectralState, WeightOverflowError,
                    apply_weight, gaussian_bump, init_state, norm,
                    random_smooth, single_mode, state_from_csv, state_to_csv)

__all__ = [name for name in dir() if not name.startswith("_")]
