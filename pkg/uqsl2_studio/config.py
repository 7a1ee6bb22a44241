import cmath
import os
from dataclasses import dataclass, replace

TOL_ENV_VAR = "UQSL2_TOL"


@dataclass(frozen=True)
class StudioConfig:
    # Numeric tolerances
    tol: float = 1e-10
    drop_tol: float = 1e-14
    zero_matrix_tol: float = 1e-12
    pole_tol: float = 1e-12
    center_tol: float = 1e-9

    # Operator norm (power iteration on the Gram operator)
    power_iter_tol: float = 1e-10
    power_iter_max: int = 100_000

    # Size guards (desk scale)
    witness_max_m: int = 6
    separation_max_degree: int = 3
    separation_max_N: int = 8
    max_exponent: int = 10**6

    random_seed: int = 42

    # Table audit samples, one per regime
    audit_q_generic: complex = 1.1
    audit_q_unimodular: complex = cmath.exp(1j)
    audit_root_order: int = 5


STUDIO_DEFAULTS = StudioConfig()


def load_config(**overrides) -> StudioConfig:
    """Defaults, then the UQSL2_TOL environment override, then explicit overrides."""
    cfg = STUDIO_DEFAULTS
    env_tol = os.environ.get(TOL_ENV_VAR)
    if env_tol:
        cfg = replace(cfg, tol=float(env_tol))
    if overrides:
        cfg = replace(cfg, **overrides)
    return cfg
