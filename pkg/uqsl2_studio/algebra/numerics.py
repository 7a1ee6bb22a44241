# uqsl2_studio/algebra/numerics.py

"""
Norm experiments: operator norms, conjugation scaling and nilpotency, and the
centrality of Eˢ, Fˢ, Kˢ when q is a root of unity.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from uqsl2_studio.algebra import matrices as mx
from uqsl2_studio.algebra.pbw import generators, is_central, numeric_mode
from uqsl2_studio.algebra.scalars import root_of_unity
from uqsl2_studio.config import STUDIO_DEFAULTS
from uqsl2_studio.core.types import (
    CheckReport,
    ConvergenceError,
    DomainError,
    PreconditionError,
    check,
)

logger = logging.getLogger(__name__)


# ============================================================
# Operator norm
# ============================================================

def operator_norm(A, tol: Optional[float] = None, max_iter: Optional[int] = None, seed: int = 0) -> float:
    """Largest singular value, by power iteration on AᴴA."""
    if not mx.is_numeric(A):
        raise DomainError("operator_norm needs a numeric matrix")
    tol = STUDIO_DEFAULTS.power_iter_tol if tol is None else tol
    max_iter = STUDIO_DEFAULTS.power_iter_max if max_iter is None else max_iter
    if A.size == 0 or mx.max_abs(A) == 0.0:
        return 0.0
    gram = A.conj().T @ A
    if mx.is_diagonal(gram):
        # single-band matrices: the norm is the largest column norm
        return float(np.sqrt(np.max(np.abs(np.diag(gram)))))

    rng = np.random.default_rng(seed)
    x = rng.standard_normal(A.shape[1]) + 1j * rng.standard_normal(A.shape[1])
    x = x / np.linalg.norm(x)
    ratio_old = float("inf")
    for it in range(max_iter):
        Ax = A @ x
        ratio = np.linalg.norm(Ax) / np.linalg.norm(x)
        if ratio == 0.0:
            # started in the kernel; restart off it
            x = rng.standard_normal(A.shape[1]) + 0j
            continue
        if abs(ratio - ratio_old) / ratio < tol:
            logger.debug("operator norm converged after %d iterations", it + 1)
            return float(ratio)
        ratio_old = ratio
        x = A.conj().T @ Ax
        x = x / np.linalg.norm(x)
    raise ConvergenceError(f"power iteration did not settle within {max_iter} steps")


def condition_number(a) -> float:
    return operator_norm(a) * operator_norm(np.linalg.inv(a))


def nilpotency_index(c, tol: Optional[float] = None) -> Optional[int]:
    """Least n with cⁿ = 0, or None when no such n ≤ dim exists."""
    dim = mx.size(c)
    power = c
    for n in range(1, dim + 1):
        if mx.is_zero(power, tol):
            return n
        power = mx.matmul(power, c)
    return None


# ============================================================
# Conjugation scaling
# ============================================================

@dataclass
class GrowthStep:
    n: int
    norm_cn: float
    gamma_n: float
    bound: float

    @property
    def inequality_holds(self) -> bool:
        # |γ|ⁿ‖cⁿ‖ = ‖a cⁿ a⁻¹‖ ≤ ‖a‖‖cⁿ‖‖a⁻¹‖
        return self.gamma_n * self.norm_cn <= self.bound * (1 + 1e-6)


@dataclass
class GrowthTrace:
    gamma: complex
    norm_a: float
    norm_a_inv: float
    steps: List[GrowthStep] = field(default_factory=list)
    nilpotent_at: Optional[int] = None

    @property
    def condition(self) -> float:
        return self.norm_a * self.norm_a_inv

    @property
    def holds(self) -> bool:
        return all(s.inequality_holds for s in self.steps)

    @property
    def max_gamma_power(self) -> float:
        return max((s.gamma_n for s in self.steps), default=0.0)


def conjugation_growth(a, c, gamma: complex, nmax: Optional[int] = None,
                       tol: Optional[float] = None) -> GrowthTrace:
    a = np.asarray(a, dtype=complex)
    c = np.asarray(c, dtype=complex)
    gamma = complex(gamma)
    zero_tol = STUDIO_DEFAULTS.zero_matrix_tol if tol is None else tol
    a_inv = np.linalg.inv(a)
    mismatch = mx.max_abs(a @ c @ a_inv - gamma * c)
    scale = max(1.0, mx.max_abs(c) * abs(gamma))
    if mismatch > 1e-9 * scale:
        raise PreconditionError(f"a c a^-1 differs from gamma c by {mismatch:.3g}")

    trace = GrowthTrace(gamma=gamma, norm_a=operator_norm(a), norm_a_inv=operator_norm(a_inv))
    nmax = c.shape[0] + 1 if nmax is None else nmax
    power = c
    for n in range(1, nmax + 1):
        if mx.max_abs(power) <= zero_tol:
            trace.nilpotent_at = n
            break
        norm_cn = operator_norm(power)
        trace.steps.append(GrowthStep(n=n, norm_cn=norm_cn, gamma_n=abs(gamma) ** n,
                                      bound=trace.norm_a * norm_cn * trace.norm_a_inv))
        power = power @ c
    logger.info("conjugation growth: |gamma|=%.6g cond=%.6g nilpotent_at=%s",
                abs(gamma), trace.condition, trace.nilpotent_at)
    return trace


# ============================================================
# Roots of unity
# ============================================================

def center_exponent(d: int) -> int:
    return d if d % 2 else d // 2


def root_unity_center_check(d: int, degree_bound: Optional[int] = None,
                            tol: Optional[float] = None) -> CheckReport:
    """At q = e^{2πi/d}: Eˢ, Fˢ, Kˢ central, lower powers (up to degree_bound) not."""
    if d < 3:
        raise DomainError(f"root order must be at least 3, got {d}")
    tol = STUDIO_DEFAULTS.center_tol if tol is None else tol
    s = center_exponent(d)
    mode = numeric_mode(root_of_unity(d))
    E, F, K, _ = generators(mode)
    report = CheckReport(subject=f"center at q = exp(2 pi i/{d}), s = {s}")
    for name, g in (("E", E), ("F", F), ("K", K)):
        report.checks.append(check(f"{name}^{s} central", is_central(g ** s, tol), None, s=s))
    top = s - 1 if degree_bound is None else min(degree_bound, s - 1)
    for name, g in (("E", E), ("F", F), ("K", K)):
        for j in range(1, top + 1):
            label = name if j == 1 else f"{name}^{j}"
            report.checks.append(check(f"{label} not central", not is_central(g ** j, tol), None))
    logger.info("root-of-unity center check d=%d: %s", d, "pass" if report.passed else "fail")
    return report
