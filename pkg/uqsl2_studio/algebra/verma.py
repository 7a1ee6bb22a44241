# uqsl2_studio/algebra/verma.py

"""
Truncated Verma modules V(λ).

On the basis e_1, e_2, … (stored 0-based):
    K e_i = λ q^{−2(i−1)} e_i,   E e_{i+1} = −[i]_{q,λ} e_i,   F e_i = [i]_q e_{i+1}.
The truncation to e_1..e_N drops F e_N.

With these matrices [E, F] = (K̃ − K̃⁻¹)/(q − q⁻¹) holds for K̃ = q⁻¹K on
every basis vector except e_N, where the dropped F entry leaves a residual.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Union

import numpy as np
from sympy.polys.fields import FracElement

from uqsl2_studio.algebra import matrices as mx
from uqsl2_studio.algebra.numerics import operator_norm
from uqsl2_studio.algebra.pbw import SYMBOLIC, AlgebraMode, numeric_mode
from uqsl2_studio.algebra.scalars import (
    domain_of,
    from_rational,
    q_in,
    q_int,
    q_int_lambda,
    q_int_lambda_numeric,
    q_int_numeric,
)
from uqsl2_studio.config import STUDIO_DEFAULTS
from uqsl2_studio.core.types import DomainError

logger = logging.getLogger(__name__)

Lambda = Union[int, Fraction, FracElement, complex, float]


@dataclass
class VermaTruncation:
    lam: Lambda
    N: int
    E: mx.Matrix
    F: mx.Matrix
    K: mx.Matrix
    mode: AlgebraMode

    @property
    def domain(self):
        return None if not self.mode.is_symbolic else domain_of(self.lam)


@dataclass
class NormRow:
    N: int
    normE: float
    normF: float
    normK: float


def _symbolic_lambda(lam) -> FracElement:
    if isinstance(lam, (int, Fraction)):
        lam = from_rational(lam)
    if not isinstance(lam, FracElement):
        raise DomainError(f"symbolic Verma module needs an exact λ, got {type(lam).__name__}")
    if not lam:
        raise DomainError("λ must be non-zero")
    return lam


def build_verma(lam: Lambda, N: int, mode: AlgebraMode = SYMBOLIC) -> VermaTruncation:
    if N < 1:
        raise DomainError(f"truncation size must be at least 1, got {N}")
    if mode.is_symbolic:
        lam = _symbolic_lambda(lam)
        dom = domain_of(lam)
        qq = q_in(lam.field)
        E = [[dom.zero] * N for _ in range(N)]
        F = [[dom.zero] * N for _ in range(N)]
        for i in range(N - 1):
            E[i][i + 1] = -q_int_lambda(i + 1, lam)
            F[i + 1][i] = mx.to_domain(q_int(i + 1), dom)
        K = mx.diagonal([lam * qq ** (-2 * i) for i in range(N)], dom)
        return VermaTruncation(lam=lam, N=N, E=mx.from_rows(E, dom), F=mx.from_rows(F, dom), K=K, mode=mode)

    lam = complex(lam)
    if lam == 0:
        raise DomainError("λ must be non-zero")
    qv = mode.qval
    E = np.zeros((N, N), dtype=complex)
    F = np.zeros((N, N), dtype=complex)
    for i in range(N - 1):
        E[i, i + 1] = -q_int_lambda_numeric(i + 1, lam, qv)
        F[i + 1, i] = q_int_numeric(i + 1, qv)
    K = np.diag([lam * qv ** (-2 * i) for i in range(N)])
    return VermaTruncation(lam=lam, N=N, E=E, F=F, K=K, mode=mode)


def _tail_invariant(trunc: VermaTruncation, n0: int, tol: float) -> bool:
    """span{e_{n0+1}, …, e_N} is mapped into itself by E, F and K."""
    for A in (trunc.E, trunc.F, trunc.K):
        rows = mx.entries(A)
        for r in range(n0):
            for c in range(n0, trunc.N):
                x = rows[r][c]
                if (abs(x) > tol) if not trunc.mode.is_symbolic else x:
                    return False
    return True


def invariant_scan(lam: Lambda, N: int, mode: AlgebraMode = SYMBOLIC,
                   tol: Optional[float] = None) -> List[int]:
    """All n₀ < N with [n₀]_{q,λ} = 0, each certified by an invariant tail subspace."""
    tol = STUDIO_DEFAULTS.tol if tol is None else tol
    trunc = build_verma(lam, N, mode)
    found = []
    for n0 in range(1, N):
        if mode.is_symbolic:
            vanishes = not q_int_lambda(n0, trunc.lam)
        else:
            vanishes = abs(q_int_lambda_numeric(n0, trunc.lam, mode.qval)) < tol
        if not vanishes:
            continue
        if _tail_invariant(trunc, n0, tol):
            found.append(n0)
        else:
            logger.warning("verma scan: [%d]_(q,lam) vanishes but the tail is not invariant", n0)
    return found


def relation_residual(trunc: VermaTruncation) -> mx.Matrix:
    """[E,F] − (K̃ − K̃⁻¹)/(q − q⁻¹), K̃ = q⁻¹K; supported on the (N, N) entry."""
    return _residual_against(trunc, shift=-1)


def raw_relation_residual(trunc: VermaTruncation) -> mx.Matrix:
    """[E,F] − (K − K⁻¹)/(q − q⁻¹); diagonal, non-zero in general."""
    return _residual_against(trunc, shift=0)


def _residual_against(trunc: VermaTruncation, shift: int) -> mx.Matrix:
    if trunc.mode.is_symbolic:
        dom = domain_of(trunc.lam)
        qq = q_in(trunc.lam.field)
        Kt = mx.scale(trunc.K, qq ** shift)
        gap = dom.one / (qq - qq ** -1)
    else:
        qv = trunc.mode.qval
        Kt = trunc.K * qv ** shift
        gap = 1 / (qv - 1 / qv)
    rhs = mx.scale(Kt - mx.inverse(Kt), gap)
    return mx.commutator(trunc.E, trunc.F) - rhs


def top_left(trunc: VermaTruncation, M: int) -> VermaTruncation:
    """The leading M×M blocks of the truncation's matrices."""
    if not 1 <= M <= trunc.N:
        raise DomainError(f"block size {M} outside 1..{trunc.N}")

    def cut(A):
        if mx.is_numeric(A):
            return A[:M, :M].copy()
        return mx.from_rows([row[:M] for row in mx.entries(A)[:M]], A.domain)

    return VermaTruncation(lam=trunc.lam, N=M, E=cut(trunc.E), F=cut(trunc.F), K=cut(trunc.K), mode=trunc.mode)


# ============================================================
# Norms
# ============================================================

def norm_growth(lam: complex, qval: complex, Ns: Sequence[int],
                tol: Optional[float] = None) -> List[NormRow]:
    """Operator 2-norms of E, F and K for each truncation size."""
    mode = numeric_mode(qval)
    rows = []
    for N in Ns:
        if N < 2:
            raise DomainError(f"norm sweep needs N >= 2, got {N}")
        trunc = build_verma(lam, N, mode)
        rows.append(NormRow(
            N=N,
            normE=operator_norm(trunc.E, tol),
            normF=operator_norm(trunc.F, tol),
            normK=operator_norm(trunc.K, tol),
        ))
        logger.info("verma norms N=%d: E=%.6g F=%.6g K=%.6g", N, rows[-1].normE, rows[-1].normF, rows[-1].normK)
    return rows


def entry_bounds(lam: complex, qval: complex) -> Dict[str, float]:
    """Entrywise bounds on |q| = 1; single-band matrices have norm equal to their largest entry."""
    lam, qv = complex(lam), complex(qval)
    if abs(abs(qv) - 1.0) > 1e-9:
        raise DomainError("entry bounds hold only for |q| = 1")
    gap = abs(qv - 1 / qv)
    return {
        "E": (abs(lam) + 1 / abs(lam)) / gap,
        "F": 2 / gap,
        "K": abs(lam),
    }

