# uqsl2_studio/algebra/repkit.py

"""
Finite-dimensional modules of U_q(sl2) and Ũ(sl2)_ħ.

T_{n,ε} acts on basis v_0, …, v_n by
    K v_i = ε q^{n−2i} v_i,   E v_{i+1} = ε[n−i]_q v_i,   F v_i = [i+1]_q v_{i+1}.
T_{n,k,ε} shares E and F and adds H = diag(n−2i) + r_{k,ε}; K = e^{ħH}.

H is kept as two exact rational matrices, H = real + (πi/ħ)·pi_part, so that
conjugated and direct-sum modules stay exact.
"""

from __future__ import annotations

import cmath
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Poly, Rational, Symbol
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from uqsl2_studio.algebra import matrices as mx
from uqsl2_studio.algebra.pbw import SYMBOLIC, AlgebraMode, PBWElement, gap_inverse
from uqsl2_studio.algebra.scalars import (
    QFIELD,
    ExtendedWeight,
    format_scalar,
    q_factorial,
    q_int,
)
from uqsl2_studio.config import STUDIO_DEFAULTS
from uqsl2_studio.core.types import (
    CheckReport,
    DecompositionError,
    DomainError,
    ModeMismatchError,
    NotIrreducibleError,
    RepLabelHbar,
    RepLabelQ,
    SizeGuardError,
    check,
)

logger = logging.getLogger(__name__)

_CHAR_GEN = Symbol("x")


# ============================================================
# Types
# ============================================================

@dataclass
class HMatrix:
    """H = real + (πi/ħ)·pi_part with both parts over QQ."""
    real: DomainMatrix
    pi_part: DomainMatrix

    @property
    def dim(self) -> int:
        return self.real.shape[0]

    def is_diagonal(self) -> bool:
        return mx.is_diagonal(self.real) and mx.is_diagonal(self.pi_part)

    def weights(self) -> List[ExtendedWeight]:
        if not self.is_diagonal():
            raise DomainError("H is not diagonal")
        return [ExtendedWeight(_fraction(u), _fraction(v))
                for u, v in zip(mx.diagonal_entries(self.real), mx.diagonal_entries(self.pi_part))]

    def conjugate(self, P: DomainMatrix, P_inv: DomainMatrix) -> "HMatrix":
        return HMatrix(mx.conjugate_by(self.real, P, P_inv), mx.conjugate_by(self.pi_part, P, P_inv))

    def numeric(self, hbar: complex) -> np.ndarray:
        real = np.array([[float(_fraction(x)) for x in row] for row in mx.entries(self.real)], dtype=complex)
        pi = np.array([[float(_fraction(x)) for x in row] for row in mx.entries(self.pi_part)], dtype=complex)
        return real + (np.pi * 1j / complex(hbar)) * pi


@dataclass
class ModuleRep:
    E: mx.Matrix
    F: mx.Matrix
    K: mx.Matrix
    H: Optional[HMatrix] = None
    mode: AlgebraMode = SYMBOLIC
    label: str = ""
    labels: List = field(default_factory=list)

    @property
    def dim(self) -> int:
        return mx.size(self.E)

    @property
    def is_hbar(self) -> bool:
        return self.H is not None

    def weight_table(self) -> Optional[List[ExtendedWeight]]:
        if self.H is None or not self.H.is_diagonal():
            return None
        return self.H.weights()


def _fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def _qq_rows(rows: Sequence[Sequence]) -> DomainMatrix:
    return mx.from_rows(rows, QQ)


# ============================================================
# Builders
# ============================================================

def _e_f_rows(n: int, eps: int):
    d = n + 1
    E = [[QFIELD.zero] * d for _ in range(d)]
    F = [[QFIELD.zero] * d for _ in range(d)]
    for i in range(n):
        E[i][i + 1] = eps * q_int(n - i)
        F[i + 1][i] = q_int(i + 1)
    return E, F


def build_rep_q(label: RepLabelQ, mode: AlgebraMode = SYMBOLIC) -> ModuleRep:
    n, eps = label.n, label.eps
    E, F = _e_f_rows(n, eps)
    q = QFIELD.gens[0]
    K = mx.diagonal([eps * q ** (n - 2 * i) for i in range(n + 1)])
    rep = ModuleRep(E=mx.from_rows(E), F=mx.from_rows(F), K=K, label=f"T({n},{eps})", labels=[label])
    if not mode.is_symbolic:
        rep = specialize_rep(rep, mode)
    return rep


def build_rep_hbar(label: RepLabelHbar) -> ModuleRep:
    n, d = label.n, label.dim
    E, F = _e_f_rows(n, label.eps)
    H = HMatrix(
        real=mx.diagonal([n - 2 * i for i in range(d)], QQ),
        pi_part=mx.diagonal([label.pi_coefficient] * d, QQ),
    )
    rep = ModuleRep(E=mx.from_rows(E), F=mx.from_rows(F), K=mx.identity(d), H=H,
                    label=f"T({n},{label.k},{label.eps})", labels=[label])
    rep.K = exp_h(rep)
    return rep


def specialize_rep(rep: ModuleRep, mode: AlgebraMode) -> ModuleRep:
    if rep.mode != SYMBOLIC:
        raise ModeMismatchError("only symbolic modules can be specialized")
    qv = mode.qval
    return ModuleRep(E=mx.specialize_matrix(rep.E, qv), F=mx.specialize_matrix(rep.F, qv),
                     K=mx.specialize_matrix(rep.K, qv), H=rep.H, mode=mode,
                     label=rep.label, labels=list(rep.labels))


def direct_sum(*reps: ModuleRep) -> ModuleRep:
    if not reps:
        raise DomainError("direct_sum needs at least one module")
    mode = reps[0].mode
    if any(r.mode != mode for r in reps):
        raise ModeMismatchError("direct sum of modules in different modes")
    with_h = [r.H is not None for r in reps]
    if any(with_h) and not all(with_h):
        raise ModeMismatchError("cannot mix U_q and Ũ_ħ modules in a direct sum")
    H = None
    if all(with_h):
        H = HMatrix(mx.block_diag([r.H.real for r in reps]), mx.block_diag([r.H.pi_part for r in reps]))
    return ModuleRep(
        E=mx.block_diag([r.E for r in reps]),
        F=mx.block_diag([r.F for r in reps]),
        K=mx.block_diag([r.K for r in reps]),
        H=H,
        mode=mode,
        label=" + ".join(r.label for r in reps),
        labels=[lab for r in reps for lab in r.labels],
    )


def random_invertible(dim: int, rng: Optional[random.Random] = None, spread: int = 2) -> DomainMatrix:
    """Unit lower times unit upper triangular with small integer entries (det = 1)."""
    rng = rng or random.Random(STUDIO_DEFAULTS.random_seed)
    L = [[1 if i == j else (rng.randint(-spread, spread) if i > j else 0) for j in range(dim)] for i in range(dim)]
    U = [[1 if i == j else (rng.randint(-spread, spread) if i < j else 0) for j in range(dim)] for i in range(dim)]
    return mx.matmul(_qq_rows(L), _qq_rows(U))


def conjugate(rep: ModuleRep, P: DomainMatrix) -> ModuleRep:
    """The equivalent module v ↦ P⁻¹ρ(·)P."""
    P_inv = P.inv()
    if rep.mode.is_symbolic:
        Pq, Pq_inv = P.convert_to(QFIELD), P_inv.convert_to(QFIELD)
    else:
        Pq = np.array([[float(_fraction(x)) for x in row] for row in mx.entries(P)], dtype=complex)
        Pq_inv = np.linalg.inv(Pq)
    return ModuleRep(
        E=mx.conjugate_by(rep.E, Pq, Pq_inv),
        F=mx.conjugate_by(rep.F, Pq, Pq_inv),
        K=mx.conjugate_by(rep.K, Pq, Pq_inv),
        H=rep.H.conjugate(P, P_inv) if rep.H is not None else None,
        mode=rep.mode,
        label=f"conj({rep.label})",
        labels=list(rep.labels),
    )


# ============================================================
# ħ-side: exp(ħH)
# ============================================================

def exp_h(rep_or_h) -> DomainMatrix:
    """e^{ħH} for diagonal H: entry (u, v) ↦ (−1)ᵛqᵘ."""
    H = rep_or_h.H if isinstance(rep_or_h, ModuleRep) else rep_or_h
    if H is None:
        raise DomainError("module has no H")
    if not H.is_diagonal():
        raise DomainError("exp_h needs a diagonal H")
    return mx.diagonal([w.exp_scalar() for w in H.weights()])


# ============================================================
# Relation checks
# ============================================================

def _residual(M: mx.Matrix):
    if mx.is_numeric(M):
        return mx.max_abs(M)
    for row in mx.entries(M):
        for x in row:
            if x:
                return format_scalar(x)
    return "0"


def _relation(name: str, M: mx.Matrix, tol: float):
    if mx.is_numeric(M):
        return check(name, mx.is_zero(M, tol), _residual(M))
    ok = mx.is_zero(M)
    if ok:
        return check(name, ok, "0")
    return check(name, ok, _residual(M), residual_matrix=mx.to_text(M))


def check_relations(rep: ModuleRep, tol: Optional[float] = None) -> CheckReport:
    """Residual LHS − RHS of every defining relation on the module."""
    tol = rep.mode.tol if tol is None else tol
    report = CheckReport(subject=rep.label or f"module of dim {rep.dim}")
    E, F, K = rep.E, rep.F, rep.K
    mode = rep.mode
    q = mode.q
    if rep.H is None:
        K_inv = mx.inverse(K)
        report.checks.append(_relation("KEK^-1 = q^2 E",
                                       mx.matmul(mx.matmul(K, E), K_inv) - mx.scale(E, q ** 2), tol))
        report.checks.append(_relation("KFK^-1 = q^-2 F",
                                       mx.matmul(mx.matmul(K, F), K_inv) - mx.scale(F, q ** -2), tol))
    else:
        for part, target in (("real", 2), ("pi", 0)):
            Hp = getattr(rep.H, "real" if part == "real" else "pi_part").convert_to(QFIELD)
            report.checks.append(_relation(f"[H,E] = 2E ({part} part)",
                                           mx.commutator(Hp, E) - mx.scale(E, target), tol))
            report.checks.append(_relation(f"[H,F] = -2F ({part} part)",
                                           mx.commutator(Hp, F) + mx.scale(F, target), tol))
        if rep.H.is_diagonal():
            report.checks.append(_relation("K = exp(hbar H)", K - exp_h(rep), tol))
        K_inv = mx.inverse(K)
    rhs = mx.scale(K - K_inv, gap_inverse(mode))
    name = "[E,F] = (K-K^-1)/(q-q^-1)" if rep.H is None else "[E,F] = sinh(hbar H)/sinh(hbar)"
    report.checks.append(_relation(name, mx.commutator(E, F) - rhs, tol))
    return report


def check_relations_hbar_numeric(rep: ModuleRep, hbar: complex, tol: Optional[float] = None) -> CheckReport:
    """Ũ(sl2)_ħ relations with a complex ħ, sinh evaluated through the eigenbasis of H."""
    if rep.H is None:
        raise DomainError("module has no H")
    hbar = complex(hbar)
    if abs(cmath.sinh(hbar)) < 1e-12:
        raise DomainError(f"sinh(hbar) vanishes at hbar = {hbar}")
    tol = STUDIO_DEFAULTS.tol if tol is None else tol
    qv = cmath.exp(hbar)
    E = mx.specialize_matrix(rep.E, qv)
    F = mx.specialize_matrix(rep.F, qv)
    H = rep.H.numeric(hbar)
    w, V = np.linalg.eig(H)
    sinh_h = V @ np.diag(np.sinh(hbar * w)) @ np.linalg.inv(V) / cmath.sinh(hbar)
    scale = max(1.0, mx.max_abs(E), mx.max_abs(F))
    report = CheckReport(subject=f"{rep.label} at hbar={hbar}")
    for name, M in (
        ("[H,E] = 2E", H @ E - E @ H - 2 * E),
        ("[H,F] = -2F", H @ F - F @ H + 2 * F),
        ("[E,F] = sinh(hbar H)/sinh(hbar)", E @ F - F @ E - sinh_h),
    ):
        r = mx.max_abs(M) / scale
        report.checks.append(check(name, r <= tol, r))
    return report


# ============================================================
# Commutant, intertwiners, Casimir
# ============================================================

def _generator_matrices(rep: ModuleRep) -> List[mx.Matrix]:
    if rep.H is None:
        return [rep.E, rep.F, rep.K]
    if not rep.mode.is_symbolic:
        raise ModeMismatchError("Ũ_ħ modules are handled exactly")
    return [rep.E, rep.F, rep.H.real.convert_to(QFIELD), rep.H.pi_part.convert_to(QFIELD)]


def intertwiner_dim(rep_a: ModuleRep, rep_b: ModuleRep, tol: Optional[float] = None) -> int:
    """dim {X : X·ρ_a(g) = ρ_b(g)·X for every generator g}."""
    if rep_a.mode != rep_b.mode or (rep_a.H is None) != (rep_b.H is None):
        raise ModeMismatchError("intertwiners between modules of different kinds")
    gens_a, gens_b = _generator_matrices(rep_a), _generator_matrices(rep_b)
    da, db = rep_a.dim, rep_b.dim
    numeric = not rep_a.mode.is_symbolic
    zero = 0j if numeric else QFIELD.zero
    rows = []
    for A, B in zip(gens_a, gens_b):
        a, b = mx.entries(A), mx.entries(B)
        # X is db × da, unknown X[i][k] at index i*da + k
        for i in range(db):
            for j in range(da):
                row = [zero] * (db * da)
                for k in range(da):
                    row[i * da + k] = row[i * da + k] + a[k][j]
                for k in range(db):
                    row[k * da + j] = row[k * da + j] - b[i][k]
                if any((abs(x) > 0) if numeric else x for x in row):
                    rows.append(row)
    n_unknowns = db * da
    if not rows:
        return n_unknowns
    M = np.array(rows, dtype=complex) if numeric else mx.from_rows(rows)
    return n_unknowns - mx.rank(M, tol)


def commutant_dim(rep: ModuleRep, tol: Optional[float] = None) -> int:
    return intertwiner_dim(rep, rep, tol)


def casimir_matrix(rep: ModuleRep) -> mx.Matrix:
    """C_q = EF + (q⁻¹K + qK⁻¹)/(q − q⁻¹)²."""
    mode = rep.mode
    q = mode.q
    g = gap_inverse(mode)
    laurent = mx.scale(rep.K, q ** -1) + mx.scale(mx.inverse(rep.K), q)
    return mx.matmul(rep.E, rep.F) + mx.scale(laurent, g * g)


def casimir_action(rep: ModuleRep, tol: Optional[float] = None):
    c = mx.is_scalar_matrix(casimir_matrix(rep), tol)
    if c is None:
        raise NotIrreducibleError(f"Casimir does not act as a scalar on {rep.label}")
    return c


def casimir_value(label: RepLabelQ):
    """ε(q^{n+1} + q^{−n−1})/(q − q⁻¹)²."""
    q = QFIELD.gens[0]
    n = label.n
    return label.eps * (q ** (n + 1) + q ** (-n - 1)) / (q - q ** -1) ** 2


# ============================================================
# Decomposition of Ũ_ħ modules
# ============================================================

def _rational_eigenvalues(M: DomainMatrix) -> List:
    coeffs = M.charpoly()
    poly = Poly([Rational(int(c.numerator), int(c.denominator)) for c in coeffs], _CHAR_GEN, domain="QQ")
    roots = {Fraction(int(r.p), int(r.q)): mult for r, mult in poly.ground_roots().items()}
    if sum(roots.values()) != M.shape[0]:
        raise DecompositionError("H has eigenvalues outside the rationals")
    return sorted(roots)


def _joint_eigenspaces(H: HMatrix) -> List[Tuple[ExtendedWeight, List[list]]]:
    d = H.dim
    U, V = H.real, H.pi_part
    spaces = []
    total = 0
    for u in _rational_eigenvalues(U):
        for v in _rational_eigenvalues(V):
            stacked = mx.entries(U - mx.diagonal([u] * d, QQ)) + mx.entries(V - mx.diagonal([v] * d, QQ))
            basis = mx.nullspace(_qq_rows(stacked))
            if basis:
                spaces.append((ExtendedWeight(_fraction(u), _fraction(v)), basis))
                total += len(basis)
    if total != d:
        raise DecompositionError("H is not diagonalizable over the rationals")
    return spaces


def _apply(A: DomainMatrix, vec: list) -> list:
    return [row[0] for row in mx.entries(mx.matmul(A, mx.column_vector(vec)))]


def _label_from_weight(n: int, w: ExtendedWeight) -> RepLabelHbar:
    if w.u != n or w.v.denominator != 1:
        raise DecompositionError(
            f"highest weight {w} of a {n + 1}-dimensional orbit is not of the form n + r_(k,eps)"
        )
    v = int(w.v)
    if v % 2 == 0:
        return RepLabelHbar(n=n, k=v // 2, eps=1)
    return RepLabelHbar(n=n, k=(v - 1) // 2, eps=-1)


def decompose(rep: ModuleRep) -> List[RepLabelHbar]:
    """Labels of the irreducible summands, sorted; raises DecompositionError on any obstruction."""
    if rep.H is None:
        raise DomainError("decompose needs a module with H")
    if not rep.mode.is_symbolic:
        raise ModeMismatchError("decompose runs on exact modules")
    E, F = rep.E, rep.F
    labels: List[RepLabelHbar] = []
    orbit_vectors: List[list] = []
    for weight, basis in _joint_eigenspaces(rep.H):
        W = mx.columns_to_matrix([[mx.to_domain(x) for x in b] for b in basis])
        for coeffs in mx.nullspace(mx.matmul(E, W)):
            v = _apply(W, coeffs)
            orbit = []
            while any(v):
                orbit.append(v)
                if len(orbit) > rep.dim:
                    raise DecompositionError("F is not nilpotent on a highest-weight orbit")
                v = _apply(F, v)
            n = len(orbit) - 1
            labels.append(_label_from_weight(n, weight))
            orbit_vectors.extend(orbit)
            logger.debug("decompose: highest weight %s spans an orbit of length %d", weight, n + 1)
    if len(orbit_vectors) != rep.dim or mx.rank(mx.from_rows(orbit_vectors)) != rep.dim:
        raise DecompositionError(
            f"highest-weight orbits span {len(orbit_vectors)} vectors, module has dimension {rep.dim}"
        )
    return sorted(labels)


# ============================================================
# Envelope model and separation rank
# ============================================================

def evaluate(rep: ModuleRep, x: PBWElement) -> mx.Matrix:
    """ρ(x) = Σ c·ρ(F)ʳρ(K)ʲρ(E)ˢ."""
    if x.mode != rep.mode:
        raise ModeMismatchError("element and module are in different modes")
    d = rep.dim
    numeric = not rep.mode.is_symbolic
    out = mx.zeros(d, numeric=numeric)
    cache: Dict[Tuple[str, int], mx.Matrix] = {}

    def power(name: str, A, e: int):
        key = (name, e)
        if key not in cache:
            cache[key] = mx.mat_pow(A, e)
        return cache[key]

    for (r, j, s), c in x.terms.items():
        term = mx.matmul(mx.matmul(power("F", rep.F, r), power("K", rep.K, j)), power("E", rep.E, s))
        out = out + mx.scale(term, c)
    return out


def envelope_labels(N: int) -> List[RepLabelQ]:
    return [RepLabelQ(n, eps) for n in range(N + 1) for eps in (1, -1)]


def envelope_eval(x: PBWElement, N: int) -> List[Tuple[RepLabelQ, mx.Matrix]]:
    """Blocks T_{n,ε}(x) for n = 0..N and ε = ±1."""
    if N < 0:
        raise DomainError("N must be non-negative")
    return [(lab, evaluate(build_rep_q(lab, x.mode), x)) for lab in envelope_labels(N)]


def pbw_monomials(degree: int) -> List[Tuple[int, int, int]]:
    out = []
    for r in range(degree + 1):
        for s in range(degree + 1 - r):
            rest = degree - r - s
            for j in range(-rest, rest + 1):
                out.append((r, j, s))
    return out


def _check_separation_size(degree: int, N: int) -> None:
    if degree > STUDIO_DEFAULTS.separation_max_degree or N > STUDIO_DEFAULTS.separation_max_N:
        raise SizeGuardError(
            f"separation rank limited to degree <= {STUDIO_DEFAULTS.separation_max_degree}, "
            f"N <= {STUDIO_DEFAULTS.separation_max_N}"
        )


def _separation_rows(degree: int, N: int) -> List[list]:
    rows = []
    for r, j, s in pbw_monomials(degree):
        x = PBWElement.monomial(r, j, s)
        row = []
        for _, block in envelope_eval(x, N):
            for entries_row in mx.entries(block):
                row.extend(entries_row)
        rows.append(row)
    return rows


def separation_rank(degree: int, N: int) -> Tuple[int, int]:
    """(rank, monomial count) of the evaluation map on monomials of degree ≤ degree at stage N."""
    if degree < 0 or N < 0:
        raise DomainError("degree and N must be non-negative")
    _check_separation_size(degree, N)
    rows = _separation_rows(degree, N)
    return mx.rank(mx.from_rows(rows)), len(rows)


@dataclass
class SeparationProfile:
    degree: int
    monomial_count: int
    ranks: List[Tuple[int, int]]
    stabilized_at: Optional[int]

    @property
    def monotone(self) -> bool:
        values = [r for _, r in self.ranks]
        return all(a <= b for a, b in zip(values, values[1:]))

    @property
    def full_rank(self) -> bool:
        return bool(self.ranks) and self.ranks[-1][1] == self.monomial_count


def separation_rank_profile(degree: int, N_max: int) -> SeparationProfile:
    ranks = []
    count = 0
    for N in range(N_max + 1):
        r, count = separation_rank(degree, N)
        ranks.append((N, r))
        logger.info("separation rank: degree=%d N=%d rank=%d/%d", degree, N, r, count)
    final = ranks[-1][1]
    stabilized = None
    for N, r in ranks:
        if r == final:
            stabilized = N
            break
    return SeparationProfile(degree=degree, monomial_count=count, ranks=ranks, stabilized_at=stabilized)


# ============================================================
# Highest-weight vector normalization
# ============================================================

@dataclass
class NormalizationRow:
    p: int
    factorial_holds: bool
    single_holds: bool


def highest_weight_normalization_diagnostic(n: int = 4) -> List[NormalizationRow]:
    """
    Compare v_p = Fᵖv/[p]_q! and v_p = Fᵖv/[p]_q against F·v_{p−1} = [p]_q v_p
    in T_{n,1}, v the highest-weight vector (v_0 = v in both).
    """
    rep = build_rep_q(RepLabelQ(n, 1))
    v = [QFIELD.one] + [QFIELD.zero] * n
    powers = [v]
    for _ in range(n):
        powers.append(_apply(rep.F, powers[-1]))

    def scaled(vec, c):
        return [x / c for x in vec]

    fact = [powers[0]] + [scaled(powers[p], q_factorial(p)) for p in range(1, n + 1)]
    single = [powers[0]] + [scaled(powers[p], q_int(p)) for p in range(1, n + 1)]
    rows = []
    for p in range(1, n + 1):
        rows.append(NormalizationRow(
            p=p,
            factorial_holds=_apply(rep.F, fact[p - 1]) == [q_int(p) * x for x in fact[p]],
            single_holds=_apply(rep.F, single[p - 1]) == [q_int(p) * x for x in single[p]],
        ))
    return rows


# ============================================================
# Text form
# ============================================================

def rep_to_dict(rep: ModuleRep) -> Dict:
    out = {
        "label": rep.label,
        "dim": rep.dim,
        "E": mx.to_text(rep.E),
        "F": mx.to_text(rep.F),
        "K": mx.to_text(rep.K),
    }
    if rep.H is not None:
        out["H"] = {"real": mx.to_text(rep.H.real.convert_to(QFIELD)),
                    "pi": mx.to_text(rep.H.pi_part.convert_to(QFIELD))}
        weights = rep.weight_table()
        if weights is not None:
            out["weights"] = [str(w) for w in weights]
    return out
