# uqsl2_studio/algebra/witness.py

"""
Laurent-polynomial witnesses in the two-sided ideal generated by Eᵐ.

The construction runs over levels n = m, m−1, …, 1 starting from R_m = 1:

    P_n       = t_nK − s_nK⁻¹                 ([Eⁿ, F] = E^{n−1}P_n)
    R_{n−1}   = P_n · R_n · σ⁻¹(R_n)
    E^{n−1}R_{n−1} = (EⁿR_n)·(F·R_n) − F·(EⁿR_n)·σ⁻¹(R_n)

The last line writes E^{n−1}R_{n−1} as a combination of the previous level's
generator EⁿR_n with explicit left/right cofactors, so by induction every
E^{n−1}R_{n−1} lies in the ideal generated by Eᵐ and R₀ is a non-zero
Laurent polynomial in that ideal. Each level keeps its cofactors, which is
what lets verify_witness re-derive the chain without trusting the builder.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from uqsl2_studio.algebra.pbw import (
    SYMBOLIC,
    AlgebraMode,
    LaurentPoly,
    PBWElement,
    em_f_coeffs,
    generators,
    multiply,
    numeric_mode,
    p_poly,
    sigma_pow,
)
from uqsl2_studio.algebra.scalars import format_scalar, is_root_of_unity, parse_scalar
from uqsl2_studio.config import STUDIO_DEFAULTS
from uqsl2_studio.core.types import (
    CheckReport,
    DomainError,
    ModeMismatchError,
    SizeGuardError,
    check,
)

logger = logging.getLogger(__name__)


@dataclass
class Cofactor:
    """One summand sign · left · generator · right."""
    left: PBWElement
    right: PBWElement
    sign: int = 1


@dataclass
class WitnessLevel:
    n: int
    R: LaurentPoly
    P: LaurentPoly
    sigma_inv_R: LaurentPoly
    R_next: LaurentPoly
    generator: PBWElement
    cofactors: List[Cofactor] = field(default_factory=list)


@dataclass
class WitnessCertificate:
    m: int
    mode: AlgebraMode
    levels: List[WitnessLevel]
    R0: LaurentPoly


@dataclass
class WitnessVerdict:
    ok: bool
    level: Optional[int] = None
    clause: Optional[str] = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


CLAUSE_P = "(i) P_n matches [E^n,F]"
CLAUSE_SIGMA = "(ii) sigma^-1(R_n)"
CLAUSE_PRODUCT = "(iii) R_{n-1} = P_n R_n sigma^-1(R_n)"
CLAUSE_NONZERO = "(iv) R_0 nonzero"
CLAUSE_CHAIN = "(v) chain identity"
CLAUSE_LINK = "(vi) level links"


# ============================================================
# Construction
# ============================================================

def _refuse_roots_of_unity(mode: AlgebraMode) -> None:
    if mode.is_symbolic:
        return
    d = is_root_of_unity(mode.qval)
    if d is not None:
        raise DomainError(f"q = {mode.qval} is a root of unity of order {d}; no witness is constructed")


def build_witness(m: int, mode: AlgebraMode = SYMBOLIC, max_m: Optional[int] = None) -> WitnessCertificate:
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    max_m = STUDIO_DEFAULTS.witness_max_m if max_m is None else max_m
    if m > max_m:
        raise SizeGuardError(f"witness for m = {m} exceeds the configured cap m <= {max_m}")
    _refuse_roots_of_unity(mode)

    E, F, _, _ = generators(mode)
    one = PBWElement.one(mode)
    R = LaurentPoly.one(mode)
    levels: List[WitnessLevel] = []
    for n in range(m, 0, -1):
        P = p_poly(n, mode)
        sig = sigma_pow(R, -1)
        R_next = P * R * sig
        gen = multiply(E ** n, R.to_element())
        levels.append(WitnessLevel(
            n=n,
            R=R,
            P=P,
            sigma_inv_R=sig,
            R_next=R_next,
            generator=gen,
            cofactors=[
                Cofactor(left=one, right=multiply(F, R.to_element()), sign=1),
                Cofactor(left=F, right=sig.to_element(), sign=-1),
            ],
        ))
        lo, hi = R_next.span()
        logger.info("witness m=%d: level %d done, R_%d spans K^%d..K^%d (%d terms)",
                    m, n, n - 1, lo, hi, len(R_next.coeffs))
        R = R_next
    return WitnessCertificate(m=m, mode=mode, levels=levels, R0=R)


# ============================================================
# Verification
# ============================================================

def _close(a, b, mode: AlgebraMode) -> bool:
    if mode.is_symbolic:
        return a == b
    a = a.to_element() if isinstance(a, LaurentPoly) else a
    b = b.to_element() if isinstance(b, LaurentPoly) else b
    diff = a - b
    if diff.is_zero():
        return True
    scale = max(1.0, a.max_abs_coeff() if a.terms else 0.0, b.max_abs_coeff() if b.terms else 0.0)
    return diff.max_abs_coeff() <= mode.tol * scale


def chain_sides(level: WitnessLevel, mode: AlgebraMode):
    """(E^{n−1}R_{n−1}, Σ sign·left·generator·right)."""
    E, _, _, _ = generators(mode)
    lhs = multiply(E ** (level.n - 1), level.R_next.to_element())
    rhs = PBWElement.zero(mode)
    for c in level.cofactors:
        term = multiply(multiply(c.left, level.generator), c.right)
        rhs = rhs + term if c.sign > 0 else rhs - term
    return lhs, rhs


def verify_witness(cert: WitnessCertificate) -> WitnessVerdict:
    mode = cert.mode
    if cert.R0.is_zero():
        return WitnessVerdict(False, 0, CLAUSE_NONZERO, "R_0 is the zero polynomial")
    if not cert.levels or len(cert.levels) != cert.m:
        return WitnessVerdict(False, None, CLAUSE_LINK, f"expected {cert.m} levels, found {len(cert.levels)}")

    E, _, _, _ = generators(mode)
    expected_R = LaurentPoly.one(mode)
    for level, n in zip(cert.levels, range(cert.m, 0, -1)):
        if level.n != n or not _close(level.R, expected_R, mode):
            return WitnessVerdict(False, n, CLAUSE_LINK, "R_n does not continue the previous level")
        if not _close(level.generator, multiply(E ** n, level.R.to_element()), mode):
            return WitnessVerdict(False, n, CLAUSE_LINK, "generator is not E^n R_n")
        if not _close(level.P, p_poly(n, mode), mode):
            return WitnessVerdict(False, n, CLAUSE_P, "P_n differs from the normal form of [E^n,F]")
        if not _close(level.sigma_inv_R, sigma_pow(level.R, -1), mode):
            return WitnessVerdict(False, n, CLAUSE_SIGMA, "twisted R_n differs from sigma^-1(R_n)")
        if not _close(level.R_next, level.P * level.R * level.sigma_inv_R, mode):
            return WitnessVerdict(False, n, CLAUSE_PRODUCT, "R_{n-1} is not the recorded product")
        lhs, rhs = chain_sides(level, mode)
        if not _close(lhs, rhs, mode):
            return WitnessVerdict(False, n, CLAUSE_CHAIN, "E^{n-1}R_{n-1} differs from the cofactor sum")
        expected_R = level.R_next
        logger.debug("witness m=%d: level %d verified", cert.m, n)

    if not _close(cert.R0, expected_R, mode):
        return WitnessVerdict(False, 0, CLAUSE_LINK, "R_0 is not the last level's product")
    return WitnessVerdict(True, message=f"ideal membership certified for m = {cert.m}")


def annihilation_check(cert: WitnessCertificate) -> CheckReport:
    """R₀(K) must vanish on every T_{n,ε} with n < m, where Eᵐ acts as zero."""
    if not cert.mode.is_symbolic:
        raise ModeMismatchError("annihilation_check runs on symbolic certificates")
    report = CheckReport(subject=f"R_0 annihilates T_(n,eps), n < {cert.m}")
    q = cert.mode.q
    for n in range(cert.m):
        for eps in (1, -1):
            values = [cert.R0.evaluate(eps * q ** (n - 2 * i)) for i in range(n + 1)]
            bad = [format_scalar(v) for v in values if v]
            report.checks.append(check(f"T_({n},{eps})", not bad, bad[0] if bad else "0"))
    return report


def specialize_certificate(cert: WitnessCertificate, qval: complex, tol: float = 1e-9) -> CheckReport:
    """Re-check every chain identity after substituting q = qval."""
    if not cert.mode.is_symbolic:
        raise ModeMismatchError("only symbolic certificates can be specialized")
    mode = numeric_mode(qval, tol=tol)
    _refuse_roots_of_unity(mode)
    report = CheckReport(subject=f"witness m={cert.m} at q={mode.qval}")
    for level in cert.levels:
        num = WitnessLevel(
            n=level.n,
            R=level.R.specialize(mode),
            P=level.P.specialize(mode),
            sigma_inv_R=level.sigma_inv_R.specialize(mode),
            R_next=level.R_next.specialize(mode),
            generator=level.generator.specialize(mode),
            cofactors=[Cofactor(c.left.specialize(mode), c.right.specialize(mode), c.sign)
                       for c in level.cofactors],
        )
        lhs, rhs = chain_sides(num, mode)
        diff = lhs - rhs
        scale = max(1.0, lhs.max_abs_coeff() if lhs.terms else 0.0)
        rel = (diff.max_abs_coeff() / scale) if diff.terms else 0.0
        report.checks.append(check(f"level {level.n}", rel <= tol, float(rel)))
    return report


# ============================================================
# The recursion with α_nK^{2k} − β_nK^{−2k} factors
# ============================================================

@dataclass
class PrintedLevel:
    n: int
    k: int
    alpha: str
    beta: str
    factorization_holds: bool
    R_next_terms: int


@dataclass
class PrintedRecursionDiagnostic:
    m: int
    levels: List[PrintedLevel]
    R0_nonzero: bool
    annihilates: Dict[str, bool]

    @property
    def usable_as_witness(self) -> bool:
        return self.R0_nonzero and all(self.annihilates.values())


def geometric_cofactor(n: int, k: int, mode: AlgebraMode = SYMBOLIC) -> LaurentPoly:
    """Q with (t_nK)^{2k} − (s_nK⁻¹)^{2k} = P_n·Q."""
    t, s = em_f_coeffs(n, mode)
    coeffs = {2 * k - 1 - 2 * i: t ** (2 * k - 1 - i) * s ** i for i in range(2 * k)}
    return LaurentPoly(coeffs, mode)


def printed_recursion_diagnostic(m: int) -> PrintedRecursionDiagnostic:
    """
    Run R_{m−1} = P_m, R_{n−1} = (α_nK^{2k} − β_nK^{−2k})(σ⁻¹(R_n) − R_n) with
    k = 2^{m−n}, α_n = t_n^{2k}, β_n = s_n^{2k}, and test whether the resulting
    R₀ vanishes on T_{m−1,±1} (it must, if it were in the ideal of Eᵐ).
    """
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    if m > STUDIO_DEFAULTS.witness_max_m:
        raise SizeGuardError(f"m = {m} exceeds the witness cap")
    R = p_poly(m)
    levels: List[PrintedLevel] = []
    for n in range(m - 1, 0, -1):
        k = 2 ** (m - n)
        t, s = em_f_coeffs(n)
        alpha, beta = t ** (2 * k), s ** (2 * k)
        outer = LaurentPoly({2 * k: alpha, -2 * k: -beta})
        holds = outer == p_poly(n) * geometric_cofactor(n, k)
        R = outer * (sigma_pow(R, -1) - R)
        levels.append(PrintedLevel(n=n, k=k, alpha=format_scalar(alpha), beta=format_scalar(beta),
                                   factorization_holds=holds, R_next_terms=len(R.coeffs)))
    q = SYMBOLIC.q
    top = m - 1
    annihilates = {}
    for eps in (1, -1):
        values = [R.evaluate(eps * q ** (top - 2 * i)) for i in range(top + 1)]
        annihilates[f"T_({top},{eps})"] = not any(values)
    return PrintedRecursionDiagnostic(m=m, levels=levels, R0_nonzero=not R.is_zero(), annihilates=annihilates)


# ============================================================
# Serialization
# ============================================================

def _laurent_to_dict(R: LaurentPoly) -> Dict[str, str]:
    return {str(j): format_scalar(c) for j, c in sorted(R.coeffs.items())}


def _laurent_from_dict(d: Dict[str, str]) -> LaurentPoly:
    return LaurentPoly({int(j): parse_scalar(c) for j, c in d.items()})


def _element_to_list(x: PBWElement) -> List[List[Any]]:
    return [[r, j, s, format_scalar(c)] for (r, j, s), c in sorted(x.terms.items())]


def _element_from_list(rows: List[List[Any]]) -> PBWElement:
    return PBWElement({(int(r), int(j), int(s)): parse_scalar(c) for r, j, s, c in rows})


def certificate_to_dict(cert: WitnessCertificate) -> Dict[str, Any]:
    if not cert.mode.is_symbolic:
        raise ModeMismatchError("only symbolic certificates serialize")
    return {
        "m": cert.m,
        "R0": _laurent_to_dict(cert.R0),
        "levels": [
            {
                "n": lv.n,
                "R": _laurent_to_dict(lv.R),
                "P": _laurent_to_dict(lv.P),
                "sigma_inv_R": _laurent_to_dict(lv.sigma_inv_R),
                "R_next": _laurent_to_dict(lv.R_next),
                "generator": _element_to_list(lv.generator),
                "cofactors": [
                    {"left": _element_to_list(c.left), "right": _element_to_list(c.right), "sign": c.sign}
                    for c in lv.cofactors
                ],
            }
            for lv in cert.levels
        ],
    }


def certificate_from_dict(d: Dict[str, Any]) -> WitnessCertificate:
    levels = [
        WitnessLevel(
            n=int(lv["n"]),
            R=_laurent_from_dict(lv["R"]),
            P=_laurent_from_dict(lv["P"]),
            sigma_inv_R=_laurent_from_dict(lv["sigma_inv_R"]),
            R_next=_laurent_from_dict(lv["R_next"]),
            generator=_element_from_list(lv["generator"]),
            cofactors=[Cofactor(_element_from_list(c["left"]), _element_from_list(c["right"]), int(c["sign"]))
                       for c in lv["cofactors"]],
        )
        for lv in d["levels"]
    ]
    return WitnessCertificate(m=int(d["m"]), mode=SYMBOLIC, levels=levels, R0=_laurent_from_dict(d["R0"]))
