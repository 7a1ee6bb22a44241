# ============================================================
# uqsl2_studio algebra
# Exact arithmetic and representations of U_q(sl2) and Ũ(sl2)_ħ
# ============================================================

"""
Algebra Module: PBW normal forms, ideal witnesses, finite-dimensional
modules, Verma truncations and norm experiments.

Key Classes:
    - PBWElement: element of U_q(sl2) in the basis FʳKʲEˢ
    - LaurentPoly: element of the Cartan part C[K, K⁻¹]
    - WitnessCertificate: Laurent polynomial in the ideal generated by Eᵐ, with its derivation
    - ModuleRep: matrices of E, F, K (and H) on a finite-dimensional module
    - VermaTruncation: leading block of a Verma module
    - GrowthTrace: operator norms of cⁿ under a conjugation scaling
    - StudioEngine: table audit orchestrator

Usage Example:
    >>> from uqsl2_studio.algebra import normalize, build_witness, verify_witness
    >>> x = normalize("E*F")
    >>> cert = build_witness(2)
    >>> bool(verify_witness(cert))
    True
"""

# ============================================================
# Scalars and PBW arithmetic
# ============================================================
from uqsl2_studio.algebra.scalars import (
    ExtendedWeight,
    format_scalar,
    parse_scalar,
    q_int,
    q_int_lambda,
    specialize,
)

from uqsl2_studio.algebra.pbw import (
    SYMBOLIC,
    AlgebraMode,
    LaurentPoly,
    PBWElement,
    casimir,
    commutator,
    em_f_coeffs,
    is_central,
    multiply,
    normalize,
    numeric_mode,
    sigma_pow,
)

# ============================================================
# Ideal witnesses
# ============================================================
from uqsl2_studio.algebra.witness import (
    WitnessCertificate,
    WitnessVerdict,
    build_witness,
    verify_witness,
)

# ============================================================
# Modules
# ============================================================
from uqsl2_studio.algebra.repkit import (
    ModuleRep,
    build_rep_hbar,
    build_rep_q,
    casimir_action,
    check_relations,
    commutant_dim,
    decompose,
    envelope_eval,
    exp_h,
    separation_rank,
)

from uqsl2_studio.algebra.verma import (
    VermaTruncation,
    build_verma,
    invariant_scan,
    norm_growth,
)

# ============================================================
# Norm experiments
# ============================================================
from uqsl2_studio.algebra.numerics import (
    GrowthTrace,
    conjugation_growth,
    nilpotency_index,
    root_unity_center_check,
)

# ============================================================
# Orchestration
# ============================================================
from uqsl2_studio.algebra.engine import (
    EngineConfig,
    StudioEngine,
    TableAuditConfig,
    create_engine,
)

__all__ = [
    "ExtendedWeight", "format_scalar", "parse_scalar", "q_int", "q_int_lambda", "specialize",
    "SYMBOLIC", "AlgebraMode", "LaurentPoly", "PBWElement", "casimir", "commutator",
    "em_f_coeffs", "is_central", "multiply", "normalize", "numeric_mode", "sigma_pow",
    "WitnessCertificate", "WitnessVerdict", "build_witness", "verify_witness",
    "ModuleRep", "build_rep_hbar", "build_rep_q", "casimir_action", "check_relations",
    "commutant_dim", "decompose", "envelope_eval", "exp_h", "separation_rank",
    "VermaTruncation", "build_verma", "invariant_scan", "norm_growth",
    "GrowthTrace", "conjugation_growth", "nilpotency_index", "root_unity_center_check",
    "EngineConfig", "StudioEngine", "TableAuditConfig", "create_engine",
]
