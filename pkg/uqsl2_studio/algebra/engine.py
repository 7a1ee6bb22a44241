# ============================================================
# uqsl2_studio engine
# Table audit orchestration over the algebra modules
# ============================================================

"""
Engine Orchestrator Module

Runs the desk-checkable rows of the two regime tables (U_q(sl2) and
Ũ(sl2)_ħ across |q| ≠ 1, |q| = 1 generic, and q a root of unity) and
collects the outcome in an AuditRecord.

Usage:
    >>> from uqsl2_studio.algebra.engine import create_engine
    >>> engine = create_engine()
    >>> audit = engine.run_table_audit()
    >>> print(engine.get_text_report(audit))
"""

from __future__ import annotations

import cmath
import logging
import random
from dataclasses import asdict, dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from uqsl2_studio.algebra import matrices as mx
from uqsl2_studio.algebra.audit import (
    AuditRecord,
    AuditRow,
    audit_to_json,
    audit_to_text,
    build_audit_record,
    record_row,
)
from uqsl2_studio.algebra.numerics import center_exponent, conjugation_growth, root_unity_center_check
from uqsl2_studio.algebra.pbw import SYMBOLIC, multiply, numeric_mode, random_element
from uqsl2_studio.algebra.reporting import audit_rows_to_df
from uqsl2_studio.algebra.repkit import (
    build_rep_hbar,
    build_rep_q,
    check_relations_hbar_numeric,
    commutant_dim,
    conjugate,
    decompose,
    direct_sum,
    evaluate,
    exp_h,
    random_invertible,
)
from uqsl2_studio.algebra.scalars import is_root_of_unity, root_of_unity
from uqsl2_studio.algebra.verma import entry_bounds, invariant_scan, norm_growth
from uqsl2_studio.config import STUDIO_DEFAULTS
from uqsl2_studio.core.types import (
    CheckResult,
    DomainError,
    RepLabelHbar,
    RepLabelQ,
    check,
)

logger = logging.getLogger("uqsl2_studio")


@dataclass
class EngineConfig:
    """Configuration for the engine"""
    log_level: str = "INFO"
    enable_audit: bool = True
    seed: int = STUDIO_DEFAULTS.random_seed


@dataclass
class TableAuditConfig:
    q_generic: complex = STUDIO_DEFAULTS.audit_q_generic
    q_unimodular: complex = STUDIO_DEFAULTS.audit_q_unimodular
    root_order: int = STUDIO_DEFAULTS.audit_root_order
    max_n: int = 4
    hbar_max_n: int = 2
    verma_lambda: complex = 1.0
    verma_Ns: Tuple[int, ...] = (25, 50, 100)
    scan_lambda: complex = 1.7
    scan_N: int = 40
    envelope_pairs: int = 4
    envelope_N: int = 2
    tol: float = STUDIO_DEFAULTS.tol

    def to_settings(self) -> Dict:
        out = asdict(self)
        for key in ("q_generic", "q_unimodular", "verma_lambda", "scan_lambda"):
            out[key] = str(complex(out[key]))
        out["verma_Ns"] = list(self.verma_Ns)
        return out


RowBuilder = Callable[[TableAuditConfig, AuditRow], List[CheckResult]]


class StudioEngine:
    """
    Orchestrator for the table audit.

    Manages:
    - Validation of the sample points for each regime
    - One audit row per table entry, each with its own sub-checks
    - Audit trail of every run
    - Text, JSON and DataFrame reports
    """

    def __init__(self, config: Optional[EngineConfig] = None):
        self.config = config or EngineConfig()
        self._setup_logging()
        self.audit_trail: List[AuditRecord] = []

    def _setup_logging(self):
        """Configure the package logger"""
        logger.setLevel(getattr(logging, self.config.log_level))
        if not logger.handlers:
            handler = logging.StreamHandler()
            formatter = logging.Formatter(
                '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
            )
            handler.setFormatter(formatter)
            logger.addHandler(handler)

    # ------------------------------------------------------------
    # Validation
    # ------------------------------------------------------------

    def validate_q(self, qval: complex, regime: str) -> bool:
        qval = complex(qval)
        if abs(qval * qval - 1) < 1e-12:
            logger.error("q^2 = 1 is excluded (q = %s, %s regime)", qval, regime)
            return False
        on_circle = abs(abs(qval) - 1.0) < 1e-9
        if regime == "generic" and on_circle:
            logger.error("generic regime needs |q| != 1, got |q| = %.6g", abs(qval))
            return False
        if regime == "unimodular":
            if not on_circle:
                logger.error("unimodular regime needs |q| = 1, got |q| = %.6g", abs(qval))
                return False
            if is_root_of_unity(qval) is not None:
                logger.error("unimodular sample %s is a root of unity", qval)
                return False
        return True

    def validate_audit_config(self, cfg: TableAuditConfig) -> List[str]:
        problems = []
        if not self.validate_q(cfg.q_generic, "generic"):
            problems.append(f"q_generic = {cfg.q_generic} is not a |q| != 1 sample")
        if not self.validate_q(cfg.q_unimodular, "unimodular"):
            problems.append(f"q_unimodular = {cfg.q_unimodular} is not a generic |q| = 1 sample")
        if cfg.root_order < 3:
            logger.error("root order must be at least 3, got %d", cfg.root_order)
            problems.append(f"root_order = {cfg.root_order} < 3")
        if cfg.max_n < 0 or cfg.hbar_max_n < 0:
            problems.append("module sizes must be non-negative")
        if min(cfg.verma_Ns, default=0) < 2:
            problems.append("Verma truncations need N >= 2")
        if problems:
            logger.error("table audit configuration rejected: %s", "; ".join(problems))
        else:
            logger.info("table audit configuration validated")
        return problems

    # ------------------------------------------------------------
    # Rows
    # ------------------------------------------------------------

    def _row_generic(self, cfg: TableAuditConfig, row: AuditRow) -> List[CheckResult]:
        mode = numeric_mode(cfg.q_generic)
        qv = mode.qval
        checks = []
        traces = {}
        for n in range(1, cfg.max_n + 1):
            for eps in (1, -1):
                rep = build_rep_q(RepLabelQ(n, eps), mode)
                K_inv = np.linalg.inv(rep.K)
                for name, a, c in (("E", rep.K, rep.E), ("F", K_inv, rep.F)):
                    trace = conjugation_growth(a, c, qv ** 2)
                    ok = trace.holds and trace.nilpotent_at == n + 1
                    checks.append(check(f"T({n},{eps}): {name} nilpotent via conjugation", ok, None,
                                        nilpotent_at=trace.nilpotent_at))
                    traces[f"T({n},{eps}) {name}"] = trace.nilpotent_at
                dim = commutant_dim(rep, cfg.tol)
                checks.append(check(f"T({n},{eps}) commutant_dim = 1", dim == 1, dim))
        row.artifacts["nilpotent_at"] = traces

        rng = random.Random(self.config.seed)
        for i in range(cfg.envelope_pairs):
            x = random_element(rng, mode=SYMBOLIC)
            y = random_element(rng, mode=SYMBOLIC)
            xy = multiply(x, y)
            ok = True
            for n in range(cfg.envelope_N + 1):
                for eps in (1, -1):
                    rep = build_rep_q(RepLabelQ(n, eps))
                    lhs = evaluate(rep, xy)
                    rhs = mx.matmul(evaluate(rep, x), evaluate(rep, y))
                    ok = ok and mx.equal(lhs, rhs)
            checks.append(check(f"envelope multiplicative (pair {i + 1})", ok, None))
        return checks

    def _row_unimodular(self, cfg: TableAuditConfig, row: AuditRow) -> List[CheckResult]:
        qv = complex(cfg.q_unimodular)
        mode = numeric_mode(qv)
        checks = []
        bounds = entry_bounds(cfg.verma_lambda, qv)
        rows = norm_growth(cfg.verma_lambda, qv, cfg.verma_Ns)
        for r in rows:
            for name, value in (("E", r.normE), ("F", r.normF), ("K", r.normK)):
                ok = value <= bounds[name] * (1 + 1e-9)
                checks.append(check(f"Verma N={r.N}: |{name}| <= entry bound", ok, value,
                                    bound=bounds[name]))
        row.artifacts["norms"] = [asdict(r) for r in rows]

        generic = invariant_scan(cfg.scan_lambda, cfg.scan_N, mode, cfg.tol)
        checks.append(check(f"invariant scan lambda={cfg.scan_lambda} is empty", generic == [], None,
                            found=generic))
        special = invariant_scan(qv ** 3, 10, mode, cfg.tol)
        checks.append(check("invariant scan lambda=q^3 finds [3]", special == [3], None, found=special))
        return checks

    def _row_root(self, cfg: TableAuditConfig, row: AuditRow) -> List[CheckResult]:
        report = root_unity_center_check(cfg.root_order)
        row.artifacts["subject"] = report.subject
        return list(report.checks)

    def _row_hbar_generic(self, cfg: TableAuditConfig, row: AuditRow) -> List[CheckResult]:
        checks = []
        labels = [RepLabelHbar(n, k, eps)
                  for n in range(cfg.hbar_max_n + 2)
                  for k in (-1, 0, 1)
                  for eps in (1, -1)]
        for lab in labels:
            rep = build_rep_hbar(lab)
            got = decompose(rep)
            checks.append(check(f"decompose T({lab.n},{lab.k},{lab.eps})", got == [lab], None,
                                found=[str(g) for g in got]))
            expected_K = build_rep_q(lab.as_q_label()).K
            checks.append(check(f"exp_h T({lab.n},{lab.k},{lab.eps}) = K of T({lab.n},{lab.eps})",
                                mx.equal(exp_h(rep), expected_K), None))

        rng = random.Random(self.config.seed)
        parts = [RepLabelHbar(1, 0, 1), RepLabelHbar(0, 1, -1), RepLabelHbar(2, -1, 1)]
        summed = direct_sum(*(build_rep_hbar(p) for p in parts))
        hidden = conjugate(summed, random_invertible(summed.dim, rng))
        got = decompose(hidden)
        checks.append(check("decompose conjugated direct sum", got == sorted(parts), None,
                            found=[str(g) for g in got]))
        return checks

    def _row_hbar_root(self, cfg: TableAuditConfig, row: AuditRow) -> List[CheckResult]:
        d = cfg.root_order
        hbar = 2j * cmath.pi / d
        qv = root_of_unity(d)
        s = center_exponent(d)
        checks = []
        for n in range(1, cfg.hbar_max_n + 1):
            for k in (0, 1):
                for eps in (1, -1):
                    lab = RepLabelHbar(n, k, eps)
                    rep = build_rep_hbar(lab)
                    report = check_relations_hbar_numeric(rep, hbar, cfg.tol)
                    checks.extend(
                        CheckResult(f"T({n},{k},{eps}) {c.name}", c.status, c.residual, c.detail)
                        for c in report.checks
                    )
                    E = mx.specialize_matrix(rep.E, qv)
                    F = mx.specialize_matrix(rep.F, qv)
                    K = mx.specialize_matrix(rep.K, qv)
                    Ks = np.linalg.matrix_power(K, s)
                    residual = max(mx.max_abs(Ks @ E - E @ Ks), mx.max_abs(Ks @ F - F @ Ks))
                    checks.append(check(f"T({n},{k},{eps}) K^{s} commutes with E, F",
                                        residual <= cfg.tol, residual))
                    moved = mx.max_abs(K @ E - E @ K)
                    checks.append(check(f"T({n},{k},{eps}) K does not commute with E",
                                        moved > cfg.tol, moved))
        row.artifacts["hbar"] = str(hbar)
        return checks

    def _rows(self) -> Sequence[Tuple[str, str, RowBuilder]]:
        return (
            ("table1", "|q| != 1", self._row_generic),
            ("table1", "|q| = 1, not a root of unity", self._row_unimodular),
            ("table1", "q root of unity", self._row_root),
            ("table2", "e^hbar not a root of unity", self._row_hbar_generic),
            ("table2", "e^hbar a root of unity", self._row_hbar_root),
        )

    # ------------------------------------------------------------
    # Audit
    # ------------------------------------------------------------

    def run_table_audit(self, audit_cfg: Optional[TableAuditConfig] = None) -> AuditRecord:
        """
        Run every table row.

        Returns:
            AuditRecord with one row per table entry

        Raises:
            DomainError if the sample points do not belong to their regimes
        """
        cfg = audit_cfg or TableAuditConfig()
        problems = self.validate_audit_config(cfg)
        if problems:
            raise DomainError("; ".join(problems))

        settings = cfg.to_settings()
        settings["seed"] = self.config.seed
        audit = build_audit_record("table audit", settings)
        for table, regime, builder in self._rows():
            logger.info("audit row: %s / %s", table, regime)
            row = AuditRow(table=table, regime=regime)
            checks: List[CheckResult] = []
            try:
                checks = builder(cfg, row)
            except Exception as e:
                logger.error("audit row %s / %s failed: %s", table, regime, e, exc_info=True)
                row.error = f"{type(e).__name__}: {e}"
            record_row(audit, row, checks)
            logger.info("audit row %s / %s: %s (%d checks)", table, regime, row.status, len(checks))

        if self.config.enable_audit:
            self.audit_trail.append(audit)
        return audit

    def get_text_report(self, audit: AuditRecord) -> str:
        return audit_to_text(audit)

    def get_json_report(self, audit: AuditRecord) -> str:
        return audit_to_json(audit)

    def get_dataframe_report(self, audit: AuditRecord) -> pd.DataFrame:
        return audit_rows_to_df(audit)

    def get_audit_trail(self) -> List[AuditRecord]:
        return self.audit_trail

    def clear_audit_trail(self):
        self.audit_trail = []
        logger.info("audit trail cleared")


def create_engine(config: Optional[EngineConfig] = None) -> StudioEngine:
    """Factory function to create an engine"""
    return StudioEngine(config=config)
