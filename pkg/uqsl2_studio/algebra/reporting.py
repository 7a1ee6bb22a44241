from typing import Dict, List, Sequence

import pandas as pd

from uqsl2_studio.algebra.audit import AuditRecord
from uqsl2_studio.algebra.numerics import GrowthTrace
from uqsl2_studio.algebra.repkit import SeparationProfile
from uqsl2_studio.algebra.verma import NormRow
from uqsl2_studio.core.types import CheckReport

CSV_FLOAT_FORMAT = "%.12g"


def growth_to_df(trace: GrowthTrace) -> pd.DataFrame:
    rows = []
    for s in trace.steps:
        rows.append({
            "n": s.n,
            "norm_c_n": s.norm_cn,
            "gamma_n": s.gamma_n,
            "bound": s.bound,
            "holds": s.inequality_holds,
        })
    return pd.DataFrame(rows, columns=["n", "norm_c_n", "gamma_n", "bound", "holds"])


def checks_to_df(report: CheckReport) -> pd.DataFrame:
    rows = [{"name": c.name, "status": c.status, "residual": c.residual} for c in report.checks]
    return pd.DataFrame(rows, columns=["name", "status", "residual"])


def separation_to_df(profile: SeparationProfile) -> pd.DataFrame:
    rows = [{"N": N, "rank": r, "monomials": profile.monomial_count} for N, r in profile.ranks]
    return pd.DataFrame(rows, columns=["N", "rank", "monomials"])


def audit_rows_to_df(audit: AuditRecord) -> pd.DataFrame:
    rows = []
    for row in audit.rows:
        rows.append({
            "Table": row.table,
            "Regime": row.regime,
            "Status": row.status,
            "Checks": len(row.checks),
            "Failed": sum(1 for c in row.checks if c["status"] != "pass"),
            "Error": row.error or "",
        })
    return pd.DataFrame(rows, columns=["Table", "Regime", "Status", "Checks", "Failed", "Error"])


def records_to_df(records: Sequence[Dict], columns: List[str]) -> pd.DataFrame:
    return pd.DataFrame(list(records), columns=columns)


def df_to_csv(df: pd.DataFrame) -> str:
    return df.to_csv(index=False, float_format=CSV_FLOAT_FORMAT)


def norms_to_df(rows: Sequence[NormRow]) -> pd.DataFrame:
    records = [{"N": r.N, "normE": r.normE, "normF": r.normF, "normK": r.normK} for r in rows]
    return pd.DataFrame(records, columns=["N", "normE", "normF", "normK"])
