# uqsl2_studio/algebra/audit.py

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional

from uqsl2_studio.core.types import CheckReport, CheckResult


@dataclass
class AuditRow:
    table: str
    regime: str
    status: str = "pending"  # "pass" | "fail"
    checks: List[Dict[str, Any]] = field(default_factory=list)
    artifacts: Dict[str, Any] = field(default_factory=dict)
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class AuditRecord:
    timestamp_utc: str
    audit_name: str

    # configuration
    run_settings: Dict[str, Any] = None

    # outcome
    rows: List[AuditRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.rows) and all(r.passed for r in self.rows)


def utc_now_iso() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def check_to_dict(c: CheckResult) -> Dict[str, Any]:
    out = {"name": c.name, "status": c.status, "residual": c.residual}
    if c.detail:
        out["detail"] = c.detail
    return out


def report_to_dicts(report: CheckReport) -> List[Dict[str, Any]]:
    return [check_to_dict(c) for c in report.checks]


def build_audit_record(audit_name: str, run_settings: Dict[str, Any]) -> AuditRecord:
    return AuditRecord(timestamp_utc=utc_now_iso(), audit_name=audit_name, run_settings=run_settings)


def record_row(audit: AuditRecord, row: AuditRow, checks: List[CheckResult]) -> AuditRow:
    """Attach sub-checks to a row, settle its status, and append it."""
    row.checks.extend(check_to_dict(c) for c in checks)
    if row.error is None:
        row.status = "pass" if checks and all(c.passed for c in checks) else "fail"
    else:
        row.status = "fail"
    audit.rows.append(row)
    return row


def audit_to_dict(audit: AuditRecord) -> Dict[str, Any]:
    out = asdict(audit)
    out["passed"] = audit.passed
    return out


def audit_to_json(audit: AuditRecord) -> str:
    return json.dumps(audit_to_dict(audit), indent=2, default=str)


def audit_to_text(audit: AuditRecord) -> str:
    """Plain-text summary, one block per table row."""
    lines = [
        f"{audit.audit_name}",
        f"Timestamp (UTC): {audit.timestamp_utc}",
        f"Run settings: {audit.run_settings}",
        "",
    ]
    for row in audit.rows:
        lines.append(f"[{row.status.upper():4}] {row.table} / {row.regime}")
        for c in row.checks:
            res = "" if c["residual"] is None else f"  (residual {c['residual']})"
            lines.append(f"    {c['status']:4}  {c['name']}{res}")
        if row.error:
            lines.append(f"    error: {row.error}")
    lines.append("")
    lines.append("ALL ROWS PASS" if audit.passed else "SOME ROWS FAILED")
    return "\n".join(lines)
