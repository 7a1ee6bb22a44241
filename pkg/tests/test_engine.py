"""Tests for the table audit engine and its reports."""

import cmath
import json

import numpy as np
import pytest

from uqsl2_studio.algebra.engine import EngineConfig, TableAuditConfig, create_engine
from uqsl2_studio.algebra.reporting import df_to_csv
from uqsl2_studio.algebra.scalars import root_of_unity
from uqsl2_studio.core.types import DomainError


def _small_config(**overrides):
    cfg = TableAuditConfig(max_n=2, hbar_max_n=1, verma_Ns=(10, 20), scan_N=15,
                           envelope_pairs=1, envelope_N=1)
    for key, value in overrides.items():
        setattr(cfg, key, value)
    return cfg


@pytest.fixture
def engine():
    return create_engine(EngineConfig(log_level="WARNING"))


def test_validate_q(engine):
    assert engine.validate_q(1.1, "generic")
    assert not engine.validate_q(cmath.exp(1j), "generic")
    assert engine.validate_q(cmath.exp(1j), "unimodular")
    assert not engine.validate_q(1.1, "unimodular")
    assert not engine.validate_q(root_of_unity(7), "unimodular")
    assert not engine.validate_q(-1.0, "generic")


def test_validate_audit_config(engine):
    assert engine.validate_audit_config(TableAuditConfig()) == []
    problems = engine.validate_audit_config(_small_config(root_order=2, verma_Ns=(1,)))
    assert len(problems) == 2


def test_invalid_config_is_rejected(engine):
    with pytest.raises(DomainError):
        engine.run_table_audit(_small_config(q_generic=cmath.exp(0.5j)))
    assert engine.get_audit_trail() == []


def test_small_audit_passes(engine):
    audit = engine.run_table_audit(_small_config())
    assert [r.table for r in audit.rows] == ["table1"] * 3 + ["table2"] * 2
    failed = [(r.regime, r.error, [c["name"] for c in r.checks if c["status"] != "pass"])
              for r in audit.rows if not r.passed]
    assert audit.passed, failed
    assert audit.run_settings["seed"] == EngineConfig().seed
    assert len(engine.get_audit_trail()) == 1


def test_reports(engine):
    audit = engine.run_table_audit(_small_config())
    text = engine.get_text_report(audit)
    assert "ALL ROWS PASS" in text
    doc = json.loads(engine.get_json_report(audit))
    assert doc["passed"] is True
    assert len(doc["rows"]) == 5
    df = engine.get_dataframe_report(audit)
    assert list(df.columns) == ["Table", "Regime", "Status", "Checks", "Failed", "Error"]
    assert (df["Failed"] == 0).all()
    assert df_to_csv(df).splitlines()[0] == "Table,Regime,Status,Checks,Failed,Error"
    engine.clear_audit_trail()
    assert engine.get_audit_trail() == []


def test_audit_trail_disabled():
    engine = create_engine(EngineConfig(log_level="WARNING", enable_audit=False))
    engine.run_table_audit(_small_config())
    assert engine.get_audit_trail() == []


@pytest.mark.slow
def test_default_audit_passes(engine):
    audit = engine.run_table_audit()
    assert audit.passed


def test_row_crash_marks_row_failed(engine, monkeypatch):
    def broken(cfg, row):
        raise np.linalg.LinAlgError("Singular matrix")

    monkeypatch.setattr(engine, "_rows", lambda: (("table1", "broken", broken),))
    audit = engine.run_table_audit(_small_config())
    assert not audit.passed
    (row,) = audit.rows
    assert row.status == "fail"
    assert row.error.startswith("LinAlgError")
