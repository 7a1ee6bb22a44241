# uqsl2_studio/cli/main.py

"""
Command-line front-end.

Every command prints one JSON document

    {"command", "mode", "inputs", "result", "checks": [{"name", "status", "residual"}]}

or, with --out csv, the command's table. Exit status: 0 on success, 1 when a
check fails or an internal invariant breaks, 2 on usage, parse and domain errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

import pandas as pd

from uqsl2_studio.algebra import matrices as mx
from uqsl2_studio.algebra.audit import audit_to_dict
from uqsl2_studio.algebra.engine import EngineConfig, TableAuditConfig, create_engine
from uqsl2_studio.algebra.numerics import conjugation_growth, root_unity_center_check
from uqsl2_studio.algebra.pbw import (
    SYMBOLIC,
    AlgebraMode,
    PBWElement,
    casimir,
    commutator,
    element_to_text,
    is_central,
    normalize,
    numeric_mode,
)
from uqsl2_studio.algebra.reporting import (
    audit_rows_to_df,
    checks_to_df,
    df_to_csv,
    growth_to_df,
    norms_to_df,
    records_to_df,
    separation_to_df,
)
from uqsl2_studio.algebra.repkit import (
    ModuleRep,
    build_rep_hbar,
    build_rep_q,
    casimir_action,
    casimir_value,
    check_relations,
    check_relations_hbar_numeric,
    commutant_dim,
    conjugate,
    decompose,
    direct_sum,
    envelope_eval,
    evaluate,
    random_invertible,
    rep_to_dict,
    separation_rank,
    separation_rank_profile,
)
from uqsl2_studio.algebra.scalars import (
    format_scalar,
    generic_lambda_field,
    parse_numeric,
    parse_scalar,
)
from uqsl2_studio.algebra.verma import (
    build_verma,
    entry_bounds,
    invariant_scan,
    norm_growth,
    relation_residual,
)
from uqsl2_studio.algebra.witness import (
    annihilation_check,
    build_witness,
    certificate_from_dict,
    certificate_to_dict,
    verify_witness,
)
from uqsl2_studio.cli.expr import evaluate_on_matrices, parse_expr
from uqsl2_studio.config import load_config
from uqsl2_studio.core.types import (
    CheckReport,
    CheckResult,
    ConvergenceError,
    DecompositionError,
    DomainError,
    ExprSyntaxError,
    InternalConsistencyError,
    ModeMismatchError,
    NotIrreducibleError,
    RepLabelHbar,
    RepLabelQ,
    SizeGuardError,
    UsageError,
    check,
)

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2

# errors that mean "the request was bad" rather than "the computation went wrong"
_USAGE_ERRORS = (UsageError, ExprSyntaxError, DomainError, SizeGuardError, ModeMismatchError)
_FAILURE_ERRORS = (InternalConsistencyError, ConvergenceError, DecompositionError, NotIrreducibleError)


@dataclass
class CommandOutput:
    result: Dict[str, Any]
    checks: List[CheckResult] = field(default_factory=list)
    table: Optional[pd.DataFrame] = None


@dataclass
class Context:
    args: argparse.Namespace
    mode: AlgebraMode
    tol: float
    rng: random.Random


# ============================================================
# Argument helpers
# ============================================================

def _mode_from_args(args: argparse.Namespace, tol: float) -> AlgebraMode:
    if args.mode == "numeric":
        if args.q is None:
            raise UsageError("--mode numeric needs --q")
        return numeric_mode(parse_numeric(args.q), tol=tol)
    if args.q is not None and args.mode == "symbolic":
        logger.warning("--q ignored in symbolic mode")
    return SYMBOLIC


def _require_q(ctx: Context) -> complex:
    if ctx.args.q is None:
        raise UsageError(f"{ctx.args.command} needs --q")
    return parse_numeric(ctx.args.q)


def _parse_hbar_labels(text: str) -> List[RepLabelHbar]:
    """'1,0,1; 2,-1,-1' → labels."""
    labels = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = [p.strip() for p in chunk.split(",")]
        try:
            nums = [int(p) for p in parts]
        except ValueError as e:
            raise UsageError(f"cannot read label {chunk!r}: expected integers n,k,eps") from e
        if len(nums) == 2:
            nums = [nums[0], 0, nums[1]]
        if len(nums) != 3:
            raise UsageError(f"label {chunk!r} needs n,k,eps")
        labels.append(RepLabelHbar(*nums))
    if not labels:
        raise UsageError("no labels given")
    return labels


def _parse_int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(";", ",").split(",") if x.strip()]
    except ValueError as e:
        raise UsageError(f"cannot read integer list {text!r}") from e


def _parse_lambda(text: str, mode: AlgebraMode):
    if mode.is_symbolic:
        if text.strip() in ("lam", "lambda", "λ"):
            return generic_lambda_field()[1]
        return parse_scalar(text)
    try:
        return parse_numeric(text)
    except DomainError:
        return mode.coerce(parse_scalar(text))


def _module_from_args(ctx: Context) -> ModuleRep:
    a = ctx.args
    if a.sum:
        labels = _parse_hbar_labels(a.sum)
        rep = direct_sum(*(build_rep_hbar(lab) for lab in labels))
    elif a.n is None:
        raise UsageError(f"{a.command} needs --n or --sum")
    elif a.k is not None:
        rep = build_rep_hbar(RepLabelHbar(a.n, a.k, a.eps))
    else:
        return build_rep_q(RepLabelQ(a.n, a.eps), ctx.mode)
    if getattr(a, "conjugate", False):
        rep = conjugate(rep, random_invertible(rep.dim, ctx.rng))
    return rep


def _element(ctx: Context, text: str, allow_h: bool = False) -> PBWElement:
    return normalize(parse_expr(text, allow_h=allow_h), ctx.mode)


def _laurent_text(R) -> str:
    return element_to_text(R.to_element())


# ============================================================
# Commands
# ============================================================

def cmd_normalize(ctx: Context) -> CommandOutput:
    x = _element(ctx, ctx.args.expr)
    return CommandOutput({"normal_form": element_to_text(x), "terms": len(x.terms)})


def cmd_commutator(ctx: Context) -> CommandOutput:
    x = _element(ctx, ctx.args.x)
    y = _element(ctx, ctx.args.y)
    c = commutator(x, y)
    return CommandOutput({"commutator": element_to_text(c), "is_zero": c.is_zero()})


def cmd_witness_build(ctx: Context) -> CommandOutput:
    cert = build_witness(ctx.args.m, ctx.mode)
    verdict = verify_witness(cert)
    checks = [check(verdict.clause or "certificate", verdict.ok, None, message=verdict.message)]
    result: Dict[str, Any] = {"m": cert.m, "R0": _laurent_text(cert.R0), "levels": len(cert.levels)}
    if ctx.mode.is_symbolic:
        checks.extend(annihilation_check(cert).checks)
        result["certificate"] = certificate_to_dict(cert)
        if ctx.args.save:
            with open(ctx.args.save, "w", encoding="utf-8") as fh:
                json.dump(result["certificate"], fh, indent=2)
            logger.info("certificate written to %s", ctx.args.save)
    return CommandOutput(result, checks)


def cmd_witness_verify(ctx: Context) -> CommandOutput:
    try:
        with open(ctx.args.file, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read certificate {ctx.args.file}: {e}") from e
    if "result" in doc:
        doc = doc["result"].get("certificate", doc["result"])
    try:
        cert = certificate_from_dict(doc)
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"malformed certificate: {e}") from e
    verdict = verify_witness(cert)
    name = verdict.clause or "certificate"
    return CommandOutput(
        {"m": cert.m, "ok": verdict.ok, "level": verdict.level, "clause": verdict.clause,
         "message": verdict.message},
        [check(name, verdict.ok, None)],
    )


def cmd_rep_build(ctx: Context) -> CommandOutput:
    rep = _module_from_args(ctx)
    result = rep_to_dict(rep)
    if ctx.args.eval and not rep.is_hbar:
        result["value"] = mx.to_text(evaluate(rep, _element(ctx, ctx.args.eval)))
    elif ctx.args.eval:
        node = parse_expr(ctx.args.eval, allow_h=True)
        if node.uses_h() and not mx.is_zero(rep.H.pi_part):
            raise DomainError("H has a pi i/hbar part on this module; only E, F, K can be evaluated exactly")
        gens = {"E": rep.E, "F": rep.F, "K": rep.K, "Kinv": mx.inverse(rep.K),
                "H": rep.H.real.convert_to(rep.E.domain)}
        result["value"] = mx.to_text(evaluate_on_matrices(node, gens))
    return CommandOutput(result)


def cmd_rep_check(ctx: Context) -> CommandOutput:
    rep = _module_from_args(ctx)
    if rep.is_hbar and ctx.args.hbar is not None:
        report = check_relations_hbar_numeric(rep, parse_numeric(ctx.args.hbar), ctx.tol)
    else:
        report = check_relations(rep, ctx.tol)
    return CommandOutput({"module": rep.label, "dim": rep.dim, "passed": report.passed},
                         report.checks, checks_to_df(report))


def cmd_commutant(ctx: Context) -> CommandOutput:
    rep = _module_from_args(ctx)
    dim = commutant_dim(rep, ctx.tol)
    checks = []
    if not ctx.args.sum:
        checks.append(check("commutant_dim = 1", dim == 1, dim))
    return CommandOutput({"module": rep.label, "commutant_dim": dim}, checks)


def cmd_casimir(ctx: Context) -> CommandOutput:
    a = ctx.args
    if a.n is None:
        C = casimir(ctx.mode)
        central = is_central(C, ctx.tol)
        return CommandOutput({"casimir": element_to_text(C)}, [check("C_q central", central, None)])
    label = RepLabelQ(a.n, a.eps)
    rep = build_rep_q(label, ctx.mode)
    value = casimir_action(rep, ctx.tol)
    expected = casimir_value(label)
    if ctx.mode.is_symbolic:
        ok = value == expected
        text = format_scalar(value)
    else:
        expected = ctx.mode.coerce(expected)
        ok = abs(value - expected) <= ctx.tol * max(1.0, abs(expected))
        text = mx.format_entry(value)
    return CommandOutput({"module": rep.label, "value": text},
                         [check("Casimir acts by eps(q^(n+1)+q^-(n+1))/(q-q^-1)^2", ok, None)])


def cmd_decompose(ctx: Context) -> CommandOutput:
    if not ctx.args.sum:
        raise UsageError("decompose needs --sum")
    requested = sorted(_parse_hbar_labels(ctx.args.sum))
    rep = _module_from_args(ctx)
    labels = decompose(rep)
    result = {"dim": rep.dim, "labels": [asdict(lab) for lab in labels]}
    return CommandOutput(result, [check("recovered labels", labels == requested, None)])


def cmd_envelope(ctx: Context) -> CommandOutput:
    x = _element(ctx, ctx.args.expr)
    blocks = envelope_eval(x, ctx.args.N)
    result = {
        "element": element_to_text(x),
        "blocks": [{"n": lab.n, "eps": lab.eps, "matrix": mx.to_text(M)} for lab, M in blocks],
    }
    return CommandOutput(result)


def cmd_separation_rank(ctx: Context) -> CommandOutput:
    a = ctx.args
    if a.profile:
        profile = separation_rank_profile(a.degree, a.N)
        result = {"degree": a.degree, "monomials": profile.monomial_count,
                  "ranks": [{"N": N, "rank": r} for N, r in profile.ranks],
                  "stabilized_at": profile.stabilized_at}
        return CommandOutput(result, [check("rank monotone in N", profile.monotone, None)],
                             separation_to_df(profile))
    rank, count = separation_rank(a.degree, a.N)
    return CommandOutput({"degree": a.degree, "N": a.N, "rank": rank, "monomials": count})


def cmd_verma_build(ctx: Context) -> CommandOutput:
    lam = _parse_lambda(ctx.args.lam, ctx.mode)
    trunc = build_verma(lam, ctx.args.N, ctx.mode)
    residual = relation_residual(trunc)
    rows = mx.entries(residual)
    N = trunc.N
    off_corner = [rows[i][j] for i in range(N) for j in range(N) if (i, j) != (N - 1, N - 1)]
    if ctx.mode.is_symbolic:
        confined = not any(off_corner)
    else:
        confined = max((abs(x) for x in off_corner), default=0.0) <= ctx.tol
    result = {"N": N, "E": mx.to_text(trunc.E), "F": mx.to_text(trunc.F), "K": mx.to_text(trunc.K),
              "relation_residual_corner": mx.format_entry(rows[N - 1][N - 1])}
    return CommandOutput(result, [check("[E,F] residual confined to (N,N)", confined, None)])


def cmd_verma_scan(ctx: Context) -> CommandOutput:
    lam = _parse_lambda(ctx.args.lam, ctx.mode)
    found = invariant_scan(lam, ctx.args.N, ctx.mode, ctx.tol)
    return CommandOutput({"N": ctx.args.N, "invariant_at": found})


def cmd_verma_norms(ctx: Context) -> CommandOutput:
    qv = _require_q(ctx)
    lam = parse_numeric(ctx.args.lam)
    rows = norm_growth(lam, qv, _parse_int_list(ctx.args.Ns))
    checks = []
    if abs(abs(qv) - 1.0) <= 1e-9:
        bounds = entry_bounds(lam, qv)
        for r in rows:
            for name, value in (("E", r.normE), ("F", r.normF), ("K", r.normK)):
                checks.append(check(f"N={r.N}: |{name}| <= entry bound", value <= bounds[name] * (1 + 1e-9),
                                    value))
    result = {"lam": str(lam), "q": str(qv), "norms": [asdict(r) for r in rows]}
    return CommandOutput(result, checks, norms_to_df(rows))


def cmd_growth(ctx: Context) -> CommandOutput:
    a = ctx.args
    qv = _require_q(ctx)
    mode = numeric_mode(qv, tol=ctx.tol)
    rep = build_rep_q(RepLabelQ(a.n, a.eps), mode)
    K_inv = mx.inverse(rep.K)
    a_mat, c_mat = (rep.K, rep.E) if a.gen == "E" else (K_inv, rep.F)
    trace = conjugation_growth(a_mat, c_mat, qv ** 2, a.nmax)
    result = {
        "module": rep.label,
        "gen": a.gen,
        "gamma": str(trace.gamma),
        "condition": trace.condition,
        "nilpotent_at": trace.nilpotent_at,
        "steps": [asdict(s) for s in trace.steps],
    }
    checks = [check("|gamma|^n <= ||a|| ||a^-1||", trace.holds, trace.max_gamma_power)]
    if abs(abs(qv) - 1.0) > 1e-9:
        checks.append(check(f"nilpotent at n = {a.n + 1}", trace.nilpotent_at == a.n + 1, None))
    return CommandOutput(result, checks, growth_to_df(trace))


def cmd_center_check(ctx: Context) -> CommandOutput:
    report = root_unity_center_check(ctx.args.d, ctx.args.degree_bound, ctx.tol)
    return CommandOutput({"subject": report.subject, "passed": report.passed},
                         report.checks, checks_to_df(report))


def cmd_table_audit(ctx: Context) -> CommandOutput:
    a = ctx.args
    cfg = TableAuditConfig(tol=ctx.tol)
    if a.q_generic is not None:
        cfg.q_generic = parse_numeric(a.q_generic)
    if a.q_unimodular is not None:
        cfg.q_unimodular = parse_numeric(a.q_unimodular)
    if a.d is not None:
        cfg.root_order = a.d
    engine = create_engine(EngineConfig(log_level=_log_level(a), seed=a.seed))
    audit = engine.run_table_audit(cfg)
    checks = [check(f"{row.table} / {row.regime}", row.passed, None) for row in audit.rows]
    return CommandOutput(audit_to_dict(audit), checks, audit_rows_to_df(audit))


COMMANDS: Dict[str, Callable[[Context], CommandOutput]] = {
    "normalize": cmd_normalize,
    "commutator": cmd_commutator,
    "witness-build": cmd_witness_build,
    "witness-verify": cmd_witness_verify,
    "rep-build": cmd_rep_build,
    "rep-check": cmd_rep_check,
    "commutant": cmd_commutant,
    "casimir": cmd_casimir,
    "decompose": cmd_decompose,
    "envelope": cmd_envelope,
    "separation-rank": cmd_separation_rank,
    "verma-build": cmd_verma_build,
    "verma-scan": cmd_verma_scan,
    "verma-norms": cmd_verma_norms,
    "growth": cmd_growth,
    "center-check": cmd_center_check,
    "table-audit": cmd_table_audit,
}


# ============================================================
# Parser and dispatch
# ============================================================

def _add_module_args(p: argparse.ArgumentParser):
    p.add_argument("--n", type=int, default=None, help="Highest weight n.")
    p.add_argument("--eps", type=int, default=1, choices=[1, -1], help="Sign eps (default: 1).")
    p.add_argument("--k", type=int, default=None, help="hbar-module index k (omit for U_q modules).")
    p.add_argument("--sum", type=str, default=None, help="Direct sum of hbar labels, e.g. '1,0,1; 2,-1,-1'.")
    p.add_argument("--conjugate", action="store_true", help="Hide the sum behind a random change of basis.")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=["symbolic", "numeric"], default="symbolic",
                        help="Coefficient mode (default: symbolic).")
    common.add_argument("--q", type=str, default=None, help="Numeric value of q, e.g. 1.1 or 'exp(I)'.")
    common.add_argument("--hbar", type=str, default=None, help="Complex hbar for numeric hbar checks.")
    common.add_argument("--tol", type=float, default=None, help="Numeric tolerance (default: $UQSL2_TOL or 1e-10).")
    common.add_argument("--out", choices=["json", "csv"], default="json", help="Output format (default: json).")
    common.add_argument("--seed", type=int, default=None, help="Seed for randomized steps.")
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr.")

    p = argparse.ArgumentParser(prog="uqsl2", description="Exact computations in U_q(sl2) and its hbar form.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("normalize", parents=[common], help="PBW normal form of an expression.")
    s.add_argument("expr")

    s = sub.add_parser("commutator", parents=[common], help="Normal form of [x, y].")
    s.add_argument("x")
    s.add_argument("y")

    s = sub.add_parser("witness-build", parents=[common], help="Laurent witness in the ideal of E^m.")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--save", type=str, default=None, help="Write the certificate JSON here.")

    s = sub.add_parser("witness-verify", parents=[common], help="Re-derive a saved certificate.")
    s.add_argument("file")

    s = sub.add_parser("rep-build", parents=[common], help="Matrices of a module.")
    _add_module_args(s)
    s.add_argument("--eval", type=str, default=None, help="Also evaluate this expression on the module.")

    s = sub.add_parser("rep-check", parents=[common], help="Defining relations on a module.")
    _add_module_args(s)

    s = sub.add_parser("commutant", parents=[common], help="Dimension of the commutant.")
    _add_module_args(s)

    s = sub.add_parser("casimir", parents=[common], help="Casimir element, or its value on T(n,eps).")
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--eps", type=int, default=1, choices=[1, -1])

    s = sub.add_parser("decompose", parents=[common], help="Irreducible summands of an hbar module.")
    _add_module_args(s)

    s = sub.add_parser("envelope", parents=[common], help="Blocks T(n,eps)(x) for n <= N.")
    s.add_argument("expr")
    s.add_argument("--N", type=int, required=True)

    s = sub.add_parser("separation-rank", parents=[common], help="Rank of monomials evaluated up to stage N.")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--profile", action="store_true", help="Report ranks for every stage 0..N.")

    for name, help_text in (("verma-build", "Truncated Verma module matrices."),
                            ("verma-scan", "Invariant tail subspaces of a Verma truncation.")):
        s = sub.add_parser(name, parents=[common], help=help_text)
        s.add_argument("--lam", type=str, required=True, help="lambda: 'lam' (generic), 'q^3', '1.7', ...")
        s.add_argument("--N", type=int, required=True)

    s = sub.add_parser("verma-norms", parents=[common], help="Operator norms of Verma truncations.")
    s.add_argument("--lam", type=str, default="1")
    s.add_argument("--Ns", type=str, default="25,50,100,200")

    s = sub.add_parser("growth", parents=[common], help="Conjugation scaling of E or F on T(n,eps).")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--eps", type=int, default=1, choices=[1, -1])
    s.add_argument("--gen", choices=["E", "F"], default="E")
    s.add_argument("--nmax", type=int, default=None)

    s = sub.add_parser("center-check", parents=[common], help="Centrality of E^s, F^s, K^s at a root of unity.")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--degree-bound", type=int, default=None, dest="degree_bound")

    s = sub.add_parser("table-audit", parents=[common], help="Run every table row.")
    s.add_argument("--q-generic", type=str, default=None, dest="q_generic")
    s.add_argument("--q-unimodular", type=str, default=None, dest="q_unimodular")
    s.add_argument("--d", type=int, default=None)
    return p


def _log_level(args: argparse.Namespace) -> str:
    return "DEBUG" if getattr(args, "verbose", False) else "WARNING"


def _check_to_json(c: CheckResult) -> Dict[str, Any]:
    return {"name": c.name, "status": c.status, "residual": c.residual}


def _emit(doc: Dict[str, Any], out: CommandOutput, fmt: str, stream) -> None:
    if fmt == "csv":
        table = out.table
        if table is None:
            table = checks_to_df(CheckReport(subject=doc["command"], checks=out.checks)) if out.checks \
                else records_to_df([doc["result"]], list(doc["result"]))
        stream.write(df_to_csv(table))
    else:
        stream.write(json.dumps(doc, indent=2, default=str))
        stream.write("\n")


def _error_doc(command: str, err: Exception) -> Dict[str, Any]:
    info: Dict[str, Any] = {"type": type(err).__name__, "message": str(err)}
    if isinstance(err, ExprSyntaxError):
        info.update(line=err.line, column=err.column, expected=err.expected, kind=err.kind)
    return {"command": command, "error": info}


def run(args: argparse.Namespace, stream=None) -> int:
    stream = stream or sys.stdout
    cfg = load_config()
    tol = cfg.tol if args.tol is None else args.tol
    seed = cfg.random_seed if args.seed is None else args.seed
    args.seed = seed
    create_engine(EngineConfig(log_level=_log_level(args), enable_audit=False, seed=seed))
    try:
        mode = _mode_from_args(args, tol)
        ctx = Context(args=args, mode=mode, tol=tol, rng=random.Random(seed))
        out = COMMANDS[args.command](ctx)
    except _USAGE_ERRORS as e:
        logger.error("%s: %s", args.command, e)
        stream.write(json.dumps(_error_doc(args.command, e), indent=2) + "\n")
        return EXIT_USAGE
    except _FAILURE_ERRORS as e:
        logger.error("%s failed: %s", args.command, e, exc_info=True)
        stream.write(json.dumps(_error_doc(args.command, e), indent=2) + "\n")
        return EXIT_CHECK_FAILED
    except Exception as e:
        logger.error("%s: internal error: %s", args.command, e, exc_info=True)
        stream.write(json.dumps(_error_doc(args.command, e), indent=2) + "\n")
        return EXIT_CHECK_FAILED

    inputs = {k: v for k, v in vars(args).items() if k not in ("command", "out", "verbose") and v is not None}
    doc = {
        "command": args.command,
        "mode": mode.describe(),
        "inputs": inputs,
        "result": out.result,
        "checks": [_check_to_json(c) for c in out.checks],
    }
    _emit(doc, out, args.out, stream)
    failed = [c.name for c in out.checks if not c.passed]
    if failed:
        logger.warning("%s: %d check(s) failed: %s", args.command, len(failed), ", ".join(failed))
        return EXIT_CHECK_FAILED
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None, stream=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    return run(args, stream)


if __name__ == "__main__":
    sys.exit(main())
