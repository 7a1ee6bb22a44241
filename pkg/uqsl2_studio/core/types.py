from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Union


# ============================================================
# Errors
# ============================================================

class StudioError(Exception):
    """Base class for every error raised by uqsl2_studio."""


class DomainError(StudioError):
    """Input outside the mathematical domain of an operation (zero λ, q² = 1, ...)."""


class PoleError(DomainError):
    def __init__(self, message: str, factor: str):
        super().__init__(f"{message} (vanishing factor: {factor})")
        self.factor = factor


class PreconditionError(DomainError):
    pass


class ModeMismatchError(StudioError):
    pass


class InternalConsistencyError(StudioError):
    """A computed result has a shape the algebra says is impossible."""


class NotIrreducibleError(StudioError):
    pass


class DecompositionError(StudioError):
    pass


class ConvergenceError(StudioError):
    pass


class SizeGuardError(StudioError):
    pass


class UsageError(StudioError):
    pass


class ExprSyntaxError(StudioError):
    def __init__(self, message: str, line: int, column: int,
                 expected: Optional[List[str]] = None, kind: str = "syntax"):
        self.line = line
        self.column = column
        self.expected = sorted(set(expected or []))
        self.kind = kind
        where = f"line {line}, column {column}"
        exp = f"; expected one of: {', '.join(self.expected)}" if self.expected else ""
        super().__init__(f"{kind} error at {where}: {message}{exp}")


# ============================================================
# Representation labels
# ============================================================

@dataclass(frozen=True)
class RepLabelQ:
    """Label (n, ε) of the (n+1)-dimensional irreducible T_{n,ε}."""
    n: int
    eps: int = 1

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"n must be non-negative, got {self.n}")
        if self.eps not in (1, -1):
            raise DomainError(f"eps must be +1 or -1, got {self.eps}")

    @property
    def dim(self) -> int:
        return self.n + 1


@dataclass(frozen=True, order=True)
class RepLabelHbar:
    """Label (n, k, ε) of T_{n,k,ε}; the weight offset is r_{k,ε}."""
    n: int
    k: int = 0
    eps: int = 1

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"n must be non-negative, got {self.n}")
        if self.eps not in (1, -1):
            raise DomainError(f"eps must be +1 or -1, got {self.eps}")

    @property
    def dim(self) -> int:
        return self.n + 1

    @property
    def pi_coefficient(self) -> int:
        # r_{k,1} = 2kπi/ħ, r_{k,-1} = (2k+1)πi/ħ
        return 2 * self.k if self.eps == 1 else 2 * self.k + 1

    def as_q_label(self) -> RepLabelQ:
        return RepLabelQ(self.n, self.eps)


# ============================================================
# Check reports
# ============================================================

Residual = Union[str, float, None]


@dataclass
class CheckResult:
    name: str
    status: str  # "pass" | "fail"
    residual: Residual = None
    detail: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def check(name: str, ok: bool, residual: Residual = None, **detail) -> CheckResult:
    return CheckResult(name=name, status="pass" if ok else "fail",
                       residual=residual, detail=dict(detail))


@dataclass
class CheckReport:
    subject: str
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]
