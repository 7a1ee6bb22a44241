# uqsl2_studio/algebra/scalars.py

"""
Coefficient arithmetic.

QScalar is an element of the rational function field QQ(q) as implemented by
sympy's sparse fraction field: every value is kept cancelled, so equality is
exact. Negative powers of q live in the same field (q⁻¹ is stored as 1/q).
NumericScalar is a plain Python complex; ExtendedWeight is the formal value
u + v·π·ħ⁻¹·i used for the diagonal of H in Ũ(sl2)_ħ.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from tokenize import TokenError
from typing import Optional, Tuple, Union

from sympy import E as SYMPY_E
from sympy import I, Symbol, sympify
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)
from sympy.polys.domains import QQ, FractionField
from sympy.polys.fields import FracElement
from sympy.polys.polyerrors import CoercionFailed

from uqsl2_studio.config import STUDIO_DEFAULTS
from uqsl2_studio.core.types import DomainError, PoleError

logger = logging.getLogger(__name__)

Q_SYMBOL = Symbol("q")
LAMBDA_SYMBOL = Symbol("lam")

QFIELD: FractionField = QQ.frac_field(Q_SYMBOL)
q: FracElement = QFIELD.gens[0]

QScalar = FracElement
NumericScalar = complex
Rational = Union[int, Fraction]

_TRANSFORMS = standard_transformations + (convert_xor,)


# ============================================================
# Construction / conversion
# ============================================================

def from_rational(value: Rational) -> QScalar:
    frac = Fraction(value)
    return QFIELD.one * frac.numerator / frac.denominator


def as_qscalar(value) -> QScalar:
    if isinstance(value, FracElement):
        return value
    if isinstance(value, (int, Fraction)):
        return from_rational(value)
    return QFIELD.from_sympy(sympify(value))


def q_pow(n: int) -> QScalar:
    return q ** n


def q_in(field) -> FracElement:
    """The generator q inside another fraction field (e.g. QQ(q, λ))."""
    return field.from_expr(Q_SYMBOL)


@lru_cache(maxsize=None)
def generic_lambda_field() -> Tuple[FractionField, FracElement]:
    """QQ(q, λ) with λ a free symbol, for generic Verma modules."""
    dom = QQ.frac_field(Q_SYMBOL, LAMBDA_SYMBOL)
    return dom, dom.gens[1]


def domain_of(x: FracElement) -> FractionField:
    if x.field is QFIELD.field:
        return QFIELD
    return FractionField(x.field)


# ============================================================
# Quantum integers
# ============================================================

@lru_cache(maxsize=None)
def q_int(n: int) -> QScalar:
    """[n]_q = (qⁿ − q⁻ⁿ)/(q − q⁻¹)."""
    return (q ** n - q ** -n) / (q - q ** -1)


def q_factorial(n: int) -> QScalar:
    if n < 0:
        raise DomainError(f"[n]_q! needs n >= 0, got {n}")
    out = QFIELD.one
    for i in range(1, n + 1):
        out = out * q_int(i)
    return out


def q_int_lambda(n: int, lam) -> FracElement:
    """[n]_{q,λ} = (qⁿλ⁻¹ − q⁻ⁿλ)/(q − q⁻¹), computed in λ's own field."""
    if isinstance(lam, (int, Fraction)):
        lam = from_rational(lam)
    if isinstance(lam, FracElement):
        if not lam:
            raise DomainError("λ must be non-zero")
        qq = q if lam.field is QFIELD.field else q_in(lam.field)
        return (qq ** n / lam - qq ** -n * lam) / (qq - qq ** -1)
    raise DomainError(f"symbolic λ expected, got {type(lam).__name__}")


def q_int_lambda_numeric(n: int, lam: complex, qval: complex) -> complex:
    lam = complex(lam)
    if lam == 0:
        raise DomainError("λ must be non-zero")
    qval = complex(qval)
    return check_finite((qval ** n / lam - qval ** -n * lam) / (qval - 1 / qval))


def q_int_numeric(n: int, qval: complex) -> complex:
    return q_int_lambda_numeric(n, 1.0, qval)


# ============================================================
# Canonical text form
# ============================================================

def _poly_text(poly) -> str:
    return str(poly.as_expr()).replace("**", "^")


def canonical_pair(x: FracElement):
    """Numerator and denominator with the denominator made monic."""
    lc = x.denom.LC
    return x.numer.quo_ground(lc), x.denom.quo_ground(lc)


def format_scalar(x: FracElement) -> str:
    num, den = canonical_pair(x)
    if den == den.ring.one:
        return _poly_text(num)
    return f"({_poly_text(num)})/({_poly_text(den)})"


def parse_scalar(text: str, domain: FractionField = QFIELD) -> FracElement:
    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    local = {str(s): s for s in domain.symbols}
    try:
        expr = parse_expr(body, local_dict=local, transformations=_TRANSFORMS)
    except (SyntaxError, TypeError, ValueError, TokenError) as e:
        raise DomainError(f"cannot parse scalar {text!r}: {e}") from e
    extra = expr.free_symbols - set(domain.symbols)
    if extra:
        raise DomainError(f"scalar {text!r} uses unknown symbols {sorted(map(str, extra))}")
    try:
        return domain.from_sympy(expr)
    except (CoercionFailed, ValueError) as e:
        raise DomainError(f"scalar {text!r} is not a rational function over QQ") from e


# ============================================================
# Numeric specialization
# ============================================================

def check_finite(z: complex) -> complex:
    if not cmath.isfinite(z):
        raise DomainError(f"non-finite numeric value {z!r}")
    return z


def _coeff_float(c) -> float:
    return float(Fraction(int(c.numerator), int(c.denominator)))


def _eval_poly(poly, z: complex) -> Tuple[complex, float]:
    """Value and coefficient scale Σ|c||z|^e of a univariate polynomial."""
    value = 0j
    scale = 0.0
    az = abs(z)
    for (e,), c in poly.terms():
        cf = _coeff_float(c)
        value += cf * z ** e
        scale += abs(cf) * az ** e
    return value, scale


def specialize(x: FracElement, qval: complex, pole_tol: Optional[float] = None) -> complex:
    """numerator(qval)/denominator(qval), refusing poles."""
    if x.field is not QFIELD.field:
        raise DomainError("only scalars in QQ(q) can be specialized")
    pole_tol = STUDIO_DEFAULTS.pole_tol if pole_tol is None else pole_tol
    z = complex(qval)
    num, _ = _eval_poly(x.numer, z)
    den, den_scale = _eval_poly(x.denom, z)
    if abs(den) <= pole_tol * max(den_scale, 1e-300):
        raise PoleError(f"denominator vanishes at q = {z}", _vanishing_factor(x, z))
    return check_finite(num / den)


def _vanishing_factor(x: FracElement, z: complex) -> str:
    _, factors = x.denom.factor_list()
    best, best_rel = x.denom, math.inf
    for f, _mult in factors:
        val, scale = _eval_poly(f, z)
        rel = abs(val) / max(scale, 1e-300)
        if rel < best_rel:
            best, best_rel = f, rel
    return _poly_text(best)


def parse_numeric(text: str) -> complex:
    """'1.1', '0.5+2j', 'exp(I)', 'exp(2*pi*I/5)', 'e^(i)' → complex."""
    raw = text.strip()
    try:
        return check_finite(complex(raw.replace(" ", "")))
    except ValueError:
        pass
    try:
        expr = sympify(raw.replace("^", "**"), locals={"i": I, "e": SYMPY_E})
        return check_finite(complex(expr.evalf()))
    except (TypeError, ValueError, SyntaxError) as e:
        raise DomainError(f"cannot parse numeric value {text!r}") from e


def is_root_of_unity(qval: complex, max_order: int = 1000, tol: float = 1e-9) -> Optional[int]:
    z = complex(qval)
    if abs(abs(z) - 1.0) > tol:
        return None
    for d in range(1, max_order + 1):
        if abs(z ** d - 1.0) < tol * d:
            return d
    return None


def root_of_unity(d: int) -> complex:
    return cmath.exp(2j * math.pi / d)


# ============================================================
# Extended weights u + v·π·ħ⁻¹·i
# ============================================================

@dataclass(frozen=True)
class ExtendedWeight:
    u: Fraction
    v: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "u", Fraction(self.u))
        object.__setattr__(self, "v", Fraction(self.v))

    def __add__(self, other: "ExtendedWeight") -> "ExtendedWeight":
        return ExtendedWeight(self.u + other.u, self.v + other.v)

    def __sub__(self, other: "ExtendedWeight") -> "ExtendedWeight":
        return ExtendedWeight(self.u - other.u, self.v - other.v)

    def __neg__(self) -> "ExtendedWeight":
        return ExtendedWeight(-self.u, -self.v)

    def exp_parts(self) -> Tuple[int, Fraction]:
        """exp(ħ·(u + vπħ⁻¹i)) = sign·q^u; v must be an integer."""
        if self.v.denominator != 1:
            raise DomainError(f"exp rule needs an integer π-coefficient, got v = {self.v}")
        sign = -1 if self.v.numerator % 2 else 1
        return sign, self.u

    def exp_scalar(self) -> QScalar:
        sign, u = self.exp_parts()
        if u.denominator != 1:
            raise DomainError(f"q^{u} is not in QQ(q)")
        return sign * q ** int(u)

    def numeric(self, hbar: complex) -> complex:
        return float(self.u) + float(self.v) * math.pi * 1j / complex(hbar)

    def __str__(self) -> str:
        if self.v == 0:
            return str(self.u)
        return f"{self.u} + {self.v}πi/ħ"
