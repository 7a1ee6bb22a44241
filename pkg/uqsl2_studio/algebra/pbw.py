# uqsl2_studio/algebra/pbw.py

"""
PBW normal forms for U_q(sl2).

Every element is stored as Σ c_{rjs} Fʳ Kʲ Eˢ (r, s ≥ 0, j ∈ Z). Products are
computed by left-multiplying a normal form by one generator at a time:

    F · FʳKʲEˢ = F^{r+1}KʲEˢ
    K · FʳKʲEˢ = q^{-2r} FʳK^{j+1}Eˢ                      (KF = q⁻²FK)
    E · FʳKʲEˢ = (E·Fʳ) KʲEˢ,  then EKʲ = q^{-2j}KʲE       (KE = q²EK)

and E·Fʳ is straightened with the single relation
EF → FE + (K − K⁻¹)/(q − q⁻¹), applied recursively and cached per mode.
Each step moves one E strictly to the right past one F, so the rewriting
terminates; the left-module action is associative, so the result does not
depend on the order in which letters are absorbed.
"""

from __future__ import annotations

import logging
import re
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.fields import FracElement

from uqsl2_studio.algebra import scalars
from uqsl2_studio.algebra.scalars import QFIELD, format_scalar, q_int
from uqsl2_studio.config import STUDIO_DEFAULTS
from uqsl2_studio.core.types import (
    DomainError,
    InternalConsistencyError,
    ModeMismatchError,
    SizeGuardError,
)

logger = logging.getLogger(__name__)

Monomial = Tuple[int, int, int]
Word = Tuple[str, ...]
LETTERS = ("E", "F", "K", "Ki")


# ============================================================
# Algebra modes
# ============================================================

@dataclass(frozen=True)
class AlgebraMode:
    """Symbolic (q formal, QQ(q) coefficients) or numeric (complex, q fixed)."""
    kind: str = "symbolic"
    qval: Optional[complex] = None
    drop_tol: float = STUDIO_DEFAULTS.drop_tol
    tol: float = STUDIO_DEFAULTS.tol

    def __post_init__(self):
        if self.kind not in ("symbolic", "numeric"):
            raise DomainError(f"unknown algebra mode {self.kind!r}")
        if self.kind == "numeric" and self.qval is None:
            raise DomainError("numeric mode needs a value for q")

    @property
    def is_symbolic(self) -> bool:
        return self.kind == "symbolic"

    @property
    def q(self):
        return scalars.q if self.is_symbolic else self.qval

    @property
    def one(self):
        return QFIELD.one if self.is_symbolic else 1 + 0j

    @property
    def zero(self):
        return QFIELD.zero if self.is_symbolic else 0j

    def coerce(self, c):
        if self.is_symbolic:
            if isinstance(c, (complex, float)):
                raise ModeMismatchError("float coefficient in symbolic mode")
            return scalars.as_qscalar(c)
        if isinstance(c, FracElement):
            return scalars.specialize(c, self.qval)
        if isinstance(c, Fraction):
            return complex(float(c))
        return scalars.check_finite(complex(c))

    def is_zero(self, c) -> bool:
        if self.is_symbolic:
            return not c
        return abs(c) <= self.drop_tol

    def q_pow(self, n: int):
        return _q_pow(self, n)

    def describe(self) -> str:
        return "symbolic" if self.is_symbolic else f"numeric(q={self.qval})"


SYMBOLIC = AlgebraMode()


def numeric_mode(qval, tol: Optional[float] = None, drop_tol: Optional[float] = None) -> AlgebraMode:
    z = complex(qval)
    if z == 0 or abs(z * z - 1) < 1e-12:
        raise DomainError(f"standing assumption q ≠ 0, q² ≠ 1 violated by q = {z}")
    return AlgebraMode(
        kind="numeric",
        qval=z,
        drop_tol=STUDIO_DEFAULTS.drop_tol if drop_tol is None else drop_tol,
        tol=STUDIO_DEFAULTS.tol if tol is None else tol,
    )


@lru_cache(maxsize=4096)
def _q_pow(mode: AlgebraMode, n: int):
    return mode.q ** n


@lru_cache(maxsize=64)
def gap_inverse(mode: AlgebraMode):
    # 1/(q − q⁻¹)
    return mode.one / (mode.q - _q_pow(mode, -1))


def _same_mode(a, b) -> AlgebraMode:
    if a.mode != b.mode:
        raise ModeMismatchError(f"{a.mode.describe()} vs {b.mode.describe()}")
    return a.mode


def _build(acc: Mapping, mode: AlgebraMode) -> Dict:
    limit = STUDIO_DEFAULTS.max_exponent
    out = {}
    for key, c in acc.items():
        if mode.is_zero(c):
            continue
        if isinstance(key, tuple) and max(abs(k) for k in key) > limit:
            raise SizeGuardError(f"exponent beyond ±{limit}: {key}")
        if not isinstance(key, tuple) and abs(key) > limit:
            raise SizeGuardError(f"exponent beyond ±{limit}: {key}")
        out[key] = c
    return out


# ============================================================
# PBW elements
# ============================================================

class PBWElement:
    """Σ c_{rjs} FʳKʲEˢ with no zero coefficients stored."""

    __slots__ = ("terms", "mode")
    __hash__ = None

    def __init__(self, terms: Optional[Mapping[Monomial, object]] = None, mode: AlgebraMode = SYMBOLIC):
        self.mode = mode
        self.terms: Dict[Monomial, object] = _build(
            {tuple(k): mode.coerce(v) for k, v in (terms or {}).items()}, mode
        )

    @classmethod
    def _raw(cls, terms: Dict[Monomial, object], mode: AlgebraMode) -> "PBWElement":
        obj = cls.__new__(cls)
        obj.mode = mode
        obj.terms = _build(terms, mode)
        return obj

    # ---- constructors
    @classmethod
    def zero(cls, mode: AlgebraMode = SYMBOLIC) -> "PBWElement":
        return cls._raw({}, mode)

    @classmethod
    def one(cls, mode: AlgebraMode = SYMBOLIC) -> "PBWElement":
        return cls._raw({(0, 0, 0): mode.one}, mode)

    @classmethod
    def scalar(cls, c, mode: AlgebraMode = SYMBOLIC) -> "PBWElement":
        return cls._raw({(0, 0, 0): mode.coerce(c)}, mode)

    @classmethod
    def monomial(cls, r: int, j: int, s: int, c=1, mode: AlgebraMode = SYMBOLIC) -> "PBWElement":
        if r < 0 or s < 0:
            raise DomainError(f"F and E exponents must be non-negative, got r={r}, s={s}")
        return cls._raw({(r, j, s): mode.coerce(c)}, mode)

    # ---- queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, r: int, j: int, s: int):
        return self.terms.get((r, j, s), self.mode.zero)

    def support(self) -> List[Monomial]:
        return sorted(self.terms)

    def is_laurent(self) -> bool:
        return all(r == 0 and s == 0 for r, _, s in self.terms)

    def to_laurent(self) -> "LaurentPoly":
        if not self.is_laurent():
            raise DomainError("element is not a Laurent polynomial in K")
        return LaurentPoly._raw({j: c for (_, j, _), c in self.terms.items()}, self.mode)

    def degree(self) -> int:
        return max((r + s + abs(j) for r, j, s in self.terms), default=0)

    def max_abs_coeff(self) -> float:
        if self.mode.is_symbolic:
            raise DomainError("max_abs_coeff is numeric only")
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def specialize(self, mode: AlgebraMode) -> "PBWElement":
        if not self.mode.is_symbolic:
            raise ModeMismatchError("only symbolic elements can be specialized")
        return PBWElement._raw({k: mode.coerce(c) for k, c in self.terms.items()}, mode)

    # ---- ring operations
    def _lift(self, other) -> "PBWElement":
        if isinstance(other, PBWElement):
            _same_mode(self, other)
            return other
        if isinstance(other, LaurentPoly):
            _same_mode(self, other)
            return other.to_element()
        return PBWElement.scalar(other, self.mode)

    def __add__(self, other) -> "PBWElement":
        other = self._lift(other)
        acc = dict(self.terms)
        zero = self.mode.zero
        for k, c in other.terms.items():
            acc[k] = acc.get(k, zero) + c
        return PBWElement._raw(acc, self.mode)

    __radd__ = __add__

    def __neg__(self) -> "PBWElement":
        return PBWElement._raw({k: -c for k, c in self.terms.items()}, self.mode)

    def __sub__(self, other) -> "PBWElement":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "PBWElement":
        return self._lift(other) - self

    def scale(self, c) -> "PBWElement":
        c = self.mode.coerce(c)
        return PBWElement._raw({k: c * v for k, v in self.terms.items()}, self.mode)

    def __mul__(self, other) -> "PBWElement":
        if isinstance(other, (PBWElement, LaurentPoly)):
            return multiply(self, self._lift(other))
        return self.scale(other)

    def __rmul__(self, other) -> "PBWElement":
        if isinstance(other, LaurentPoly):
            return multiply(self._lift(other), self)
        return self.scale(other)

    def __pow__(self, n: int) -> "PBWElement":
        if n < 0:
            raise DomainError("negative powers of PBW elements are not defined")
        result, base = PBWElement.one(self.mode), self
        while n:
            if n & 1:
                result = multiply(result, base)
            n >>= 1
            if n:
                base = multiply(base, base)
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, (PBWElement, LaurentPoly, int, Fraction, FracElement, complex, float)):
            return NotImplemented
        try:
            return (self - self._lift(other)).is_zero()
        except ModeMismatchError:
            return False

    def __repr__(self) -> str:
        return f"PBWElement({element_to_text(self)})"

    def __str__(self) -> str:
        return element_to_text(self)


# ============================================================
# Laurent polynomials in K
# ============================================================

class LaurentPoly:
    """Σ c_j Kʲ, the commutative subalgebra QQ(q)[K, K⁻¹]."""

    __slots__ = ("coeffs", "mode")
    __hash__ = None

    def __init__(self, coeffs: Optional[Mapping[int, object]] = None, mode: AlgebraMode = SYMBOLIC):
        self.mode = mode
        self.coeffs: Dict[int, object] = _build(
            {int(j): mode.coerce(c) for j, c in (coeffs or {}).items()}, mode
        )

    @classmethod
    def _raw(cls, coeffs: Dict[int, object], mode: AlgebraMode) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj.mode = mode
        obj.coeffs = _build(coeffs, mode)
        return obj

    @classmethod
    def monomial(cls, j: int, c=1, mode: AlgebraMode = SYMBOLIC) -> "LaurentPoly":
        return cls._raw({j: mode.coerce(c)}, mode)

    @classmethod
    def one(cls, mode: AlgebraMode = SYMBOLIC) -> "LaurentPoly":
        return cls._raw({0: mode.one}, mode)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def span(self) -> Tuple[int, int]:
        if not self.coeffs:
            return (0, 0)
        return min(self.coeffs), max(self.coeffs)

    def to_element(self) -> PBWElement:
        return PBWElement._raw({(0, j, 0): c for j, c in self.coeffs.items()}, self.mode)

    def evaluate(self, value):
        """R(value) for a scalar value of K."""
        out = self.mode.zero
        for j, c in self.coeffs.items():
            out = out + c * value ** j
        return out

    def specialize(self, mode: AlgebraMode) -> "LaurentPoly":
        if not self.mode.is_symbolic:
            raise ModeMismatchError("only symbolic Laurent polynomials can be specialized")
        return LaurentPoly._raw({j: mode.coerce(c) for j, c in self.coeffs.items()}, mode)

    def _lift(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            _same_mode(self, other)
            return other
        return LaurentPoly._raw({0: self.mode.coerce(other)}, self.mode)

    def __add__(self, other) -> "LaurentPoly":
        other = self._lift(other)
        acc = dict(self.coeffs)
        for j, c in other.coeffs.items():
            acc[j] = acc.get(j, self.mode.zero) + c
        return LaurentPoly._raw(acc, self.mode)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({j: -c for j, c in self.coeffs.items()}, self.mode)

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, PBWElement):
            return multiply(self.to_element(), other)
        other = self._lift(other)
        acc: Dict[int, object] = defaultdict(lambda: self.mode.zero)
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                acc[i + j] = acc[i + j] + a * b
        return LaurentPoly._raw(dict(acc), self.mode)

    def __rmul__(self, other) -> "LaurentPoly":
        return self._lift(other) * self

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise DomainError("negative powers of Laurent polynomials are not supported")
        out = LaurentPoly.one(self.mode)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, PBWElement):
            return other == self.to_element()
        if not isinstance(other, (LaurentPoly, int, Fraction, FracElement, complex, float)):
            return NotImplemented
        try:
            return (self - self._lift(other)).is_zero()
        except ModeMismatchError:
            return False

    def __repr__(self) -> str:
        return f"LaurentPoly({element_to_text(self.to_element())})"


# ============================================================
# Multiplication engine
# ============================================================

def _left_F(terms: Mapping[Monomial, object], times: int = 1) -> Dict[Monomial, object]:
    return {(r + times, j, s): c for (r, j, s), c in terms.items()}


def _left_K(terms: Mapping[Monomial, object], i: int, mode: AlgebraMode) -> Dict[Monomial, object]:
    # Kⁱ Fʳ = q^{-2ir} Fʳ Kⁱ
    return {(r, j + i, s): c * mode.q_pow(-2 * i * r) for (r, j, s), c in terms.items()}


@lru_cache(maxsize=4096)
def _e_times_f_power(mode: AlgebraMode, r: int) -> Tuple[Tuple[Monomial, object], ...]:
    """Normal form of E·Fʳ, from EF → FE + (K − K⁻¹)/(q − q⁻¹)."""
    if r == 0:
        return (((0, 0, 1), mode.one),)
    acc: Dict[Monomial, object] = _left_F(dict(_e_times_f_power(mode, r - 1)))
    g = gap_inverse(mode)
    zero = mode.zero
    # (K − K⁻¹)/(q − q⁻¹) · F^{r−1}
    acc[(r - 1, 1, 0)] = acc.get((r - 1, 1, 0), zero) + g * mode.q_pow(-2 * (r - 1))
    acc[(r - 1, -1, 0)] = acc.get((r - 1, -1, 0), zero) - g * mode.q_pow(2 * (r - 1))
    return tuple(_build(acc, mode).items())


def _left_E(terms: Mapping[Monomial, object], mode: AlgebraMode) -> Dict[Monomial, object]:
    acc: Dict[Monomial, object] = {}
    zero = mode.zero
    for (r, j, s), c in terms.items():
        for (r2, j2, s2), c2 in _e_times_f_power(mode, r):
            # (F^{r2} K^{j2} E^{s2}) Kʲ Eˢ with E^{s2}Kʲ = q^{-2 j s2} Kʲ E^{s2}
            key = (r2, j2 + j, s2 + s)
            v = c * c2
            if s2 and j:
                v = v * mode.q_pow(-2 * j * s2)
            acc[key] = acc.get(key, zero) + v
    if mode.is_symbolic:
        return {k: v for k, v in acc.items() if v}
    return acc


def _left_letter(letter: str, terms: Mapping[Monomial, object], mode: AlgebraMode) -> Dict[Monomial, object]:
    if letter == "E":
        return _left_E(terms, mode)
    if letter == "F":
        return _left_F(terms)
    if letter == "K":
        return _left_K(terms, 1, mode)
    if letter == "Ki":
        return _left_K(terms, -1, mode)
    raise DomainError(f"unknown generator {letter!r}")


def multiply(a: PBWElement, b: PBWElement) -> PBWElement:
    """Product in U_q(sl2), returned in normal form."""
    mode = _same_mode(a, b)
    if not a.terms or not b.terms:
        return PBWElement.zero(mode)
    max_s = max(s for _, _, s in a.terms)
    e_powers: List[Dict[Monomial, object]] = [b.terms]
    for _ in range(max_s):
        e_powers.append(_left_E(e_powers[-1], mode))
    acc: Dict[Monomial, object] = {}
    zero = mode.zero
    for (r, j, s), c in a.terms.items():
        t = e_powers[s]
        if j:
            t = _left_K(t, j, mode)
        if r:
            t = _left_F(t, r)
        for key, v in t.items():
            acc[key] = acc.get(key, zero) + c * v
    return PBWElement._raw(acc, mode)


def commutator(a: PBWElement, b: PBWElement) -> PBWElement:
    return multiply(a, b) - multiply(b, a)


# ============================================================
# Generators, words and the rewriting relations
# ============================================================

def generator(name: str, mode: AlgebraMode = SYMBOLIC) -> PBWElement:
    key = {"E": (0, 0, 1), "F": (1, 0, 0), "K": (0, 1, 0), "Ki": (0, -1, 0), "Kinv": (0, -1, 0)}.get(name)
    if key is None:
        raise DomainError(f"unknown generator {name!r}")
    return PBWElement._raw({key: mode.one}, mode)


def generators(mode: AlgebraMode = SYMBOLIC) -> Tuple[PBWElement, PBWElement, PBWElement, PBWElement]:
    """E, F, K, K⁻¹."""
    return tuple(generator(n, mode) for n in ("E", "F", "K", "Ki"))


_WORD_TOKEN = re.compile(r"\s*(K\^\{-1\}|K\^-1|K⁻¹|Kinv|Ki|E|F|K)\s*[·*]?")


def parse_word(text: str) -> Word:
    """'KE', 'E·F', 'K·K⁻¹', 'K K^-1' → tuple of letters."""
    letters: List[str] = []
    pos = 0
    while pos < len(text):
        m = _WORD_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise DomainError(f"cannot read generator at position {pos} of {text!r}")
        tok = m.group(1)
        letters.append("Ki" if tok not in ("E", "F", "K") else tok)
        pos = m.end()
    return tuple(letters)


def word_to_element(word: Iterable[str], mode: AlgebraMode = SYMBOLIC) -> PBWElement:
    terms: Dict[Monomial, object] = {(0, 0, 0): mode.one}
    for letter in reversed(tuple(word)):
        terms = _left_letter(letter, terms, mode)
    return PBWElement._raw(terms, mode)


def rewrite_once(word: Sequence[str], position: int,
                 mode: AlgebraMode = SYMBOLIC) -> Optional[List[Tuple[object, Word]]]:
    """Apply the defining relation at word[position:position+2], if one applies."""
    if position < 0 or position + 1 >= len(word):
        return None
    w = tuple(word)
    head, pair, tail = w[:position], (w[position], w[position + 1]), w[position + 2:]
    qp = mode.q_pow
    swaps = {
        ("E", "K"): qp(-2), ("K", "E"): qp(2),
        ("F", "K"): qp(2), ("K", "F"): qp(-2),
        ("E", "Ki"): qp(2), ("Ki", "E"): qp(-2),
        ("F", "Ki"): qp(-2), ("Ki", "F"): qp(2),
    }
    if pair in swaps:
        return [(swaps[pair], head + (pair[1], pair[0]) + tail)]
    if pair in (("K", "Ki"), ("Ki", "K")):
        return [(mode.one, head + tail)]
    if pair in (("E", "F"), ("F", "E")):
        g = gap_inverse(mode)
        sign = 1 if pair == ("E", "F") else -1
        return [
            (mode.one, head + (pair[1], pair[0]) + tail),
            (sign * g, head + ("K",) + tail),
            (-sign * g, head + ("Ki",) + tail),
        ]
    return None


def normalize(expr, mode: AlgebraMode = SYMBOLIC) -> PBWElement:
    """Normal form of a word, a parsed expression tree, or an element."""
    if isinstance(expr, PBWElement):
        return expr
    if isinstance(expr, LaurentPoly):
        return expr.to_element()
    if hasattr(expr, "to_element"):
        return expr.to_element(mode)
    if isinstance(expr, str):
        expr = parse_word(expr)
    return word_to_element(expr, mode)


# ============================================================
# σ and the [Eᵐ, F] coefficients
# ============================================================

def sigma_pow(R: LaurentPoly, n: int) -> LaurentPoly:
    """σⁿ with σ(K) = q²K: Kʲ ↦ q^{2nj}Kʲ."""
    mode = R.mode
    return LaurentPoly._raw({j: c * mode.q_pow(2 * n * j) for j, c in R.coeffs.items()}, mode)


@lru_cache(maxsize=4096)
def em_f_coeffs(m: int, mode: AlgebraMode = SYMBOLIC) -> Tuple[object, object]:
    """(t, s) with [Eᵐ, F] = E^{m−1}(tK − sK⁻¹), read off the normal form."""
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    E, F, _, _ = generators(mode)
    c = commutator(E ** m, F)
    allowed = {(0, 1, m - 1), (0, -1, m - 1)}
    if not set(c.terms) <= allowed:
        raise InternalConsistencyError(f"[E^{m},F] has unexpected support {c.support()}")
    # E^{m−1}K = q^{-2(m−1)} K E^{m−1},  E^{m−1}K⁻¹ = q^{2(m−1)} K⁻¹ E^{m−1}
    t = c.coefficient(0, 1, m - 1) * mode.q_pow(2 * (m - 1))
    s = -c.coefficient(0, -1, m - 1) * mode.q_pow(-2 * (m - 1))
    if mode.is_symbolic and (not t or not s):
        raise InternalConsistencyError(f"vanishing coefficient in [E^{m},F]")
    return t, s


def p_poly(n: int, mode: AlgebraMode = SYMBOLIC) -> LaurentPoly:
    """P_n = t_nK − s_nK⁻¹."""
    t, s = em_f_coeffs(n, mode)
    return LaurentPoly._raw({1: t, -1: -s}, mode)


def em_f_closed_form(m: int) -> Tuple[FracElement, FracElement]:
    q = scalars.q
    gap = q - q ** -1
    return q ** (m - 1) * q_int(m) / gap, q ** (1 - m) * q_int(m) / gap


def printed_em_f_coeffs(m: int) -> Tuple[FracElement, FracElement]:
    """t = q(q^{2m}−1)/(q²−1)², s = q⁻¹(q^{−2m}−1)/(q^{−2}−1)², as usually displayed."""
    q = scalars.q
    t = q * (q ** (2 * m) - 1) / (q ** 2 - 1) ** 2
    s = q ** -1 * (q ** (-2 * m) - 1) / (q ** -2 - 1) ** 2
    return t, s


@dataclass
class EmFDiagnostic:
    m: int
    t: str
    s: str
    closed_form_matches: bool
    printed_t_matches: bool
    printed_s_matches: bool
    printed_s_is_negated: bool


def em_f_diagnostic(m: int) -> EmFDiagnostic:
    t, s = em_f_coeffs(m)
    ct, cs = em_f_closed_form(m)
    pt, ps = printed_em_f_coeffs(m)
    return EmFDiagnostic(
        m=m,
        t=format_scalar(t),
        s=format_scalar(s),
        closed_form_matches=(t == ct and s == cs),
        printed_t_matches=(t == pt),
        printed_s_matches=(s == ps),
        printed_s_is_negated=(s == -ps),
    )


# ============================================================
# Casimir, centrality, bracket identities
# ============================================================

def casimir(mode: AlgebraMode = SYMBOLIC) -> PBWElement:
    """C_q = EF + (q⁻¹K + qK⁻¹)/(q − q⁻¹)²."""
    E, F, K, Ki = generators(mode)
    g = gap_inverse(mode)
    laurent = K.scale(mode.q_pow(-1)) + Ki.scale(mode.q)
    return multiply(E, F) + laurent.scale(g * g)


def is_central(x: PBWElement, tol: Optional[float] = None) -> bool:
    mode = x.mode
    E, F, K, _ = generators(mode)
    for g in (E, F, K):
        c = commutator(x, g)
        if mode.is_symbolic:
            if not c.is_zero():
                return False
        else:
            bound = STUDIO_DEFAULTS.center_tol if tol is None else tol
            if c.terms and c.max_abs_coeff() > bound:
                return False
    return True


def bracket_identity_residuals(n: int, R: LaurentPoly) -> Tuple[PBWElement, PBWElement]:
    """
    Residuals of two candidate identities for [EⁿR, F]:

    printed:   [Eⁿ,F](σ⁻¹(R) − R)
    corrected: FEⁿ(σ⁻¹(R) − R) + [Eⁿ,F]σ⁻¹(R)

    The corrected residual is always zero; the printed one is not (take R = 1).
    """
    mode = R.mode
    E, F, _, _ = generators(mode)
    En = E ** n
    twisted = sigma_pow(R, -1)
    diff = (twisted - R).to_element()
    lhs = commutator(multiply(En, R.to_element()), F)
    bracket = commutator(En, F)
    printed = multiply(bracket, diff)
    corrected = multiply(multiply(F, En), diff) + multiply(bracket, twisted.to_element())
    return lhs - printed, lhs - corrected


# ============================================================
# Text form (grammar of the expression front-end)
# ============================================================

def _coeff_text(c, mode: AlgebraMode) -> str:
    if mode.is_symbolic:
        return "{" + format_scalar(c) + "}"
    return "{" + f"{c.real:.12g}{c.imag:+.12g}j" + "}"


def element_to_text(x: PBWElement) -> str:
    if not x.terms:
        return "0"
    parts = []
    for (r, j, s) in sorted(x.terms, key=lambda k: (k[0] + k[2], k)):
        c = x.terms[(r, j, s)]
        factors = [_coeff_text(c, x.mode)]
        if r:
            factors.append("F" if r == 1 else f"F^{r}")
        if j:
            factors.append("K" if j == 1 else f"K^{j}")
        if s:
            factors.append("E" if s == 1 else f"E^{s}")
        parts.append("*".join(factors))
    return " + ".join(parts)


def random_element(rng, n_terms: int = 3, max_exp: int = 2, mode: AlgebraMode = SYMBOLIC) -> PBWElement:
    """A small element with integer coefficients, for property checks."""
    terms: Dict[Monomial, object] = {}
    for _ in range(n_terms):
        key = (rng.randint(0, max_exp), rng.randint(-max_exp, max_exp), rng.randint(0, max_exp))
        terms[key] = rng.choice([-3, -2, -1, 1, 2, 3])
    return PBWElement(terms, mode)


def random_word(rng, length: int) -> Word:
    return tuple(rng.choice(LETTERS) for _ in range(length))
