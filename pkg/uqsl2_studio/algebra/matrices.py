# uqsl2_studio/algebra/matrices.py

"""
Matrix helpers shared by repkit, verma and numerics.

Exact matrices are sympy DomainMatrix objects over QQ(q) (or QQ(q, λ));
numeric ones are complex numpy arrays. The helpers dispatch on the type so
callers can stay mode-agnostic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Union

import numpy as np
from sympy.polys.matrices import DomainMatrix
from sympy.polys.fields import FracElement

from uqsl2_studio.algebra.scalars import QFIELD, format_scalar, specialize
from uqsl2_studio.config import STUDIO_DEFAULTS
from uqsl2_studio.core.types import DomainError

Matrix = Union[DomainMatrix, np.ndarray]


def is_numeric(A: Matrix) -> bool:
    return isinstance(A, np.ndarray)


def to_domain(x, domain=QFIELD):
    if isinstance(x, FracElement) or isinstance(x, int):
        return domain.convert(x)
    if isinstance(x, Fraction) or hasattr(x, "denominator"):
        # Fraction and the QQ element types (PythonMPQ, gmpy mpq)
        return domain.convert(int(x.numerator)) / domain.convert(int(x.denominator))
    return domain.convert(x)


# ============================================================
# Construction
# ============================================================

def from_rows(rows: Sequence[Sequence], domain=QFIELD) -> DomainMatrix:
    n = len(rows)
    m = len(rows[0]) if n else 0
    return DomainMatrix([[to_domain(x, domain) for x in row] for row in rows], (n, m), domain)


def zeros(n: int, m: Optional[int] = None, domain=QFIELD, numeric: bool = False) -> Matrix:
    m = n if m is None else m
    if numeric:
        return np.zeros((n, m), dtype=complex)
    return DomainMatrix.zeros((n, m), domain).to_dense()


def identity(n: int, domain=QFIELD, numeric: bool = False) -> Matrix:
    if numeric:
        return np.eye(n, dtype=complex)
    return DomainMatrix.eye(n, domain).to_dense()


def diagonal(entries: Sequence, domain=QFIELD, numeric: bool = False) -> Matrix:
    n = len(entries)
    if numeric:
        return np.diag(np.asarray(entries, dtype=complex))
    rows = [[domain.zero] * n for _ in range(n)]
    for i, x in enumerate(entries):
        rows[i][i] = to_domain(x, domain)
    return from_rows(rows, domain)


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    if not blocks:
        raise DomainError("block_diag needs at least one block")
    if is_numeric(blocks[0]):
        n = sum(b.shape[0] for b in blocks)
        out = np.zeros((n, n), dtype=complex)
        i = 0
        for b in blocks:
            d = b.shape[0]
            out[i:i + d, i:i + d] = b
            i += d
        return out
    domain = blocks[0].domain
    n = sum(b.shape[0] for b in blocks)
    rows = [[domain.zero] * n for _ in range(n)]
    i = 0
    for b in blocks:
        for a, row in enumerate(entries(b)):
            for c, x in enumerate(row):
                rows[i + a][i + c] = x
        i += b.shape[0]
    return from_rows(rows, domain)


# ============================================================
# Access
# ============================================================

def entries(A: Matrix) -> List[list]:
    if is_numeric(A):
        return [list(row) for row in A]
    return [list(row) for row in A.to_ddm()]


def entry(A: Matrix, i: int, j: int):
    if is_numeric(A):
        return A[i, j]
    return A.to_ddm()[i][j]


def size(A: Matrix) -> int:
    return A.shape[0]


def is_diagonal(A: Matrix, tol: float = 0.0) -> bool:
    for i, row in enumerate(entries(A)):
        for j, x in enumerate(row):
            if i != j and (abs(x) > tol if is_numeric(A) else x):
                return False
    return True


def diagonal_entries(A: Matrix) -> list:
    rows = entries(A)
    return [rows[i][i] for i in range(len(rows))]


# ============================================================
# Arithmetic
# ============================================================

def matmul(A: Matrix, B: Matrix) -> Matrix:
    if is_numeric(A):
        return A @ B
    # sympy refuses sparse * dense
    return A.to_dense().matmul(B.to_dense())


def scale(A: Matrix, c) -> Matrix:
    if is_numeric(A):
        return A * complex(c)
    return A.scalarmul(to_domain(c, A.domain))


def commutator(A: Matrix, B: Matrix) -> Matrix:
    return matmul(A, B) - matmul(B, A)


def mat_pow(A: Matrix, n: int) -> Matrix:
    if n < 0:
        return mat_pow(inverse(A), -n)
    if is_numeric(A):
        return np.linalg.matrix_power(A, n)
    if n == 0:
        return identity(size(A), A.domain)
    return (A ** n).to_dense()


def inverse(A: Matrix) -> Matrix:
    if is_numeric(A):
        return np.linalg.inv(A)
    return A.inv()


def conjugate_by(A: Matrix, P: Matrix, P_inv: Optional[Matrix] = None) -> Matrix:
    """P⁻¹ A P."""
    P_inv = inverse(P) if P_inv is None else P_inv
    return matmul(matmul(P_inv, A), P)


def max_abs(A: Matrix) -> float:
    if not is_numeric(A):
        raise DomainError("max_abs is numeric only")
    return float(np.max(np.abs(A))) if A.size else 0.0


def is_zero(A: Matrix, tol: Optional[float] = None) -> bool:
    if is_numeric(A):
        tol = STUDIO_DEFAULTS.zero_matrix_tol if tol is None else tol
        return max_abs(A) <= tol
    return A.is_zero_matrix


def equal(A: Matrix, B: Matrix, tol: Optional[float] = None) -> bool:
    return is_zero(A - B, tol)


def is_scalar_matrix(A: Matrix, tol: Optional[float] = None):
    """The scalar c with A = c·I, or None."""
    n = size(A)
    if n == 0:
        return None
    c = entry(A, 0, 0)
    if is_numeric(A):
        return c if equal(A, c * np.eye(n), tol) else None
    return c if A == diagonal([c] * n, A.domain) else None


# ============================================================
# Linear algebra
# ============================================================

def rank(A: Matrix, tol: Optional[float] = None) -> int:
    if is_numeric(A):
        if A.size == 0:
            return 0
        s = np.linalg.svd(A, compute_uv=False)
        tol = STUDIO_DEFAULTS.tol if tol is None else tol
        return int(np.sum(s > tol * max(1.0, s[0])))
    return A.rank()


def nullspace(A: Matrix, tol: Optional[float] = None) -> List[list]:
    """Basis vectors of {x : A x = 0}, each a list of entries."""
    if is_numeric(A):
        n = A.shape[1]
        if A.shape[0] == 0:
            return [list(row) for row in np.eye(n, dtype=complex)]
        _, s, vh = np.linalg.svd(A)
        tol = STUDIO_DEFAULTS.tol if tol is None else tol
        r = int(np.sum(s > tol * max(1.0, s[0] if s.size else 1.0)))
        return [list(np.conj(row)) for row in vh[r:]]
    if A.shape[0] == 0:
        return entries(identity(A.shape[1], A.domain))
    return entries(A.nullspace())


def column_vector(values: Sequence, domain=QFIELD, numeric: bool = False) -> Matrix:
    if numeric:
        return np.asarray(values, dtype=complex).reshape(-1, 1)
    return from_rows([[v] for v in values], domain)


def columns_to_matrix(cols: Sequence[Sequence], domain=QFIELD, numeric: bool = False) -> Matrix:
    rows = [list(r) for r in zip(*cols)]
    if numeric:
        return np.asarray(rows, dtype=complex)
    return from_rows(rows, domain)


# ============================================================
# Conversion and text form
# ============================================================

def specialize_matrix(A: Matrix, qval: complex) -> np.ndarray:
    if is_numeric(A):
        return A
    return np.array([[specialize(x, qval) for x in row] for row in entries(A)], dtype=complex)


def format_entry(x) -> str:
    if isinstance(x, FracElement):
        return format_scalar(x)
    z = complex(x)
    return f"{z.real:.12g}{z.imag:+.12g}j"


def to_text(A: Matrix) -> List[List[str]]:
    """Row-major canonical strings."""
    return [[format_entry(x) for x in row] for row in entries(A)]
