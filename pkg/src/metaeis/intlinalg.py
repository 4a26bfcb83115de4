"""Integer linear algebra on lists of int rows; normal forms come from sympy.

Lattices are generated by rows.
"""
from __future__ import annotations

from fractions import Fraction

from sympy import Matrix as _SymMatrix
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_decomp

Matrix = list[list[int]]


def _ints(m) -> Matrix:
    return [[int(x) for x in row] for row in m.tolist()]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(len(b))) for j in range(cols)] for row in a]


def vecmat(v, m: Matrix) -> list:
    if not m:
        return []
    return [sum(v[k] * m[k][j] for k in range(len(m))) for j in range(len(m[0]))]


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)]


def hnf(rows: Matrix) -> Matrix:
    """Canonical basis (Hermite normal form) of the lattice spanned by ``rows``."""
    if not rows or not any(any(r) for r in rows):
        return []
    cols = _ints(hermite_normal_form(_SymMatrix(rows).T))
    return transpose(cols)


def smith(a: Matrix):
    """Return (diag, U, V) with U a V diagonal and U, V unimodular.

    ``diag`` has length min(m, n), each entry dividing the next, zeros last.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    if not m or not n:
        return [], identity(m), identity(n)
    d, u, v = smith_normal_decomp(_SymMatrix(a))
    return [int(d[i, i]) for i in range(min(m, n))], _ints(u), _ints(v)


def left_kernel(a: Matrix, nrows: int | None = None) -> Matrix:
    """Basis (in HNF) of {x in Z^m : x a = 0}."""
    m = len(a) if nrows is None else nrows
    if m == 0:
        return []
    if not a or not a[0]:
        return identity(m)
    diag, u, _ = smith(a)
    # x a = 0  <=>  (x U^-1) D = 0
    free = [u[i] for i in range(m) if i >= len(diag) or diag[i] == 0]
    return hnf(free)


def inverse_rational(a: Matrix) -> list[list[Fraction]]:
    inv = _SymMatrix(a).inv()
    return [[Fraction(int(x.p), int(x.q)) for x in row] for row in inv.tolist()]


def determinant(a: Matrix) -> int:
    if not a:
        return 1
    return int(_SymMatrix(a).det())


def solve_integer(basis: Matrix, v, inv=None) -> list[int] | None:
    """Integer coordinates c with c @ basis == v for a square full-rank basis, or None.

    ``inv`` may carry a precomputed rational inverse of ``basis``.
    """
    if inv is None:
        inv = inverse_rational(basis)
    coords = [sum(Fraction(v[k]) * inv[k][j] for k in range(len(v))) for j in range(len(v))]
    if any(c.denominator != 1 for c in coords):
        return None
    return [int(c) for c in coords]
