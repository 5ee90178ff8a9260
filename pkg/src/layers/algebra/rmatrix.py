"""
The standard R-matrix of GL(N) and the matrix equations built from it.

R = q^-1 sum_i e_ii (x) e_ii + sum_{i != j} e_ii (x) e_jj
    + (q^-1 - q) sum_{i < j} e_ij (x) e_ji

Entry ((a, b), (c, d)) of a two-leg matrix is the coefficient of
e_ac (x) e_bd.
"""

from functools import lru_cache
from typing import Optional, Tuple

from sympy.polys.matrices import DomainMatrix

from . import linalg
from .errors import DomainError
from .ncalg import LeggedMatrix, MultiIndex, leg_embed, legged_mul, scalar_matrix
from .qfield import ONE, QScalar, ScalarLike, as_scalar, q

Corruption = Tuple[Tuple[MultiIndex, MultiIndex], ScalarLike]


def _check_n(n: int):
    if n < 1:
        raise DomainError(f"N must be positive, got {n}")


def _r_values(n: int, diagonal: QScalar, off: QScalar):
    values = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                values[((i, i), (i, i))] = diagonal
            else:
                values[((i, j), (i, j))] = ONE
            if i < j:
                values[((i, j), (j, i))] = off
    return values


@lru_cache(maxsize=None)
def _r_matrix(n: int) -> LeggedMatrix:
    return scalar_matrix(2, n, _r_values(n, q ** -1, q ** -1 - q))


def r_matrix(n: int, corrupt: Optional[Corruption] = None) -> LeggedMatrix:
    """
    R for GL(n).

    ``corrupt`` adds a scalar to one entry; used to show that the checks
    built on R notice a wrong structure constant.
    """
    _check_n(n)
    if corrupt is None:
        return _r_matrix(n)
    key, delta = corrupt
    values = {k: v.constant_term() for k, v in _r_matrix(n).entries.items()}
    values[key] = values.get(key, 0) + as_scalar(delta)
    return scalar_matrix(2, n, values)


@lru_cache(maxsize=None)
def r_inverse(n: int) -> LeggedMatrix:
    """R^-1, which is R with q and q^-1 exchanged."""
    _check_n(n)
    return scalar_matrix(2, n, _r_values(n, q, q - q ** -1))


def r21(m: LeggedMatrix) -> LeggedMatrix:
    """Swap the legs of a two-leg matrix."""
    return leg_embed(m, 2, (2, 1))


def braid_matrix(n: int, corrupt: Optional[Corruption] = None) -> LeggedMatrix:
    """R-hat = P R, the braided flip; entry ((a, b), (c, d)) is R_{(b, a), (c, d)}."""
    r = r_matrix(n, corrupt)
    return LeggedMatrix(2, n, {((row[1], row[0]), col): v for (row, col), v in r.entries.items()})


def flip_matrix(n: int) -> LeggedMatrix:
    return scalar_matrix(2, n, {((a, b), (b, a)): 1 for a in range(1, n + 1) for b in range(1, n + 1)})


# ============================================================================
# Residuals
# ============================================================================

def ybe_residual(n: int, corrupt: Optional[Corruption] = None) -> LeggedMatrix:
    """R12 R13 R23 - R23 R13 R12 on three legs."""
    r = r_matrix(n, corrupt)
    r12 = leg_embed(r, 3, (1, 2))
    r13 = leg_embed(r, 3, (1, 3))
    r23 = leg_embed(r, 3, (2, 3))
    return legged_mul(legged_mul(r12, r13), r23) - legged_mul(legged_mul(r23, r13), r12)


def inverse_residual(n: int, corrupt: Optional[Corruption] = None) -> LeggedMatrix:
    """R R^-1 - 1."""
    return legged_mul(r_matrix(n, corrupt), r_inverse(n)) - LeggedMatrix.identity(2, n)


def hecke_residual(n: int, corrupt: Optional[Corruption] = None) -> LeggedMatrix:
    """R-hat^2 + (q - q^-1) R-hat - 1; zero for the standard R."""
    b = braid_matrix(n, corrupt)
    return legged_mul(b, b) + b.scale(q - q ** -1) - LeggedMatrix.identity(2, n)


# ============================================================================
# Matrix equations with algebra entries
# ============================================================================

def rtt_sides(r: LeggedMatrix, a: LeggedMatrix, b: LeggedMatrix):
    """
    Both sides of R_12 A_13 B_23 = B_23 A_13 R_12.

    The third leg is the algebra itself, so A_1 = A (x) 1 and B_2 = 1 (x) B
    as two-leg matrices with algebra entries.
    """
    a1 = leg_embed(a, 2, 1)
    b2 = leg_embed(b, 2, 2)
    return legged_mul(legged_mul(r, a1), b2), legged_mul(legged_mul(b2, a1), r)


def reflection_sides(r: LeggedMatrix, z: LeggedMatrix):
    """Both sides of R_21 Z_13 R_12 Z_23 = Z_23 R_21 Z_13 R_12."""
    z1 = leg_embed(z, 2, 1)
    z2 = leg_embed(z, 2, 2)
    rr = r21(r)
    lhs = legged_mul(legged_mul(legged_mul(rr, z1), r), z2)
    rhs = legged_mul(legged_mul(legged_mul(z2, rr), z1), r)
    return lhs, rhs


# ============================================================================
# Conversion to exact matrices
# ============================================================================

def flat_index(index: MultiIndex, n: int) -> int:
    """Row-major position of a 1-based multi-index."""
    pos = 0
    for i in index:
        pos = pos * n + (i - 1)
    return pos


def to_domain_matrix(m: LeggedMatrix) -> DomainMatrix:
    """A scalar legged matrix as a sparse exact matrix acting on V^(x)legs."""
    size = m.dim ** m.legs
    cells = {}
    for (row, col), value in m.entries.items():
        if not value.is_scalar():
            raise DomainError("Only scalar legged matrices convert to exact matrices")
        cells[(flat_index(row, m.dim), flat_index(col, m.dim))] = value.constant_term()
    return linalg.sparse_matrix(cells, (size, size))
