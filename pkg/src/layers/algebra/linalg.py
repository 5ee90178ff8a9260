"""
Exact linear algebra over Q(q).

Thin helpers around sympy's sparse ``DomainMatrix`` over the fraction field:
construction from coordinate dictionaries, Kronecker products, reduced row
echelon forms and everything derived from them (rank, kernels, solving,
picking independent vectors).
"""

from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from .errors import DomainError, InconsistencyError
from .qfield import ONE, QDomain, QScalar, as_scalar

Vector = Dict[Hashable, QScalar]


def sparse_matrix(entries: Dict[Tuple[int, int], QScalar], shape: Tuple[int, int]) -> DomainMatrix:
    rows: Dict[int, Dict[int, QScalar]] = {}
    for (i, j), value in entries.items():
        value = as_scalar(value)
        if value:
            rows.setdefault(i, {})[j] = value
    return DomainMatrix(rows, shape, QDomain)


def from_rows(rows: Dict[int, Dict[int, QScalar]], shape: Tuple[int, int]) -> DomainMatrix:
    clean = {i: {j: v for j, v in row.items() if v} for i, row in rows.items()}
    return DomainMatrix({i: row for i, row in clean.items() if row}, shape, QDomain)


def identity(n: int) -> DomainMatrix:
    return from_rows({i: {i: ONE} for i in range(n)}, (n, n))


def zeros(n: int, m: Optional[int] = None) -> DomainMatrix:
    return from_rows({}, (n, n if m is None else m))


def entries(m: DomainMatrix) -> Dict[int, Dict[int, QScalar]]:
    """Nonzero entries as a dict of row dicts."""
    rep = m.to_sparse().rep
    return {i: {j: v for j, v in row.items() if v} for i, row in rep.items() if row}


def entry(m: DomainMatrix, i: int, j: int) -> QScalar:
    return entries(m).get(i, {}).get(j, QDomain.zero)


def is_zero_matrix(m: DomainMatrix) -> bool:
    return not entries(m)


def equal(a: DomainMatrix, b: DomainMatrix) -> bool:
    return a.shape == b.shape and is_zero_matrix(a - b)


def scale(m: DomainMatrix, c) -> DomainMatrix:
    c = as_scalar(c)
    return from_rows({i: {j: c * v for j, v in row.items()} for i, row in entries(m).items()}, m.shape)


def kron(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    """Kronecker product; index (i, k) of the result is i * rows(b) + k."""
    (ra, ca), (rb, cb) = a.shape, b.shape
    ea, eb = entries(a), entries(b)
    rows: Dict[int, Dict[int, QScalar]] = {}
    for i, arow in ea.items():
        for j, x in arow.items():
            for k, brow in eb.items():
                target = rows.setdefault(i * rb + k, {})
                for l, y in brow.items():
                    target[j * cb + l] = x * y
    return from_rows(rows, (ra * rb, ca * cb))


def transpose(m: DomainMatrix) -> DomainMatrix:
    rows: Dict[int, Dict[int, QScalar]] = {}
    for i, row in entries(m).items():
        for j, v in row.items():
            rows.setdefault(j, {})[i] = v
    return from_rows(rows, (m.shape[1], m.shape[0]))


def apply(m: DomainMatrix, vector: Dict[int, QScalar]) -> Dict[int, QScalar]:
    """Matrix times a sparse column vector."""
    out: Dict[int, QScalar] = {}
    for i, row in entries(m).items():
        acc = QDomain.zero
        for j, v in row.items():
            x = vector.get(j)
            if x:
                acc += v * x
        if acc:
            out[i] = acc
    return out


# ============================================================================
# Echelon forms
# ============================================================================

def rref(m: DomainMatrix) -> Tuple[List[Tuple[int, Dict[int, QScalar]]], Tuple[int, ...]]:
    """
    Reduced row echelon form.

    Returns:
        (rows, pivots) where rows is a list of (pivot column, row dict) in
        increasing pivot order.
    """
    reduced, pivots = m.to_sparse().rref()
    rows = []
    for row in entries(reduced).values():
        lead = min(row)
        rows.append((lead, row))
    rows.sort(key=lambda pair: pair[0])
    return rows, tuple(pivots)


def rank(m: DomainMatrix) -> int:
    return len(rref(m)[1])


def nullspace(m: DomainMatrix) -> List[Dict[int, QScalar]]:
    """Basis of the right kernel, one vector per free column, in column order."""
    rows, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.shape[1]):
        if free in pivot_set:
            continue
        vector = {free: ONE}
        for lead, row in rows:
            value = row.get(free)
            if value:
                vector[lead] = -value
        basis.append(vector)
    return basis


def solve(a: DomainMatrix, b: Dict[int, QScalar]) -> Tuple[Dict[int, QScalar], List[int]]:
    """
    One solution of a x = b with free variables set to zero.

    Returns:
        (solution, free_columns)

    Raises:
        InconsistencyError: when no solution exists.
    """
    n_rows, n_cols = a.shape
    rows = {i: dict(row) for i, row in entries(a).items()}
    for i, value in b.items():
        if value:
            rows.setdefault(i, {})[n_cols] = value
    reduced, pivots = rref(from_rows(rows, (n_rows, n_cols + 1)))
    if n_cols in pivots:
        raise InconsistencyError("Linear system has no solution")
    solution = {}
    for lead, row in reduced:
        value = row.get(n_cols)
        if value:
            solution[lead] = value
    free = [j for j in range(n_cols) if j not in set(pivots)]
    return solution, free


def inverse(m: DomainMatrix) -> DomainMatrix:
    n, k = m.shape
    if n != k:
        raise DomainError(f"Cannot invert a {n}x{k} matrix")
    rows = {i: dict(row) for i, row in entries(m).items()}
    for i in range(n):
        rows.setdefault(i, {})[n + i] = ONE
    reduced, pivots = rref(from_rows(rows, (n, 2 * n)))
    if tuple(pivots[:n]) != tuple(range(n)):
        raise DomainError("Matrix is singular")
    out = {}
    for lead, row in reduced:
        out[lead] = {j - n: v for j, v in row.items() if j >= n}
    return from_rows(out, (n, n))


# ============================================================================
# Coordinates over arbitrary keys
# ============================================================================

def coordinate_matrix(vectors: Sequence[Vector], as_columns: bool = True):
    """
    Stack key-indexed vectors into a matrix.

    Returns:
        (matrix, keys) where keys lists the coordinate labels in index order.
    """
    keys: List[Hashable] = []
    index: Dict[Hashable, int] = {}
    for vector in vectors:
        for key in vector:
            if key not in index:
                index[key] = len(keys)
                keys.append(key)
    cells = {}
    for col, vector in enumerate(vectors):
        for key, value in vector.items():
            if as_columns:
                cells[(index[key], col)] = value
            else:
                cells[(col, index[key])] = value
    shape = (len(keys), len(vectors)) if as_columns else (len(vectors), len(keys))
    return sparse_matrix(cells, shape), keys


def independent_subset(vectors: Sequence[Vector]) -> List[int]:
    """Indices of a maximal independent subset, chosen greedily in input order."""
    if not vectors:
        return []
    matrix, keys = coordinate_matrix(vectors, as_columns=True)
    if not keys:
        return []
    return list(rref(matrix)[1])


def vector_rank(vectors: Sequence[Vector]) -> int:
    return len(independent_subset(vectors))
