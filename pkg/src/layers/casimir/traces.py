"""
Quantum traces and the B_k family of the reflection equation algebra.
"""

import itertools
from functools import lru_cache
from typing import List

from src.layers.algebra.errors import DomainError
from src.layers.algebra.ncalg import LeggedMatrix, NcElement, legged_mul
from src.layers.algebra.qfield import q
from src.layers.qgroups.catalog import O_H, AlgebraHandle, build, inversions


class QMatrixQ:
    """Q = Diag(q^(N-i)) and its integer powers."""

    def __init__(self, n: int):
        self.n = n

    def diagonal(self, power: int = 1) -> List:
        return [q ** (power * (self.n - i)) for i in range(1, self.n + 1)]

    def matrix(self, power: int = 1) -> LeggedMatrix:
        return LeggedMatrix(1, self.n, {((i,), (i,)): NcElement.scalar(v)
                                        for i, v in enumerate(self.diagonal(power), start=1)})


def tr_weighted(w: LeggedMatrix, power: int = 2) -> NcElement:
    """sum_i (Q^power)_ii W_ii for a one-leg matrix W."""
    if w.legs != 1:
        raise DomainError(f"Weighted traces take one-leg matrices, got {w.legs} legs")
    total = NcElement()
    for i, weight in enumerate(QMatrixQ(w.dim).diagonal(power), start=1):
        total = total + w[i, i].scale(weight)
    return total


def reduced_power(h: AlgebraHandle, m: LeggedMatrix, k: int) -> LeggedMatrix:
    """M^k with entries kept in normal form."""
    result = LeggedMatrix.identity(m.legs, m.dim)
    for _ in range(k):
        result = legged_mul(result, m).map_entries(h.nf)
    return result


@lru_cache(maxsize=None)
def power_trace(k: int, n: int) -> NcElement:
    """p_k = Tr_{Q^2}(Z^k) in O_H(n), normal form."""
    z = build(O_H, n)
    return z.nf(tr_weighted(reduced_power(z, z.matrix("Z"), k)))


def excedances(perm) -> int:
    """#{i : s(i) < i} for a 0-based permutation tuple."""
    return sum(1 for i, image in enumerate(perm) if image < i)


@lru_cache(maxsize=None)
def b_element(k: int, n: int) -> NcElement:
    """
    B_k = sum over s in S_k of (-q)^-l(s) q^-e(s) Z_{k,s(k)} ... Z_{1,s(1)}.

    Raises:
        DomainError: unless 1 <= k <= n.
    """
    if not 1 <= k <= n:
        raise DomainError(f"B_k needs 1 <= k <= N, got k={k}, N={n}")
    z = build(O_H, n)
    total = NcElement()
    for perm in itertools.permutations(range(k)):
        weight = (-q) ** (-inversions(perm)) * q ** (-excedances(perm))
        term = NcElement.one()
        for i in reversed(range(k)):
            term = term * z.gen("Z", i + 1, perm[i] + 1)
        total = total + term.scale(weight)
    return total
