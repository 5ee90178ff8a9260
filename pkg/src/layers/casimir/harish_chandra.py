"""
Harish-Chandra images of central elements of the reflection equation algebra.

hc(z) pushes z through the Cholesky map into O_T, keeps the monomials made
of diagonal letters only (the counit kills every strictly triangular
letter of a normal word upper . diagonal . lower) and rewrites the survivor
as a Laurent polynomial in T_1^2, ..., T_N^2.
"""

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from src.utils.logger import logger
from src.layers.algebra import linalg
from src.layers.algebra.errors import ConventionError, DomainError
from src.layers.algebra.ncalg import NcElement
from src.layers.algebra.qfield import ZERO, QScalar, as_scalar, q, to_text
from src.layers.qgroups.catalog import O_H, build
from src.layers.qgroups.hopf import central_failures
from src.layers.qgroups.maps import cholesky

from .traces import b_element, power_trace

Exponents = Tuple[int, ...]
Partition = Tuple[int, ...]


class HCImage:
    """A commutative Laurent polynomial in the squares T_1^2, ..., T_N^2."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Dict[Exponents, QScalar]] = None):
        self.n = n
        self.terms: Dict[Exponents, QScalar] = {}
        for exps, coeff in (terms or {}).items():
            coeff = as_scalar(coeff)
            if coeff:
                self.terms[tuple(exps)] = coeff

    @classmethod
    def constant(cls, n: int, c=1) -> "HCImage":
        return cls(n, {(0,) * n: c})

    @classmethod
    def monomial(cls, n: int, exps: Sequence[int], c=1) -> "HCImage":
        return cls(n, {tuple(exps): c})

    def __add__(self, other: "HCImage") -> "HCImage":
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            terms[exps] = terms.get(exps, ZERO) + c
        return HCImage(self.n, terms)

    def __sub__(self, other: "HCImage") -> "HCImage":
        return self + other.scale(-1)

    def scale(self, c) -> "HCImage":
        c = as_scalar(c)
        return HCImage(self.n, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other: "HCImage") -> "HCImage":
        terms: Dict[Exponents, QScalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                terms[key] = terms.get(key, ZERO) + c1 * c2
        return HCImage(self.n, terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, HCImage) and self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, weight: Sequence[int]) -> QScalar:
        """The character T_i^2 -> q^(-2 lambda_i)."""
        if len(weight) != self.n:
            raise DomainError(f"Weight {tuple(weight)} does not have {self.n} entries")
        total = ZERO
        for exps, c in self.terms.items():
            total += c * q ** (-2 * sum(e * l for e, l in zip(exps, weight)))
        return total

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for exps in sorted(self.terms, reverse=True):
            factors = []
            for i, e in enumerate(exps, start=1):
                if e == 1:
                    factors.append(f"T{i}^2")
                elif e:
                    factors.append(f"T{i}^{2 * e}")
            coeff = to_text(self.terms[exps])
            monomial = "*".join(factors)
            if not monomial:
                pieces.append(coeff)
            elif coeff == "1":
                pieces.append(monomial)
            else:
                pieces.append(f"({coeff})*{monomial}")
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"HCImage({self.to_text()})"


def hc(z: NcElement, n: int, check_central: bool = True) -> HCImage:
    """
    Harish-Chandra image of a central element of O_H(n).

    Raises:
        DomainError: when z fails the centrality check.
        ConventionError: when a surviving monomial has an odd power of some T_i.
    """
    if z.algebra not in (None, O_H):
        raise DomainError(f"hc takes elements of O_H, got {z.algebra}")
    if check_central:
        failures = central_failures(build(O_H, n), z)
        if failures:
            raise DomainError(f"Element does not commute with {', '.join(failures)}")
    image = cholesky(z, n)
    terms: Dict[Exponents, QScalar] = {}
    for word, coeff in image.terms.items():
        if any(g.name in ("Tp", "Tm") for g in word):
            continue
        exps = [0] * n
        for g in word:
            exps[g.indices[0] - 1] += 1 if g.name == "T" else -1
        if any(e % 2 for e in exps):
            raise ConventionError(f"Odd diagonal power {tuple(exps)} in the Harish-Chandra image")
        key = tuple(e // 2 for e in exps)
        terms[key] = terms.get(key, ZERO) + coeff
    return HCImage(n, terms)


# ============================================================================
# Cayley-Hamilton coefficients
# ============================================================================

def partitions(k: int, largest: Optional[int] = None) -> Iterator[Partition]:
    """Partitions of k in reverse-lexicographic order: (k), (k-1, 1), ..., (1, ..., 1)."""
    largest = k if largest is None else largest
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in partitions(k - first, first):
            yield (first,) + rest


def ch_target(k: int, n: int) -> HCImage:
    """q^(-2k) e_k(q^2 T_1^2, ..., q^(2N) T_N^2)."""
    total = HCImage(n)
    for subset in itertools.combinations(range(1, n + 1), k):
        exps = [1 if i in subset else 0 for i in range(1, n + 1)]
        total = total + HCImage.monomial(n, exps, q ** (2 * sum(subset) - 2 * k))
    return total


@dataclass
class CentralElement:
    """An element of O_H with its Harish-Chandra image and the generators it fails to commute with."""
    label: str
    body: NcElement
    hc: HCImage
    coefficients: Dict[Partition, QScalar] = field(default_factory=dict)
    central_failures: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def is_central(self) -> bool:
        return not self.central_failures


def power_trace_product(mu: Partition, n: int) -> NcElement:
    z = build(O_H, n)
    product = NcElement.one()
    for part in mu:
        product = z.nf(product * power_trace(part, n))
    return product


@lru_cache(maxsize=None)
def central_b(k: int, n: int) -> CentralElement:
    z = build(O_H, n)
    body = z.nf(b_element(k, n))
    failures = central_failures(z, body)
    image = hc(body, n, check_central=False)
    return CentralElement(f"B_{k}", body, image, central_failures=failures)


@lru_cache(maxsize=None)
def derive_C(k: int, n: int) -> CentralElement:
    """
    C_k as the combination of power-trace products p_mu (mu a partition of k)
    whose Harish-Chandra image is q^(-2k) e_k(q^2 T_1^2, ..., q^(2N) T_N^2).

    Raises:
        DomainError: unless 1 <= k <= n.
        InconsistencyError: when no combination matches.
    """
    if not 1 <= k <= n:
        raise DomainError(f"C_k needs 1 <= k <= N, got k={k}, N={n}")
    z = build(O_H, n)
    mus = list(partitions(k))
    notes = []
    for j in range(1, k + 1):
        failures = central_failures(z, power_trace(j, n))
        if failures:
            notes.append(f"p_{j} fails to commute with {', '.join(failures)}")
    bodies = [power_trace_product(mu, n) for mu in mus]
    images = [hc(body, n, check_central=False) for body in bodies]
    target = ch_target(k, n)

    keys = sorted({e for image in images for e in image.terms} | set(target.terms))
    index = {e: i for i, e in enumerate(keys)}
    cells = {(index[e], col): c for col, image in enumerate(images) for e, c in image.terms.items()}
    matrix = linalg.sparse_matrix(cells, (len(keys), len(mus)))
    solution, free = linalg.solve(matrix, {index[e]: c for e, c in target.terms.items()})
    if free:
        free_mus = ", ".join(str(mus[j]) for j in free)
        notes.append(f"C_{k} is not unique; free partitions {free_mus} set to zero")
        logger.warning(f"derive_C({k}, {n}): {len(free)} free coefficient(s)")

    coefficients = {mus[j]: c for j, c in solution.items()}
    body = NcElement()
    for mu, c in coefficients.items():
        body = body + bodies[mus.index(mu)].scale(c)
    body = z.nf(body)
    matched = HCImage(n)
    for mu, c in coefficients.items():
        matched = matched + images[mus.index(mu)].scale(c)
    notes.append(f"matched against q^(-2k) e_k; the q^(2k) normalization differs by {to_text(q ** (4 * k))}")
    logger.debug(f"derive_C({k}, {n}) coefficients: "
                 f"{ {str(mu): to_text(c) for mu, c in coefficients.items()} }")
    return CentralElement(f"C_{k}", body, matched, coefficients,
                          central_failures=central_failures(z, body), notes=notes)
