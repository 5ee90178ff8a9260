"""
Exact arithmetic in the coefficient field Q(q).

Scalars are elements of the rational-function field ``field("q", ZZ)`` from
sympy's sparse polynomial machinery; numerator and denominator are kept
coprime by sympy, and this module adds the canonical text form, q-integers,
Gaussian binomials and exact specialization at positive rationals.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from random import Random
from typing import Dict, Iterable, Tuple, Union

from sympy import cancel, fraction
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)
from sympy.polys.domains import ZZ
from sympy.polys.fields import FracElement, field

from .errors import DomainError, PoleError

QField, q = field("q", ZZ)
QDomain = QField.to_domain()
# element class of QField (FracField.dtype is not a type on sympy >= 1.13)
QScalar = FracElement
Q_SYMBOL = QField.symbols[0]

ZERO = QField.zero
ONE = QField.one

ScalarLike = Union[int, Fraction, str, "QScalar"]

_TRANSFORMS = standard_transformations + (convert_xor,)


# ============================================================================
# Construction and canonical form
# ============================================================================

def as_scalar(value: ScalarLike) -> QScalar:
    """Coerce ints, Fractions and text into the field."""
    if isinstance(value, QScalar):
        if value.field != QField:
            raise DomainError(f"Scalar from a foreign field: {value!r}")
        return value
    if isinstance(value, bool):
        raise DomainError(f"Not a scalar: {value!r}")
    if isinstance(value, int):
        return QField(value)
    if isinstance(value, Fraction):
        return QField(value.numerator) / QField(value.denominator)
    if isinstance(value, str):
        return parse_scalar(value)
    raise DomainError(f"Cannot coerce {value!r} into Q(q)")


def q_power(k: int) -> QScalar:
    """q**k for any integer k."""
    return q ** k


def _poly_terms(poly) -> Dict[int, int]:
    return {monom[0]: int(coeff) for monom, coeff in poly.items() if coeff}


@dataclass(frozen=True)
class LaurentPoly:
    """Immutable view of a Laurent polynomial as sorted (exponent, coefficient) pairs."""

    coeffs: Tuple[Tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, terms: Dict[int, int]) -> "LaurentPoly":
        return cls(tuple(sorted((e, c) for e, c in terms.items() if c)))

    def as_dict(self) -> Dict[int, int]:
        return dict(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self) -> int:
        return self.coeffs[0][0]

    def degree(self) -> int:
        return self.coeffs[-1][0]

    def to_scalar(self) -> QScalar:
        total = ZERO
        for e, c in self.coeffs:
            total += c * q ** e
        return total

    def evaluate(self, q0: Fraction) -> Fraction:
        return sum((Fraction(c) * q0 ** e for e, c in self.coeffs), Fraction(0))

    def substitute_inverse(self) -> "LaurentPoly":
        return LaurentPoly.from_dict({-e: c for e, c in self.coeffs})

    def __str__(self) -> str:
        return _poly_text(self.as_dict())


def _poly_text(terms: Dict[int, int]) -> str:
    if not terms:
        return "0"
    pieces = []
    for e in sorted(terms, reverse=True):
        c = terms[e]
        if e == 0:
            body = str(abs(c))
        else:
            power = "q" if e == 1 else f"q^{e}"
            body = power if abs(c) == 1 else f"{abs(c)}*{power}"
        pieces.append(("-" if c < 0 else "+", body))
    head_sign, head = pieces[0]
    text = ("-" if head_sign == "-" else "") + head
    for sign, body in pieces[1:]:
        text += f"{sign}{body}"
    return text


def canonical_parts(a: ScalarLike) -> Tuple[LaurentPoly, LaurentPoly]:
    """
    Numerator and denominator of ``a`` as polynomials in q.

    The pair is reduced, the zero scalar is 0/1, and the lowest-degree
    coefficient of the denominator is positive.
    """
    a = as_scalar(a)
    num = _poly_terms(a.numer)
    den = _poly_terms(a.denom)
    if not num:
        return LaurentPoly(), LaurentPoly.from_dict({0: 1})
    if den[min(den)] < 0:
        num = {e: -c for e, c in num.items()}
        den = {e: -c for e, c in den.items()}
    return LaurentPoly.from_dict(num), LaurentPoly.from_dict(den)


def to_text(a: ScalarLike) -> str:
    """Canonical text, e.g. ``(q^2+1)/(q)``; polynomials print without a denominator."""
    num, den = canonical_parts(a)
    if den.coeffs == ((0, 1),):
        return str(num)
    return f"({num})/({den})"


def parse_scalar(text: str) -> QScalar:
    """Parse the text grammar of :func:`to_text` (and any rational expression in q)."""
    try:
        expr = parse_expr(text, local_dict={"q": Q_SYMBOL}, transformations=_TRANSFORMS)
        num, den = fraction(cancel(expr))
        return QField.from_expr(num) / QField.from_expr(den)
    except (SyntaxError, TypeError, ZeroDivisionError) as e:
        raise DomainError(f"Cannot parse scalar {text!r}: {e}") from e
    except Exception as e:  # sympy coercion failures share no common base
        raise DomainError(f"Not an element of Q(q): {text!r} ({e})") from e


def is_laurent(a: ScalarLike) -> bool:
    """True when the reduced denominator is a monomial q^k."""
    _, den = canonical_parts(a)
    return len(den.coeffs) == 1 and den.coeffs[0][1] == 1


def laurent_view(a: ScalarLike) -> LaurentPoly:
    """The scalar as a Laurent polynomial; DomainError when it is not one."""
    if not is_laurent(a):
        raise DomainError(f"{to_text(a)} is not a Laurent polynomial")
    num, den = canonical_parts(a)
    shift = den.coeffs[0][0]
    return LaurentPoly.from_dict({e - shift: c for e, c in num.coeffs})


def substitute_inverse(a: ScalarLike) -> QScalar:
    """The image of ``a`` under q -> q^{-1}."""
    num, den = canonical_parts(a)
    return num.substitute_inverse().to_scalar() / den.substitute_inverse().to_scalar()


# ============================================================================
# Field operations
# ============================================================================

def qs_arith(a: ScalarLike, b: ScalarLike = None, op: str = "add"):
    """
    Exact field arithmetic dispatched by name.

    Args:
        a: First operand.
        b: Second operand (ignored for neg and inv).
        op: One of add, mul, neg, inv, eq.

    Returns:
        QScalar, or bool for eq.
    """
    a = as_scalar(a)
    if op == "neg":
        return -a
    if op == "inv":
        if not a:
            raise DomainError("Inversion of zero")
        return ONE / a
    b = as_scalar(b)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "eq":
        return a == b
    raise DomainError(f"Unknown scalar operation {op!r}")


def inverse(a: ScalarLike) -> QScalar:
    return qs_arith(a, op="inv")


# ============================================================================
# q-combinatorics
# ============================================================================

@lru_cache(maxsize=None)
def q_int(n: int) -> QScalar:
    """The q-integer [n] = (q^n - q^-n)/(q - q^-1)."""
    if n < 1:
        raise DomainError(f"q_int requires n >= 1, got {n}")
    value = (q ** n - q ** (-n)) / (q - q ** (-1))
    if not is_laurent(value):
        raise DomainError(f"[{n}] did not divide exactly")
    return value


@lru_cache(maxsize=None)
def q_factorial(n: int) -> QScalar:
    if n < 0:
        raise DomainError(f"q_factorial requires n >= 0, got {n}")
    value = ONE
    for k in range(1, n + 1):
        value *= q_int(k)
    return value


@lru_cache(maxsize=None)
def q_binom(n: int, k: int) -> QScalar:
    """Gaussian binomial; asserts the result is a Laurent polynomial."""
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"q_binom needs 0 <= k <= n, got n={n}, k={k}")
    value = q_factorial(n) / (q_factorial(k) * q_factorial(n - k))
    if not is_laurent(value):
        raise DomainError(f"q_binom({n},{k}) is not a Laurent polynomial")
    return value


def elementary_symmetric(k: int, values: Iterable[ScalarLike]) -> QScalar:
    """e_k of a finite list of scalars."""
    values = [as_scalar(v) for v in values]
    e = [ONE] + [ZERO] * k
    for v in values:
        for j in range(k, 0, -1):
            e[j] += e[j - 1] * v
    return e[k]


# ============================================================================
# Specialization
# ============================================================================

def specialize(a: ScalarLike, q0: Union[Fraction, int, str]) -> Fraction:
    """
    Exact value of ``a`` at q = q0 > 0.

    Raises:
        PoleError: when the reduced denominator vanishes at q0.
    """
    q0 = Fraction(q0)
    if q0 <= 0:
        raise DomainError(f"Specialization point must be positive, got {q0}")
    num, den = canonical_parts(as_scalar(a))
    den_value = den.evaluate(q0)
    if den_value == 0:
        raise PoleError(f"{to_text(a)} has a pole at q={q0}")
    return num.evaluate(q0) / den_value


def to_float(a: ScalarLike, q0: Union[Fraction, int, str]) -> float:
    return float(specialize(a, q0))


def random_scalar(rng: Random, max_degree: int = 2, max_coeff: int = 3,
                  rational: bool = True) -> QScalar:
    """Random nonzero sample for property tests."""
    def poly():
        value = ZERO
        while not value:
            terms = {e: rng.randint(-max_coeff, max_coeff)
                     for e in range(-max_degree, max_degree + 1)}
            value = LaurentPoly.from_dict(terms).to_scalar()
        return value

    if not rational:
        return poly()
    return poly() / poly()
