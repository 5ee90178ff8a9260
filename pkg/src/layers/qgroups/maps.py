"""
Algebra maps between catalog algebras.

    cholesky   O_H   -> O_T           Z -> T*T
    chi_x      O_H   -> O_GLR         Z -> X*X
    qr         O_GLR -> O_U (x) O_T   (pi_U (x) pi_T) Delta
    uq_iso     U_qgl -> O_T           K_i -> T_i^-1, E_i, F_i -> products of T letters
    coact_ad   O_H   -> O_H (x) O_U   Z -> U*ZU

Images of generators are computed once per N and cached; elements are
mapped by multiplicative substitution with normal forms after each letter.
"""

import itertools
from functools import lru_cache
from typing import Dict, List

from sympy.polys.matrices import DomainMatrix

from src.utils.logger import logger
from src.layers.algebra import linalg
from src.layers.algebra.errors import ConventionError, DomainError
from src.layers.algebra.ncalg import GenId, LeggedMatrix, NcElement, generator_matrix, leg_embed, legged_mul
from src.layers.algebra.qfield import ONE, q
from src.layers.algebra.rewrite import TensorPresentation
from src.layers.algebra.rmatrix import r_inverse, r_matrix, reflection_sides

from .catalog import O_GLR, O_H, O_T, O_U, U_QGL, AlgebraHandle, antipode_matrix, build


def _expect(a: NcElement, kind: str):
    if a.algebra not in (None, kind):
        raise DomainError(f"Expected an element of {kind}, got {a.algebra}")


def _star_matrix(h: AlgebraHandle, m: LeggedMatrix) -> LeggedMatrix:
    """(M*)_ij = (M_ji)*."""
    return generator_matrix(m.dim, lambda i, j: h.star(m[j, i]) if m[j, i] else None)


def _map(a: NcElement, images: Dict[GenId, NcElement], reduce) -> NcElement:
    def image(g: GenId) -> NcElement:
        try:
            return images[g]
        except KeyError:
            raise DomainError(f"Generator {g.label()} has no image") from None

    return a.substitute(image, reduce=reduce)


# ============================================================================
# Cholesky and X*X
# ============================================================================

def star_square(h: AlgebraHandle, name: str) -> LeggedMatrix:
    """M*M for a generating matrix M of a *-algebra, in normal form."""
    m = h.matrix(name)
    return legged_mul(_star_matrix(h, m), m).map_entries(h.nf)


@lru_cache(maxsize=None)
def _cholesky_images(n: int) -> Dict[GenId, NcElement]:
    t, z = build(O_T, n), build(O_H, n)
    tt = star_square(t, "T")
    logger.debug(f"Cholesky images for N={n} computed")
    return {g: tt[g.indices[0], g.indices[1]] for g in z.presentation.alphabet}


def cholesky(z: NcElement, n: int) -> NcElement:
    """
    Image of z under Z -> T*T, in O_T normal form.

    Raises:
        FuelError: when an intermediate word exceeds the degree cap.
    """
    _expect(z, O_H)
    t = build(O_T, n)
    return _map(z, _cholesky_images(n), t.nf)


@lru_cache(maxsize=None)
def _chi_x_images(n: int) -> Dict[GenId, NcElement]:
    g, z = build(O_GLR, n), build(O_H, n)
    xx = star_square(g, "X")
    return {letter: xx[letter.indices[0], letter.indices[1]] for letter in z.presentation.alphabet}


def chi_x(z: NcElement, n: int) -> NcElement:
    """Image of z under Z -> X*X in O_GLR."""
    _expect(z, O_H)
    return _map(z, _chi_x_images(n), build(O_GLR, n).nf)


def reflection_failures(target: AlgebraHandle, images: Dict[GenId, NcElement]) -> List[str]:
    """Entries of the reflection equation not sent to zero by a substitution Z -> M."""
    m = generator_matrix(target.n, lambda i, j: images[GenId(O_H, "Z", (i, j))])
    lhs, rhs = reflection_sides(r_matrix(target.n), m)
    failures = []
    for key, value in (lhs - rhs).entry_items():
        if not target.is_zero(value):
            failures.append(f"entry {key}")
    return failures


def cholesky_failures(n: int) -> List[str]:
    return reflection_failures(build(O_T, n), _cholesky_images(n))


def chi_x_failures(n: int) -> List[str]:
    return reflection_failures(build(O_GLR, n), _chi_x_images(n))


def equivariance_failures(n: int) -> List[str]:
    """R_12 T*_23 T_23 R_12^-1 = T^-1_13 T*_23 T_23 T_13 in O_T."""
    t = build(O_T, n)
    tt2 = leg_embed(star_square(t, "T"), 2, 2)
    r, r_inv = r_matrix(n), r_inverse(n)
    t1 = leg_embed(t.matrix("T"), 2, 1)
    t1_inv = leg_embed(t.matrix("T_inv"), 2, 1)
    lhs = legged_mul(legged_mul(r, tt2), r_inv)
    rhs = legged_mul(legged_mul(t1_inv, tt2), t1)
    return [f"entry {key}" for key, value in (lhs - rhs).entry_items() if not t.is_zero(value)]


# ============================================================================
# QR
# ============================================================================

@lru_cache(maxsize=None)
def _qr_images(n: int) -> Dict[GenId, NcElement]:
    g, u, t = build(O_GLR, n), build(O_U, n), build(O_T, n)
    um = u.matrix("U")
    tp, tm = t.matrix("T"), t.matrix("Tm")
    images = {}
    for letter in g.presentation.alphabet:
        if letter.name in ("X", "Y"):
            i, j = letter.indices
            tri = tp if letter.name == "X" else tm
            total = NcElement()
            for k in range(1, n + 1):
                if tri[k, j]:
                    total = total + um[i, k].in_slot(1) * tri[k, j].in_slot(2)
            images[letter] = total
        else:
            # Det(T+) = T_1...T_N and Det(T-) = T_1^-1...T_N^-1
            diagonal = "Tinv" if letter.name == "DXinv" else "T"
            product = NcElement.one()
            for i in range(1, n + 1):
                product = product * t.gen(diagonal, i)
            images[letter] = NcElement.gen(u.inverses["U"]).in_slot(1) * product.in_slot(2)
    return images


@lru_cache(maxsize=None)
def qr_carrier(n: int) -> TensorPresentation:
    return TensorPresentation(build(O_U, n).presentation, build(O_T, n).presentation)


def qr(x: NcElement, n: int) -> NcElement:
    """(pi_U (x) pi_T) Delta(x), reduced in O_U (x) O_T."""
    _expect(x, O_GLR)
    return _map(x, _qr_images(n), qr_carrier(n).normal_form)


def qr_injectivity(n: int, degree: int = 2) -> Dict[str, int]:
    """
    Rank of qr on the span of irreducible O_GLR words of degree <= ``degree``.

    The map is injective there when rank equals dimension.
    """
    g = build(O_GLR, n)
    words = [w for d in range(degree + 1) for w in g.presentation.irreducible_words(d)]
    images = [qr(NcElement.word(w), n).terms for w in words]
    rank = linalg.vector_rank(images)
    logger.debug(f"qr on degree <= {degree}: dimension {len(words)}, rank {rank}")
    return {"dimension": len(words), "rank": rank, "kernel": len(words) - rank}


# ============================================================================
# U_q(gl_N) -> O_T
# ============================================================================

def _uq_generator_images(n: int) -> Dict[GenId, NcElement]:
    t = build(O_T, n)
    c = ONE / (q - q ** -1)
    images = {}
    for i in range(1, n + 1):
        images[GenId(U_QGL, "K", (i,))] = t.gen("Tinv", i)
        images[GenId(U_QGL, "Kinv", (i,))] = t.gen("T", i)
    for i in range(1, n):
        images[GenId(U_QGL, "E", (i,))] = (t.gen("T", i + 1) * t.gen("Tm", i + 1, i)).scale(c)
        images[GenId(U_QGL, "F", (i,))] = (t.gen("Tp", i, i + 1) * t.gen("Tinv", i + 1)).scale(-c)
    return images


def uq_iso_failures(n: int) -> List[str]:
    """Defining relations of U_qgl(n) whose image in O_T(n) is not zero."""
    u, t = build(U_QGL, n), build(O_T, n)
    images = _uq_generator_images(n)
    failures = []
    for index, rel in enumerate(u.presentation.relations):
        if not t.is_zero(_map(rel, images, t.nf)):
            failures.append(f"relation {index}: {u.text(rel)}")
    return failures


@lru_cache(maxsize=None)
def _uq_images(n: int) -> Dict[GenId, NcElement]:
    failures = uq_iso_failures(n)
    if failures:
        raise ConventionError(f"U_qgl({n}) -> O_T({n}) does not respect {failures[0]}")
    return _uq_generator_images(n)


def uq_iso(a: NcElement, n: int) -> NcElement:
    """
    Image of a in O_T under the isomorphism onto the triangular group.

    Raises:
        ConventionError: when a defining relation is not sent to zero.
    """
    _expect(a, U_QGL)
    return _map(a, _uq_images(n), build(O_T, n).nf)


def uq_star_failures(n: int) -> List[str]:
    """Generators g of U_qgl with iso(g*) != iso(g)*."""
    u, t = build(U_QGL, n), build(O_T, n)
    failures = []
    for g in u.presentation.alphabet:
        a = NcElement.gen(g)
        if not t.equal(uq_iso(u.star(a), n), t.star(uq_iso(a, n))):
            failures.append(g.label())
    return failures


# ============================================================================
# Adjoint coaction
# ============================================================================

@lru_cache(maxsize=None)
def coact_carrier(n: int) -> TensorPresentation:
    return TensorPresentation(build(O_H, n).presentation, build(O_U, n).presentation)


@lru_cache(maxsize=None)
def _coact_images(n: int) -> Dict[GenId, NcElement]:
    z, u = build(O_H, n), build(O_U, n)
    s = antipode_matrix(u, "U")
    carrier = coact_carrier(n)
    images = {}
    for letter in z.presentation.alphabet:
        i, j = letter.indices
        total = NcElement()
        for k, l in itertools.product(range(1, n + 1), repeat=2):
            total = total + z.gen("Z", k, l).in_slot(1) * (s[i, k] * u.gen("U", l, j)).in_slot(2)
        images[letter] = carrier.normal_form(total)
    return images


def coact_ad(z: NcElement, n: int) -> NcElement:
    """Z_ij -> sum_kl Z_kl (x) (U*)_ik U_lj in O_H (x) O_U, where (U*)_ik = S(U)_ik."""
    _expect(z, O_H)
    return _map(z, _coact_images(n), coact_carrier(n).normal_form)


def coact_counit_failures(n: int) -> List[str]:
    """(id (x) eps) coact_ad(Z_ij) = Z_ij."""
    z, u = build(O_H, n), build(O_U, n)
    failures = []
    for letter, image in _coact_images(n).items():
        total = NcElement()
        for word, coeff in image.terms.items():
            left = tuple(g.plain() for g in word if g.slot == 1)
            right = NcElement.word(tuple(g.plain() for g in word if g.slot == 2))
            total = total + NcElement({left: coeff * u.counit(right)})
        if not z.equal(total, NcElement.gen(letter)):
            failures.append(letter.label())
    return failures


def coact_failures(n: int) -> List[str]:
    """Reflection equation entries whose coaction image does not vanish."""
    images = _coact_images(n)
    carrier = coact_carrier(n)
    m = generator_matrix(n, lambda i, j: images[GenId(O_H, "Z", (i, j))])
    lhs, rhs = reflection_sides(r_matrix(n), m)
    return [f"entry {key}" for key, value in (lhs - rhs).entry_items() if not carrier.is_zero(value)]


# ============================================================================
# Vector representation of O_T
# ============================================================================

@lru_cache(maxsize=None)
def vector_representation(n: int) -> Dict[GenId, DomainMatrix]:
    """
    T+ -> R and T- -> R_21^-1 on V = Q(q)^n.

    The (i, k) entry of the image of T+_ab is R_{(a,i),(b,k)}; for T-_ab it
    is R^-1_{(i,a),(k,b)}.
    """
    t = build(O_T, n)
    r, r_inv = r_matrix(n), r_inverse(n)
    images = {}
    for name in ("T", "Tm"):
        m = t.matrix(name)
        for ((a,), (b,)), entry in m.entry_items():
            (word,) = entry.terms
            cells = {}
            for i, k in itertools.product(range(1, n + 1), repeat=2):
                value = r[(a, i), (b, k)] if name == "T" else r_inv[(i, a), (k, b)]
                if value:
                    cells[(i - 1, k - 1)] = value.constant_term()
            images[word[0]] = linalg.sparse_matrix(cells, (n, n))
    return images


def represent(a: NcElement, images: Dict[GenId, DomainMatrix], size: int) -> DomainMatrix:
    """Matrix of an element under a letter -> matrix assignment."""
    total = linalg.zeros(size)
    for word, coeff in a.terms.items():
        product = linalg.identity(size)
        for g in word:
            product = product * images[g]
        total = total + linalg.scale(product, coeff)
    return total


def vector_rep_failures(n: int) -> List[str]:
    """Defining relations of O_T not annihilated by the vector representation."""
    t = build(O_T, n)
    images = vector_representation(n)
    return [f"relation {index}" for index, rel in enumerate(t.presentation.relations)
            if not linalg.is_zero_matrix(represent(rel, images, n))]
