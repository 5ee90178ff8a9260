"""
Verifiers for the Cayley-Hamilton identity of the reflection equation
algebra and its companions. Every comparison is an exact normal-form test.
"""

from fractions import Fraction
from typing import Dict, Optional

from src.config import config
from src.utils.logger import logger
from src.layers.algebra import linalg
from src.layers.algebra.errors import ConventionError, DomainError
from src.layers.algebra.ncalg import LeggedMatrix, NcElement, commutator, leg_embed, legged_mul, multi_indices
from src.layers.algebra.qfield import ONE, ZERO, q, specialize, to_text
from src.layers.algebra.rmatrix import braid_matrix, flat_index, to_domain_matrix
from src.layers.qgroups.catalog import O_GLR, O_H, O_T, AlgebraHandle, build
from src.layers.qgroups.maps import chi_x, cholesky, star_square

from .base import IdentityResult
from .harish_chandra import central_b, derive_C, hc
from .traces import b_element, power_trace, reduced_power, tr_weighted


def _nonzero_entries(h: AlgebraHandle, m: LeggedMatrix) -> Dict[str, str]:
    return {f"{key}": h.text(h.nf(value)) for key, value in m.entry_items() if not h.is_zero(value)}


# ============================================================================
# Cayley-Hamilton
# ============================================================================

def ch_polynomial(n: int) -> LeggedMatrix:
    """Z^N - C_1 Z^(N-1) + ... + (-1)^N C_N, entries in O_H normal form."""
    z = build(O_H, n)
    zm = z.matrix("Z")
    total = reduced_power(z, zm, n)
    for k in range(1, n + 1):
        c = derive_C(k, n).body
        power = reduced_power(z, zm, n - k)
        term = legged_mul(LeggedMatrix(1, n, {((i,), (i,)): c for i in range(1, n + 1)}), power)
        total = total + term.scale((-1) ** k)
    return total.map_entries(z.nf)


def verify_ch(n: int, pushforward: Optional[bool] = None) -> IdentityResult:
    """
    F(Z) = 0 entrywise in O_H; at N=2 also after Z -> T*T and Z -> X*X.

    Args:
        n: matrix size.
        pushforward: check the images in O_T and O_GLR (default: only at N=2).
    """
    result = IdentityResult("cayley-hamilton")
    z = build(O_H, n)
    for k in range(1, n + 1):
        element = derive_C(k, n)
        result.metrics[f"C_{k}"] = z.text(element.body)
        result.notes.extend(element.notes)
        result.extend(f"C_{k} centrality", element.central_failures)
    if n >= 2:
        scale = q ** (n * (n - 1))
        if not z.equal(derive_C(n, n).body, b_element(n, n).scale(scale)):
            result.fail(f"C_{n} != q^{n * (n - 1)} B_{n}")
    poly = ch_polynomial(n)
    residual = _nonzero_entries(z, poly)
    if residual:
        result.fail(f"nonzero entries {sorted(residual)}")
        result.metrics["residual"] = residual
    if pushforward is None:
        pushforward = n == 2
    if pushforward:
        t = build(O_T, n)
        for key, value in poly.entry_items():
            if not t.is_zero(cholesky(value, n)):
                result.fail(f"T*T image of entry {key} is not zero")
        g = build(O_GLR, n)
        for key, value in poly.entry_items():
            if not g.is_zero(chi_x(value, n)):
                result.fail(f"X*X image of entry {key} is not zero")
    return result


def verify_hc_multiplicative(n: int) -> IdentityResult:
    """hc(z w) = hc(z) hc(w) on samples from the B_k and power traces."""
    result = IdentityResult("hc-homomorphism")
    z = build(O_H, n)
    samples = {"p_1": power_trace(1, n), f"B_{n}": z.nf(b_element(n, n))}
    images = {label: hc(body, n, check_central=False) for label, body in samples.items()}
    for label, image in images.items():
        for exps in image.terms:
            if any(e < 0 for e in exps) and label.startswith("B"):
                result.fail(f"hc({label}) has negative exponents")
    labels = list(samples)
    for i, a in enumerate(labels):
        for b in labels[i:]:
            product = hc(z.nf(samples[a] * samples[b]), n, check_central=False)
            if product != images[a] * images[b]:
                result.fail(f"hc({a} {b}) != hc({a}) hc({b})")
    for k in range(1, n + 1):
        element = central_b(k, n)
        expected = [1] * k + [0] * (n - k)
        result.metrics[f"hc(B_{k})"] = element.hc.to_text()
        if element.hc.terms != {tuple(expected): ONE}:
            result.fail(f"hc(B_{k}) = {element.hc.to_text()}")
    return result


# ============================================================================
# Power traces in O_GLR
# ============================================================================

def verify_newton_centrality(n: int, kmax: int = 1) -> IdentityResult:
    """
    [Tr_{Q^2}((X*X)^k), g] = 0 and [Tr_{Q^-2}((XX*)^k), g] = 0 for all
    generators g of O_GLR and k <= kmax. The trace symmetry
    q^(1-N) Tr_{Q^2}((X*X)^k) = q^(N-1) Tr_{Q^-2}((XX*)^k) is reported only.
    """
    result = IdentityResult("newton-centrality")
    g = build(O_GLR, n)
    x = g.matrix("X")
    xsx = star_square(g, "X")
    xs = LeggedMatrix(1, n, {((i,), (j,)): g.star(x[j, i]) for i in range(1, n + 1) for j in range(1, n + 1)})
    xxs = legged_mul(x, xs).map_entries(g.nf)
    symmetric = {}
    for k in range(0, kmax + 1):
        left = g.nf(tr_weighted(reduced_power(g, xsx, k), 2))
        right = g.nf(tr_weighted(reduced_power(g, xxs, k), -2))
        for label, trace in ((f"Tr_Q2((X*X)^{k})", left), (f"Tr_Q-2((XX*)^{k})", right)):
            for letter in g.presentation.alphabet:
                if not g.is_zero(commutator(trace, NcElement.gen(letter))):
                    result.fail(f"{label} does not commute with {letter.label()}")
        difference = left.scale(q ** (1 - n)) - right.scale(q ** (n - 1))
        symmetric[k] = g.is_zero(difference)
    result.metrics["trace_symmetry"] = symmetric
    if not all(symmetric.values()):
        result.notes.append("trace symmetry does not hold for every k; reported only")
    return result


# ============================================================================
# The L family
# ============================================================================

def _braid_on(n_legs: int, n: int, i: int) -> LeggedMatrix:
    """R-hat on legs i, i+1 of an n_legs-leg matrix over V = Q(q)^n."""
    return leg_embed(braid_matrix(n), n_legs, (i, i + 1))


def l_family(n: int) -> Dict[int, LeggedMatrix]:
    """
    L_k = F_k^* Z_N F_k with F_k = R-hat_{N-1,N} ... R-hat_{k,k+1} on N legs;
    R-hat is symmetric, so F_k^* = R-hat_{k,k+1} ... R-hat_{N-1,N}.
    """
    z = build(O_H, n)
    zn = leg_embed(z.matrix("Z"), n, n)
    family = {}
    for k in range(1, n + 1):
        f = LeggedMatrix.identity(n, n)
        f_star = LeggedMatrix.identity(n, n)
        for i in range(n - 1, k - 1, -1):
            f = legged_mul(f, _braid_on(n, n, i))
            f_star = legged_mul(_braid_on(n, n, i), f_star)
        family[k] = legged_mul(legged_mul(f_star, zn), f).map_entries(z.nf)
    return family


def verify_L_family(n: int) -> IdentityResult:
    """Pairwise commutation of the L_k and L_N ... L_k = (Z_N F_k)^(N-k+1)."""
    result = IdentityResult("l-family")
    z = build(O_H, n)
    family = l_family(n)
    zn = leg_embed(z.matrix("Z"), n, n)
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            bracket = legged_mul(family[a], family[b]) - legged_mul(family[b], family[a])
            bad = _nonzero_entries(z, bracket)
            if bad:
                result.fail(f"[L_{a}, L_{b}] at {sorted(bad)[0]}")
    for k in range(1, n + 1):
        product = LeggedMatrix.identity(n, n)
        for j in range(n, k - 1, -1):
            product = legged_mul(product, family[j]).map_entries(z.nf)
        f = LeggedMatrix.identity(n, n)
        for i in range(n - 1, k - 1, -1):
            f = legged_mul(f, _braid_on(n, n, i))
        base = legged_mul(zn, f)
        power = LeggedMatrix.identity(n, n)
        for _ in range(n - k + 1):
            power = legged_mul(power, base).map_entries(z.nf)
        bad = _nonzero_entries(z, product - power)
        if bad:
            result.fail(f"product law for k={k} at {sorted(bad)[0]}")
    return result


# ============================================================================
# B_N slice
# ============================================================================

def antisymmetric_vector(n: int) -> Dict[int, object]:
    """
    The joint (-q)-eigenvector of the R-hat_{i,i+1} on V^(x)N, normalized so that
    the coordinate of e_1 (x) ... (x) e_N is one.

    Raises:
        ConventionError: when the joint eigenspace is not one-dimensional.
    """
    size = n ** n
    blocks = {}
    row_offset = 0
    for i in range(1, n):
        shifted = to_domain_matrix(_braid_on(n, n, i))
        for r, row in linalg.entries(shifted).items():
            for c, value in row.items():
                blocks[(row_offset + r, c)] = value
        for r in range(size):
            blocks[(row_offset + r, r)] = blocks.get((row_offset + r, r), ZERO) + q
        row_offset += size
    if n == 1:
        return {0: ONE}
    kernel = linalg.nullspace(linalg.sparse_matrix(blocks, (row_offset, size)))
    if len(kernel) != 1:
        raise ConventionError(f"The joint (-q)-eigenspace has dimension {len(kernel)}")
    (vector,) = kernel
    anchor = flat_index(tuple(range(1, n + 1)), n)
    if not vector.get(anchor):
        anchor = max(vector)
    scale = ONE / vector[anchor]
    return {i: v * scale for i, v in vector.items()}


def verify_BN_slice(n: int, q0: Optional[Fraction] = None) -> IdentityResult:
    """
    <v| (Z_N R-hat_{N-1,N} ... R-hat_{12})^N |v> / <v|v> = lambda B_N with a
    scalar lambda positive at q0.
    """
    q0 = Fraction(q0 if q0 is not None else config.numeric.q0)
    result = IdentityResult("bn-slice")
    z = build(O_H, n)
    vector = antisymmetric_vector(n)
    index_of = {flat_index(idx, n): idx for idx in multi_indices(n, n)}
    base = leg_embed(z.matrix("Z"), n, n)
    for i in range(n - 1, 0, -1):
        base = legged_mul(base, _braid_on(n, n, i))
    power = LeggedMatrix.identity(n, n)
    for _ in range(n):
        power = legged_mul(power, base).map_entries(z.nf)
    norm = sum((v * v for v in vector.values()), ZERO)
    slice_ = NcElement()
    for a, va in vector.items():
        for b, vb in vector.items():
            entry = power[index_of[a], index_of[b]]
            if entry:
                slice_ = slice_ + entry.scale(va * vb)
    slice_ = z.nf(slice_.scale(ONE / norm))
    bn = z.nf(b_element(n, n))
    if bn.is_zero():
        raise DomainError("B_N vanishes")
    lead = max(bn.terms, key=z.presentation.word_key)
    ratio = slice_.coefficient(lead) / bn.coefficient(lead)
    result.metrics["eigenvector"] = {str(index_of[i]): v for i, v in sorted(vector.items())}
    result.metrics["lambda"] = ratio
    if not z.equal(slice_, bn.scale(ratio)):
        result.fail("slice is not proportional to B_N")
        result.metrics["slice"] = z.text(slice_)
        return result
    value = specialize(ratio, q0)
    result.metrics["lambda_at_q0"] = value
    if value <= 0:
        result.fail(f"lambda({q0}) = {value} is not positive")
    logger.debug(f"B_N slice scalar for N={n}: {to_text(ratio)}")
    return result


# ============================================================================
# q-commutation of B_i with Z
# ============================================================================

def bi_exponent(i: int, k: int, l: int) -> int:
    """B_i Z_kl = q^(2e) Z_kl B_i with e = 1 for k <= i < l, -1 for l <= i < k, else 0."""
    if k <= i < l:
        return 1
    if l <= i < k:
        return -1
    return 0


def verify_Bi_commutation(n: int) -> IdentityResult:
    result = IdentityResult("bi-commute")
    z = build(O_H, n)
    checked = 0
    for i in range(1, n + 1):
        b = z.nf(b_element(i, n))
        for k in range(1, n + 1):
            for l in range(1, n + 1):
                zkl = z.gen("Z", k, l)
                e = bi_exponent(i, k, l)
                if not z.is_zero(b * zkl - (zkl * b).scale(q ** (2 * e))):
                    result.fail(f"B_{i} Z{k}{l} != q^{2 * e} Z{k}{l} B_{i}")
                checked += 1
    result.metrics["cases"] = checked
    return result
