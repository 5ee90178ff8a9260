"""
O_T acting on irreducible modules, central characters and the weighted
trace state omega_λ.

The O_T letters act on V^(x)m by iterating T+ -> R, T- -> R_21^-1 through
the opposite coproduct, so that the U_q(gl_N) action is recovered through
uq_iso. On an irreducible the action is restricted to its basis and twisted
by the determinant character: T+ letters pick up q^-λ_N, T- letters q^λ_N.
"""

from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from src.utils.logger import logger
from src.layers.algebra import linalg
from src.layers.algebra.errors import DomainError
from src.layers.algebra.ncalg import GenId, NcElement
from src.layers.algebra.qfield import ZERO, QScalar, elementary_symmetric, inverse, q, q_binom, to_text
from src.layers.qgroups.catalog import O_T, build
from src.layers.qgroups.maps import cholesky, represent, uq_iso, vector_representation
from src.layers.casimir.base import IdentityResult
from src.layers.casimir.harish_chandra import CentralElement
from src.layers.casimir.traces import b_element

from .modules import IrrepModule, Weight, irrep, qdim, weight_mults

UPPER_LETTERS = ("T", "Tp")


def _letter_table(n: int) -> Dict[str, Dict[Tuple[int, int], GenId]]:
    t = build(O_T, n)
    table = {}
    for name in ("T", "Tm"):
        cells = {}
        for ((a,), (b,)), entry in t.matrix(name).entry_items():
            (word,) = entry.terms
            cells[(a, b)] = word[0]
        table[name] = cells
    return table


@lru_cache(maxsize=None)
def tensor_power_images(n: int, m: int) -> Dict[GenId, DomainMatrix]:
    """rho_m(T_ab) = sum_c rho_(m-1)(T_cb) (x) rho(T_ac) on V^(x)m."""
    base = vector_representation(n)
    if m == 1:
        return base
    previous = tensor_power_images(n, m - 1)
    size = n ** m
    images = {}
    for cells in _letter_table(n).values():
        for (a, b), letter in cells.items():
            total = linalg.zeros(size)
            for c in range(1, n + 1):
                if (c, b) in cells and (a, c) in cells:
                    total = total + linalg.kron(previous[cells[(c, b)]], base[cells[(a, c)]])
            images[letter] = total
    return images


def _twist_factor(letter: GenId, twist: int) -> QScalar:
    return q ** (-twist if letter.name in UPPER_LETTERS else twist)


def ot_images(module: IrrepModule) -> Dict[GenId, DomainMatrix]:
    """Exact O_T letter matrices on an irreducible module (integral part of the weight)."""
    t = build(O_T, module.n)
    images = {}
    if module.ambient_power == 0:
        for letter in t.presentation.alphabet:
            value = t.hopf.counit[letter] * _twist_factor(letter, module.twist)
            images[letter] = linalg.sparse_matrix({(0, 0): value} if value else {}, (1, 1))
        return images
    for letter, op in tensor_power_images(module.n, module.ambient_power).items():
        images[letter] = linalg.scale(module.restrict(op), _twist_factor(letter, module.twist))
    return images


def act_ot(module: IrrepModule, x: NcElement) -> DomainMatrix:
    return represent(x, ot_images(module), module.dim)


def intertwining_failures(module: IrrepModule) -> List[str]:
    """U_q(gl_N) generators g whose module action differs from that of uq_iso(g)."""
    images = module.images()
    ot = ot_images(module)
    failures = []
    for letter, expected in images.items():
        got = represent(uq_iso(NcElement.gen(letter), module.n), ot, module.dim)
        if not linalg.equal(got, expected):
            failures.append(letter.label())
    return failures


def scalar_of(m: DomainMatrix) -> Optional[QScalar]:
    """c when m = c * I, otherwise None."""
    c = linalg.entry(m, 0, 0)
    if linalg.equal(m, linalg.scale(linalg.identity(m.shape[0]), c)):
        return c
    return None


def trace(m: DomainMatrix) -> QScalar:
    total = ZERO
    for i, row in linalg.entries(m).items():
        total += row.get(i, ZERO)
    return total


# ============================================================================
# Central characters
# ============================================================================

def central_character(z: CentralElement, weight: Weight) -> QScalar:
    """Harish-Chandra image of z at T_i^2 -> q^(-2 λ_i)."""
    return z.hc.evaluate(weight.require_integral("central_character"))


def direct_central_character(z: CentralElement, module: IrrepModule) -> Optional[QScalar]:
    """Scalar by which the Cholesky image of z acts, or None when it is not scalar."""
    return scalar_of(act_ot(module, cholesky(z.body, module.n)))


def verify_central_characters(elements: Sequence[CentralElement], weights: Sequence[Weight]) -> IdentityResult:
    result = IdentityResult("central-characters")
    table = {}
    for lam in weights:
        module = irrep(lam)
        for z in elements:
            expected = central_character(z, lam)
            got = direct_central_character(z, module)
            table[f"{z.label}{lam}"] = expected
            if got is None:
                result.fail(f"{z.label} does not act by a scalar on V{lam}")
            elif got != expected:
                result.fail(f"{z.label} on V{lam}: Harish-Chandra {to_text(expected)}, module {to_text(got)}")
    result.metrics["characters"] = table
    return result


# ============================================================================
# The state omega_λ
# ============================================================================

@lru_cache(maxsize=None)
def b_monomial(exponents: Tuple[int, ...], n: int) -> NcElement:
    """Cholesky image of B_1^n_1 ... B_N^n_N in O_T."""
    t = build(O_T, n)
    product = NcElement.one()
    for k, power in enumerate(exponents, start=1):
        image = cholesky(b_element(k, n), n)
        for _ in range(power):
            product = t.nf(product * image)
    return product


def weighting_element(n: int) -> NcElement:
    """Cholesky image of B_1 ... B_N."""
    return b_monomial((1,) * n, n)


def omega_state(x: NcElement, weight: Weight) -> QScalar:
    """
    Tr(pi(B) pi(x)) / Tr(pi(B)) on the irreducible of highest weight λ.

    Raises:
        DomainError: for a non-integral weight or a vanishing normalization.
    """
    weight.require_integral("omega_state")
    module = irrep(weight)
    b = act_ot(module, weighting_element(weight.n))
    denominator = trace(b)
    if not denominator:
        raise DomainError(f"Tr(pi(B)) vanishes on V{weight}")
    return trace(b * act_ot(module, x)) / denominator


def omega_closed_form(exponents: Sequence[int], weight: Weight) -> QScalar:
    """
    q^(-2 sum ň) / d_ň(q) * sum_nu d_ň,nu prod_i q^(-2 (λ_i + N - i) nu_i), ň_i = sum_(j>=i) n_j.
    """
    lam = weight.require_integral("omega_closed_form")
    n = len(lam)
    checked = tuple(sum(exponents[i:]) for i in range(n))
    module = irrep(Weight(checked))
    total = ZERO
    for nu, mult in weight_mults(module).items():
        total += mult * q ** (-2 * sum((lam[i] + n - 1 - i) * nu[i] for i in range(n)))
    return q ** (-2 * sum(checked)) * total / qdim(module)


def ehc_closed_form(k: int, weight: Weight) -> QScalar:
    """q^(-(N+1)k) [N choose k]^-1 e_k(q^(2 - 2 λ_1), ..., q^(2N - 2 λ_N))."""
    lam = weight.require_integral("ehc_closed_form")
    n = len(lam)
    values = [q ** (2 * (i + 1) - 2 * lam[i]) for i in range(n)]
    return q ** (-(n + 1) * k) * inverse(q_binom(n, k)) * elementary_symmetric(k, values)


def verify_ehc(n: int, k: int, weights: Sequence[Weight],
               extra_exponents: Sequence[Tuple[int, ...]] = ()) -> IdentityResult:
    """
    omega_λ(chi(B_k)) against its closed form, for each λ.

    ``extra_exponents`` adds multi-indices n for which omega_λ(chi(B^n)) is
    compared with omega_closed_form(n, λ).
    """
    if not 1 <= k <= n:
        raise DomainError(f"verify_ehc needs 1 <= k <= N, got k={k}, N={n}")
    result = IdentityResult(f"ehc(k={k})", metrics={"n": n, "k": k})
    unit = tuple(1 if i == k - 1 else 0 for i in range(n))
    values = {}
    for lam in weights:
        if lam.n != n:
            raise DomainError(f"Weight {lam} does not have {n} entries")
        lhs = omega_state(b_monomial(unit, n), lam)
        rhs = ehc_closed_form(k, lam)
        values[str(lam)] = lhs
        if lhs != rhs:
            ratio = to_text(lhs / rhs) if rhs else "undefined"
            result.fail(f"λ={lam}: omega {to_text(lhs)} != closed form {to_text(rhs)} (ratio {ratio})")
        general = omega_closed_form(unit, lam)
        if general != lhs:
            result.fail(f"λ={lam}: general closed form {to_text(general)} != omega {to_text(lhs)}")
        for exponents in extra_exponents:
            got = omega_state(b_monomial(tuple(exponents), n), lam)
            expected = omega_closed_form(exponents, lam)
            if got != expected:
                result.fail(f"λ={lam}, n={tuple(exponents)}: omega {to_text(got)} != {to_text(expected)}")
    result.metrics["omega"] = values
    logger.debug(f"verify_ehc(N={n}, k={k}): {len(weights)} weight(s), passed={result.passed}")
    return result


def s2_invariance_failures(weight: Weight) -> List[str]:
    """O_T letters and products Tp_ij Tm_ji with omega(S^2 x) != omega(x)."""
    n = weight.n
    t = build(O_T, n)
    samples = [NcElement.gen(g) for g in t.presentation.alphabet]
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            samples.append(t.gen("Tp", i, j) * t.gen("Tm", j, i))
    failures = []
    for x in samples:
        twice = t.antipode(t.antipode(x))
        if omega_state(twice, weight) != omega_state(x, weight):
            failures.append(t.text(x))
    return failures
