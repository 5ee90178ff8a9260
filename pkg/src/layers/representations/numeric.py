"""
Numeric specialization: filtration tables of central controls and the
spectrum of pi_λ(T*T).

Exact values are specialized at a rational q0 first (Fractions), and only
then converted to double precision for numpy / scipy.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from scipy import linalg as sla

from src.config import config
from src.utils.logger import logger
from src.layers.algebra import linalg
from src.layers.algebra.errors import DomainError
from src.layers.algebra.ncalg import GenId, NcElement
from src.layers.algebra.qfield import q_int, specialize, to_float
from src.layers.qgroups.catalog import O_T, build
from src.layers.qgroups.maps import star_square
from src.layers.casimir.base import IdentityResult
from src.layers.casimir.harish_chandra import HCImage, derive_C, hc
from src.layers.casimir.traces import power_trace

from .characters import UPPER_LETTERS, ot_images
from .modules import Weight, dominant_weights, irrep


def _point(q0) -> Fraction:
    q0 = Fraction(q0)
    if not 0 < q0 < 1:
        raise DomainError(f"Numeric checks take q0 in (0, 1), got {q0}")
    return q0


def specialized_character(image: HCImage, q0: Fraction) -> Callable[[Sequence[int]], Fraction]:
    """λ -> image(λ) at q0, exactly, with the coefficients specialized once."""
    terms = [(exps, specialize(c, q0)) for exps, c in image.terms.items()]

    def value(lam: Sequence[int]) -> Fraction:
        return sum((c * q0 ** (-2 * sum(e * l for e, l in zip(exps, lam))) for exps, c in terms),
                   Fraction(0))

    return value


def float_character(image: HCImage, weight: Weight, q0: Fraction) -> float:
    """image(λ) in floating point; handles the rational shift of weakly integral weights."""
    lam = [float(x) for x in weight.entries()]
    total = 0.0
    for exps, c in image.terms.items():
        total += to_float(c, q0) * float(q0) ** (-2 * sum(e * l for e, l in zip(exps, lam)))
    return total


# ============================================================================
# Filtration tables
# ============================================================================

@dataclass
class FiltrationRow:
    """Central control of one irreducible at q0 and its threshold memberships."""
    weight: Weight
    control_value: Fraction
    trace_character: Fraction
    det_character: Fraction
    members: Dict[int, bool] = field(default_factory=dict)

    @property
    def spread(self) -> int:
        return self.weight.values[0] - self.weight.values[-1]

    def to_dict(self) -> Dict:
        row = {
            'lambda': str(self.weight),
            'control_value': str(self.control_value),
            'control_float': float(self.control_value),
            'trace_character': str(self.trace_character),
            'det_character': str(self.det_character),
        }
        for m, inside in self.members.items():
            row[f'in_P_leq_{m}'] = inside
        return row


@lru_cache(maxsize=None)
def _trace_image(n: int) -> HCImage:
    # Tr_{Q^2}(T*T) is the Cholesky image of p_1
    return hc(power_trace(1, n), n, check_central=False)


def filtration_table(n: int, q0, window: int, thresholds: Sequence[int]) -> List[FiltrationRow]:
    """
    Rows for every dominant integral λ with λ_1 - λ_N <= window and |λ_N| <= window.

    control = max([2]_q0, χ_λ(Tr_{Q^2}(T*T)), χ_λ(B_N^-2)), with χ_λ(B_N^-2) = q0^(4 sum λ).
    """
    q0 = _point(q0)
    two = specialize(q_int(2), q0)
    trace_value = specialized_character(_trace_image(n), q0)
    rows = []
    for lam in dominant_weights(n, window, range(-window, window + 1)):
        tr = trace_value(lam.values)
        det = q0 ** (4 * sum(lam.values))
        control = max(two, tr, det)
        rows.append(FiltrationRow(lam, control, tr, det,
                                  {m: control <= m for m in thresholds}))
    logger.debug(f"filtration_table(N={n}, q0={q0}, window={window}): {len(rows)} rows")
    return rows


def window_bound(n: int, q0, threshold: int) -> int:
    """
    A window containing every member of P_{<=M}.

    Members satisfy q0^(-2 λ_1) <= M and q0^(4 sum λ) <= M, hence λ_1 <= L and
    sum λ >= -L/2 with L = log_(q0^-2) M.
    """
    q0 = _point(q0)
    log_m = math.log(threshold) / math.log(float(q0) ** -2)
    top = max(math.floor(log_m), 0)
    return math.ceil(n * top + log_m / 2) + 1


def filtration_report(n: int, q0, window: int, thresholds: Sequence[int]) -> IdentityResult:
    """Membership counts per threshold, nesting in M, and finiteness past the window bound."""
    q0 = _point(q0)
    thresholds = sorted(thresholds)
    result = IdentityResult("filtration", metrics={"n": n, "q0": str(q0), "window": window})
    rows = filtration_table(n, q0, window, thresholds)
    if any(row.control_value <= 0 for row in rows):
        result.fail("non-positive control value")
    counts = {}
    for small, large in zip(thresholds, thresholds[1:]):
        if any(row.members[small] and not row.members[large] for row in rows):
            result.fail(f"P_<={small} is not contained in P_<={large}")
    for m in thresholds:
        counts[m] = sum(row.members[m] for row in rows)
        bound = window_bound(n, q0, m)
        wide = filtration_table(n, q0, bound + 1, [m])
        outside = [str(row.weight) for row in wide
                   if row.members[m] and (row.spread > bound or abs(row.weight.values[-1]) > bound)]
        if outside:
            result.fail(f"P_<={m} has members beyond the bound {bound}: {', '.join(outside[:5])}")
        if bound > window:
            result.notes.append(f"P_<={m} needs window {bound}; finiteness checked on the wider table")
    result.metrics["members"] = counts
    result.metrics["rows"] = [row.to_dict() for row in rows]
    return result


# ============================================================================
# Spectrum of T*T
# ============================================================================

def to_numpy(m, q0: Fraction) -> np.ndarray:
    out = np.zeros(m.shape, dtype=float)
    for i, row in linalg.entries(m).items():
        for j, v in row.items():
            out[i, j] = to_float(v, q0)
    return out


def numeric_images(weight: Weight, q0: Fraction) -> Dict[GenId, np.ndarray]:
    """O_T letters on V(λ) at q0, including q0^(-+ shift) for weakly integral λ."""
    module = irrep(weight)
    shift = float(weight.shift)
    images = {}
    for letter, m in ot_images(module).items():
        factor = float(q0) ** (-shift if letter.name in UPPER_LETTERS else shift)
        images[letter] = factor * to_numpy(m, q0)
    return images


def represent_numeric(x: NcElement, images: Dict[GenId, np.ndarray], size: int, q0: Fraction) -> np.ndarray:
    total = np.zeros((size, size))
    for word, coeff in x.terms.items():
        product = np.eye(size)
        for g in word:
            product = product @ images[g]
        total += to_float(coeff, q0) * product
    return total


def star_square_numeric(weight: Weight, q0: Fraction) -> np.ndarray:
    """pi_λ(T*T) as an (N d) x (N d) block matrix, block (i, j) = pi_λ((T*T)_ij)."""
    n = weight.n
    t = build(O_T, n)
    images = numeric_images(weight, q0)
    d = next(iter(images.values())).shape[0]
    tt = star_square(t, "T")
    out = np.zeros((n * d, n * d))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            out[(i - 1) * d:i * d, (j - 1) * d:j * d] = represent_numeric(tt[i, j], images, d, q0)
    return out


def _closed_roots(weight: Weight, q0: Fraction, offset: int) -> List[float]:
    lam = [float(x) for x in weight.entries()]
    return sorted(float(q0) ** (-2 * (lam[k - 1] - k + offset)) for k in range(1, weight.n + 1))


def _matches(values: Sequence[float], roots: Sequence[float], tol: float) -> bool:
    return all(min(abs(v - r) for r in roots) <= tol * max(1.0, abs(v)) for v in values)


def spectrum_check(weight: Weight, q0=None, tol: Optional[float] = None) -> IdentityResult:
    """
    pi_λ(T*T) annihilated by x^N - χ(C_1) x^(N-1) + ... + (-1)^N χ(C_N).

    The eigenvalues are compared with the closed forms q^(-2(λ_k - k - 1)) and
    q^(-2(λ_k - k + 1)); the comparison is reported, not asserted.
    """
    q0 = _point(config.numeric.q0 if q0 is None else q0)
    tol = config.numeric.tolerance if tol is None else tol
    if tol < 0:
        raise DomainError(f"Tolerance must be non-negative, got {tol}")
    n = weight.n
    result = IdentityResult(f"spectrum{weight}", metrics={"n": n, "q0": str(q0), "tolerance": tol})

    m = star_square_numeric(weight, q0)
    coefficients = [1.0] + [(-1) ** k * float_character(derive_C(k, n).hc, weight, q0) for k in range(1, n + 1)]
    residual = np.zeros_like(m)
    power = np.eye(m.shape[0])
    for coeff in reversed(coefficients):
        residual += coeff * power
        power = power @ m
    norm = float(np.linalg.norm(residual, 2))
    result.metrics["dimension"] = m.shape[0] // n
    result.metrics["residual_norm"] = norm
    if norm > tol:
        result.fail(f"residual operator norm {norm:.3e} exceeds {tol:.1e}")

    eigenvalues = sorted(float(v.real) for v in sla.eigvals(m))
    roots = sorted(float(r.real) for r in np.roots(coefficients))
    literal = _closed_roots(weight, q0, -1)
    shifted = _closed_roots(weight, q0, 1)
    result.metrics["eigenvalues"] = eigenvalues
    result.metrics["polynomial_roots"] = roots
    result.metrics["closed_form_literal"] = literal
    result.metrics["closed_form_shifted"] = shifted
    observed = sorted(set(round(v, 9) for v in eigenvalues))
    for label, candidate in (("literal", literal), ("shifted", shifted)):
        result.metrics[f"eigenvalues_match_{label}"] = _matches(observed, candidate, 1e-6)
    if not result.metrics["eigenvalues_match_literal"] and result.metrics["eigenvalues_match_shifted"]:
        result.notes.append("eigenvalues follow q^(-2(λ_k - k + 1)): index shift 2 against q^(-2(λ_k - k - 1))")
    return result
