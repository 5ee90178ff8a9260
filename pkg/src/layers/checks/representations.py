"""
Checks on irreducible modules, the state omega and the numeric tables.
"""

from fractions import Fraction
from typing import List

from src.utils.logger import logger
from src.layers.algebra.qfield import specialize, to_text
from src.layers.casimir.base import IdentityResult
from src.layers.casimir.harish_chandra import derive_C
from src.layers.representations.characters import (
    intertwining_failures,
    s2_invariance_failures,
    verify_central_characters,
    verify_ehc,
)
from src.layers.representations.modules import Weight, dominant_weights, irrep, qdim, weyl_dimension

from .base import Check, CheckParams, NumericCheck

# spread of the weights per N; larger N gets a narrower window
REP_SPREAD = {2: 3, 3: 2}
CHARACTER_SPREAD = {2: 2, 3: 1}
SPECTRUM_WEIGHTS = {
    2: ((0, 0), (1, 0), (2, 0), (2, 1), (1, -1)),
    3: ((0, 0, 0), (1, 0, 0), (1, 1, 0), (2, 1, 0), (1, 0, -1)),
}


def ehc_weights(n: int) -> List[Weight]:
    """At least five dominant weights per N, including twisted ones at N=2."""
    if n == 2:
        return dominant_weights(2, 2, levels=(0, -1))
    return dominant_weights(n, 2 if n == 3 else 1)


class EhcCheck(Check):
    """
    omega_λ(chi(B_k)) = q^(-(N+1)k) [N choose k]^-1 e_k(q^(2i - 2λ_i)) for k <= N,
    the general closed form on small multi-indices and S^2 invariance.
    """

    def __init__(self):
        super().__init__(
            check_id="ehc",
            description="Weighted trace state omega on the elements B_k"
        )

    def verify(self, params: CheckParams) -> IdentityResult:
        n = params.n
        weights = ehc_weights(n)
        result = IdentityResult(self.check_id, metrics={"n": n, "weights": [str(w) for w in weights]})
        extra = [(1,) * n] if n == 2 else []
        for k in range(1, n + 1):
            part = verify_ehc(n, k, weights, extra_exponents=extra if k == 1 else ())
            result.metrics[f"omega(B_{k})"] = {lam: to_text(v) for lam, v in part.metrics["omega"].items()}
            result.extend(f"k={k}", part.failures)
            result.notes.extend(part.notes)
        sample = weights[1]
        result.extend(f"S^2 invariance on V{sample}", s2_invariance_failures(sample))
        return result


class RepDimsCheck(Check):
    """
    Irreducibles satisfy the defining relations, have Weyl dimension, quantum
    dimension specializing to it at q=1, intertwine with uq_iso and carry
    the Harish-Chandra central characters.
    """

    def __init__(self):
        super().__init__(
            check_id="rep-dims",
            description="Dimensions and central characters of irreducible modules"
        )

    def verify(self, params: CheckParams) -> IdentityResult:
        n = params.n
        spread = REP_SPREAD.get(n, 1)
        result = IdentityResult(self.check_id, metrics={"n": n, "spread": spread})
        dims = {}
        for lam in dominant_weights(n, spread):
            module = irrep(lam)
            dims[str(lam)] = module.dim
            want = weyl_dimension(lam.values)
            if module.dim != want:
                result.fail(f"dim V{lam} = {module.dim}, Weyl dimension {want}")
            result.extend(f"V{lam} relations", module.relation_failures())
            classical = specialize(qdim(module), Fraction(1))
            if classical != module.dim:
                result.fail(f"qdim V{lam} at q=1 is {classical}")
            if lam.values[0] - lam.values[-1] <= CHARACTER_SPREAD.get(n, 1):
                result.extend(f"V{lam} intertwining", intertwining_failures(module))
        result.metrics["dimensions"] = dims
        small = dominant_weights(n, CHARACTER_SPREAD.get(n, 1), levels=(0, 1))
        characters = verify_central_characters([derive_C(k, n) for k in range(1, n + 1)], small)
        result.extend("central characters", characters.failures)
        result.metrics["central_characters"] = characters.metrics["characters"]
        logger.debug(f"rep-dims(N={n}): {len(dims)} modules")
        return result


class FiltrationCheck(NumericCheck):
    """Central controls at q0: each P_<=M is finite and nested in M."""

    param_names = ("n", "q", "window", "thresholds")

    def __init__(self):
        super().__init__(
            check_id="filtration",
            description="Filtration of irreducibles by central controls"
        )

    def verify(self, params: CheckParams) -> IdentityResult:
        from src.layers.representations.numeric import filtration_report

        return filtration_report(params.n, params.q0, params.window, params.thresholds)


class SpectrumCheck(NumericCheck):
    """pi_λ(T*T) is annihilated by its Cayley-Hamilton polynomial on sample weights."""

    def __init__(self):
        super().__init__(
            check_id="spectrum",
            description="Spectrum of T*T on irreducible modules"
        )

    def verify(self, params: CheckParams) -> IdentityResult:
        from src.layers.representations.numeric import spectrum_check

        n = params.n
        samples = SPECTRUM_WEIGHTS.get(n, ((0,) * n, (1,) + (0,) * (n - 1)))
        result = IdentityResult(self.check_id, metrics={"n": n})
        spectra = {}
        for values in samples:
            part = spectrum_check(Weight(values), params.q0)
            spectra[str(Weight(values))] = {
                "residual_norm": part.metrics["residual_norm"],
                "eigenvalues": part.metrics["eigenvalues"],
                "eigenvalues_match_literal": part.metrics["eigenvalues_match_literal"],
                "eigenvalues_match_shifted": part.metrics["eigenvalues_match_shifted"],
            }
            result.extend(f"λ={Weight(values)}", part.failures)
            result.notes.extend(part.notes)
        result.metrics["spectra"] = spectra
        return result


def get_representation_checks():
    """Get all checks on modules and numeric tables."""
    return [
        EhcCheck(),
        RepDimsCheck(),
        FiltrationCheck(),
        SpectrumCheck()
    ]
