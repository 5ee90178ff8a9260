"""
Checks on the central elements of the reflection equation algebra.
"""

from src.layers.algebra.qfield import ONE
from src.layers.casimir.base import IdentityResult
from src.layers.casimir.harish_chandra import central_b, ch_target, derive_C
from src.layers.casimir.identities import (
    verify_BN_slice,
    verify_Bi_commutation,
    verify_ch,
    verify_hc_multiplicative,
    verify_L_family,
    verify_newton_centrality,
)

from .base import Check, CheckParams


class BkCheck(Check):
    """
    B_N is central; every B_k has Harish-Chandra image T_1^2 ... T_k^2.
    For k < N the generators B_k fails to commute with are recorded in the
    notes (their q-commutation is the bi-commute check).
    """

    def __init__(self):
        super().__init__(
            check_id="bk",
            description="The elements B_k: centrality of B_N and Harish-Chandra images"
        )

    def verify(self, params: CheckParams) -> IdentityResult:
        n = params.n
        result = IdentityResult(self.check_id, metrics={"n": n})
        for k in range(1, n + 1):
            element = central_b(k, n)
            if k == n:
                result.extend(f"B_{k} centrality", element.central_failures)
            elif element.central_failures:
                result.notes.append(f"B_{k} q-commutes with {', '.join(element.central_failures)}")
            expected = tuple([1] * k + [0] * (n - k))
            result.metrics[f"hc(B_{k})"] = element.hc.to_text()
            if set(element.hc.terms) != {expected} or element.hc.terms[expected] != ONE:
                result.fail(f"hc(B_{k}) = {element.hc.to_text()}")
        return result


class ChCheck(Check):
    """Z^N - C_1 Z^(N-1) + ... + (-1)^N C_N = 0 in O_H."""

    def __init__(self):
        super().__init__(
            check_id="ch",
            description="Quantum Cayley-Hamilton identity of the reflection equation algebra"
        )

    def verify(self, params: CheckParams) -> IdentityResult:
        return verify_ch(params.n)


class NewtonCentralCheck(Check):
    """Tr_{Q^2}((X*X)^k) and Tr_{Q^-2}((XX*)^k) are central in O_GLR."""

    def __init__(self):
        super().__init__(
            check_id="newton-central",
            description="Centrality of weighted power traces in O_GLR"
        )

    def verify(self, params: CheckParams) -> IdentityResult:
        kmax = 2 if params.n <= 2 else 1
        result = verify_newton_centrality(params.n, kmax)
        result.metrics["kmax"] = kmax
        return result


class HcCheck(Check):
    """
    Harish-Chandra images: multiplicativity on samples and
    hc(C_k) = q^(-2k) e_k(q^2 T_1^2, ..., q^(2N) T_N^2).
    """

    def __init__(self):
        super().__init__(
            check_id="hc",
            description="Harish-Chandra images of the Cayley-Hamilton coefficients"
        )

    def verify(self, params: CheckParams) -> IdentityResult:
        n = params.n
        result = verify_hc_multiplicative(n)
        result.name = self.check_id
        for k in range(1, n + 1):
            element = derive_C(k, n)
            result.metrics[f"hc(C_{k})"] = element.hc.to_text()
            if element.hc != ch_target(k, n):
                result.fail(f"hc(C_{k}) = {element.hc.to_text()}")
            result.notes.extend(element.notes)
        return result


class LFamilyCheck(Check):
    def __init__(self):
        super().__init__(
            check_id="l-family",
            description="Commutation and product law of the braided family L_k"
        )

    def verify(self, params: CheckParams) -> IdentityResult:
        return verify_L_family(params.n)


class BnSliceCheck(Check):
    """B_N acts on the q-antisymmetric slice by a positive scalar at q0."""

    param_names = ("n", "q", "degree_cap")

    def __init__(self):
        super().__init__(
            check_id="bn-slice",
            description="Proportionality of B_N on the antisymmetric slice"
        )

    def verify(self, params: CheckParams) -> IdentityResult:
        return verify_BN_slice(params.n, params.q0)


class BiCommuteCheck(Check):
    def __init__(self):
        super().__init__(
            check_id="bi-commute",
            description="q-commutation of B_i with the generators Z_kl"
        )

    def verify(self, params: CheckParams) -> IdentityResult:
        return verify_Bi_commutation(params.n)


def get_casimir_checks():
    """Get all checks on central elements."""
    return [
        BkCheck(),
        ChCheck(),
        NewtonCentralCheck(),
        HcCheck(),
        LFamilyCheck(),
        BnSliceCheck(),
        BiCommuteCheck()
    ]
