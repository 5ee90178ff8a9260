"""
Checks on the maps between catalog algebras and on the pairing with O_U.
"""

from src.utils.logger import logger
from src.layers.algebra.ncalg import NcElement
from src.layers.algebra.qfield import ONE, ZERO, q, to_text
from src.layers.algebra.rmatrix import r_matrix
from src.layers.qgroups.catalog import O_H, O_T, O_U, U_QGL, build, khat
from src.layers.qgroups.hopf import hopf_axioms
from src.layers.qgroups.maps import (
    chi_x_failures,
    cholesky,
    cholesky_failures,
    coact_counit_failures,
    coact_failures,
    equivariance_failures,
    qr,
    qr_injectivity,
    uq_iso_failures,
    uq_star_failures,
    vector_rep_failures,
)
from src.layers.qgroups.pairings import action_identity_failures, pinned_p
from src.layers.casimir.base import IdentityResult
from src.layers.casimir.traces import b_element

from .base import Check, CheckParams


class ReEmbedCheck(Check):
    """X*X satisfies the reflection equation inside O_GLR."""

    def __init__(self):
        super().__init__(
            check_id="re-embed",
            description="Z -> X*X respects the reflection equation"
        )

    def verify(self, params: CheckParams) -> IdentityResult:
        result = IdentityResult(self.check_id, metrics={"n": params.n})
        result.extend("X*X", chi_x_failures(params.n))
        return result


class CholeskyCheck(Check):
    """
    Z -> T*T is a homomorphism, sends B_k to T_1^2 ... T_k^2 and satisfies
    R_12 T*_23 T_23 R_12^-1 = T^-1_13 T*_23 T_23 T_13.
    """

    def __init__(self):
        super().__init__(
            check_id="cholesky",
            description="Quantum Cholesky map into the triangular group"
        )

    def verify(self, params: CheckParams) -> IdentityResult:
        n = params.n
        result = IdentityResult(self.check_id, metrics={"n": n})
        t, z = build(O_T, n), build(O_H, n)
        result.extend("reflection equation", cholesky_failures(n))
        squares = NcElement.one()
        images = {}
        for k in range(1, n + 1):
            squares = squares * t.gen("T", k) * t.gen("T", k)
            image = cholesky(z.nf(b_element(k, n)), n)
            images[f"B_{k}"] = t.text(image)
            if not t.equal(image, squares):
                result.fail(f"chi(B_{k}) = {t.text(image)}")
        result.metrics["images"] = images
        result.extend("equivariance", equivariance_failures(n))
        return result


class IsoUtCheck(Check):
    """
    U_q(gl_N) -> O_T respects every defining relation and the star, the vector
    representation of O_T respects its relations and intertwines, and both
    sides satisfy the Hopf axioms.
    """

    def __init__(self):
        super().__init__(
            check_id="iso-ut",
            description="Dictionary between U_q(gl_N) and O_T"
        )

    def verify(self, params: CheckParams) -> IdentityResult:
        from src.layers.representations.characters import intertwining_failures
        from src.layers.representations.modules import vector_rep

        n = params.n
        result = IdentityResult(self.check_id, metrics={"n": n})
        u = build(U_QGL, n)
        for i in range(1, n):
            e, f = u.gen("E", i), u.gen("F", i)
            hat = (khat(u, i) - khat(u, i, inverse=True)).scale(ONE / (q - q ** -1))
            if not u.equal(e * f - f * e, hat):
                result.fail(f"[E_{i}, F_{i}] does not reduce to (K^_{i} - K^_{i}^-1)/(q - q^-1)")
        result.extend("relation image", uq_iso_failures(n))
        result.extend("star", uq_star_failures(n))
        result.extend("vector representation", vector_rep_failures(n))
        result.extend("intertwining", intertwining_failures(vector_rep(n)))
        for kind in (U_QGL, O_T):
            for law, failures in hopf_axioms(build(kind, n)).items():
                result.extend(f"{kind} {law}", failures)
        return result


class PairingUtCheck(Check):
    """The pairing p between O_T and O_U under its pinned convention."""

    def __init__(self):
        super().__init__(
            check_id="pairing-ut",
            description="Pairing of O_T with O_U and the induced action on Z"
        )

    def verify(self, params: CheckParams) -> IdentityResult:
        n = params.n
        result = IdentityResult(self.check_id, metrics={"n": n})
        pairing = pinned_p(n)
        t, u = pairing.left, pairing.right
        result.metrics["convention"] = pairing.convention
        result.metrics["survivors"] = list(pairing.survivors)
        result.notes.extend(pairing.notes)
        result.extend("action identity", action_identity_failures(pairing))
        one = NcElement.one()
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                value = pairing(one, u.gen("U", i, j))
                if value != (ONE if i == j else ZERO):
                    result.fail(f"p(1, U{i}{j}) = {to_text(value)}")
        want = r_matrix(n)[(1, 1), (1, 1)].constant_term()
        got = pairing(t.gen("T", 1), u.gen("U", 1, 1))
        if got != want:
            result.fail(f"p(T_1, U11) = {to_text(got)}, R entry {to_text(want)}")
        for law, failures in hopf_axioms(build(O_U, n)).items():
            result.extend(f"{O_U} {law}", failures)
        return result


class AdCoactionCheck(Check):
    """Z -> U*ZU is counital and respects the reflection equation."""

    def __init__(self):
        super().__init__(
            check_id="ad-coaction",
            description="Adjoint coaction of O_U on the reflection equation algebra"
        )

    def verify(self, params: CheckParams) -> IdentityResult:
        result = IdentityResult(self.check_id, metrics={"n": params.n})
        result.extend("counit law", coact_counit_failures(params.n))
        result.extend("reflection equation", coact_failures(params.n))
        return result


class QrInjectCheck(Check):
    """The quantum QR map has zero kernel on words of degree <= 2."""

    degree = 2

    def __init__(self):
        super().__init__(
            check_id="qr-inject",
            description="Injectivity of the quantum QR map at bounded degree"
        )

    def verify(self, params: CheckParams) -> IdentityResult:
        n = params.n
        result = IdentityResult(self.check_id, metrics={"n": n, "degree": self.degree})
        one = qr(NcElement.one(), n)
        if one != NcElement.one():
            result.fail(f"qr(1) = {one.to_text()}")
        stats = qr_injectivity(n, self.degree)
        result.metrics.update(stats)
        if stats["kernel"]:
            result.fail(f"kernel of dimension {stats['kernel']} among {stats['dimension']} words")
        logger.debug(f"qr-inject(N={n}): {stats}")
        return result


def get_map_checks():
    """Get all checks on algebra maps and pairings."""
    return [
        ReEmbedCheck(),
        CholeskyCheck(),
        IsoUtCheck(),
        PairingUtCheck(),
        AdCoactionCheck(),
        QrInjectCheck()
    ]
