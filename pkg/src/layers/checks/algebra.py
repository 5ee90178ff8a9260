"""
Checks on the R-matrix, the completed presentations and the quantum
determinant.
"""

from random import Random
from typing import Dict

from src.utils.logger import logger
from src.layers.algebra.ncalg import LeggedMatrix, NcElement
from src.layers.algebra.qfield import ONE, ZERO, q, random_scalar, to_text
from src.layers.algebra.rmatrix import hecke_residual, inverse_residual, ybe_residual
from src.layers.qgroups.catalog import (
    O_GL,
    O_GLR,
    O_H,
    O_M,
    O_T,
    O_U,
    STAR_KINDS,
    antipode_matrix,
    build,
    expected_pbw_count,
    quantum_det,
    star_involution_failures,
)
from src.layers.qgroups.hopf import central_failures, hopf_axioms, is_grouplike
from src.layers.qgroups.pairings import det_pairing_failures, pinned_r, relation_failures
from src.layers.casimir.base import IdentityResult

from .base import Check, CheckParams

# words per algebra in the randomized reduction test
RANDOM_WORDS = 25


def residual_entries(m: LeggedMatrix) -> Dict[str, str]:
    return {str(key): value.to_text() for key, value in m.entry_items() if value}


class YbeCheck(Check):
    """R_12 R_13 R_23 = R_23 R_13 R_12 and R R^-1 = 1, exactly."""

    def __init__(self):
        super().__init__(
            check_id="ybe",
            description="Yang-Baxter equation and invertibility of R"
        )

    def verify(self, params: CheckParams) -> IdentityResult:
        result = IdentityResult(self.check_id, metrics={"n": params.n})
        residual = residual_entries(ybe_residual(params.n, params.corrupt_r))
        if residual:
            result.fail(f"YBE residual has {len(residual)} nonzero entries")
            result.metrics["residual"] = residual
        inverse = residual_entries(inverse_residual(params.n, params.corrupt_r))
        if inverse:
            result.fail(f"R R^-1 - 1 has {len(inverse)} nonzero entries")
            result.metrics.setdefault("residual", {}).update(inverse)
        return result


class HeckeCheck(Check):
    """
    R-hat^2 + (q - q^-1) R-hat - 1 = 0, the braid relation of the R-hat_i on
    V^(x)3 and their commutation with the U_q(gl_N) action.
    """

    def __init__(self):
        super().__init__(
            check_id="hecke",
            description="Hecke relation, braid relation and Schur-Weyl commutation"
        )

    def verify(self, params: CheckParams) -> IdentityResult:
        from src.layers.algebra import linalg
        from src.layers.representations.modules import hecke_commutation_failures, hecke_op

        n = params.n
        result = IdentityResult(self.check_id, metrics={"n": n})
        residual = residual_entries(hecke_residual(n, params.corrupt_r))
        if residual:
            result.fail(f"quadratic relation residual has {len(residual)} nonzero entries")
            result.metrics["residual"] = residual
        result.notes.append("quadratic relation R^2 + (q - q^-1) R^ - 1 = 0, eigenvalues q^-1 and -q")
        if params.corrupt_r is not None:
            return result
        legs = 3 if n <= 3 else 2
        if legs == 3:
            s1, s2 = hecke_op(1, 3, n), hecke_op(2, 3, n)
            if not linalg.equal(s1 * s2 * s1, s2 * s1 * s2):
                result.fail("braid relation fails on V^(x)3")
        result.extend("commutation", hecke_commutation_failures(legs, n))
        result.metrics["tensor_legs"] = legs
        return result


class PbwConfluenceCheck(Check):
    """
    Completion summaries, irreducible-word counts against commutative
    monomial counts up to degree 4, and randomized reduction order.
    """

    param_names = ("n", "degree_cap", "seed")
    kinds = (O_M, O_T, O_H)
    max_degree = 4

    def __init__(self):
        super().__init__(
            check_id="pbw-confluence",
            description="PBW bases of O_M, O_T and O_H"
        )

    def verify(self, params: CheckParams) -> IdentityResult:
        n = params.n
        result = IdentityResult(self.check_id, metrics={"n": n})
        rng = Random(params.seed)
        for kind in self.kinds:
            if kind == O_M:
                h = build(kind, n, params.corrupt_r, params.corrupt_relation)
            else:
                h = build(kind, n)
            p = h.presentation
            summary = p.summary.to_dict()
            result.metrics[f"{kind}.completion"] = summary
            if summary["adjoined_rules"]:
                result.notes.append(f"{kind}({n}): completion adjoined {summary['adjoined_rules']} rule(s)")
            counts = {}
            for degree in range(self.max_degree + 1):
                got, want = p.count_irreducible(degree), expected_pbw_count(h, degree)
                counts[degree] = got
                if got != want:
                    result.fail(f"{kind}({n}) degree {degree}: {got} irreducible words, expected {want}")
            result.metrics[f"{kind}.irreducible_words"] = counts
            for _ in range(RANDOM_WORDS):
                a = NcElement()
                # two-term combinations with random Q(q) coefficients
                for _ in range(2):
                    length = rng.randint(2, 4)
                    word = tuple(rng.choice(p.alphabet) for _ in range(length))
                    a = a + NcElement.word(word, random_scalar(rng))
                if not h.equal(p.reduce_randomly(a, rng), h.nf(a)):
                    result.fail(f"{kind}({n}): reduction order changes the normal form of {h.text(a)}")
        logger.debug(f"pbw-confluence(N={n}) passed={result.passed}")
        return result


class DetCheck(Check):
    """
    The four determinant expressions agree; Det_q(X) is central and
    grouplike; Hopf axioms of the FRT family; Det_q(T) = T_1 ... T_N.
    """

    def __init__(self):
        super().__init__(
            check_id="det",
            description="Quantum determinant forms, centrality and grouplike property"
        )

    def verify(self, params: CheckParams) -> IdentityResult:
        n = params.n
        result = IdentityResult(self.check_id, metrics={"n": n})
        m = build(O_M, n, params.corrupt_r, params.corrupt_relation)
        forms = {form: quantum_det(m, "X", form) for form in (1, 2, 3, 4)}
        result.metrics["det"] = m.text(m.nf(forms[1]))
        for form in (2, 3, 4):
            if not m.equal(forms[1], forms[form]):
                result.fail(f"determinant form {form} differs from form 1")
        result.extend("Det_q(X) centrality", central_failures(m, forms[1]))
        if not is_grouplike(m, forms[1]):
            result.fail("Det_q(X) is not grouplike")
        if params.corrupt_r is not None or params.corrupt_relation is not None:
            return result

        gl = build(O_GL, n)
        antipode_matrix(gl, "X")
        result.notes.extend(gl.notes)
        for kind in (O_M, O_GL, O_GLR):
            for law, failures in hopf_axioms(build(kind, n)).items():
                result.extend(f"{kind} {law}", failures)

        t = build(O_T, n)
        diagonal = NcElement.one()
        for i in range(1, n + 1):
            diagonal = diagonal * t.gen("T", i)
        if not t.equal(quantum_det(t, "T"), diagonal):
            result.fail("Det_q(T) != T_1 ... T_N")
        u = build(O_U, n)
        if not is_grouplike(u, quantum_det(u, "U")):
            result.fail("Det_q(U) is not grouplike")
        return result


class DetPairingCheck(Check):
    """r(Det_q(X), X_ij) = q^-1 delta_ij under the pinned product-law convention."""

    def __init__(self):
        super().__init__(
            check_id="det-pairing",
            description="Skew pairing r on O_M and its value on the determinant"
        )

    def verify(self, params: CheckParams) -> IdentityResult:
        n = params.n
        result = IdentityResult(self.check_id, metrics={"n": n})
        pairing = pinned_r(n)
        h = pairing.left
        result.metrics["convention"] = pairing.convention
        result.metrics["survivors"] = list(pairing.survivors)
        result.notes.extend(pairing.notes)
        result.extend("r(Det, X)", det_pairing_failures(pairing))
        result.extend("relations", relation_failures(pairing))
        one = NcElement.one()
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                want = ONE if i == j else ZERO
                value = pairing(one, h.gen("X", i, j))
                if value != want:
                    result.fail(f"r(1, X{i}{j}) = {to_text(value)}")
        x11 = h.gen("X", 1, 1)
        if pairing(x11, x11) != q ** -1:
            result.fail(f"r(X11, X11) = {to_text(pairing(x11, x11))}")
        return result


class GlrStarCheck(Check):
    """
    Star structures: involutivity on every *-algebra, Det_q(Y) = (Det_q(X)^-1)*
    in O_GLR and unitarity of U in O_U.
    """

    def __init__(self):
        super().__init__(
            check_id="glr-star",
            description="Star structures of the realified and unitary quantum groups"
        )

    def verify(self, params: CheckParams) -> IdentityResult:
        n = params.n
        result = IdentityResult(self.check_id, metrics={"n": n})
        for kind in sorted(STAR_KINDS):
            result.extend(f"{kind} involution", star_involution_failures(build(kind, n)))

        g = build(O_GLR, n)
        det_x, det_y = g.det("X"), g.det("Y")
        # (Det X^-1)* = Det Y  <=>  (Det X)* Det Y = 1
        if not g.is_zero(g.star(det_x) * det_y - NcElement.one()):
            result.fail("Det_q(Y) != (Det_q(X)^-1)*")

        u = build(O_U, n)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                delta = NcElement.scalar(ONE if i == j else ZERO)
                left = NcElement()
                right = NcElement()
                for k in range(1, n + 1):
                    left = left + u.star(u.gen("U", k, i)) * u.gen("U", k, j)
                    right = right + u.gen("U", i, k) * u.star(u.gen("U", j, k))
                if not u.is_zero(left - delta):
                    result.fail(f"(U*U)_{i}{j} != delta")
                if not u.is_zero(right - delta):
                    result.fail(f"(UU*)_{i}{j} != delta")
        return result


def get_algebra_checks():
    """Get all checks of the algebra kernel and the determinant."""
    return [
        YbeCheck(),
        HeckeCheck(),
        PbwConfluenceCheck(),
        DetCheck(),
        DetPairingCheck(),
        GlrStarCheck()
    ]
