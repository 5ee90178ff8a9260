"""
Catalog of quantized algebras.

Every algebra is built from its defining matrix equations through
``relations_from_matrix_eq`` and completed by the rewriting engine:

    O_M    FRT bialgebra of quantum N x N matrices (X)
    O_GL   O_M with the inverse of the quantum determinant (X, Dinv)
    O_GLR  realified quantum GL(N, C) (X, Y, DXinv, DYinv)
    O_U    quantum U(N) (U, Dinv)
    O_T    quantum upper triangular group (T+, T_i, T_i^-1, T-)
    O_H    reflection equation algebra (Z)
    U_qgl  quantized enveloping algebra of gl_N (F, K, K^-1, E)

Inverse letters of a quantum determinant are central. They are handled by
clearing in zero tests rather than by rewriting Det.Dinv -> 1, which has no
finite completion under a degree-lexicographic order.
"""

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from src.config import config
from src.utils.logger import logger
from src.layers.algebra.errors import ConventionError, DomainError
from src.layers.algebra.ncalg import (
    GenId,
    LeggedMatrix,
    NcElement,
    StarRule,
    commutator,
    generator_matrix,
    legged_mul,
    slot_normalize,
    tensor_product,
    word_text,
)
from src.layers.algebra.qfield import ONE, ZERO, QScalar, ScalarLike, as_scalar, q, q_int
from src.layers.algebra.rewrite import (
    Presentation,
    TensorPresentation,
    orient_and_complete,
    relations_from_matrix_eq,
)
from src.layers.algebra.rmatrix import Corruption, r_matrix, reflection_sides, rtt_sides

O_M = "O_M"
O_GL = "O_GL"
O_GLR = "O_GLR"
O_U = "O_U"
O_T = "O_T"
O_H = "O_H"
U_QGL = "U_qgl"

KINDS = (O_M, O_GL, O_GLR, O_U, O_T, O_H, U_QGL)
STAR_KINDS = frozenset({O_GLR, O_U, O_T, O_H, U_QGL})

# (relation index, scalar added to its first coefficient)
RelationCorruption = Tuple[int, ScalarLike]


# ============================================================================
# Handles
# ============================================================================

@dataclass
class HopfData:
    """Coproduct into the slot-tagged tensor square, counit and antipode on generators."""
    coproduct: Dict[GenId, NcElement]
    counit: Dict[GenId, QScalar]
    antipode: Optional[Dict[GenId, NcElement]] = None


@dataclass
class AlgebraHandle:
    kind: str
    n: int
    presentation: Presentation
    matrices: Dict[str, LeggedMatrix] = field(default_factory=dict)
    hopf: Optional[HopfData] = None
    # generating matrix name -> letter inverting its quantum determinant
    inverses: Dict[str, GenId] = field(default_factory=dict)
    inverse_pairs: List[Tuple[GenId, GenId]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    _carriers: Dict[int, TensorPresentation] = field(default_factory=dict, repr=False)
    _antipodes: Dict[str, LeggedMatrix] = field(default_factory=dict, repr=False)

    @property
    def tag(self) -> str:
        return self.presentation.alphabet[0].algebra

    def gen(self, name: str, *indices: int) -> NcElement:
        return self.presentation.gen(name, *indices)

    def matrix(self, name: str) -> LeggedMatrix:
        try:
            return self.matrices[name]
        except KeyError:
            raise DomainError(f"{self.kind} has no generating matrix {name}") from None

    # rewriting -------------------------------------------------------

    def nf(self, a: NcElement) -> NcElement:
        return self.presentation.normal_form(a)

    def is_zero(self, a: NcElement) -> bool:
        return self.presentation.is_zero(a)

    def equal(self, a: NcElement, b: NcElement) -> bool:
        return self.presentation.equal(a, b)

    def text(self, a: NcElement) -> str:
        return self.presentation.element_text(a)

    def carrier(self, slots: int = 2) -> TensorPresentation:
        if slots not in self._carriers:
            self._carriers[slots] = TensorPresentation(*([self.presentation] * slots))
        return self._carriers[slots]

    # structure maps ----------------------------------------------------

    def star(self, a: NcElement) -> NcElement:
        if not self.presentation.star:
            raise DomainError(f"{self.kind} carries no star structure")
        rule = self.presentation.star

        def image(g: GenId) -> NcElement:
            try:
                return rule[g]
            except KeyError:
                raise DomainError(f"Generator {g.label()} has no star image") from None

        return a.substitute(image, reduce=self.nf, anti=True)

    def _require_hopf(self) -> HopfData:
        if self.hopf is None:
            raise DomainError(f"{self.kind} is not a bialgebra")
        return self.hopf

    def coproduct(self, a: NcElement) -> NcElement:
        hopf = self._require_hopf()
        carrier = self.carrier(2)
        return a.substitute(lambda g: hopf.coproduct[g], reduce=carrier.normal_form)

    def counit(self, a: NcElement) -> QScalar:
        hopf = self._require_hopf()
        return a.substitute(lambda g: NcElement.scalar(hopf.counit[g])).constant_term()

    def antipode(self, a: NcElement) -> NcElement:
        hopf = self._require_hopf()
        if hopf.antipode is None:
            raise DomainError(f"{self.kind} has no antipode")
        return a.substitute(lambda g: hopf.antipode[g], reduce=self.nf, anti=True)

    def det(self, name: str = "X", form: int = 1) -> NcElement:
        return quantum_det_of(self.matrix(name), form)


# ============================================================================
# Quantum determinants
# ============================================================================

def inversions(perm: Sequence[int]) -> int:
    return sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])


def quantum_det_of(m: LeggedMatrix, form: int = 1,
                   rows: Optional[Sequence[int]] = None,
                   cols: Optional[Sequence[int]] = None) -> NcElement:
    """
    Quantum determinant of a one-leg matrix (or of the minor on rows x cols).

    form 1: sum (-q)^l(s)  X_{1,s(1)} ... X_{k,s(k)}
    form 2: sum (-q)^l(s)  X_{s(1),1} ... X_{s(k),k}
    form 3: sum (-q)^-l(s) X_{k,s(k)} ... X_{1,s(1)}
    form 4: sum (-q)^-l(s) X_{s(k),k} ... X_{s(1),1}
    """
    if form not in (1, 2, 3, 4):
        raise DomainError(f"Unknown determinant form {form}")
    rows = list(rows) if rows is not None else list(range(1, m.dim + 1))
    cols = list(cols) if cols is not None else list(range(1, m.dim + 1))
    if len(rows) != len(cols):
        raise DomainError("A quantum minor needs as many rows as columns")
    k = len(rows)
    total = NcElement()
    for perm in itertools.permutations(range(k)):
        length = inversions(perm)
        if form in (1, 3):
            factors = [m[rows[i], cols[perm[i]]] for i in range(k)]
        else:
            factors = [m[rows[perm[i]], cols[i]] for i in range(k)]
        if form in (3, 4):
            factors.reverse()
        weight = (-q) ** (length if form in (1, 2) else -length)
        term = NcElement.one()
        for factor in factors:
            term = term * factor
        total = total + term.scale(weight)
    return total


def quantum_det(h: AlgebraHandle, matrix: str = "X", form: int = 1) -> NcElement:
    """The determinant of a generating matrix of ``h``."""
    if h.kind not in (O_M, O_GL, O_GLR, O_U, O_T):
        raise DomainError(f"{h.kind} has no quantum determinant")
    return h.det(matrix, form)


# cofactor candidates: (sign of the (-q) exponent, minor form)
_COFACTOR_CANDIDATES = ((1, 1), (1, 3), (-1, 1), (-1, 3))


def _cofactor_matrix(m: LeggedMatrix, inverse: NcElement, sign: int, form: int) -> LeggedMatrix:
    n = m.dim

    def entry(i: int, j: int) -> NcElement:
        rows = [r for r in range(1, n + 1) if r != j]
        cols = [c for c in range(1, n + 1) if c != i]
        minor = quantum_det_of(m, form, rows, cols)
        return minor.scale((-q) ** (sign * (i - j))) * inverse

    return generator_matrix(n, entry)


def _inverse_failure(h: AlgebraHandle, m: LeggedMatrix, s: LeggedMatrix) -> Optional[str]:
    identity = LeggedMatrix.identity(1, m.dim)
    for side, product in (("X.S(X)", legged_mul(m, s)), ("S(X).X", legged_mul(s, m))):
        for i in range(1, m.dim + 1):
            for j in range(1, m.dim + 1):
                if not h.is_zero(product[i, j] - identity[i, j]):
                    return f"{side} entry ({i},{j})"
    return None


def antipode_matrix(h: AlgebraHandle, name: str = "X") -> LeggedMatrix:
    """
    S(X) from quantum cofactors, validated by X.S(X) = S(X).X = 1.

    S(X)_ij = (-q)^(i-j) minor(delete row j, column i) Det^-1 is tried first.

    Raises:
        ConventionError: when no candidate inverts the matrix.
    """
    if name in h._antipodes:
        return h._antipodes[name]
    if name not in h.inverses:
        raise DomainError(f"{h.kind} has no inverse of Det({name})")
    m = h.matrix(name)
    inverse = NcElement.gen(h.inverses[name])
    failure = None
    for sign, form in _COFACTOR_CANDIDATES:
        s = _cofactor_matrix(m, inverse, sign, form)
        failure = _inverse_failure(h, m, s)
        if failure is None:
            if (sign, form) != _COFACTOR_CANDIDATES[0]:
                h.notes.append(f"antipode of {name}: cofactor sign {sign}, minor form {form}")
            h._antipodes[name] = s
            return s
        logger.debug(f"Cofactor candidate ({sign}, {form}) for {name} fails at {failure}")
    raise ConventionError(f"No cofactor formula inverts {name} in {h.kind}({h.n}); failing {failure}")


def triangular_inverse(t: LeggedMatrix, upper: bool) -> LeggedMatrix:
    """
    Inverse of a triangular matrix whose diagonal letters have inverse letters.

    Upper:  S_ii = T_i^-1,  S_ij = -T_i^-1 sum_{k=i+1..j} T_ik S_kj   (i < j)
    Lower:  S_ii = T_i,     S_ij = -T_i sum_{k=j..i-1} T-_ik S_kj     (i > j)
    """
    n = t.dim
    diag_inverse = {}
    for i in range(1, n + 1):
        (word,) = t[i, i].terms
        g = word[0]
        partner = "Tinv" if g.name == "T" else "T"
        diag_inverse[i] = NcElement.gen(g._replace(name=partner))
    s: Dict[Tuple[int, int], NcElement] = {(i, i): diag_inverse[i] for i in range(1, n + 1)}
    if upper:
        for width in range(1, n):
            for i in range(1, n - width + 1):
                j = i + width
                acc = NcElement()
                for k in range(i + 1, j + 1):
                    acc = acc + t[i, k] * s[(k, j)]
                s[(i, j)] = -(diag_inverse[i] * acc)
    else:
        for width in range(1, n):
            for j in range(1, n - width + 1):
                i = j + width
                acc = NcElement()
                for k in range(j, i):
                    acc = acc + t[i, k] * s[(k, j)]
                s[(i, j)] = -(diag_inverse[i] * acc)
    return generator_matrix(n, lambda i, j: s.get((i, j)))


# ============================================================================
# Builders
# ============================================================================

def _matrix_letters(tag: str, name: str, n: int) -> List[GenId]:
    return [GenId(tag, name, (i, j)) for i in range(1, n + 1) for j in range(1, n + 1)]


def _letter_matrix(tag: str, name: str, n: int) -> LeggedMatrix:
    return generator_matrix(n, lambda i, j: NcElement.gen(GenId(tag, name, (i, j))))


def _centralize(letter: GenId, others: Sequence[GenId]) -> List[NcElement]:
    g = NcElement.gen(letter)
    return [commutator(g, NcElement.gen(o)) for o in others if o != letter]


def _corrupt(relations: List[NcElement], corrupt: Optional[RelationCorruption]) -> List[NcElement]:
    if corrupt is None or not relations:
        return relations
    index, delta = corrupt
    index %= len(relations)
    target = relations[index]
    word = min(target.terms, key=lambda w: (len(w), word_text(w)))
    changed = list(relations)
    changed[index] = target + NcElement({word: as_scalar(delta)})
    logger.debug(f"Corrupted relation {index} at {word_text(word)} by {delta}")
    return changed


def _matrix_coproduct(m: LeggedMatrix) -> Tuple[Dict[GenId, NcElement], Dict[GenId, QScalar]]:
    """Delta(M_ij) = sum_k M_ik (x) M_kj and eps(M_ij) = delta_ij for the letter entries of M."""
    coproduct, counit = {}, {}
    n = m.dim
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            entry = m[i, j]
            if len(entry.terms) != 1:
                continue
            (word, coeff), = entry.terms.items()
            if len(word) != 1 or coeff != ONE:
                continue
            total = NcElement()
            for k in range(1, n + 1):
                total = total + tensor_product(m[i, k], m[k, j])
            coproduct[word[0]] = slot_normalize(total)
            counit[word[0]] = ONE if i == j else ZERO
    return coproduct, counit


def _grouplike(letter: GenId) -> NcElement:
    g = NcElement.gen(letter)
    return tensor_product(g, g)


def _caps(n: int, long_words: bool) -> Tuple[int, int]:
    cap = config.limits.degree_cap(n)
    return cap, (config.limits.triangular_cap(n) if long_words else cap)


def _build_m(n: int, r: LeggedMatrix, corrupt: Optional[RelationCorruption]) -> AlgebraHandle:
    tag = O_M
    x = _letter_matrix(tag, "X", n)
    relations = _corrupt(relations_from_matrix_eq(*rtt_sides(r, x, x)), corrupt)
    cap, input_cap = _caps(n, False)
    p = orient_and_complete(relations, _matrix_letters(tag, "X", n), cap, name=f"O_M({n})", input_cap=input_cap)
    coproduct, counit = _matrix_coproduct(x)
    return AlgebraHandle(O_M, n, p, {"X": x}, HopfData(coproduct, counit))


def _build_gl_like(kind: str, name: str, n: int, r: LeggedMatrix,
                   corrupt: Optional[RelationCorruption]) -> AlgebraHandle:
    """O_GL (name X) or O_U (name U): RTT plus a central inverse of Det."""
    tag = kind
    m = _letter_matrix(tag, name, n)
    dinv = GenId(tag, "Dinv")
    letters = _matrix_letters(tag, name, n)
    alphabet = letters + [dinv]
    relations = relations_from_matrix_eq(*rtt_sides(r, m, m)) + _centralize(dinv, letters)
    relations = _corrupt(relations, corrupt)
    cap, input_cap = _caps(n, True)
    det = quantum_det_of(m, 1)
    p = orient_and_complete(relations, alphabet, cap, name=f"{kind}({n})",
                            input_cap=input_cap, inverted={dinv: det})
    h = AlgebraHandle(kind, n, p, {name: m}, inverses={name: dinv})
    s = antipode_matrix(h, name)
    coproduct, counit = _matrix_coproduct(m)
    coproduct[dinv] = _grouplike(dinv)
    counit[dinv] = ONE
    antipode = {g: s[g.indices[0], g.indices[1]] for g in letters}
    antipode[dinv] = det
    h.hopf = HopfData(coproduct, counit, antipode)
    if kind == O_U:
        star: StarRule = {g: s[g.indices[1], g.indices[0]] for g in letters}
        star[dinv] = det
        p.star = star
    return h


def _build_glr(n: int, r: LeggedMatrix, corrupt: Optional[RelationCorruption]) -> AlgebraHandle:
    tag = O_GLR
    x = _letter_matrix(tag, "X", n)
    y = _letter_matrix(tag, "Y", n)
    dx, dy = GenId(tag, "DXinv"), GenId(tag, "DYinv")
    xs, ys = _matrix_letters(tag, "X", n), _matrix_letters(tag, "Y", n)
    alphabet = xs + ys + [dx, dy]
    relations = (relations_from_matrix_eq(*rtt_sides(r, x, x))
                 + relations_from_matrix_eq(*rtt_sides(r, y, y))
                 + relations_from_matrix_eq(*rtt_sides(r, x, y))
                 + _centralize(dx, alphabet)
                 + _centralize(dy, [g for g in alphabet if g != dx]))
    relations = _corrupt(relations, corrupt)
    cap, input_cap = _caps(n, True)
    det_x, det_y = quantum_det_of(x, 1), quantum_det_of(y, 1)
    p = orient_and_complete(relations, alphabet, cap, name=f"O_GLR({n})",
                            input_cap=input_cap, inverted={dx: det_x, dy: det_y})
    h = AlgebraHandle(O_GLR, n, p, {"X": x, "Y": y}, inverses={"X": dx, "Y": dy})
    sx, sy = antipode_matrix(h, "X"), antipode_matrix(h, "Y")
    # X* = Y^-1 and Y* = X^-1
    star: StarRule = {}
    for g in xs:
        star[g] = sy[g.indices[1], g.indices[0]]
    for g in ys:
        star[g] = sx[g.indices[1], g.indices[0]]
    star[dx] = det_y
    star[dy] = det_x
    p.star = star
    coproduct, counit = _matrix_coproduct(x)
    cy, ey = _matrix_coproduct(y)
    coproduct.update(cy)
    counit.update(ey)
    antipode = {g: sx[g.indices[0], g.indices[1]] for g in xs}
    antipode.update({g: sy[g.indices[0], g.indices[1]] for g in ys})
    for letter, det in ((dx, det_x), (dy, det_y)):
        coproduct[letter] = _grouplike(letter)
        counit[letter] = ONE
        antipode[letter] = det
    h.hopf = HopfData(coproduct, counit, antipode)
    return h


def _triangular_alphabet(tag: str, n: int):
    upper = [GenId(tag, "Tp", (i, j)) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    diagonal = []
    pairs = []
    for i in range(1, n + 1):
        t, tinv = GenId(tag, "T", (i,)), GenId(tag, "Tinv", (i,))
        diagonal += [t, tinv]
        pairs.append((t, tinv))
    lower = [GenId(tag, "Tm", (i, j)) for i in range(1, n + 1) for j in range(1, i)]
    return upper, diagonal, lower, pairs


def _build_t(n: int, r: LeggedMatrix, corrupt: Optional[RelationCorruption]) -> AlgebraHandle:
    tag = O_T
    upper, diagonal, lower, pairs = _triangular_alphabet(tag, n)

    def plus(i: int, j: int) -> Optional[NcElement]:
        if i == j:
            return NcElement.gen(GenId(tag, "T", (i,)))
        return NcElement.gen(GenId(tag, "Tp", (i, j))) if i < j else None

    def minus(i: int, j: int) -> Optional[NcElement]:
        if i == j:
            return NcElement.gen(GenId(tag, "Tinv", (i,)))
        return NcElement.gen(GenId(tag, "Tm", (i, j))) if i > j else None

    tp, tm = generator_matrix(n, plus), generator_matrix(n, minus)
    relations = (relations_from_matrix_eq(*rtt_sides(r, tp, tp))
                 + relations_from_matrix_eq(*rtt_sides(r, tm, tm))
                 + relations_from_matrix_eq(*rtt_sides(r, tp, tm)))
    for t, tinv in pairs:
        relations.append(NcElement.word((t, tinv)) - 1)
        relations.append(NcElement.word((tinv, t)) - 1)
    relations = _corrupt(relations, corrupt)
    cap, input_cap = _caps(n, True)
    p = orient_and_complete(relations, upper + diagonal + lower, cap, name=f"O_T({n})", input_cap=input_cap)
    tp_inv, tm_inv = triangular_inverse(tp, upper=True), triangular_inverse(tm, upper=False)
    star: StarRule = {}
    for g in upper:
        i, j = g.indices
        star[g] = tm_inv[j, i]
    for g in lower:
        i, j = g.indices
        star[g] = tp_inv[j, i]
    for t, tinv in pairs:
        star[t] = NcElement.gen(t)
        star[tinv] = NcElement.gen(tinv)
    p.star = star
    coproduct, counit = _matrix_coproduct(tp)
    cm, em = _matrix_coproduct(tm)
    coproduct.update(cm)
    counit.update(em)
    antipode = {}
    for g in upper:
        antipode[g] = tp_inv[g.indices[0], g.indices[1]]
    for g in lower:
        antipode[g] = tm_inv[g.indices[0], g.indices[1]]
    for t, tinv in pairs:
        antipode[t] = NcElement.gen(tinv)
        antipode[tinv] = NcElement.gen(t)
    matrices = {"T": tp, "Tm": tm, "T_inv": tp_inv, "Tm_inv": tm_inv}
    return AlgebraHandle(O_T, n, p, matrices, HopfData(coproduct, counit, antipode),
                         inverse_pairs=pairs)


def _build_h(n: int, r: LeggedMatrix, corrupt: Optional[RelationCorruption]) -> AlgebraHandle:
    tag = O_H
    z = _letter_matrix(tag, "Z", n)
    relations = _corrupt(relations_from_matrix_eq(*reflection_sides(r, z)), corrupt)
    letters = _matrix_letters(tag, "Z", n)
    cap, input_cap = _caps(n, False)
    star: StarRule = {g: NcElement.gen(GenId(tag, "Z", (g.indices[1], g.indices[0]))) for g in letters}
    p = orient_and_complete(relations, letters, cap, name=f"O_H({n})", star=star, input_cap=input_cap)
    return AlgebraHandle(O_H, n, p, {"Z": z})


def khat(h: AlgebraHandle, i: int, inverse: bool = False) -> NcElement:
    """K_i K_{i+1}^-1, or its inverse."""
    if inverse:
        return h.gen("Kinv", i) * h.gen("K", i + 1)
    return h.gen("K", i) * h.gen("Kinv", i + 1)


def _uq_relations(tag: str, n: int, pairs) -> List[NcElement]:
    def g(name: str, i: int) -> NcElement:
        return NcElement.gen(GenId(tag, name, (i,)))

    def hat(i: int, inverse: bool = False) -> NcElement:
        return g("Kinv", i) * g("K", i + 1) if inverse else g("K", i) * g("Kinv", i + 1)

    relations: List[NcElement] = []
    k_letters = [letter for pair in pairs for letter in pair]
    for a, b in itertools.combinations(k_letters, 2):
        if a.indices != b.indices:
            relations.append(commutator(NcElement.gen(a), NcElement.gen(b)))
    for k, kinv in pairs:
        relations.append(NcElement.word((k, kinv)) - 1)
        relations.append(NcElement.word((kinv, k)) - 1)
    for i in range(1, n + 1):
        for j in range(1, n):
            a = int(i == j) - int(i == j + 1)
            relations.append(g("K", i) * g("E", j) - (g("E", j) * g("K", i)).scale(q ** a))
            relations.append(g("Kinv", i) * g("E", j) - (g("E", j) * g("Kinv", i)).scale(q ** -a))
            relations.append(g("K", i) * g("F", j) - (g("F", j) * g("K", i)).scale(q ** -a))
            relations.append(g("Kinv", i) * g("F", j) - (g("F", j) * g("Kinv", i)).scale(q ** a))
    for i in range(1, n):
        for j in range(1, n):
            bracket = commutator(g("E", i), g("F", j))
            if i == j:
                bracket = bracket - (hat(i) - hat(i, inverse=True)).scale(ONE / (q - q ** -1))
            relations.append(bracket)
    two = q_int(2)
    for name in ("E", "F"):
        for i in range(1, n):
            for j in range(1, n):
                if abs(i - j) == 1:
                    a, b = g(name, i), g(name, j)
                    relations.append(a * a * b - (a * b * a).scale(two) + b * a * a)
                elif i < j:
                    relations.append(commutator(g(name, i), g(name, j)))
    return relations


def _build_uq(n: int, r: LeggedMatrix, corrupt: Optional[RelationCorruption]) -> AlgebraHandle:
    tag = U_QGL
    fs = [GenId(tag, "F", (i,)) for i in range(1, n)]
    es = [GenId(tag, "E", (i,)) for i in range(1, n)]
    pairs = [(GenId(tag, "K", (i,)), GenId(tag, "Kinv", (i,))) for i in range(1, n + 1)]
    ks = [letter for pair in pairs for letter in pair]
    relations = _corrupt(_uq_relations(tag, n, pairs), corrupt)
    cap, input_cap = _caps(n, True)
    p = orient_and_complete(relations, fs + ks + es, cap, name=f"U_qgl({n})", input_cap=input_cap)
    h = AlgebraHandle(U_QGL, n, p, inverse_pairs=pairs)
    one = NcElement.one()
    coproduct: Dict[GenId, NcElement] = {}
    counit: Dict[GenId, QScalar] = {}
    antipode: Dict[GenId, NcElement] = {}
    star: StarRule = {}
    for k, kinv in pairs:
        coproduct[k], coproduct[kinv] = _grouplike(k), _grouplike(kinv)
        counit[k] = counit[kinv] = ONE
        antipode[k], antipode[kinv] = NcElement.gen(kinv), NcElement.gen(k)
        star[k], star[kinv] = NcElement.gen(k), NcElement.gen(kinv)
    for i in range(1, n):
        e, f = NcElement.gen(es[i - 1]), NcElement.gen(fs[i - 1])
        k_hat, k_hat_inv = khat(h, i), khat(h, i, inverse=True)
        coproduct[es[i - 1]] = tensor_product(e, one) + tensor_product(k_hat, e)
        coproduct[fs[i - 1]] = tensor_product(f, k_hat_inv) + tensor_product(one, f)
        counit[es[i - 1]] = counit[fs[i - 1]] = ZERO
        antipode[es[i - 1]] = -(k_hat_inv * e)
        antipode[fs[i - 1]] = -(f * k_hat)
        star[es[i - 1]] = (f * k_hat).scale(q ** -1)
        star[fs[i - 1]] = (k_hat_inv * e).scale(q)
    p.star = star
    h.hopf = HopfData(coproduct, counit, antipode)
    return h


_BUILDERS = {
    O_M: _build_m,
    O_GL: lambda n, r, c: _build_gl_like(O_GL, "X", n, r, c),
    O_GLR: _build_glr,
    O_U: lambda n, r, c: _build_gl_like(O_U, "U", n, r, c),
    O_T: _build_t,
    O_H: _build_h,
    U_QGL: _build_uq,
}


@lru_cache(maxsize=None)
def _build_cached(kind: str, n: int) -> AlgebraHandle:
    return _BUILDERS[kind](n, r_matrix(n), None)


def build(kind: str, n: int, corrupt_r: Optional[Corruption] = None,
          corrupt_relation: Optional[RelationCorruption] = None) -> AlgebraHandle:
    """
    Build (and cache) a catalog algebra.

    Corrupted builds are never cached.

    Raises:
        DomainError: unknown kind or N < 1.
        CompletionError: when completion does not close.
    """
    if kind not in _BUILDERS:
        raise DomainError(f"Unknown algebra kind {kind!r}; expected one of {', '.join(KINDS)}")
    if n < 1:
        raise DomainError(f"N must be positive, got {n}")
    if n > 3:
        logger.warning(f"{kind}({n}) is built on a best-effort basis")
    if corrupt_r is None and corrupt_relation is None:
        return _build_cached(kind, n)
    logger.debug(f"Building corrupted {kind}({n})")
    return _BUILDERS[kind](n, r_matrix(n, corrupt_r), corrupt_relation)


# ============================================================================
# PBW counts
# ============================================================================

def pbw_count(ordinary: int, pairs: int, degree: int) -> int:
    """
    Coefficient of t^degree in (1-t)^-ordinary ((1+t)/(1-t))^pairs.

    This counts commutative monomials in ordinary letters times Laurent
    monomials in the inverse pairs.
    """
    series = [1] + [0] * degree
    factors = [[1] * (degree + 1)] * ordinary
    factors += [[1] + [2] * degree] * pairs
    for factor in factors:
        series = [sum(series[i] * factor[d - i] for i in range(d + 1)) for d in range(degree + 1)]
    return series[degree]


def expected_pbw_count(h: AlgebraHandle, degree: int) -> int:
    pairs = len(h.inverse_pairs)
    return pbw_count(len(h.presentation.alphabet) - 2 * pairs, pairs, degree)


def star_involution_failures(h: AlgebraHandle) -> List[str]:
    """Generators g with g** != g after normal form."""
    failures = []
    for g in h.presentation.alphabet:
        a = NcElement.gen(g)
        if not h.equal(h.star(h.star(a)), a):
            failures.append(g.label())
    return failures
