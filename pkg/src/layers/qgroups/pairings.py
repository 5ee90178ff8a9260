"""
Skew pairings read off the R-matrix.

    r : O_M x O_M -> Q(q),   r(X_ab, X_ik) = R_{(a,i),(b,k)}
    p : O_T x O_U -> Q(q),   p(T+_ab, U_ik) = R_{(a,i),(b,k)},
                             p(T-_ab, U_ik) = R^-1_{(i,a),(k,b)}

Values on words follow from two product laws, one per argument. Each law
is either forward or flipped:

    left  forward:  <xy, z> = <x, z(1)> <y, z(2)>
    left  flipped:  <xy, z> = <x, z(2)> <y, z(1)>
    right forward:  <x, yz> = <x(1), y> <x(2), z>
    right flipped:  <x, yz> = <x(2), y> <x(1), z>

The four combinations are tried in order and the first one passing the
pinning identities is kept; all survivors are recorded.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from src.config import config
from src.utils.logger import logger
from src.layers.algebra import linalg
from src.layers.algebra.errors import ConventionError, DomainError, FuelError
from src.layers.algebra.ncalg import GenId, NcElement, Word, split_slots
from src.layers.algebra.qfield import ONE, ZERO, QScalar, q
from src.layers.algebra.rmatrix import r_inverse, r_matrix

from .catalog import O_M, O_T, O_U, AlgebraHandle, antipode_matrix, build

FORWARD = "forward"
FLIPPED = "flipped"
LAWS = tuple(itertools.product((FORWARD, FLIPPED), repeat=2))

CoproductTerms = Dict[Tuple[Word, Word], QScalar]


@dataclass
class PairingRule:
    """Generator table plus the product laws used to extend it."""
    values: Dict[Tuple[GenId, GenId], QScalar]
    left_law: str = FORWARD
    right_law: str = FORWARD

    @property
    def convention(self) -> str:
        return f"left={self.left_law}, right={self.right_law}"


def _split(delta: NcElement) -> CoproductTerms:
    out: CoproductTerms = {}
    for word, coeff in delta.terms.items():
        left, right = split_slots(word, 2)
        out[(left, right)] = out.get((left, right), ZERO) + coeff
    return out


class Pairing:
    """A bilinear form between two catalog bialgebras, memoized on word pairs."""

    def __init__(self, left: AlgebraHandle, right: AlgebraHandle, rule: PairingRule,
                 degree_cap: Optional[int] = None):
        self.left = left
        self.right = right
        self.rule = rule
        self.degree_cap = degree_cap or config.limits.triangular_cap(max(left.n, right.n))
        self.survivors: List[str] = []
        self.notes: List[str] = []
        self._left_delta = {g: _split(d) for g, d in left._require_hopf().coproduct.items()}
        self._right_delta = {g: _split(d) for g, d in right._require_hopf().coproduct.items()}
        self._word_delta: Dict[Word, CoproductTerms] = {(): {((), ()): ONE}}
        self._memo: Dict[Tuple[Word, Word], QScalar] = {}

    @property
    def convention(self) -> str:
        return self.rule.convention

    def __call__(self, a: NcElement, b: NcElement) -> QScalar:
        total = ZERO
        for u, c in a.terms.items():
            for v, d in b.terms.items():
                total += c * d * self.words(u, v)
        return total

    # ------------------------------------------------------------------

    def _counit(self, handle: AlgebraHandle, word: Word) -> QScalar:
        counit = handle.hopf.counit
        value = ONE
        for g in word:
            value *= counit[g]
            if not value:
                break
        return value

    def _delta_of_word(self, word: Word) -> CoproductTerms:
        """Coproduct of a right-hand word as a product of letter coproducts, unreduced."""
        if word in self._word_delta:
            return self._word_delta[word]
        head, rest = self._right_delta[word[0]], self._delta_of_word(word[1:])
        out: CoproductTerms = {}
        for (a1, a2), c in head.items():
            for (b1, b2), d in rest.items():
                key = (a1 + b1, a2 + b2)
                out[key] = out.get(key, ZERO) + c * d
        out = {k: v for k, v in out.items() if v}
        self._word_delta[word] = out
        return out

    def words(self, u: Word, v: Word) -> QScalar:
        key = (u, v)
        if key in self._memo:
            return self._memo[key]
        if len(u) > self.degree_cap or len(v) > self.degree_cap:
            raise FuelError(f"Pairing arguments exceed the degree cap {self.degree_cap}")
        if not u:
            value = self._counit(self.right, v)
        elif not v:
            value = self._counit(self.left, u)
        elif len(u) == 1 and len(v) == 1:
            value = self.rule.values.get((u[0], v[0]), ZERO)
        elif len(u) > 1:
            head, rest = u[:1], u[1:]
            value = ZERO
            for (v1, v2), c in self._delta_of_word(v).items():
                if self.rule.left_law == FORWARD:
                    first, second = self.words(head, v1), self.words(rest, v2)
                else:
                    first, second = self.words(head, v2), self.words(rest, v1)
                if first and second:
                    value += c * first * second
        else:
            head, rest = v[:1], v[1:]
            value = ZERO
            for (x1, x2), c in self._left_delta[u[0]].items():
                if self.rule.right_law == FORWARD:
                    first, second = self.words(x1, head), self.words(x2, rest)
                else:
                    first, second = self.words(x2, head), self.words(x1, rest)
                if first and second:
                    value += c * first * second
        self._memo[key] = value
        return value


# ============================================================================
# Generator tables
# ============================================================================

def r_values(h: AlgebraHandle) -> Dict[Tuple[GenId, GenId], QScalar]:
    r = r_matrix(h.n)
    letters = [g for g in h.presentation.alphabet if g.name == "X"]
    values = {}
    for x, y in itertools.product(letters, repeat=2):
        (a, b), (i, k) = x.indices, y.indices
        value = r[(a, i), (b, k)].constant_term()
        if value:
            values[(x, y)] = value
    return values


def _triangular_entries(t: AlgebraHandle):
    """(letter, matrix name, row, column) for every letter entry of T+ and T-."""
    for name in ("T", "Tm"):
        m = t.matrix(name)
        for ((row,), (col,)), entry in m.entry_items():
            (word,) = entry.terms
            yield word[0], name, row, col


def p_values(t: AlgebraHandle, u: AlgebraHandle) -> Dict[Tuple[GenId, GenId], QScalar]:
    r, r_inv = r_matrix(t.n), r_inverse(t.n)
    letters = [g for g in u.presentation.alphabet if g.name == "U"]
    values = {}
    for x, name, a, b in _triangular_entries(t):
        for y in letters:
            i, k = y.indices
            if name == "T":
                value = r[(a, i), (b, k)].constant_term()
            else:
                value = r_inv[(i, a), (k, b)].constant_term()
            if value:
                values[(x, y)] = value
    return values


def _attach_inverse_values(pairing: Pairing):
    """
    Values on the inverse determinant letter of O_U.

    Pairing a matrix of letters M against Det.Det^-1 = 1 forces
    <M, Det^-1> = <M, Det>^-1 as N x N matrices, under either right law.
    """
    t, u = pairing.left, pairing.right
    dinv = u.inverses["U"]
    det = u.det("U")
    n = t.n
    for name in ("T", "Tm"):
        m = t.matrix(name)
        cells = {}
        for (row,), (col,) in (key for key, _ in m.entry_items()):
            cells[(row - 1, col - 1)] = pairing(m[row, col], det)
        try:
            inv = linalg.inverse(linalg.sparse_matrix(cells, (n, n)))
        except DomainError:
            raise ConventionError(f"<{name}, Det(U)> is singular under {pairing.convention}") from None
        for ((row,), (col,)), entry in m.entry_items():
            (word,) = entry.terms
            value = linalg.entry(inv, row - 1, col - 1)
            if value:
                pairing.rule.values[(word[0], dinv)] = value
    pairing._memo.clear()


# ============================================================================
# Pinning identities
# ============================================================================

def det_pairing_failures(pairing: Pairing) -> List[str]:
    """r(Det, X_ij) = q^-1 delta_ij."""
    h = pairing.left
    det = h.det("X")
    failures = []
    for i in range(1, h.n + 1):
        for j in range(1, h.n + 1):
            x = pairing.right.gen("X", i, j)
            value = pairing(det, x)
            want = q ** -1 if i == j else ZERO
            if value != want:
                failures.append(f"r(Det, X{i}{j}) = {value}")
    return failures


def relation_failures(pairing: Pairing) -> List[str]:
    """Defining relations of either side must pair to zero with every generator of the other."""
    failures = []
    for index, rel in enumerate(pairing.left.presentation.relations):
        for g in pairing.right.presentation.alphabet:
            if pairing(rel, NcElement.gen(g)):
                failures.append(f"left relation {index} against {g.label()}")
    for index, rel in enumerate(pairing.right.presentation.relations):
        for g in pairing.left.presentation.alphabet:
            if pairing(NcElement.gen(g), rel):
                failures.append(f"{g.label()} against right relation {index}")
    return failures


def act(pairing: Pairing, a: NcElement, z: AlgebraHandle, i: int, j: int) -> NcElement:
    """a > Z_ij = sum_kl Z_kl p(a, S(U)_ik U_lj)."""
    u = pairing.right
    s = antipode_matrix(u, "U")
    n = u.n
    total = NcElement()
    for k in range(1, n + 1):
        for l in range(1, n + 1):
            value = pairing(a, s[i, k] * u.gen("U", l, j))
            if value:
                total = total + z.gen("Z", k, l).scale(value)
    return total


def action_identity_failures(pairing: Pairing) -> List[str]:
    """T^-1_13 > Z_23 = R_12 Z_23 R_12^-1, compared coefficientwise in the Z letters."""
    t = pairing.left
    n = t.n
    r, r_inv = r_matrix(n), r_inverse(n)
    t_inv = t.matrix("T_inv")
    s = antipode_matrix(pairing.right, "U")
    u = pairing.right
    failures = []
    for a, b, i, j in itertools.product(range(1, n + 1), repeat=4):
        for k, l in itertools.product(range(1, n + 1), repeat=2):
            lhs = pairing(t_inv[a, b], s[i, k] * u.gen("U", l, j))
            rhs = ZERO
            for c in range(1, n + 1):
                rhs += r[(a, i), (c, k)].constant_term() * r_inv[(c, l), (b, j)].constant_term()
            if lhs != rhs:
                failures.append(f"entry ({a}{i}),({b}{j}) at Z{k}{l}")
    return failures


# ============================================================================
# Convention pinning
# ============================================================================

def _pin(make, criteria, what: str) -> Pairing:
    survivors: List[Pairing] = []
    for left_law, right_law in LAWS:
        pairing = make(left_law, right_law)
        try:
            failures = [f for check in criteria for f in check(pairing)]
        except ConventionError as e:
            failures = [str(e)]
        if failures:
            logger.debug(f"{what} with {pairing.convention} fails: {failures[0]}")
        else:
            survivors.append(pairing)
    if not survivors:
        raise ConventionError(f"No product-law convention satisfies the identities of {what}")
    chosen = survivors[0]
    chosen.survivors = [p.convention for p in survivors]
    chosen.notes.append(f"{what} convention: {chosen.convention}")
    if len(survivors) > 1:
        chosen.notes.append(f"{what} is ambiguous; survivors: {'; '.join(chosen.survivors)}")
        logger.warning(f"{what}: {len(survivors)} conventions survive, keeping {chosen.convention}")
    return chosen


@lru_cache(maxsize=None)
def pinned_r(n: int) -> Pairing:
    """The r pairing on O_M(n) under the first convention giving r(Det, X_ij) = q^-1 delta_ij."""
    h = build(O_M, n)

    def make(left_law: str, right_law: str) -> Pairing:
        return Pairing(h, h, PairingRule(r_values(h), left_law, right_law))

    return _pin(make, (det_pairing_failures, relation_failures), f"r on O_M({n})")


@lru_cache(maxsize=None)
def pinned_p(n: int) -> Pairing:
    """The p pairing O_T(n) x O_U(n) under the first convention reproducing the action identity."""
    t, u = build(O_T, n), build(O_U, n)

    def make(left_law: str, right_law: str) -> Pairing:
        pairing = Pairing(t, u, PairingRule(p_values(t, u), left_law, right_law))
        _attach_inverse_values(pairing)
        return pairing

    return _pin(make, (action_identity_failures,), f"p on O_T({n}) x O_U({n})")


def _check_size(n: int, *elements: NcElement):
    if n < 1:
        raise DomainError(f"N must be positive, got {n}")
    for a in elements:
        for g in a.letters():
            if any(i > n for i in g.indices):
                raise DomainError(f"{g.label()} does not belong to an algebra of size N={n}")


def pairing_r(a: NcElement, b: NcElement, n: int) -> QScalar:
    """
    r(a, b) for a, b in O_M(n).

    Raises:
        DomainError: for elements outside O_M(n).
        FuelError: when a word exceeds the degree cap.
    """
    for element in (a, b):
        if element.algebra not in (None, O_M):
            raise DomainError(f"r pairs O_M elements, got {element.algebra}")
    _check_size(n, a, b)
    return pinned_r(n)(a, b)


def pairing_p(a: NcElement, b: NcElement, n: int) -> QScalar:
    """p(a, b) for a in O_T(n), b in O_U(n)."""
    if a.algebra not in (None, O_T) or b.algebra not in (None, O_U):
        raise DomainError(f"p pairs O_T with O_U, got {a.algebra} and {b.algebra}")
    _check_size(n, a, b)
    return pinned_p(n)(a, b)
