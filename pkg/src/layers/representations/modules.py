"""
Finite-dimensional weight modules of U_q(gl_N).

Irreducibles are cut out of tensor powers of the vector representation:
the highest weight vector is found in the kernel of every E_i on the
partition's weight space, and its F-orbit is closed up breadth-first with
exact rank tracking. Basis vectors stay exact coordinate vectors of the
ambient tensor power.
"""

import itertools
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from src.utils.logger import logger
from src.layers.algebra import linalg
from src.layers.algebra.errors import ConventionError, DomainError, ResourceError
from src.layers.algebra.ncalg import GenId, NcElement, leg_embed
from src.layers.algebra.qfield import ONE, ZERO, QScalar, q
from src.layers.algebra.rmatrix import braid_matrix, to_domain_matrix
from src.layers.qgroups.catalog import U_QGL, build
from src.layers.qgroups.maps import represent

IntWeight = Tuple[int, ...]
Vector = Dict[int, QScalar]

# V^(x)m grows as N^m
MAX_AMBIENT_DIM = 4096


@dataclass(frozen=True)
class Weight:
    """
    λ = values + shift·(1, ..., 1) with integer values and 0 <= shift < 1.

    Consecutive differences of a weakly integral weight are integers, so the
    common fractional part is the only non-integral datum.
    """
    values: IntWeight
    shift: Fraction = Fraction(0)

    @classmethod
    def of(cls, entries: Sequence) -> "Weight":
        lam = [Fraction(e) for e in entries]
        if not lam:
            raise DomainError("A weight needs at least one entry")
        shift = lam[0] - (lam[0].numerator // lam[0].denominator)
        ints = []
        for x in lam:
            d = x - shift
            if d.denominator != 1:
                raise DomainError(f"Weight {tuple(str(x) for x in lam)} is not weakly integral")
            ints.append(int(d))
        return cls(tuple(ints), shift)

    @classmethod
    def parse(cls, text: str) -> "Weight":
        try:
            return cls.of([part.strip() for part in text.split(",") if part.strip()])
        except (ValueError, ZeroDivisionError) as e:
            raise DomainError(f"Cannot parse weight {text!r}: {e}") from e

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def is_integral(self) -> bool:
        return self.shift == 0

    def is_dominant(self) -> bool:
        return all(a >= b for a, b in zip(self.values, self.values[1:]))

    def entries(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(v) + self.shift for v in self.values)

    def require_integral(self, what: str) -> IntWeight:
        if not self.is_integral:
            raise DomainError(f"{what} needs an integral weight, got shift {self.shift}")
        return self.values

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.entries()) + ")"


# ============================================================================
# Modules
# ============================================================================

@dataclass
class WeightModule:
    """
    Exact action of U_q(gl_N) on a weight basis.

    ``weights[j]`` is the integral part of the K-weight of basis vector j;
    K_i acts on it by q^weights[j][i] times q^shift.
    """
    n: int
    weights: List[IntWeight]
    e: Dict[int, DomainMatrix]
    f: Dict[int, DomainMatrix]
    shift: Fraction = Fraction(0)

    @property
    def dim(self) -> int:
        return len(self.weights)

    def k(self, i: int, inverse: bool = False) -> DomainMatrix:
        """K_i on the integral part; the shift scalar is left to numeric callers."""
        sign = -1 if inverse else 1
        return linalg.sparse_matrix({(j, j): q ** (sign * w[i - 1]) for j, w in enumerate(self.weights)},
                                    (self.dim, self.dim))

    def khat(self, i: int, inverse: bool = False) -> DomainMatrix:
        sign = -1 if inverse else 1
        return linalg.sparse_matrix(
            {(j, j): q ** (sign * (w[i - 1] - w[i])) for j, w in enumerate(self.weights)},
            (self.dim, self.dim))

    def images(self) -> Dict[GenId, DomainMatrix]:
        out = {}
        for i in range(1, self.n + 1):
            out[GenId(U_QGL, "K", (i,))] = self.k(i)
            out[GenId(U_QGL, "Kinv", (i,))] = self.k(i, inverse=True)
        for i in range(1, self.n):
            out[GenId(U_QGL, "E", (i,))] = self.e[i]
            out[GenId(U_QGL, "F", (i,))] = self.f[i]
        return out

    def act(self, a: NcElement) -> DomainMatrix:
        return represent(a, self.images(), self.dim)

    def relation_failures(self) -> List[str]:
        """Defining relations of U_q(gl_N) that do not act by zero."""
        h = build(U_QGL, self.n)
        images = self.images()
        return [h.text(rel) for rel in h.presentation.relations
                if not linalg.is_zero_matrix(represent(rel, images, self.dim))]


@dataclass
class TensorModule(WeightModule):
    factors: int = 1


@dataclass
class IrrepModule(WeightModule):
    """
    An irreducible module V(λ) realized inside V^(x)m.

    ``basis`` holds the ambient coordinates of each basis vector; a module
    with ambient_power 0 is one-dimensional and is its own ambient.
    ``twist`` is λ_N.
    """
    highest_weight: Optional[Weight] = None
    basis: List[Vector] = field(default_factory=list)
    ambient_power: int = 0
    twist: int = 0
    _projector: Optional[Tuple[DomainMatrix, DomainMatrix]] = field(default=None, repr=False, compare=False)

    def restrict(self, op: DomainMatrix) -> DomainMatrix:
        """Matrix of an ambient operator preserving the span of ``basis``."""
        if self._projector is None:
            ambient_dim = op.shape[0]
            cells = {(k, j): x for j, v in enumerate(self.basis) for k, x in v.items()}
            embedding = linalg.sparse_matrix(cells, (ambient_dim, self.dim))
            rows: Dict[int, Vector] = {}
            for (k, j), x in cells.items():
                rows.setdefault(k, {})[j] = x
            keys = sorted(rows)
            chosen = [keys[p] for p in linalg.independent_subset([rows[k] for k in keys])]
            if len(chosen) != self.dim:
                raise ConventionError(f"Basis of {self.highest_weight} is not independent")
            select = linalg.sparse_matrix({(p, k): ONE for p, k in enumerate(chosen)}, (self.dim, ambient_dim))
            block = select * embedding
            self._projector = (embedding, linalg.inverse(block) * select)
        embedding, left = self._projector
        return left * op * embedding


def vector_rep(n: int) -> IrrepModule:
    """E_i -> e_(i,i+1), F_i -> e_(i+1,i), K_i e_k = q^delta_ik e_k."""
    if n < 2:
        raise DomainError(f"N must be at least 2, got {n}")
    weights = [tuple(1 if j == k else 0 for j in range(n)) for k in range(n)]
    e = {i: linalg.sparse_matrix({(i - 1, i): ONE}, (n, n)) for i in range(1, n)}
    f = {i: linalg.sparse_matrix({(i, i - 1): ONE}, (n, n)) for i in range(1, n)}
    basis = [{k: ONE} for k in range(n)]
    hw = Weight(weights[0])
    return IrrepModule(n, weights, e, f, highest_weight=hw, basis=basis, ambient_power=1)


def module_tensor(a: WeightModule, b: WeightModule) -> TensorModule:
    """
    a (x) b through Delta(E) = E (x) 1 + K^ (x) E and Delta(F) = F (x) K^^-1 + 1 (x) F.

    Basis vector (j, k) sits at j * dim(b) + k.
    """
    if a.n != b.n:
        raise DomainError(f"Cannot tensor modules of gl_{a.n} and gl_{b.n}")
    ia, ib = linalg.identity(a.dim), linalg.identity(b.dim)
    e = {i: linalg.kron(a.e[i], ib) + linalg.kron(a.khat(i), b.e[i]) for i in range(1, a.n)}
    f = {i: linalg.kron(a.f[i], b.khat(i, inverse=True)) + linalg.kron(ia, b.f[i]) for i in range(1, a.n)}
    weights = [tuple(x + y for x, y in zip(wa, wb)) for wa in a.weights for wb in b.weights]
    factors = getattr(a, "factors", 1) + getattr(b, "factors", 1)
    return TensorModule(a.n, weights, e, f, a.shift + b.shift, factors=factors)


def trivial_module(n: int, level: int = 0, shift: Fraction = Fraction(0)) -> IrrepModule:
    """The one-dimensional module of weight (level, ..., level) + shift."""
    zero = linalg.zeros(1)
    hw = Weight((level,) * n, shift)
    return IrrepModule(n, [hw.values], {i: zero for i in range(1, n)}, {i: zero for i in range(1, n)},
                       shift, highest_weight=hw, basis=[{0: ONE}], ambient_power=0, twist=level)


@lru_cache(maxsize=None)
def tensor_power(n: int, m: int) -> TensorModule:
    """V^(x)m, associated to the left."""
    if m < 1:
        raise DomainError(f"Tensor powers start at 1, got {m}")
    if n ** m > MAX_AMBIENT_DIM:
        raise ResourceError(f"V^(x){m} for N={n} has dimension {n ** m} > {MAX_AMBIENT_DIM}")
    v = vector_rep(n)
    if m == 1:
        return TensorModule(n, list(v.weights), dict(v.e), dict(v.f), factors=1)
    return module_tensor(tensor_power(n, m - 1), v)


def hecke_op(i: int, m: int, n: int) -> DomainMatrix:
    """R^ acting in legs (i, i+1) of V^(x)m."""
    if not 1 <= i <= m - 1:
        raise DomainError(f"hecke_op needs 1 <= i <= {m - 1}, got {i}")
    return to_domain_matrix(leg_embed(braid_matrix(n), m, (i, i + 1)))


def hecke_commutation_failures(m: int, n: int) -> List[str]:
    """Generators of U_q(gl_N) not commuting with some hecke_op on V^(x)m."""
    module = tensor_power(n, m)
    failures = []
    for i in range(1, m):
        s = hecke_op(i, m, n)
        for g, image in module.images().items():
            if not linalg.equal(s * image, image * s):
                failures.append(f"R^_{i},{i + 1} vs {g.label()}")
    return failures


# ============================================================================
# Highest weight extraction
# ============================================================================

def _root(i: int, n: int) -> IntWeight:
    return tuple(1 if j == i - 1 else -1 if j == i else 0 for j in range(n))


def _shifted(w: IntWeight, d: IntWeight, sign: int = 1) -> IntWeight:
    return tuple(a + sign * b for a, b in zip(w, d))


def _express(group: List[Vector], target: Vector) -> Vector:
    """Coordinates of target in the span of group."""
    keys = sorted({k for v in group for k in v} | set(target))
    index = {k: pos for pos, k in enumerate(keys)}
    cells = {(index[k], col): x for col, v in enumerate(group) for k, x in v.items()}
    a = linalg.sparse_matrix(cells, (len(keys), len(group)))
    solution, _ = linalg.solve(a, {index[k]: x for k, x in target.items()})
    return solution


def highest_weight_vectors(module: WeightModule, weight: IntWeight) -> List[Vector]:
    """Basis of the vectors of the given weight killed by every E_i."""
    columns = [j for j, w in enumerate(module.weights) if w == weight]
    if not columns:
        return []
    cells = {}
    row_of: Dict[Tuple[int, int], int] = {}
    for pos, j in enumerate(columns):
        for i in range(1, module.n):
            for row, value in linalg.apply(module.e[i], {j: ONE}).items():
                key = row_of.setdefault((i, row), len(row_of))
                cells[(key, pos)] = value
    if not row_of:
        return [{j: ONE} for j in columns]
    kernel = linalg.nullspace(linalg.sparse_matrix(cells, (len(row_of), len(columns))))
    return [{columns[pos]: v for pos, v in vector.items()} for vector in kernel]


def irrep(weight: Weight, n: Optional[int] = None) -> IrrepModule:
    """
    The irreducible module of highest weight λ.

    Raises:
        DomainError: when λ is not dominant or has the wrong length.
        ConventionError: when no highest weight vector exists in the ambient power.
        ResourceError: when the ambient tensor power is too large.
    """
    n = weight.n if n is None else n
    if weight.n != n:
        raise DomainError(f"Weight {weight} does not have {n} entries")
    if not weight.is_dominant():
        raise DomainError(f"Weight {weight} is not dominant")
    return _irrep(weight.values, weight.shift)


@lru_cache(maxsize=None)
def _irrep(values: IntWeight, shift: Fraction) -> IrrepModule:
    n = len(values)
    twist = values[-1]
    top = tuple(v - twist for v in values)
    m = sum(top)
    hw = Weight(values, shift)
    if m == 0:
        return trivial_module(n, twist, shift)

    ambient = tensor_power(n, m)
    candidates = highest_weight_vectors(ambient, top)
    if not candidates:
        raise ConventionError(f"No highest weight vector of weight {top} in V^(x){m}")
    logger.debug(f"irrep{hw}: {len(candidates)} highest weight vector(s) in V^(x){m}, dim {ambient.dim}")

    basis: List[Vector] = [candidates[0]]
    weights: List[IntWeight] = [top]
    by_weight: Dict[IntWeight, List[Vector]] = {top: [candidates[0]]}
    queue = deque([0])
    while queue:
        j = queue.popleft()
        for i in range(1, n):
            image = linalg.apply(ambient.f[i], basis[j])
            if not image:
                continue
            w = _shifted(weights[j], _root(i, n), -1)
            group = by_weight.setdefault(w, [])
            if linalg.vector_rank(group + [image]) > len(group):
                group.append(image)
                basis.append(image)
                weights.append(w)
                queue.append(len(basis) - 1)

    position = {}
    for j, w in enumerate(weights):
        position.setdefault(w, []).append(j)

    def restrict(op: DomainMatrix, root: IntWeight, sign: int) -> DomainMatrix:
        cells = {}
        for j, v in enumerate(basis):
            image = linalg.apply(op, v)
            if not image:
                continue
            w = _shifted(weights[j], root, sign)
            if w not in position:
                raise ConventionError(f"Weight {w} left the cyclic module of {top}")
            group = position[w]
            for pos, c in _express([basis[k] for k in group], image).items():
                cells[(group[pos], j)] = c
        return linalg.sparse_matrix(cells, (len(basis), len(basis)))

    e = {i: restrict(ambient.e[i], _root(i, n), 1) for i in range(1, n)}
    f = {i: restrict(ambient.f[i], _root(i, n), -1) for i in range(1, n)}
    twisted = [_shifted(w, (twist,) * n) for w in weights]
    logger.debug(f"irrep{hw}: dim {len(basis)}")
    return IrrepModule(n, twisted, e, f, shift, highest_weight=hw, basis=basis,
                       ambient_power=m, twist=twist)


def weight_mults(module: WeightModule) -> Dict[IntWeight, int]:
    """Multiplicity of each K-weight, heaviest weight first."""
    counts = Counter(module.weights)
    return {w: counts[w] for w in sorted(counts, reverse=True)}


def qdim(module: WeightModule) -> QScalar:
    """sum_nu q^(-2 sum_i (N-i+1) nu_i) d_nu."""
    if module.shift:
        raise DomainError(f"qdim needs an integral weight, got shift {module.shift}")
    n = module.n
    total = ZERO
    for w, mult in weight_mults(module).items():
        total += mult * q ** (-2 * sum((n - i) * x for i, x in enumerate(w)))
    return total


def weyl_dimension(weight: Sequence[int]) -> int:
    """prod_{i<j} (λ_i - λ_j + j - i) / (j - i)."""
    num, den = 1, 1
    n = len(weight)
    for i in range(n):
        for j in range(i + 1, n):
            num *= weight[i] - weight[j] + j - i
            den *= j - i
    return num // den


def dominant_weights(n: int, spread: int, levels: Sequence[int] = (0,)) -> List[Weight]:
    """Dominant integral weights with λ_1 - λ_N <= spread and λ_N in levels."""
    out = []
    for level in levels:
        for rising in itertools.combinations_with_replacement(range(spread + 1), n - 1):
            top = tuple(reversed(rising)) + (0,)
            out.append(Weight(tuple(x + level for x in top)))
    return sorted(out, key=lambda w: (w.values[-1], w.values[0] - w.values[-1], w.values))
