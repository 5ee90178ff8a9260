"""
Free *-algebra arithmetic over Q(q).

Words are tuples of :class:`GenId`; an :class:`NcElement` is a sparse linear
combination of words. Tensor products A (x) B are modelled inside the same
word algebra by tagging letters with a slot number. :class:`LeggedMatrix`
implements leg notation (X_13, R_12, ...) with NcElement entries.
"""

import itertools
from typing import Callable, Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

from .errors import DomainError
from .qfield import ONE, ZERO, QScalar, as_scalar, to_text

NO_SLOT = 0
LEFT = 1
RIGHT = 2
THIRD = 3

TENSOR_TAG = "tensor"

_DISPLAY_NAMES = {
    "Tp": "T+",
    "Tm": "T-",
}
_INVERSE_NAMES = {"Tinv": "T", "Kinv": "K"}


class GenId(NamedTuple):
    """A generator letter: algebra tag, name, indices and tensor slot."""
    algebra: str
    name: str
    indices: Tuple[int, ...] = ()
    slot: int = NO_SLOT

    def label(self) -> str:
        idx = "".join(str(i) for i in self.indices)
        if self.name in _INVERSE_NAMES:
            text = f"{_INVERSE_NAMES[self.name]}{idx}^-1"
        else:
            text = f"{_DISPLAY_NAMES.get(self.name, self.name)}{idx}"
        if self.slot:
            text += f"[{self.slot}]"
        return text

    def in_slot(self, slot: int) -> "GenId":
        return self._replace(slot=slot)

    def plain(self) -> "GenId":
        return self._replace(slot=NO_SLOT)


Word = Tuple[GenId, ...]
Scalar = Union[int, QScalar]


def word_text(word: Word) -> str:
    return ".".join(g.label() for g in word) if word else "1"


def _tag_of_word(word: Word) -> Optional[str]:
    tag = None
    for g in word:
        letter_tag = TENSOR_TAG if g.slot else g.algebra
        if tag is None:
            tag = letter_tag
        elif tag != letter_tag:
            raise DomainError(f"Word mixes alphabets {tag} and {letter_tag}")
    return tag


def _join_tags(a: Optional[str], b: Optional[str]) -> Optional[str]:
    if a is None:
        return b
    if b is None or a == b:
        return a
    raise DomainError(f"Mismatched alphabets: {a} vs {b}")


class NcElement:
    """A finite linear combination of words with Q(q) coefficients."""

    __slots__ = ("terms", "algebra")

    def __init__(self, terms: Optional[Dict[Word, Scalar]] = None, algebra: Optional[str] = None):
        clean: Dict[Word, QScalar] = {}
        tag = algebra
        for word, coeff in (terms or {}).items():
            coeff = as_scalar(coeff)
            if coeff:
                clean[word] = coeff
                if word:
                    tag = _join_tags(tag, _tag_of_word(word))
        self.terms = clean
        self.algebra = tag

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls) -> "NcElement":
        return cls()

    @classmethod
    def one(cls) -> "NcElement":
        return cls({(): ONE})

    @classmethod
    def scalar(cls, c: Scalar) -> "NcElement":
        return cls({(): c})

    @classmethod
    def gen(cls, g: GenId) -> "NcElement":
        return cls({(g,): ONE})

    @classmethod
    def word(cls, word: Sequence[GenId], coeff: Scalar = 1) -> "NcElement":
        return cls({tuple(word): coeff})

    @classmethod
    def _raw(cls, terms: Dict[Word, QScalar], algebra: Optional[str]) -> "NcElement":
        element = cls.__new__(cls)
        element.terms = terms
        element.algebra = algebra
        return element

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "NcElement":
        if isinstance(other, NcElement):
            return other
        return NcElement.scalar(other)

    def __add__(self, other) -> "NcElement":
        other = self._coerce(other)
        tag = _join_tags(self.algebra, other.algebra)
        terms = dict(self.terms)
        for word, coeff in other.terms.items():
            value = terms.get(word, ZERO) + coeff
            if value:
                terms[word] = value
            else:
                terms.pop(word, None)
        return NcElement._raw(terms, tag)

    __radd__ = __add__

    def __neg__(self) -> "NcElement":
        return NcElement._raw({w: -c for w, c in self.terms.items()}, self.algebra)

    def __sub__(self, other) -> "NcElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "NcElement":
        return self._coerce(other) - self

    def scale(self, c: Scalar) -> "NcElement":
        c = as_scalar(c)
        if not c:
            return NcElement()
        return NcElement._raw({w: c * v for w, v in self.terms.items()}, self.algebra)

    def __mul__(self, other) -> "NcElement":
        if not isinstance(other, NcElement):
            return self.scale(other)
        tag = _join_tags(self.algebra, other.algebra)
        terms: Dict[Word, QScalar] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 + w2
                value = terms.get(word, ZERO) + c1 * c2
                if value:
                    terms[word] = value
                else:
                    terms.pop(word, None)
        return NcElement._raw(terms, tag)

    def __rmul__(self, other) -> "NcElement":
        return self.scale(other)

    def __pow__(self, n: int) -> "NcElement":
        if n < 0:
            raise DomainError("Negative powers are not defined in the word algebra")
        result = NcElement.one()
        for _ in range(n):
            result = result * self
        return result

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NcElement):
            other = NcElement.scalar(other)
        return self.terms == other.terms

    __hash__ = None

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Word, QScalar]]:
        return iter(self.terms.items())

    def coefficient(self, word: Sequence[GenId]) -> QScalar:
        return self.terms.get(tuple(word), ZERO)

    def constant_term(self) -> QScalar:
        return self.terms.get((), ZERO)

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def letters(self) -> set:
        return {g for w in self.terms for g in w}

    def is_scalar(self) -> bool:
        return all(not w for w in self.terms)

    def to_text(self, key: Optional[Callable[[Word], object]] = None) -> str:
        """Human-readable dump, largest word first in the given order."""
        if not self.terms:
            return "0"
        order = key or (lambda w: (len(w), word_text(w)))
        pieces = []
        for word in sorted(self.terms, key=order, reverse=True):
            coeff = self.terms[word]
            text = to_text(coeff)
            negative = text.startswith("-") and "/" not in text and "+" not in text[1:] and "-" not in text[1:]
            if negative:
                text = text[1:]
            if word:
                if text == "1":
                    body = word_text(word)
                else:
                    wrap = any(ch in text[1:] for ch in "+-/")
                    body = f"({text})*{word_text(word)}" if wrap else f"{text}*{word_text(word)}"
            else:
                body = text
            pieces.append(("-" if negative else "+", body))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"NcElement({self.to_text()})"

    # ------------------------------------------------------------------
    # homomorphisms
    # ------------------------------------------------------------------

    def substitute(self, images: Callable[[GenId], "NcElement"],
                   reduce: Optional[Callable[["NcElement"], "NcElement"]] = None,
                   anti: bool = False) -> "NcElement":
        """
        Extend a letter map multiplicatively (or antimultiplicatively).

        ``reduce`` is applied after each letter is multiplied in, keeping
        intermediate products in normal form.
        """
        total = NcElement()
        for word, coeff in self.terms.items():
            acc = NcElement.one()
            letters = reversed(word) if anti else word
            for g in letters:
                acc = acc * images(g)
                if reduce is not None:
                    acc = reduce(acc)
            total = total + acc.scale(coeff)
        return total

    def in_slot(self, slot: int) -> "NcElement":
        return NcElement({tuple(g.in_slot(slot) for g in w): c for w, c in self.terms.items()})

    def plain(self) -> "NcElement":
        return NcElement({tuple(g.plain() for g in w): c for w, c in self.terms.items()})


def gen(algebra: str, name: str, *indices: int) -> NcElement:
    return NcElement.gen(GenId(algebra, name, tuple(indices)))


def commutator(a: NcElement, b: NcElement) -> NcElement:
    return a * b - b * a


# ============================================================================
# Star structures
# ============================================================================

StarRule = Dict[GenId, NcElement]


def star_apply(rule: StarRule, a: NcElement) -> NcElement:
    """Antimultiplicative, coefficient-wise q-real extension of a generator rule."""
    def image(g: GenId) -> NcElement:
        try:
            return rule[g]
        except KeyError:
            raise DomainError(f"Generator {g.label()} has no star image") from None

    return a.substitute(image, anti=True)


# ============================================================================
# Tensor squares
# ============================================================================

def tensor_square(a: NcElement, b: NcElement) -> NcElement:
    """a (x) b as a slot-tagged word algebra element, left letters first."""
    return slot_normalize(a.in_slot(LEFT) * b.in_slot(RIGHT))


def tensor_product(*factors: NcElement) -> NcElement:
    result = NcElement.one()
    for slot, factor in enumerate(factors, start=1):
        result = result * factor.in_slot(slot)
    return slot_normalize(result)


def slot_sort(word: Word) -> Word:
    return tuple(sorted(word, key=lambda g: g.slot))


def slot_normalize(a: NcElement) -> NcElement:
    """Stable sort of each word by slot; letters of different slots commute."""
    out: Dict[Word, QScalar] = {}
    for word, coeff in a.terms.items():
        key = slot_sort(word)
        out[key] = out.get(key, ZERO) + coeff
    return NcElement(out)


def split_slots(word: Word, slots: int) -> List[Word]:
    """Per-slot subwords of a slot-sorted word, with slot tags removed."""
    parts: List[List[GenId]] = [[] for _ in range(slots)]
    for g in word:
        if not 1 <= g.slot <= slots:
            raise DomainError(f"Letter {g.label()} is not in slots 1..{slots}")
        parts[g.slot - 1].append(g.plain())
    return [tuple(p) for p in parts]


# ============================================================================
# Legged matrices
# ============================================================================

MultiIndex = Tuple[int, ...]


class LeggedMatrix:
    """
    A sparse N^L x N^L matrix with NcElement entries.

    Row and column indices are L-tuples of 1-based indices; absent entries
    are zero.
    """

    __slots__ = ("legs", "dim", "entries")

    def __init__(self, legs: int, dim: int,
                 entries: Optional[Dict[Tuple[MultiIndex, MultiIndex], NcElement]] = None):
        self.legs = legs
        self.dim = dim
        self.entries: Dict[Tuple[MultiIndex, MultiIndex], NcElement] = {}
        for key, value in (entries or {}).items():
            if not isinstance(value, NcElement):
                value = NcElement.scalar(value)
            if value:
                self._check_index(key)
                self.entries[key] = value

    def _check_index(self, key):
        row, col = key
        if len(row) != self.legs or len(col) != self.legs:
            raise DomainError(f"Index {key} does not have {self.legs} legs")
        if any(not 1 <= i <= self.dim for i in row + col):
            raise DomainError(f"Index {key} out of range for N={self.dim}")

    # ------------------------------------------------------------------

    @classmethod
    def identity(cls, legs: int, dim: int) -> "LeggedMatrix":
        one = NcElement.one()
        return cls(legs, dim, {(i, i): one for i in multi_indices(legs, dim)})

    @classmethod
    def from_function(cls, legs: int, dim: int,
                      fn: Callable[[MultiIndex, MultiIndex], Union[NcElement, Scalar, None]]) -> "LeggedMatrix":
        cells = {}
        for row in multi_indices(legs, dim):
            for col in multi_indices(legs, dim):
                value = fn(row, col)
                if value is not None:
                    cells[(row, col)] = value
        return cls(legs, dim, cells)

    def __getitem__(self, key) -> NcElement:
        row, col = key
        if isinstance(row, int):
            row, col = (row,), (col,)
        return self.entries.get((tuple(row), tuple(col)), NcElement())

    def _check_shape(self, other: "LeggedMatrix"):
        if self.legs != other.legs or self.dim != other.dim:
            raise DomainError(
                f"Shape mismatch: legs {self.legs}/{other.legs}, dim {self.dim}/{other.dim}")

    def __add__(self, other: "LeggedMatrix") -> "LeggedMatrix":
        self._check_shape(other)
        cells = dict(self.entries)
        for key, value in other.entries.items():
            cells[key] = cells[key] + value if key in cells else value
        return LeggedMatrix(self.legs, self.dim, cells)

    def __neg__(self) -> "LeggedMatrix":
        return LeggedMatrix(self.legs, self.dim, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: "LeggedMatrix") -> "LeggedMatrix":
        return self + (-other)

    def scale(self, c: Scalar) -> "LeggedMatrix":
        return LeggedMatrix(self.legs, self.dim, {k: v.scale(c) for k, v in self.entries.items()})

    def __mul__(self, other) -> "LeggedMatrix":
        if isinstance(other, LeggedMatrix):
            return legged_mul(self, other)
        return self.scale(other)

    def map_entries(self, fn: Callable[[NcElement], NcElement]) -> "LeggedMatrix":
        return LeggedMatrix(self.legs, self.dim, {k: fn(v) for k, v in self.entries.items()})

    def entry_items(self) -> Iterable[Tuple[Tuple[MultiIndex, MultiIndex], NcElement]]:
        return sorted(self.entries.items())

    def is_zero(self) -> bool:
        return not self.entries

    def __repr__(self) -> str:
        return f"LeggedMatrix(legs={self.legs}, dim={self.dim}, nonzero={len(self.entries)})"


def multi_indices(legs: int, dim: int) -> List[MultiIndex]:
    return list(itertools.product(range(1, dim + 1), repeat=legs))


def legged_mul(a: LeggedMatrix, b: LeggedMatrix) -> LeggedMatrix:
    """Matrix product; noncommuting entries multiply left factor first."""
    a._check_shape(b)
    by_row: Dict[MultiIndex, List[Tuple[MultiIndex, NcElement]]] = {}
    for (k, col), value in b.entries.items():
        by_row.setdefault(k, []).append((col, value))
    cells: Dict[Tuple[MultiIndex, MultiIndex], NcElement] = {}
    for (row, k), x in a.entries.items():
        for col, y in by_row.get(k, ()):
            product = x * y
            key = (row, col)
            cells[key] = cells[key] + product if key in cells else product
    return LeggedMatrix(a.legs, a.dim, cells)


def leg_embed(m: LeggedMatrix, total_legs: int,
              position: Union[int, Sequence[int]]) -> LeggedMatrix:
    """
    Place ``m`` on the given legs of a ``total_legs``-leg identity.

    ``position`` is a single leg for a one-leg matrix, or a tuple of distinct
    legs for a multi-leg one; ``leg_embed(R, 2, (2, 1))`` is R_21.
    """
    positions = (position,) if isinstance(position, int) else tuple(position)
    if len(positions) != m.legs:
        raise DomainError(f"Need {m.legs} positions, got {positions}")
    if len(set(positions)) != len(positions) or any(not 1 <= p <= total_legs for p in positions):
        raise DomainError(f"Positions {positions} out of range for {total_legs} legs")
    others = [p for p in range(1, total_legs + 1) if p not in positions]
    cells = {}
    for (row, col), value in m.entries.items():
        for rest in multi_indices(len(others), m.dim):
            new_row = [0] * total_legs
            new_col = [0] * total_legs
            for p, i, j in zip(positions, row, col):
                new_row[p - 1] = i
                new_col[p - 1] = j
            for p, i in zip(others, rest):
                new_row[p - 1] = i
                new_col[p - 1] = i
            cells[(tuple(new_row), tuple(new_col))] = value
    return LeggedMatrix(total_legs, m.dim, cells)


def legged_power(m: LeggedMatrix, k: int) -> LeggedMatrix:
    result = LeggedMatrix.identity(m.legs, m.dim)
    for _ in range(k):
        result = legged_mul(result, m)
    return result


def generator_matrix(dim: int, letter: Callable[[int, int], Optional[NcElement]]) -> LeggedMatrix:
    """One-leg matrix whose (i, j) entry is ``letter(i, j)`` (None for zero)."""
    return LeggedMatrix.from_function(1, dim, lambda r, c: letter(r[0], c[0]))


def scalar_matrix(legs: int, dim: int,
                  values: Dict[Tuple[MultiIndex, MultiIndex], Scalar]) -> LeggedMatrix:
    return LeggedMatrix(legs, dim, {k: NcElement.scalar(v) for k, v in values.items()})
