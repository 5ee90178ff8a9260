"""
Rewriting engine: relations from matrix equations, completion, PBW normal forms.

Relations are oriented by the degree-lexicographic order induced by an
explicit alphabet order. Completion resolves overlap ambiguities between
leading words up to a degree cap, adjoining new rules when an overlap does not
resolve. Normal forms of completed presentations are memoized per word and
computed incrementally: the normal form of w.x is the normal form of
nf(w).x, and only suffixes of nf(w).x can be reducible.
"""

import heapq
import sys
from dataclasses import dataclass
from random import Random
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from src.config import config
from src.utils.logger import logger

from . import linalg
from .errors import CompletionError, DomainError, FuelError
from .ncalg import GenId, LeggedMatrix, NcElement, StarRule, Word, slot_sort, split_slots, word_text
from .qfield import ONE, ZERO, QScalar

# long Cholesky images recurse once per letter moved
sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

Terms = Dict[Word, QScalar]


def _accumulate(target: Terms, word: Word, value: QScalar):
    total = target.get(word, ZERO) + value
    if total:
        target[word] = total
    else:
        target.pop(word, None)


# ============================================================================
# Relations from matrix equations
# ============================================================================

def relations_from_matrix_eq(lhs: LeggedMatrix, rhs: LeggedMatrix) -> List[NcElement]:
    """
    Entrywise differences lhs - rhs with linearly dependent ones removed.

    The survivors are the earliest independent differences in row-major entry
    order.
    """
    if lhs.legs != rhs.legs or lhs.dim != rhs.dim:
        raise DomainError(
            f"Shape mismatch: legs {lhs.legs}/{rhs.legs}, dim {lhs.dim}/{rhs.dim}")
    keys = sorted(set(lhs.entries) | set(rhs.entries))
    diffs = []
    for key in keys:
        diff = lhs.entries.get(key, NcElement()) - rhs.entries.get(key, NcElement())
        if diff:
            diffs.append(diff)
    keep = linalg.independent_subset([d.terms for d in diffs])
    return [diffs[i] for i in keep]


# ============================================================================
# Presentations
# ============================================================================

@dataclass
class CompletionSummary:
    """What completion did to the input relations."""
    input_relations: int = 0
    rules: int = 0
    adjoined_rules: int = 0
    overlaps_checked: int = 0
    max_overlap_length: int = 0

    def to_dict(self) -> Dict[str, int]:
        return {
            "input_relations": self.input_relations,
            "rules": self.rules,
            "adjoined_rules": self.adjoined_rules,
            "overlaps_checked": self.overlaps_checked,
            "max_overlap_length": self.max_overlap_length,
        }


@dataclass
class NormalFormReport:
    input: NcElement
    output: NcElement
    steps: int


class Presentation:
    """
    A completed presentation: ordered alphabet, star rule and oriented rules.

    Instances are immutable after construction apart from the normal-form
    cache.
    """

    def __init__(self, name: str, alphabet: Sequence[GenId], rules: Dict[Word, Terms],
                 degree_cap: int, star: Optional[StarRule] = None,
                 relations: Optional[List[NcElement]] = None,
                 summary: Optional[CompletionSummary] = None,
                 fuel: Optional[int] = None,
                 inverted: Optional[Dict[GenId, NcElement]] = None):
        self.name = name
        self.alphabet: Tuple[GenId, ...] = tuple(alphabet)
        self.rank = {g: i for i, g in enumerate(self.alphabet)}
        self.rules = rules
        self.lead_lengths = sorted({len(lead) for lead in rules})
        self.degree_cap = degree_cap
        self.star: StarRule = star or {}
        self.relations = list(relations or [])
        # central letter -> central element it inverts
        self.inverted: Dict[GenId, NcElement] = dict(inverted or {})
        self.summary = summary or CompletionSummary(rules=len(rules))
        self.fuel = fuel if fuel is not None else config.limits.fuel
        self._memo: Dict[Word, Terms] = {}
        self._steps = 0
        self._budget = 0

    # ------------------------------------------------------------------
    # order
    # ------------------------------------------------------------------

    def word_key(self, word: Word) -> Tuple[int, Tuple[int, ...]]:
        try:
            return len(word), tuple(self.rank[g] for g in word)
        except KeyError as e:
            raise DomainError(f"Letter {e.args[0]} is not in the alphabet of {self.name}") from None

    def letter(self, name: str, *indices: int) -> GenId:
        g = GenId(self.alphabet[0].algebra, name, tuple(indices))
        if g not in self.rank:
            raise DomainError(f"{self.name} has no generator {g.label()}")
        return g

    def gen(self, name: str, *indices: int) -> NcElement:
        return NcElement.gen(self.letter(name, *indices))

    # ------------------------------------------------------------------
    # normal forms
    # ------------------------------------------------------------------

    def _tick(self):
        self._steps += 1
        if self._steps > self._budget:
            raise FuelError(f"Rewriting in {self.name} ran out of fuel ({self.fuel} steps)")

    def _nf_word(self, word: Word) -> Terms:
        cached = self._memo.get(word)
        if cached is not None:
            return cached
        if len(word) <= 1:
            rhs = self.rules.get(word)
            if rhs is None:
                result = {word: ONE}
            else:
                self._tick()
                result = {}
                for r, c in rhs.items():
                    for v, d in self._nf_word(r).items():
                        _accumulate(result, v, c * d)
        else:
            result = {}
            last = word[-1]
            for u, c in self._nf_word(word[:-1]).items():
                for v, d in self._append(u, last).items():
                    _accumulate(result, v, c * d)
        self._memo[word] = result
        return result

    def _append(self, irreducible: Word, letter: GenId) -> Terms:
        word = irreducible + (letter,)
        for length in self.lead_lengths:
            if length > len(word):
                break
            rhs = self.rules.get(word[-length:])
            if rhs is not None:
                self._tick()
                head = word[:-length]
                out: Terms = {}
                for r, c in rhs.items():
                    for v, d in self._nf_word(head + r).items():
                        _accumulate(out, v, c * d)
                return out
        return {word: ONE}

    def _check_input(self, a: NcElement):
        for word in a.terms:
            if len(word) > self.degree_cap:
                raise FuelError(
                    f"Word of degree {len(word)} exceeds the degree cap {self.degree_cap} of {self.name}")
            for g in word:
                if g not in self.rank:
                    raise DomainError(f"Letter {g.label()} is not in the alphabet of {self.name}")

    def reduce_report(self, a: NcElement) -> NormalFormReport:
        self._check_input(a)
        self._steps = 0
        self._budget = self.fuel
        out: Terms = {}
        for word, coeff in a.terms.items():
            for v, d in self._nf_word(word).items():
                _accumulate(out, v, coeff * d)
        return NormalFormReport(input=a, output=NcElement(out), steps=self._steps)

    def normal_form(self, a: NcElement) -> NcElement:
        return self.reduce_report(a).output

    def clear_inverses(self, a: NcElement) -> NcElement:
        """
        Multiply by powers of the inverted elements until no inverse letter is left.

        Only meaningful for zero tests: the inverted elements are central
        non-zero-divisors, so a vanishes iff the cleared element does.
        """
        for letter, target in self.inverted.items():
            a = clear_letter(a, letter, target)
        return a

    def is_zero(self, a: NcElement) -> bool:
        if self.inverted:
            a = self.clear_inverses(self.normal_form(a))
        return self.normal_form(a).is_zero()

    def equal(self, a: NcElement, b: NcElement) -> bool:
        return self.is_zero(a - b)

    def multiply(self, a: NcElement, b: NcElement) -> NcElement:
        return self.normal_form(a * b)

    def is_irreducible(self, word: Word) -> bool:
        for start in range(len(word)):
            for length in self.lead_lengths:
                if start + length > len(word):
                    break
                if word[start:start + length] in self.rules:
                    return False
        return True

    def reduce_randomly(self, a: NcElement, rng: Random) -> NcElement:
        """Reduce by rules applied at random positions; equals normal_form on completed presentations."""
        self._check_input(a)
        terms = dict(a.terms)
        steps = 0
        while True:
            reducible = []
            for word in terms:
                hits = [(s, l) for s in range(len(word)) for l in self.lead_lengths
                        if s + l <= len(word) and word[s:s + l] in self.rules]
                if hits:
                    reducible.append((word, hits))
            if not reducible:
                return NcElement(terms)
            steps += 1
            if steps > self.fuel:
                raise FuelError(f"Random reduction in {self.name} ran out of fuel")
            reducible.sort(key=lambda pair: self.word_key(pair[0]))
            word, hits = reducible[rng.randrange(len(reducible))]
            start, length = hits[rng.randrange(len(hits))]
            coeff = terms.pop(word)
            for r, c in self.rules[word[start:start + length]].items():
                _accumulate(terms, word[:start] + r + word[start + length:], coeff * c)

    # ------------------------------------------------------------------
    # enumeration and dumps
    # ------------------------------------------------------------------

    def irreducible_words(self, degree: int) -> List[Word]:
        """All irreducible words of the given length, in increasing order."""
        words: List[Word] = [()]
        for _ in range(degree):
            grown = []
            for w in words:
                for g in self.alphabet:
                    candidate = w + (g,)
                    if all(candidate[-l:] not in self.rules for l in self.lead_lengths if l <= len(candidate)):
                        grown.append(candidate)
            words = grown
        return sorted(words, key=self.word_key)

    def count_irreducible(self, degree: int) -> int:
        return len(self.irreducible_words(degree))

    def element_text(self, a: NcElement) -> str:
        return a.to_text(key=self.word_key)

    def dump(self) -> str:
        lines = []
        for lead in sorted(self.rules, key=self.word_key):
            lines.append(f"{word_text(lead)} -> {self.element_text(NcElement(self.rules[lead]))}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"Presentation({self.name}, letters={len(self.alphabet)}, rules={len(self.rules)})"


# ============================================================================
# Completion
# ============================================================================

class _Completer:
    """Overlap resolution in the style of Bergman's diamond lemma."""

    def __init__(self, alphabet: Sequence[GenId], degree_cap: int, max_new_rules: int, fuel: int):
        self.rank = {g: i for i, g in enumerate(alphabet)}
        self.degree_cap = degree_cap
        self.max_new_rules = max_new_rules
        self.fuel = fuel
        self.rules: Dict[Word, Terms] = {}
        self.lengths: Dict[int, int] = {}
        self.queue: List[Tuple[int, int, Word, Word, int]] = []
        self.beyond: List[Tuple[Word, Word, int]] = []
        self.counter = 0
        self.adjoined = 0
        self.overlaps_checked = 0
        self.max_overlap = 0
        self.seeding = True

    def key(self, word: Word):
        try:
            return len(word), tuple(self.rank[g] for g in word)
        except KeyError as e:
            raise DomainError(f"Letter {e.args[0]} is not in the completion alphabet") from None

    def _find(self, word: Word):
        for start in range(len(word)):
            for length in sorted(self.lengths):
                if start + length > len(word):
                    break
                rhs = self.rules.get(word[start:start + length])
                if rhs is not None:
                    return start, length, rhs
        return None

    def reduce(self, terms: Terms) -> Terms:
        todo = {w: c for w, c in terms.items() if c}
        out: Terms = {}
        steps = 0
        while todo:
            word = max(todo, key=self.key)
            coeff = todo.pop(word)
            hit = self._find(word)
            if hit is None:
                _accumulate(out, word, coeff)
                continue
            steps += 1
            if steps > self.fuel:
                raise FuelError("Completion reduction ran out of fuel")
            start, length, rhs = hit
            for r, c in rhs.items():
                _accumulate(todo, word[:start] + r + word[start + length:], coeff * c)
        return out

    def add_relation(self, terms: Terms):
        pending = [terms]
        while pending:
            reduced = self.reduce(pending.pop())
            if not reduced:
                continue
            lead = max(reduced, key=self.key)
            if not lead:
                raise CompletionError("Relations imply 1 = 0", overlap=None)
            lc = reduced[lead]
            rhs = {w: -c / lc for w, c in reduced.items() if w != lead}
            # rules whose leading word contains the new one become relations again
            for old in [l for l in self.rules if len(l) > len(lead) and _contains(l, lead)]:
                old_rhs = self.rules.pop(old)
                self._drop_length(len(old))
                relation = dict(old_rhs)
                relation = {w: -c for w, c in relation.items()}
                relation[old] = ONE
                pending.append(relation)
            self.rules[lead] = rhs
            self.lengths[len(lead)] = self.lengths.get(len(lead), 0) + 1
            if not self.seeding:
                self.adjoined += 1
                if self.adjoined > self.max_new_rules:
                    raise CompletionError(
                        f"More than {self.max_new_rules} rules adjoined; last lead {word_text(lead)}",
                        overlap=lead)
                logger.debug(f"Adjoined rule {word_text(lead)} ({self.adjoined})")
            self._enqueue_overlaps(lead)

    def _drop_length(self, length: int):
        self.lengths[length] -= 1
        if not self.lengths[length]:
            del self.lengths[length]

    def _enqueue_overlaps(self, lead: Word):
        for other in list(self.rules):
            for first, second in ((lead, other), (other, lead)) if other != lead else ((lead, lead),):
                for k in range(1, min(len(first), len(second))):
                    if first[-k:] == second[:k]:
                        length = len(first) + len(second) - k
                        self.counter += 1
                        heapq.heappush(self.queue, (length, self.counter, first, second, k))

    def _overlap_difference(self, first: Word, second: Word, k: int) -> Terms:
        r1, r2 = self.rules[first], self.rules[second]
        tail, head = second[k:], first[:-k]
        diff: Terms = {}
        for w, c in r1.items():
            _accumulate(diff, w + tail, c)
        for w, c in r2.items():
            _accumulate(diff, head + w, -c)
        return diff

    def run(self):
        self.seeding = False
        while self.queue:
            length, _, first, second, k = heapq.heappop(self.queue)
            if first not in self.rules or second not in self.rules:
                continue
            if length > self.degree_cap:
                self.beyond.append((first, second, k))
                continue
            self.overlaps_checked += 1
            self.max_overlap = max(self.max_overlap, length)
            self.add_relation(self._overlap_difference(first, second, k))
        for first, second, k in self.beyond:
            if first not in self.rules or second not in self.rules:
                continue
            if self.reduce(self._overlap_difference(first, second, k)):
                overlap = first + second[k:]
                raise CompletionError(
                    f"Overlap {word_text(overlap)} does not resolve within degree cap {self.degree_cap}",
                    overlap=overlap)

    def interreduced(self) -> Dict[Word, Terms]:
        final: Dict[Word, Terms] = {}
        for lead in sorted(self.rules, key=self.key):
            final[lead] = self.reduce(self.rules[lead])
        return final


def _contains(word: Word, sub: Word) -> bool:
    n = len(sub)
    return any(word[i:i + n] == sub for i in range(len(word) - n + 1))


def clear_letter(a: NcElement, letter: GenId, target: NcElement) -> NcElement:
    """Replace letter^k by target^(K-k) in every word, K the largest power present."""
    counts = {word: sum(1 for g in word if g == letter) for word in a.terms}
    top = max(counts.values(), default=0)
    if not top:
        return a
    powers = [NcElement.one()]
    for _ in range(top):
        powers.append(powers[-1] * target)
    total = NcElement()
    for word, coeff in a.terms.items():
        rest = tuple(g for g in word if g != letter)
        total = total + (NcElement({rest: coeff}) * powers[top - counts[word]])
    return total


def orient_and_complete(relations: Iterable[NcElement], alphabet: Sequence[GenId], degree_cap: int,
                        *, name: str = "", star: Optional[StarRule] = None,
                        max_new_rules: Optional[int] = None,
                        input_cap: Optional[int] = None,
                        inverted: Optional[Dict[GenId, NcElement]] = None) -> Presentation:
    """
    Orient relations by the deglex order of ``alphabet`` and complete them.

    ``degree_cap`` bounds the overlaps completion resolves; ``input_cap``
    (default: the same) bounds the words normal_form accepts.

    Raises:
        CompletionError: when an overlap is still unresolved beyond the cap.
    """
    relations = list(relations)
    limit = config.limits.max_new_rules if max_new_rules is None else max_new_rules
    completer = _Completer(alphabet, degree_cap, limit, config.limits.fuel)
    for relation in sorted(relations, key=lambda r: max((completer.key(w) for w in r.terms), default=(0, ()))):
        completer.add_relation(relation.terms)
    completer.run()
    rules = completer.interreduced()
    summary = CompletionSummary(
        input_relations=len(relations),
        rules=len(rules),
        adjoined_rules=completer.adjoined,
        overlaps_checked=completer.overlaps_checked,
        max_overlap_length=completer.max_overlap,
    )
    logger.debug(f"Completed {name or 'presentation'}: {summary.to_dict()}")
    return Presentation(name, alphabet, rules, input_cap or degree_cap, star=star,
                        relations=relations, summary=summary, inverted=inverted)



# ============================================================================
# Tensor carriers
# ============================================================================

class TensorPresentation:
    """
    Normal forms in a tensor product of presentations.

    Letters carry slot numbers 1..k; each word is sorted by slot and each
    slot segment is normalized in its own factor.
    """

    def __init__(self, *factors: Presentation):
        self.factors = factors
        self.name = " (x) ".join(f.name for f in factors)

    def normal_form(self, a: NcElement) -> NcElement:
        out: Terms = {}
        for word, coeff in a.terms.items():
            parts = split_slots(slot_sort(word), len(self.factors))
            partial: Terms = {(): coeff}
            for slot, (factor, part) in enumerate(zip(self.factors, parts), start=1):
                segment = factor.normal_form(NcElement({part: ONE}))
                grown: Terms = {}
                for prefix, c in partial.items():
                    for w, d in segment.terms.items():
                        _accumulate(grown, prefix + tuple(g.in_slot(slot) for g in w), c * d)
                partial = grown
            for w, c in partial.items():
                _accumulate(out, w, c)
        return NcElement(out)

    def clear_inverses(self, a: NcElement) -> NcElement:
        for slot, factor in enumerate(self.factors, start=1):
            for letter, target in factor.inverted.items():
                a = clear_letter(a, letter.in_slot(slot), target.in_slot(slot))
        return a

    def is_zero(self, a: NcElement) -> bool:
        a = self.normal_form(a)
        if any(f.inverted for f in self.factors):
            a = self.normal_form(self.clear_inverses(a))
        return a.is_zero()

    def equal(self, a: NcElement, b: NcElement) -> bool:
        return self.is_zero(a - b)
