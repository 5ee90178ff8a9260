"""
Hopf axioms on generators, checked by rewriting in tensor carriers.
"""

from typing import Callable, Dict, List, Sequence

from src.layers.algebra.ncalg import GenId, NcElement, Word, slot_normalize, slot_sort, split_slots

from .catalog import AlgebraHandle

SlotMap = Callable[[Word], NcElement]


def map_slots(a: NcElement, maps: Sequence[SlotMap]) -> NcElement:
    """Apply one map per slot to every word of a slot-tagged element and multiply the results in slot order."""
    total = NcElement()
    for word, coeff in a.terms.items():
        parts = split_slots(slot_sort(word), len(maps))
        value = NcElement.scalar(coeff)
        for fn, part in zip(maps, parts):
            value = value * fn(part)
        total = total + value
    return slot_normalize(total)


def shift_slots(a: NcElement, by: int) -> NcElement:
    return NcElement({tuple(g.in_slot(g.slot + by) for g in w): c for w, c in a.terms.items()})


def _plain(word: Word) -> NcElement:
    return NcElement.word(word)


def hopf_axioms(h: AlgebraHandle) -> Dict[str, List[str]]:
    """
    Failing generators per law: both counit laws, coassociativity and, when
    an antipode exists, both antipode laws.
    """
    hopf = h._require_hopf()

    def counit(word: Word) -> NcElement:
        return NcElement.scalar(h.counit(NcElement.word(word)))

    def coproduct(word: Word) -> NcElement:
        return h.coproduct(NcElement.word(word))

    def antipode(word: Word) -> NcElement:
        return h.antipode(NcElement.word(word))

    def in_slot(slot: int) -> SlotMap:
        return lambda word: NcElement.word(word).in_slot(slot)

    failures: Dict[str, List[str]] = {"counit_left": [], "counit_right": [], "coassociativity": []}
    if hopf.antipode is not None:
        failures["antipode_left"] = []
        failures["antipode_right"] = []
    carrier3 = h.carrier(3)
    for g in h.presentation.alphabet:
        a = NcElement.gen(g)
        delta = hopf.coproduct[g]
        if not h.equal(map_slots(delta, [counit, _plain]), a):
            failures["counit_left"].append(g.label())
        if not h.equal(map_slots(delta, [_plain, counit]), a):
            failures["counit_right"].append(g.label())
        left = map_slots(delta, [coproduct, in_slot(3)])
        right = map_slots(delta, [in_slot(1), lambda w: shift_slots(coproduct(w), 1)])
        if not carrier3.equal(left, right):
            failures["coassociativity"].append(g.label())
        if hopf.antipode is not None:
            unit = NcElement.scalar(hopf.counit[g])
            if not h.equal(map_slots(delta, [antipode, _plain]), unit):
                failures["antipode_left"].append(g.label())
            if not h.equal(map_slots(delta, [_plain, antipode]), unit):
                failures["antipode_right"].append(g.label())
    return failures


def is_grouplike(h: AlgebraHandle, a: NcElement) -> bool:
    """Delta(a) = a (x) a."""
    square = NcElement()
    for w1, c1 in a.terms.items():
        for w2, c2 in a.terms.items():
            square = square + NcElement({tuple(g.in_slot(1) for g in w1) + tuple(g.in_slot(2) for g in w2): c1 * c2})
    return h.carrier(2).equal(h.coproduct(a), square)


def central_failures(h: AlgebraHandle, a: NcElement, letters: Sequence[GenId] = ()) -> List[str]:
    """Generators that do not commute with ``a``."""
    failures = []
    for g in letters or h.presentation.alphabet:
        x = NcElement.gen(g)
        if not h.is_zero(a * x - x * a):
            failures.append(g.label())
    return failures
