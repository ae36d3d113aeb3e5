"""Deterministic analysis of automata.

Subset construction, synchronous products, language equivalence with
counterexamples, and bounded enumeration.  The enumeration is deliberately
a brute-force simulation, independent of the subset construction, so the
two can vouch for each other in tests.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable, Iterable, Mapping

from .automaton import (
    Automaton,
    StateId,
    Symbol,
    UnknownSymbolError,
    Word,
    epsilon_closure,
    pad_alphabet,
    step,
    symbol_key,
    validate,
)

__all__ = [
    "AlphabetMismatchError",
    "Dfa",
    "EnumerationBoundError",
    "EquivalenceVerdict",
    "InvalidAutomatonError",
    "SubsetState",
    "determinize",
    "dfa_accepts",
    "dfa_to_automaton",
    "enumerate_language",
    "equivalent",
    "is_empty",
    "product",
]

SubsetState = tuple[StateId, ...]


class AlphabetMismatchError(ValueError):
    """Product operands must share one alphabet; pad to the union first."""


class InvalidAutomatonError(ValueError):
    """The operation requires an automaton that passes validation."""


class EnumerationBoundError(ValueError):
    """Requested enumeration length exceeds the configured cap."""


@dataclass(frozen=True)
class Dfa:
    """Deterministic view of an automaton over canonical subset states.

    ``transition`` is total over ``states`` x ``alphabet``; the empty subset
    is the sink and appears among the states only when it is reachable.  A
    subset state is final iff it contains a final state of the source.
    """

    alphabet: frozenset[Symbol]
    states: frozenset[SubsetState]
    initial: SubsetState
    transition: Mapping[tuple[SubsetState, Symbol], SubsetState]
    finals: frozenset[SubsetState]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "transition", MappingProxyType(dict(self.transition)))


@dataclass(frozen=True)
class EquivalenceVerdict:
    """Outcome of a language comparison.

    ``counterexample`` is present exactly when the languages differ, and is
    accepted by exactly one of the two compared automata.
    """

    equivalent: bool
    counterexample: Word | None


def _require_valid(automaton: Automaton) -> None:
    problems = validate(automaton)
    if problems:
        codes = "; ".join(v.code for v in problems)
        raise InvalidAutomatonError(f"invalid automaton: {codes}")


def _canonical(states: Iterable[StateId]) -> SubsetState:
    return tuple(sorted(states))


def determinize(automaton: Automaton) -> Dfa:
    """Subset construction.

    Starts from the closure of the initial state and keeps only reachable
    subset states; the empty sink shows up exactly when some move reaches
    it.  The result accepts the same language as the input.
    """
    _require_valid(automaton)
    letters = automaton.letters()
    initial = _canonical(epsilon_closure(automaton, (automaton.initial,)))
    table: dict[tuple[SubsetState, Symbol], SubsetState] = {}
    finals: set[SubsetState] = set()
    seen: set[SubsetState] = {initial}
    queue: deque[SubsetState] = deque([initial])
    while queue:
        subset = queue.popleft()
        if not automaton.finals.isdisjoint(subset):
            finals.add(subset)
        for sym in letters:
            successor = _canonical(step(automaton, subset, sym))
            table[(subset, sym)] = successor
            if successor not in seen:
                seen.add(successor)
                queue.append(successor)
    return Dfa(automaton.alphabet, frozenset(seen), initial, table, frozenset(finals))


def dfa_accepts(dfa: Dfa, input_word: Iterable[Symbol]) -> bool:
    """Walk the total transition table; no search involved."""
    current = dfa.initial
    for symbol in input_word:
        key = (current, symbol)
        if key not in dfa.transition:
            raise UnknownSymbolError(
                f"symbol {symbol} is not a letter of the alphabet"
            )
        current = dfa.transition[key]
    return current in dfa.finals


def product(
    left: Dfa, right: Dfa, combine: Callable[[bool, bool], bool]
) -> Dfa:
    """Synchronous product of two DFAs over the same alphabet.

    A pair state is final iff ``combine(left-final?, right-final?)``.  Pair
    states are encoded by tagging each side's members with an L/R namespace
    and taking the union, which keeps the result an ordinary Dfa.
    """
    if left.alphabet != right.alphabet:
        raise AlphabetMismatchError(
            "product requires identical alphabets; pad to the union first"
        )
    letters = sorted(left.alphabet, key=symbol_key)

    def encode(ls: SubsetState, rs: SubsetState) -> SubsetState:
        tagged = [StateId(("L", *s.namespace), s.local) for s in ls]
        tagged += [StateId(("R", *s.namespace), s.local) for s in rs]
        return tuple(sorted(tagged))

    start = (left.initial, right.initial)
    table: dict[tuple[SubsetState, Symbol], SubsetState] = {}
    states: set[SubsetState] = set()
    finals: set[SubsetState] = set()
    seen: set[tuple[SubsetState, SubsetState]] = {start}
    queue: deque[tuple[SubsetState, SubsetState]] = deque([start])
    while queue:
        ls, rs = queue.popleft()
        here = encode(ls, rs)
        states.add(here)
        if combine(ls in left.finals, rs in right.finals):
            finals.add(here)
        for sym in letters:
            successor = (left.transition[(ls, sym)], right.transition[(rs, sym)])
            table[(here, sym)] = encode(*successor)
            if successor not in seen:
                seen.add(successor)
                queue.append(successor)
    return Dfa(
        left.alphabet, frozenset(states), encode(*start), table, frozenset(finals)
    )


def is_empty(dfa: Dfa) -> Word | None:
    """None when the language is empty, else its least word.

    Breadth-first over the table with letters in canonical order, so the
    returned word is the shortest accepted one, lexicographically least
    among the shortest.
    """
    letters = sorted(dfa.alphabet, key=symbol_key)
    reached: dict[SubsetState, Word] = {dfa.initial: ()}
    queue: deque[SubsetState] = deque([dfa.initial])
    while queue:
        current = queue.popleft()
        if current in dfa.finals:
            return reached[current]
        for sym in letters:
            successor = dfa.transition[(current, sym)]
            if successor not in reached:
                reached[successor] = reached[current] + (sym,)
                queue.append(successor)
    return None


def equivalent(a: Automaton, b: Automaton) -> EquivalenceVerdict:
    """Decide whether two automata accept the same language.

    Both sides are padded to the union alphabet, determinized, and compared
    through the symmetric-difference product: the languages are equal iff
    that product is empty, and its least word otherwise serves as the
    counterexample.
    """
    _require_valid(a)
    _require_valid(b)
    union = a.alphabet | b.alphabet
    left = determinize(pad_alphabet(a, union))
    right = determinize(pad_alphabet(b, union))
    difference = product(left, right, lambda x, y: x != y)
    counterexample = is_empty(difference)
    return EquivalenceVerdict(counterexample is None, counterexample)


def enumerate_language(
    automaton: Automaton, max_len: int, cap: int = 10
) -> list[Word]:
    """All accepted words of length <= ``max_len``, shortest then lexicographic.

    Brute force: every word over the alphabet is simulated directly (shared
    prefixes share their frontier), with no subset construction involved.
    This is the reference oracle the composition laws are checked against.
    """
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    if max_len > cap:
        raise EnumerationBoundError(
            f"max_len {max_len} exceeds the configured cap {cap}"
        )
    letters = automaton.letters()
    accepted: list[Word] = []

    def explore(prefix: Word, frontier: frozenset[StateId], remaining: int) -> None:
        if not automaton.finals.isdisjoint(frontier):
            accepted.append(prefix)
        if remaining == 0:
            return
        for sym in letters:
            successor = step(automaton, frontier, sym)
            if successor:  # a dead frontier never accepts anything below it
                explore(prefix + (sym,), successor, remaining - 1)

    explore((), epsilon_closure(automaton, (automaton.initial,)), max_len)
    accepted.sort(key=lambda w: (len(w), tuple(symbol_key(s) for s in w)))
    return accepted


def dfa_to_automaton(dfa: Dfa, prefix: str = "d") -> Automaton:
    """Repackage a Dfa as an ordinary automaton with compact state names.

    Subset states are renamed ``d0, d1, ...`` in breadth-first order from
    the initial state (letters in canonical order), so the output is stable
    and parses back from its canonical rendering.
    """
    letters = sorted(dfa.alphabet, key=symbol_key)
    names: dict[SubsetState, StateId] = {dfa.initial: StateId((), f"{prefix}0")}
    order: deque[SubsetState] = deque([dfa.initial])
    while order:
        current = order.popleft()
        for sym in letters:
            successor = dfa.transition[(current, sym)]
            if successor not in names:
                names[successor] = StateId((), f"{prefix}{len(names)}")
                order.append(successor)
    for leftover in sorted(dfa.states - names.keys()):
        names[leftover] = StateId((), f"{prefix}{len(names)}")
    transitions = {
        (names[source], sym): frozenset({names[target]})
        for (source, sym), target in dfa.transition.items()
    }
    return Automaton(
        alphabet=dfa.alphabet,
        states=frozenset(names.values()),
        initial=names[dfa.initial],
        transitions=transitions,
        finals=frozenset(names[s] for s in dfa.finals if s in names),
    )
