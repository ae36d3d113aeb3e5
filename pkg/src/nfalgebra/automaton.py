"""Immutable epsilon-NFAs and their run semantics.

An automaton is the classic five-tuple: a finite alphabet of letters, a
finite state set, one initial state, a transition map, and a (possibly
empty) set of final states.  The empty-string symbol belongs to every
alphabet implicitly and is never stored; transitions on it are always
legal.  The transition map is sparse: a missing entry means "no
successors".

Every value here is frozen and every operation is a pure function, so the
whole module is safe to use from any number of threads.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

__all__ = [
    "EPSILON",
    "EPSILON_TOKEN",
    "Automaton",
    "RunWitness",
    "StateId",
    "Symbol",
    "UnknownStateError",
    "UnknownSymbolError",
    "Violation",
    "Word",
    "accepts",
    "check_witness",
    "epsilon_closure",
    "letter",
    "pad_alphabet",
    "state",
    "step",
    "symbol_key",
    "validate",
    "witness",
    "word",
]

# Reserved spelling of the empty-string symbol in all text formats.
EPSILON_TOKEN = "eps"


class UnknownSymbolError(ValueError):
    """An input symbol is not a letter of the automaton's alphabet."""


class UnknownStateError(ValueError):
    """A referenced state is not part of the automaton."""


@dataclass(frozen=True)
class Symbol:
    """One alphabet letter, or the empty-string symbol when ``token`` is None."""

    token: str | None

    def __post_init__(self) -> None:
        if self.token is None:
            return
        if not self.token:
            raise ValueError("letter tokens must be nonempty")
        if any(ch.isspace() for ch in self.token):
            raise ValueError(f"letter token {self.token!r} contains whitespace")
        if self.token == EPSILON_TOKEN:
            raise ValueError(
                f"{EPSILON_TOKEN!r} is reserved for the empty-string symbol"
            )

    @property
    def is_epsilon(self) -> bool:
        return self.token is None

    def __str__(self) -> str:
        return EPSILON_TOKEN if self.token is None else self.token


EPSILON = Symbol(None)

Word = tuple[Symbol, ...]


def symbol_key(symbol: Symbol) -> str:
    """Sort key under which the empty-string symbol precedes every letter."""
    return "" if symbol.token is None else symbol.token


def letter(token: str) -> Symbol:
    """Build a letter symbol; use ``EPSILON`` for the empty string."""
    if token is None:
        raise ValueError("letter() needs a token; use EPSILON for the empty string")
    return Symbol(token)


def word(text: str) -> Word:
    """One letter per character; convenient for single-character alphabets."""
    return tuple(Symbol(ch) for ch in text)


def check_segment(text: str, kind: str = "segment") -> None:
    """Reject names that would break the dotted-path spelling of states."""
    if not text:
        raise ValueError(f"{kind} must be nonempty")
    if any(ch.isspace() for ch in text):
        raise ValueError(f"{kind} {text!r} contains whitespace")
    if "." in text:
        raise ValueError(f"{kind} {text!r} contains '.', the namespace separator")


@dataclass(frozen=True, order=True)
class StateId:
    """A state name qualified by the namespace path of the device it lives in.

    Composition renames operands apart by prepending namespace segments, so
    distinct device instances can never share a state.
    """

    namespace: tuple[str, ...]
    local: str

    def __post_init__(self) -> None:
        for segment in self.namespace:
            check_segment(segment, "namespace segment")
        check_segment(self.local, "state name")

    def qualified(self) -> str:
        return ".".join((*self.namespace, self.local))

    def __str__(self) -> str:
        return self.qualified()


def state(text: str) -> StateId:
    """Parse a dotted path: ``L.R.p0`` is state ``p0`` under namespace (L, R)."""
    *namespace, local = text.split(".")
    return StateId(tuple(namespace), local)


_NO_STATES: frozenset[StateId] = frozenset()

TransitionMap = Mapping[tuple[StateId, Symbol], frozenset[StateId]]


@dataclass(frozen=True)
class Automaton:
    """Five-tuple NFA value.

    ``alphabet`` holds letters only (the empty-string symbol is implicit).
    ``transitions`` maps (state, symbol) to the successor set and may use
    the empty-string symbol as a key; empty successor sets are dropped on
    construction so equal automata compare equal regardless of how their
    maps were written down.
    """

    alphabet: frozenset[Symbol]
    states: frozenset[StateId]
    initial: StateId
    transitions: TransitionMap
    finals: frozenset[StateId]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "finals", frozenset(self.finals))
        cleaned = {
            key: frozenset(targets)
            for key, targets in self.transitions.items()
            if targets
        }
        object.__setattr__(self, "transitions", MappingProxyType(cleaned))

    def targets(self, source: StateId, symbol: Symbol) -> frozenset[StateId]:
        return self.transitions.get((source, symbol), _NO_STATES)

    def letters(self) -> list[Symbol]:
        """The alphabet in canonical order."""
        return sorted(self.alphabet, key=symbol_key)

    def edges(self) -> list[tuple[StateId, Symbol, StateId]]:
        """All transitions as (source, symbol, target) triples, canonically ordered."""
        triples = [
            (source, symbol, target)
            for (source, symbol), targets in self.transitions.items()
            for target in targets
        ]
        triples.sort(key=lambda t: (t[0], symbol_key(t[1]), t[2]))
        return triples


@dataclass(frozen=True)
class Violation:
    """One broken automaton invariant: a stable code plus a human message."""

    code: str
    message: str


def validate(automaton: Automaton) -> list[Violation]:
    """Report every broken invariant; an empty report means the value is sound.

    Codes: ``epsilon-in-alphabet``, ``initial-not-in-states``,
    ``final-not-in-states``, ``endpoint-not-in-states``, ``unknown-symbol``.
    Violations are data, not failures: callers decide what to do with them.
    """
    report: list[Violation] = []
    if EPSILON in automaton.alphabet:
        report.append(
            Violation(
                "epsilon-in-alphabet",
                "the empty-string symbol is implicit and must not be stored",
            )
        )
    if automaton.initial not in automaton.states:
        report.append(
            Violation(
                "initial-not-in-states",
                f"initial state {automaton.initial} is not a declared state",
            )
        )
    for final in sorted(automaton.finals):
        if final not in automaton.states:
            report.append(
                Violation(
                    "final-not-in-states",
                    f"final state {final} is not a declared state",
                )
            )
    bad_states: set[StateId] = set()
    bad_symbols: set[Symbol] = set()
    for source, symbol, target in automaton.edges():
        for endpoint in (source, target):
            if endpoint not in automaton.states and endpoint not in bad_states:
                bad_states.add(endpoint)
                report.append(
                    Violation(
                        "endpoint-not-in-states",
                        f"transition endpoint {endpoint} is not a declared state",
                    )
                )
        if (
            not symbol.is_epsilon
            and symbol not in automaton.alphabet
            and symbol not in bad_symbols
        ):
            bad_symbols.add(symbol)
            report.append(
                Violation(
                    "unknown-symbol",
                    f"transition letter {symbol} is not in the alphabet",
                )
            )
    return report


def epsilon_closure(
    automaton: Automaton, sources: Iterable[StateId]
) -> frozenset[StateId]:
    """Smallest superset of ``sources`` closed under empty-string moves."""
    pending = list(sources)
    unknown = sorted(s for s in pending if s not in automaton.states)
    if unknown:
        listed = ", ".join(str(s) for s in unknown)
        raise UnknownStateError(f"unknown states: {listed}")
    closed: set[StateId] = set()
    while pending:
        current = pending.pop()
        if current in closed:
            continue
        closed.add(current)
        pending.extend(automaton.targets(current, EPSILON))
    return frozenset(closed)


def step(
    automaton: Automaton, current: Iterable[StateId], symbol: Symbol
) -> frozenset[StateId]:
    """One letter of simulation.

    Moves every state of ``current`` (assumed already closed) on ``symbol``,
    then closes the result under empty-string moves.
    """
    if symbol.is_epsilon or symbol not in automaton.alphabet:
        raise UnknownSymbolError(f"symbol {symbol} is not a letter of the alphabet")
    moved: set[StateId] = set()
    for source in current:
        if source not in automaton.states:
            raise UnknownStateError(f"unknown state: {source}")
        moved.update(automaton.targets(source, symbol))
    return epsilon_closure(automaton, moved)


def _require_letters(automaton: Automaton, symbols: Word) -> None:
    for symbol in symbols:
        if symbol.is_epsilon or symbol not in automaton.alphabet:
            raise UnknownSymbolError(
                f"symbol {symbol} is not a letter of the alphabet"
            )


def accepts(automaton: Automaton, input_word: Iterable[Symbol]) -> bool:
    """Nondeterministic acceptance of a sequence of letters.

    Empty-string moves are inserted freely between letters, so inputs never
    spell them out.  True iff some run over the input ends in a final state.
    """
    input_word = tuple(input_word)
    _require_letters(automaton, input_word)
    current = epsilon_closure(automaton, (automaton.initial,))
    for symbol in input_word:
        if not current:
            return False
        current = step(automaton, current, symbol)
    return not automaton.finals.isdisjoint(current)


@dataclass(frozen=True)
class RunWitness:
    """An accepting run: ``states`` has exactly one more entry than ``symbols``.

    Symbols may include the empty-string symbol; erasing those yields the
    witnessed input.
    """

    states: tuple[StateId, ...]
    symbols: Word

    def erased(self) -> Word:
        """The symbol sequence with empty-string entries removed."""
        return tuple(s for s in self.symbols if not s.is_epsilon)


def witness(automaton: Automaton, input_word: Iterable[Symbol]) -> RunWitness | None:
    """The canonical accepting run for ``input_word``, or None when rejected.

    The choice is deterministic: shortest in total steps (empty-string moves
    count as steps), ties broken per step by the (state, symbol) ordering.
    Search runs over (letters consumed, state) configurations, so cycles of
    empty-string moves never recur and termination is immediate.
    """
    input_word = tuple(input_word)
    _require_letters(automaton, input_word)
    start = (0, automaton.initial)
    parents: dict[tuple[int, StateId], tuple[tuple[int, StateId], Symbol] | None]
    parents = {start: None}
    queue: deque[tuple[int, StateId]] = deque([start])
    goal: tuple[int, StateId] | None = None
    while queue:
        config = queue.popleft()
        position, current = config
        if position == len(input_word) and current in automaton.finals:
            goal = config
            break
        moves: list[tuple[tuple[int, StateId], Symbol]] = []
        if position < len(input_word):
            consumed = input_word[position]
            for target in automaton.targets(current, consumed):
                moves.append(((position + 1, target), consumed))
        for target in automaton.targets(current, EPSILON):
            moves.append(((position, target), EPSILON))
        moves.sort(key=lambda move: (move[0][1], symbol_key(move[1])))
        for successor, symbol in moves:
            if successor not in parents:
                parents[successor] = (config, symbol)
                queue.append(successor)
    if goal is None:
        return None
    states = [goal[1]]
    symbols: list[Symbol] = []
    cursor = goal
    while True:
        back = parents[cursor]
        if back is None:
            break
        cursor, symbol = back
        states.append(cursor[1])
        symbols.append(symbol)
    states.reverse()
    symbols.reverse()
    return RunWitness(tuple(states), tuple(symbols))


def check_witness(
    automaton: Automaton,
    run: RunWitness,
    input_word: Iterable[Symbol] | None = None,
) -> list[str]:
    """Re-validate a run against the transition map; an empty list is sound."""
    if not run.states:
        return ["witness has no states"]
    if len(run.symbols) != len(run.states) - 1:
        return ["states and symbols have mismatched lengths"]
    problems: list[str] = []
    if run.states[0] != automaton.initial:
        problems.append(f"run starts at {run.states[0]}, not the initial state")
    for index, symbol in enumerate(run.symbols):
        source, target = run.states[index], run.states[index + 1]
        if target not in automaton.targets(source, symbol):
            problems.append(f"illegal move {source} -{symbol}-> {target}")
    if run.states[-1] not in automaton.finals:
        problems.append("run does not end in a final state")
    if input_word is not None and run.erased() != tuple(input_word):
        problems.append("erased symbols do not match the input")
    return problems


def pad_alphabet(automaton: Automaton, extra: Iterable[Symbol]) -> Automaton:
    """Widen the alphabet with ``extra`` letters.

    New letters get no transitions, so the language is unchanged; this is
    how automata over different alphabets are brought onto their union
    before comparison.
    """
    extra = frozenset(extra)
    for symbol in extra:
        if symbol.is_epsilon:
            raise ValueError("the empty-string symbol is implicit in every alphabet")
    if extra <= automaton.alphabet:
        return automaton
    return Automaton(
        alphabet=automaton.alphabet | extra,
        states=automaton.states,
        initial=automaton.initial,
        transitions=dict(automaton.transitions),
        finals=automaton.finals,
    )
