"""Control-flow traces over composites.

A composite built by ``elaborate`` keeps each operand's states under a
namespace that records the operand's position in the expression tree.  A
trace replays the canonical accepting run and attributes every state to
its owning device, which makes the hidden choreography visible: where a
device is activated, where an empty-string bridge hands control to the
next device, and what each device decides.

``splits`` and ``parallel_verdicts`` are the matching oracles: they judge
an input using only the operand automata, never the composite, which is
what makes them fit to check the composition laws.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Union

from .algebra import (
    CompositionExpr,
    DeviceEnvironment,
    elaborate,
    leaf_devices,
    subexpressions,
)
from .automaton import (
    Automaton,
    StateId,
    Symbol,
    UnknownSymbolError,
    Word,
    accepts,
    pad_alphabet,
    witness,
)

__all__ = [
    "Activate",
    "ControlTrace",
    "Handoff",
    "Step",
    "TraceEvent",
    "Verdict",
    "control_trace",
    "parallel_verdicts",
    "splits",
]


@dataclass(frozen=True)
class Activate:
    """Control enters a device for the first time."""

    device: str


@dataclass(frozen=True)
class Step:
    """One transition taken inside a device."""

    device: str
    source: StateId
    symbol: Symbol
    target: StateId


@dataclass(frozen=True)
class Handoff:
    """An empty-string move whose endpoints belong to different devices."""

    source_device: str
    target_device: str
    source: StateId
    target: StateId


@dataclass(frozen=True)
class Verdict:
    """A device's accept/reject outcome."""

    device: str
    accepted: bool


TraceEvent = Union[Activate, Step, Handoff, Verdict]


@dataclass(frozen=True)
class ControlTrace:
    """Event log for one input against one expression.

    ``devices`` maps leaf position paths to device names so renderers can
    label events; the root composite has the empty path.
    """

    input: Word
    overall: bool
    events: tuple[TraceEvent, ...]
    devices: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "input", tuple(self.input))
        object.__setattr__(self, "events", tuple(self.events))
        object.__setattr__(self, "devices", MappingProxyType(dict(self.devices)))


def _require_in(alphabet: frozenset[Symbol], input_word: Word) -> None:
    for symbol in input_word:
        if symbol.is_epsilon or symbol not in alphabet:
            raise UnknownSymbolError(
                f"symbol {symbol} is not a letter of the alphabet"
            )


def control_trace(
    expr: CompositionExpr, env: DeviceEnvironment, input_word: Iterable[Symbol]
) -> ControlTrace:
    """Trace how control flows through the composite on ``input_word``.

    When the composite accepts, the canonical run witness is replayed:
    each state is attributed to the expression node owning its namespace,
    cross-device empty-string moves become handoff events, first entries
    become activations, and a single verdict closes the log.

    When it rejects, no speculative steps are emitted (replaying "the"
    failed run is ill-defined under nondeterminism); instead every leaf
    device reports its own verdict on a full copy of the input.
    """
    composite = elaborate(expr, env)
    input_word = tuple(input_word)
    _require_in(composite.alphabet, input_word)
    leaves = leaf_devices(expr)
    node_paths = set(subexpressions(expr))

    def owner(state_id: StateId) -> str:
        # Longest expression-position prefix of the namespace; any deeper
        # segments are the device's own internal structure.
        best = ""
        partial: list[str] = []
        for segment in state_id.namespace:
            partial.append(segment)
            candidate = ".".join(partial)
            if candidate not in node_paths:
                break
            best = candidate
        return best

    events: list[TraceEvent] = []
    run = witness(composite, input_word)
    if run is None:
        for path, name in leaves:
            device = pad_alphabet(env[name], composite.alphabet)
            events.append(Verdict(path, accepts(device, input_word)))
        overall = False
    else:
        active: set[str] = set()
        first = owner(run.states[0])
        events.append(Activate(first))
        active.add(first)
        for index, symbol in enumerate(run.symbols):
            source, target = run.states[index], run.states[index + 1]
            source_device, target_device = owner(source), owner(target)
            if symbol.is_epsilon and source_device != target_device:
                events.append(Handoff(source_device, target_device, source, target))
            else:
                events.append(Step(source_device, source, symbol, target))
            if target_device not in active:
                events.append(Activate(target_device))
                active.add(target_device)
        events.append(Verdict(owner(run.states[-1]), True))
        overall = True
    return ControlTrace(input_word, overall, tuple(events), dict(leaves))


def splits(
    left: Automaton, right: Automaton, input_word: Iterable[Symbol]
) -> set[int]:
    """Every index cutting the input into an accepted prefix/suffix pair.

    Index ``i`` is reported when ``input[:i]`` is in the left language and
    ``input[i:]`` in the right one, decided by direct membership tests on
    the operands over their union alphabet.  Never consults a composite.
    """
    input_word = tuple(input_word)
    union = left.alphabet | right.alphabet
    _require_in(union, input_word)
    padded_left = pad_alphabet(left, union)
    padded_right = pad_alphabet(right, union)
    return {
        i
        for i in range(len(input_word) + 1)
        if accepts(padded_left, input_word[:i])
        and accepts(padded_right, input_word[i:])
    }


def parallel_verdicts(
    left: Automaton, right: Automaton, input_word: Iterable[Symbol]
) -> tuple[bool, bool]:
    """Each operand's verdict on its own full copy of the input."""
    input_word = tuple(input_word)
    union = left.alphabet | right.alphabet
    _require_in(union, input_word)
    return (
        accepts(pad_alphabet(left, union), input_word),
        accepts(pad_alphabet(right, union), input_word),
    )
