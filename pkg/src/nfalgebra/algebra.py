"""Composition of automata.

Two binary operators build bigger automata out of smaller ones:

* ``concat(a, b)`` runs ``a`` first; every final state of ``a`` gains an
  empty-string edge onto ``b``'s initial state, and only ``b``'s finals
  accept.  The composite language is the concatenation of the operand
  languages.
* ``parallel(a, b)`` adds one fresh initial state with empty-string edges
  into both operands; either operand's finals accept.  The composite
  language is the union.

Both constructions take plain unions of state sets and therefore require
the operands to be disjoint.  ``instantiate`` manufactures disjointness by
prepending a namespace segment to every state, and ``elaborate`` applies it
automatically while folding an expression tree, so composites are ordinary
automata that can be composed again.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from .automaton import (
    EPSILON,
    Automaton,
    StateId,
    Symbol,
    check_segment,
    validate,
)

__all__ = [
    "CompositionExpr",
    "Concat",
    "Device",
    "DeviceEnvironment",
    "InvalidDeviceError",
    "Parallel",
    "StateClashError",
    "UnboundDeviceError",
    "concat",
    "elaborate",
    "instantiate",
    "leaf_devices",
    "parallel",
    "subexpressions",
]


class StateClashError(ValueError):
    """Operand state sets overlap; rename one side apart first."""


class UnboundDeviceError(ValueError):
    """An expression names a device the environment does not bind."""


class InvalidDeviceError(ValueError):
    """A bound device fails validation and cannot be composed."""


@dataclass(frozen=True)
class Device:
    """Leaf of an expression: a reference to a named automaton."""

    name: str

    def __post_init__(self) -> None:
        if not self.name or any(ch.isspace() for ch in self.name):
            raise ValueError("device names must be nonempty and whitespace-free")


@dataclass(frozen=True)
class Concat:
    left: "CompositionExpr"
    right: "CompositionExpr"


@dataclass(frozen=True)
class Parallel:
    left: "CompositionExpr"
    right: "CompositionExpr"


CompositionExpr = Union[Device, Concat, Parallel]

DeviceEnvironment = Mapping[str, Automaton]


def instantiate(automaton: Automaton, segment: str) -> Automaton:
    """Isomorphic copy with ``segment`` prepended to every state's namespace.

    Renaming never touches the language; applying it twice nests paths, so
    instantiating with "A" then "B" yields ``B.A.*`` states.
    """
    try:
        check_segment(segment, "namespace segment")
    except ValueError as err:
        raise ValueError(f"invalid namespace segment: {err}") from None

    def rename(s: StateId) -> StateId:
        return StateId((segment, *s.namespace), s.local)

    transitions = {
        (rename(source), symbol): frozenset(rename(t) for t in targets)
        for (source, symbol), targets in automaton.transitions.items()
    }
    return Automaton(
        alphabet=automaton.alphabet,
        states=frozenset(rename(s) for s in automaton.states),
        initial=rename(automaton.initial),
        transitions=transitions,
        finals=frozenset(rename(s) for s in automaton.finals),
    )


def _require_disjoint(left: Automaton, right: Automaton) -> None:
    clash = left.states & right.states
    if clash:
        listed = ", ".join(str(s) for s in sorted(clash)[:5])
        raise StateClashError(f"operand state sets overlap: {listed}")


def concat(left: Automaton, right: Automaton) -> Automaton:
    """Sequential composite of two state-disjoint automata.

    The left operand keeps all of its transitions; each of its final states
    additionally gains an empty-string edge to the right operand's initial
    state (merged with any empty-string edges it already had).  The
    composite starts at the left initial state and accepts exactly at the
    right operand's finals, so a left operand with no finals yields an
    empty language.
    """
    _require_disjoint(left, right)
    transitions: dict[tuple[StateId, Symbol], frozenset[StateId]] = {}
    transitions.update(left.transitions)
    transitions.update(right.transitions)
    for final in left.finals:
        key = (final, EPSILON)
        transitions[key] = transitions.get(key, frozenset()) | {right.initial}
    return Automaton(
        alphabet=left.alphabet | right.alphabet,
        states=left.states | right.states,
        initial=left.initial,
        transitions=transitions,
        finals=right.finals,
    )


def parallel(left: Automaton, right: Automaton) -> Automaton:
    """Branching composite of two state-disjoint automata.

    A fresh initial state (named ``r0``, suffixed with the smallest number
    that avoids a clash) forks via empty-string edges into both operands
    and carries no letter moves of its own.  Finals are the union of the
    operands' finals.
    """
    _require_disjoint(left, right)
    taken = left.states | right.states
    root = StateId((), "r0")
    bump = 1
    while root in taken:
        root = StateId((), f"r0{bump}")
        bump += 1
    transitions: dict[tuple[StateId, Symbol], frozenset[StateId]] = {}
    transitions.update(left.transitions)
    transitions.update(right.transitions)
    transitions[(root, EPSILON)] = frozenset({left.initial, right.initial})
    return Automaton(
        alphabet=left.alphabet | right.alphabet,
        states=taken | {root},
        initial=root,
        transitions=transitions,
        finals=left.finals | right.finals,
    )


def elaborate(expr: CompositionExpr, env: DeviceEnvironment) -> Automaton:
    """Build the composite automaton an expression describes.

    Each operand is renamed under its position in the tree (left child
    "L", right child "R", nested positions nest), so the same device name
    may appear at any number of leaves without state clashes.  Every leaf
    is validated before use.
    """
    if isinstance(expr, Device):
        automaton = env.get(expr.name)
        if automaton is None:
            raise UnboundDeviceError(f"no device named {expr.name!r} is bound")
        problems = validate(automaton)
        if problems:
            detail = "; ".join(v.code for v in problems)
            raise InvalidDeviceError(f"device {expr.name!r} is invalid: {detail}")
        return automaton
    left = instantiate(elaborate(expr.left, env), "L")
    right = instantiate(elaborate(expr.right, env), "R")
    combine = concat if isinstance(expr, Concat) else parallel
    return combine(left, right)


def subexpressions(expr: CompositionExpr) -> dict[str, CompositionExpr]:
    """Map every position path to its subtree ("" is the root, children
    append L/R)."""
    out: dict[str, CompositionExpr] = {}

    def walk(node: CompositionExpr, path: str) -> None:
        out[path] = node
        if isinstance(node, (Concat, Parallel)):
            walk(node.left, f"{path}.L" if path else "L")
            walk(node.right, f"{path}.R" if path else "R")

    walk(expr, "")
    return out


def leaf_devices(expr: CompositionExpr) -> list[tuple[str, str]]:
    """(position path, device name) for every leaf, left to right."""
    return [
        (path, node.name)
        for path, node in subexpressions(expr).items()
        if isinstance(node, Device)
    ]
