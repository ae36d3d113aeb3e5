"""Seeded random devices and the composition-law suite.

Randomness comes from ``random.Random`` (Python's documented Mersenne
Twister), drawn in a fixed order so a seed pins every generated value:
state count first, then one final flag per state, then one flag per
possible edge (source ascending, then letter a, b, empty-string, then
target ascending).  Devices use the two-letter alphabet {a, b} and at most
four states, which keeps exhaustive word checks cheap.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .algebra import (
    CompositionExpr,
    Concat,
    Device,
    Parallel,
    concat,
    instantiate,
    parallel,
)
from .analysis import enumerate_language
from .automaton import EPSILON, Automaton, StateId, Symbol, Word, letter, symbol_key

__all__ = [
    "DEFAULT_LETTERS",
    "LawFailure",
    "SuiteResult",
    "all_words",
    "random_automaton",
    "random_expression",
    "run_closure_suite",
]

DEFAULT_LETTERS = (letter("a"), letter("b"))


def random_automaton(
    rng: random.Random,
    max_states: int = 4,
    letters: Sequence[Symbol] = DEFAULT_LETTERS,
    edge_probability: float = 0.3,
    final_probability: float = 0.3,
    include_epsilon: bool = True,
) -> Automaton:
    """One random device.

    State count is uniform on 1..max_states; each state is final with
    ``final_probability``; each possible edge (including empty-string edges
    unless disabled) is present independently with ``edge_probability``.
    The first state is initial.
    """
    count = rng.randint(1, max_states)
    states = [StateId((), f"s{i}") for i in range(count)]
    finals = frozenset(s for s in states if rng.random() < final_probability)
    symbols = list(letters) + ([EPSILON] if include_epsilon else [])
    transitions: dict[tuple[StateId, Symbol], set[StateId]] = {}
    for source in states:
        for symbol in symbols:
            for target in states:
                if rng.random() < edge_probability:
                    transitions.setdefault((source, symbol), set()).add(target)
    return Automaton(
        alphabet=frozenset(letters),
        states=frozenset(states),
        initial=states[0],
        transitions={k: frozenset(v) for k, v in transitions.items()},
        finals=finals,
    )


def random_expression(
    rng: random.Random, names: Sequence[str], max_leaves: int = 4
) -> CompositionExpr:
    """Random composition tree with 1..max_leaves leaves over ``names``."""
    leaves = rng.randint(1, max_leaves)

    def build(n: int) -> CompositionExpr:
        if n == 1:
            return Device(names[rng.randrange(len(names))])
        split = rng.randint(1, n - 1)
        node = Concat if rng.random() < 0.5 else Parallel
        return node(build(split), build(n - split))

    return build(leaves)


def all_words(
    letters: Sequence[Symbol] = DEFAULT_LETTERS, max_len: int = 6
) -> list[Word]:
    """Every word of length <= max_len, shortest first then lexicographic."""
    ordered = sorted(letters, key=symbol_key)
    out: list[Word] = [()]
    level: list[Word] = [()]
    for _ in range(max_len):
        level = [w + (s,) for w in level for s in ordered]
        out.extend(level)
    return out


@dataclass(frozen=True)
class LawFailure:
    """One disagreement between a composite and its operand-level oracle."""

    case: int
    law: str  # "concat" or "parallel"
    word: Word
    composite_verdict: bool
    oracle_verdict: bool
    left: Automaton
    right: Automaton


@dataclass(frozen=True)
class SuiteResult:
    seed: int
    cases: int
    max_len: int
    failures: tuple[LawFailure, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def run_closure_suite(seed: int, cases: int, max_len: int = 6) -> SuiteResult:
    """Check the two composition laws on seeded random operand pairs.

    For every word w up to ``max_len`` over {a, b}:

    * the sequential composite accepts w iff some index splits w into a
      prefix the left operand accepts and a suffix the right one accepts;
    * the branching composite accepts w iff the left or the right operand
      accepts w.

    Both oracles consult only the operands (via brute-force enumeration);
    the composites are judged by their own simulation.  Cases are run in
    index order, so output is reproducible for a fixed seed.
    """
    rng = random.Random(seed)
    words = all_words(DEFAULT_LETTERS, max_len)
    cap = max(10, max_len)
    failures: list[LawFailure] = []
    for case in range(cases):
        left = random_automaton(rng)
        right = random_automaton(rng)
        sequential = concat(instantiate(left, "L"), instantiate(right, "R"))
        branching = parallel(instantiate(left, "L"), instantiate(right, "R"))
        left_language = set(enumerate_language(left, max_len, cap=cap))
        right_language = set(enumerate_language(right, max_len, cap=cap))
        sequential_language = set(enumerate_language(sequential, max_len, cap=cap))
        branching_language = set(enumerate_language(branching, max_len, cap=cap))
        for w in words:
            split_verdict = any(
                w[:i] in left_language and w[i:] in right_language
                for i in range(len(w) + 1)
            )
            if (w in sequential_language) != split_verdict:
                failures.append(
                    LawFailure(
                        case,
                        "concat",
                        w,
                        w in sequential_language,
                        split_verdict,
                        left,
                        right,
                    )
                )
            union_verdict = w in left_language or w in right_language
            if (w in branching_language) != union_verdict:
                failures.append(
                    LawFailure(
                        case,
                        "parallel",
                        w,
                        w in branching_language,
                        union_verdict,
                        left,
                        right,
                    )
                )
    return SuiteResult(seed, cases, max_len, tuple(failures))
