"""Independent reference implementations used to cross-check the library.

``oracle_accepts`` decides acceptance by a top-down search over individual
runs, which shares no code with the frontier simulation in the package.
The string predicates describe the bundled devices' languages directly.
"""

from __future__ import annotations

import re

from nfalgebra import EPSILON, Automaton, StateId, Word


def oracle_accepts(automaton: Automaton, input_word: Word) -> bool:
    """Brute-force run search.

    Tries every transition recursively, allowing at most |states|
    consecutive empty-string moves between letters (longer chains revisit
    a state and add nothing).  Memoized on (state, position, budget).
    """
    budget = len(automaton.states)
    memo: dict[tuple[StateId, int, int], bool] = {}

    def search(current: StateId, position: int, eps_left: int) -> bool:
        key = (current, position, eps_left)
        if key in memo:
            return memo[key]
        found = position == len(input_word) and current in automaton.finals
        if not found and position < len(input_word):
            found = any(
                search(target, position + 1, budget)
                for target in automaton.targets(current, input_word[position])
            )
        if not found and eps_left > 0:
            found = any(
                search(target, position, eps_left - 1)
                for target in automaton.targets(current, EPSILON)
            )
        memo[key] = found
        return found

    return search(automaton.initial, 0, budget)


def in_l1(text: str) -> bool:
    """b in the third position from the right (length at least three)."""
    return len(text) >= 3 and text[-3] == "b"


def in_l2(text: str) -> bool:
    """One or more a's followed by zero or more b's."""
    return re.fullmatch(r"a+b*", text) is not None


def as_text(input_word: Word) -> str:
    return "".join(str(symbol) for symbol in input_word)
