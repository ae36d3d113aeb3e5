"""Bundled example devices, shipped as package data.

``N1`` accepts the strings over {a, b} whose third letter from the right
is b (so length at least three).  ``N2`` accepts one or more a's followed
by zero or more b's.  Both load through the regular file parser, so using
them also exercises the text format.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .automaton import Automaton
from .textio import parse_automaton


def available() -> list[str]:
    """Names of all bundled devices."""
    root = resources.files(__package__) / "devices"
    return sorted(entry.name[: -len(".nfa")] for entry in root.iterdir()
                  if entry.name.endswith(".nfa"))


def builtin_path(name: str) -> Path:
    """Filesystem path of a bundled device file, for handing to the CLI."""
    candidate = resources.files(__package__) / "devices" / f"{name}.nfa"
    if not candidate.is_file():
        raise ValueError(
            f"no bundled device named {name!r}; available: {', '.join(available())}"
        )
    return Path(str(candidate))


def load_builtin(name: str) -> Automaton:
    """Parse and return a bundled device."""
    _, automaton = parse_automaton(builtin_path(name).read_text("utf-8"))
    return automaton


def n1() -> Automaton:
    return load_builtin("N1")


def n2() -> Automaton:
    return load_builtin("N2")
