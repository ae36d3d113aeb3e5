"""Text formats: automaton files, expressions, input words, and DOT export.

Automaton file format (UTF-8, line oriented, ``#`` starts a comment,
tokens are whitespace-separated)::

    name N1
    alphabet a b
    states p0 p1 p2 p3
    initial p0
    final p3
    trans p0 a p0

``name`` must be the first content line and each other section appears at
most once (``trans`` lines repeat, one edge per line).  ``alphabet`` and
``final`` may be empty or absent.  The token ``eps`` is reserved: it spells
the empty-string symbol in ``trans`` lines and is implicitly part of every
alphabet, so it may not be declared as a letter.  Namespaced states join
their path with dots (``L.p0``).

Rendering is canonical: fixed section order and sorted tokens, so equal
automata render byte-identically and every render parses back to a
structurally equal value.

Expression grammar (``;`` composes sequentially and binds tighter than
``|``; both are left-associative)::

    expr := par
    par  := cat ("|" cat)*
    cat  := atom (";" atom)*
    atom := IDENT | "(" expr ")"

Input words on the wire: when every alphabet letter is one character, a
word is a bare string like ``aabaaaab``; otherwise letters are separated
by commas.  The lone token ``eps`` (or an empty string) is the empty word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .algebra import CompositionExpr, Concat, Device, Parallel
from .automaton import (
    EPSILON,
    EPSILON_TOKEN,
    Automaton,
    StateId,
    Symbol,
    Word,
    state,
)

__all__ = [
    "ParseDiagnostic",
    "ParseError",
    "format_word",
    "parse_automaton",
    "parse_expression",
    "parse_input",
    "render_automaton",
    "render_dot",
    "render_expression",
]


@dataclass(frozen=True)
class ParseDiagnostic:
    """One parse problem, pointing at the offending input position."""

    line: int
    column: int
    code: str
    message: str

    def render(self) -> str:
        return f"{self.line}:{self.column}: {self.code}: {self.message}"


class ParseError(ValueError):
    """Raised with every diagnostic collected from one parse."""

    def __init__(self, diagnostics: Iterable[ParseDiagnostic]):
        self.diagnostics = tuple(diagnostics)
        super().__init__("; ".join(d.render() for d in self.diagnostics))


_TOKEN = re.compile(r"\S+")

_SECTION_DIRECTIVES = ("alphabet", "states", "initial", "final")


def parse_automaton(text: str) -> tuple[str, Automaton]:
    """Parse one automaton file; returns its declared name and the value.

    All problems found in one pass are reported together.  A successful
    parse always yields an automaton with a clean validation report, since
    every transition endpoint and letter is resolved against the declared
    sections.
    """
    diagnostics: list[ParseDiagnostic] = []
    content: list[tuple[int, list[tuple[str, int]]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]
        if tokens:
            content.append((lineno, tokens))

    if not content:
        raise ParseError(
            [ParseDiagnostic(1, 1, "missing-name", "empty file: expected a name line")]
        )

    name = None
    body_lines = content
    first_line, first_tokens = content[0]
    if first_tokens[0][0] == "name":
        body_lines = content[1:]
        if len(first_tokens) != 2:
            diagnostics.append(
                ParseDiagnostic(
                    first_line,
                    first_tokens[0][1],
                    "malformed-line",
                    "name takes exactly one identifier",
                )
            )
        else:
            name = first_tokens[1][0]
    else:
        diagnostics.append(
            ParseDiagnostic(
                first_line,
                first_tokens[0][1],
                "missing-name",
                "first content line must be 'name <ident>'",
            )
        )

    sections: dict[str, list[tuple[str, int]]] = {}
    section_lines: dict[str, int] = {}
    edges: list[tuple[int, list[tuple[str, int]]]] = []
    for lineno, tokens in body_lines:
        directive, column = tokens[0]
        rest = tokens[1:]
        if directive == "name":
            diagnostics.append(
                ParseDiagnostic(
                    lineno, column, "duplicate-section", "name already declared"
                )
            )
        elif directive in _SECTION_DIRECTIVES:
            if directive in sections:
                diagnostics.append(
                    ParseDiagnostic(
                        lineno,
                        column,
                        "duplicate-section",
                        f"{directive} already declared on line {section_lines[directive]}",
                    )
                )
                continue
            if directive == "initial" and len(rest) != 1:
                diagnostics.append(
                    ParseDiagnostic(
                        lineno,
                        column,
                        "malformed-line",
                        "initial takes exactly one state",
                    )
                )
                continue
            sections[directive] = rest
            section_lines[directive] = lineno
        elif directive == "trans":
            if len(rest) != 3:
                diagnostics.append(
                    ParseDiagnostic(
                        lineno,
                        column,
                        "malformed-line",
                        "trans takes exactly: <from> <letter|eps> <to>",
                    )
                )
            else:
                edges.append((lineno, rest))
        else:
            diagnostics.append(
                ParseDiagnostic(
                    lineno, column, "unknown-directive", f"unknown directive {directive!r}"
                )
            )

    states_by_token: dict[str, StateId] = {}
    states_line = section_lines.get("states", 1)
    for token, column in sections.get("states", []):
        try:
            states_by_token[token] = state(token)
        except ValueError as err:
            diagnostics.append(
                ParseDiagnostic(states_line, column, "bad-state-name", str(err))
            )

    alphabet: dict[str, Symbol] = {}
    alphabet_line = section_lines.get("alphabet", 1)
    for token, column in sections.get("alphabet", []):
        if token == EPSILON_TOKEN:
            diagnostics.append(
                ParseDiagnostic(
                    alphabet_line,
                    column,
                    "reserved-token",
                    f"{EPSILON_TOKEN!r} is implicit in every alphabet",
                )
            )
        else:
            alphabet[token] = Symbol(token)

    def resolve_state(token: str, lineno: int, column: int) -> StateId | None:
        found = states_by_token.get(token)
        if found is None:
            diagnostics.append(
                ParseDiagnostic(
                    lineno, column, "unknown-state", f"state {token!r} is not declared"
                )
            )
        return found

    initial = None
    if "initial" in sections:
        token, column = sections["initial"][0]
        initial = resolve_state(token, section_lines["initial"], column)
    else:
        diagnostics.append(
            ParseDiagnostic(1, 1, "missing-initial", "no initial line declared")
        )

    finals: set[StateId] = set()
    finals_line = section_lines.get("final", 1)
    for token, column in sections.get("final", []):
        resolved = resolve_state(token, finals_line, column)
        if resolved is not None:
            finals.add(resolved)

    transitions: dict[tuple[StateId, Symbol], set[StateId]] = {}
    for lineno, ((from_tok, from_col), (sym_tok, sym_col), (to_tok, to_col)) in edges:
        source = resolve_state(from_tok, lineno, from_col)
        target = resolve_state(to_tok, lineno, to_col)
        if sym_tok == EPSILON_TOKEN:
            symbol = EPSILON
        else:
            symbol = alphabet.get(sym_tok)
            if symbol is None:
                diagnostics.append(
                    ParseDiagnostic(
                        lineno,
                        sym_col,
                        "unknown-symbol",
                        f"letter {sym_tok!r} is not in the alphabet",
                    )
                )
        if source is not None and target is not None and symbol is not None:
            transitions.setdefault((source, symbol), set()).add(target)

    if diagnostics:
        diagnostics.sort(key=lambda d: (d.line, d.column))
        raise ParseError(diagnostics)

    assert name is not None and initial is not None
    automaton = Automaton(
        alphabet=frozenset(alphabet.values()),
        states=frozenset(states_by_token.values()),
        initial=initial,
        transitions={k: frozenset(v) for k, v in transitions.items()},
        finals=frozenset(finals),
    )
    return name, automaton


def render_automaton(automaton: Automaton, name: str = "A") -> str:
    """Canonical text for an automaton: sorted, byte-stable, reparseable."""
    if not name or any(ch.isspace() for ch in name):
        raise ValueError("automaton names must be nonempty and whitespace-free")
    lines = [f"name {name}"]
    lines.append(" ".join(["alphabet", *[str(s) for s in automaton.letters()]]).rstrip())
    lines.append(
        " ".join(["states", *[str(s) for s in sorted(automaton.states)]]).rstrip()
    )
    lines.append(f"initial {automaton.initial}")
    lines.append(
        " ".join(["final", *[str(s) for s in sorted(automaton.finals)]]).rstrip()
    )
    for source, symbol, target in automaton.edges():
        lines.append(f"trans {source} {symbol} {target}")
    return "\n".join(lines) + "\n"


_EXPR_TOKEN = re.compile(r"[^()|;\s]+|[()|;]")


def parse_expression(text: str) -> CompositionExpr:
    """Parse an expression; ``;`` binds tighter than ``|``, both left-associative."""
    tokens: list[tuple[str, int, int]] = []
    for lineno, raw in enumerate(text.splitlines() or [""], start=1):
        for m in _EXPR_TOKEN.finditer(raw):
            tokens.append((m.group(), lineno, m.start() + 1))
    if not tokens:
        raise ParseError(
            [ParseDiagnostic(1, 1, "empty-input", "expected an expression")]
        )

    end_line, end_column = tokens[-1][1], tokens[-1][2] + len(tokens[-1][0])
    position = 0

    def fail(code: str, message: str, token: tuple[str, int, int] | None) -> None:
        if token is None:
            raise ParseError([ParseDiagnostic(end_line, end_column, code, message)])
        raise ParseError([ParseDiagnostic(token[1], token[2], code, message)])

    def peek() -> tuple[str, int, int] | None:
        return tokens[position] if position < len(tokens) else None

    def parse_atom() -> CompositionExpr:
        nonlocal position
        token = peek()
        if token is None:
            fail("expected-operand", "expected a device name or '('", None)
        text_, _, _ = token
        if text_ == "(":
            position += 1
            node = parse_par()
            closing = peek()
            if closing is None or closing[0] != ")":
                fail("unbalanced-paren", "expected ')'", closing)
            position += 1
            return node
        if text_ in (")", ";", "|"):
            fail("expected-operand", f"expected a device name, found {text_!r}", token)
        position += 1
        return Device(text_)

    def parse_cat() -> CompositionExpr:
        nonlocal position
        node = parse_atom()
        while (token := peek()) is not None and token[0] == ";":
            position += 1
            node = Concat(node, parse_atom())
        return node

    def parse_par() -> CompositionExpr:
        nonlocal position
        node = parse_cat()
        while (token := peek()) is not None and token[0] == "|":
            position += 1
            node = Parallel(node, parse_cat())
        return node

    result = parse_par()
    leftover = peek()
    if leftover is not None:
        if leftover[0] == ")":
            fail("unbalanced-paren", "unmatched ')'", leftover)
        fail("expected-operator", f"unexpected {leftover[0]!r}", leftover)
    return result


def render_expression(expr: CompositionExpr) -> str:
    """Minimal-parenthesis text that parses back to the identical tree."""

    def precedence(node: CompositionExpr) -> int:
        if isinstance(node, Parallel):
            return 1
        if isinstance(node, Concat):
            return 2
        return 3

    def emit(node: CompositionExpr) -> str:
        if isinstance(node, Device):
            return node.name
        joiner = " ; " if isinstance(node, Concat) else " | "
        mine = precedence(node)
        left = emit(node.left)
        right = emit(node.right)
        if precedence(node.left) < mine:
            left = f"({left})"
        if precedence(node.right) <= mine:  # right nesting must stay explicit
            right = f"({right})"
        return f"{left}{joiner}{right}"

    return emit(expr)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_dot(automaton: Automaton, group_by_namespace: bool = False) -> str:
    """DOT graph of an automaton.

    Finals are double circles, an arrow from a point-shaped phantom marks
    the initial state, and every transition is one labeled edge.  With
    ``group_by_namespace``, states sharing a top-level namespace segment
    are drawn inside one labeled cluster, mirroring how a composite hides
    each operand behind a box; root-level states stay outside any cluster.
    """
    lines = [
        "digraph automaton {",
        "  rankdir=LR;",
        "  node [shape=circle];",
        '  "entry point" [shape=point, label=""];',
    ]
    grouped: dict[str | None, list[str]] = {}
    for s in sorted(automaton.states):
        shape = " [shape=doublecircle]" if s in automaton.finals else ""
        cluster = s.namespace[0] if group_by_namespace and s.namespace else None
        grouped.setdefault(cluster, []).append(f"{_quote(str(s))}{shape};")
    for segment in sorted(k for k in grouped if k is not None):
        lines.append(f"  subgraph {_quote('cluster_' + segment)} {{")
        lines.append(f"    label={_quote(segment)};")
        lines.extend(f"    {entry}" for entry in grouped[segment])
        lines.append("  }")
    lines.extend(f"  {entry}" for entry in grouped.get(None, []))
    lines.append(f'  "entry point" -> {_quote(str(automaton.initial))};')
    for source, symbol, target in automaton.edges():
        label = "ε" if symbol.is_epsilon else str(symbol)
        lines.append(
            f"  {_quote(str(source))} -> {_quote(str(target))} [label={_quote(label)}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_input(text: str, alphabet: Iterable[Symbol]) -> Word:
    """Decode the wire spelling of an input word against an alphabet."""
    by_token = {str(s): s for s in frozenset(alphabet)}
    if text in ("", EPSILON_TOKEN):
        return ()
    diagnostics: list[ParseDiagnostic] = []
    out: list[Symbol] = []
    if all(len(token) == 1 for token in by_token):
        for index, ch in enumerate(text):
            found = by_token.get(ch)
            if found is None:
                diagnostics.append(
                    ParseDiagnostic(
                        1,
                        index + 1,
                        "unknown-symbol",
                        f"letter {ch!r} is not in the alphabet",
                    )
                )
            else:
                out.append(found)
    else:
        column = 1
        for part in text.split(","):
            token = part.strip()
            found = by_token.get(token)
            if found is None:
                diagnostics.append(
                    ParseDiagnostic(
                        1,
                        column,
                        "unknown-symbol",
                        f"letter {token!r} is not in the alphabet",
                    )
                )
            else:
                out.append(found)
            column += len(part) + 1
    if diagnostics:
        raise ParseError(diagnostics)
    return tuple(out)


def format_word(input_word: Word) -> str:
    """Inverse of ``parse_input``: the display spelling of a word."""
    if not input_word:
        return EPSILON_TOKEN
    tokens = [str(s) for s in input_word]
    if all(len(t) == 1 for t in tokens):
        return "".join(tokens)
    return ",".join(tokens)
