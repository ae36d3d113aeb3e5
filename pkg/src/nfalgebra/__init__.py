"""Composable epsilon-NFAs.

Automata are immutable values; two operators combine them (sequential
composition via empty-string bridges out of final states, and parallel
composition via a fresh forking root), and composites are ordinary
automata that compose again.  The package also ships deterministic
analysis (subset construction, products, equivalence with
counterexamples, bounded enumeration), control-flow traces that show
which device is active and where control is handed over, canonical text
formats, DOT export, and a seeded property suite.
"""

from .algebra import (
    CompositionExpr,
    Concat,
    Device,
    DeviceEnvironment,
    InvalidDeviceError,
    Parallel,
    StateClashError,
    UnboundDeviceError,
    concat,
    elaborate,
    instantiate,
    leaf_devices,
    parallel,
    subexpressions,
)
from .analysis import (
    AlphabetMismatchError,
    Dfa,
    EnumerationBoundError,
    EquivalenceVerdict,
    InvalidAutomatonError,
    SubsetState,
    determinize,
    dfa_accepts,
    dfa_to_automaton,
    enumerate_language,
    equivalent,
    is_empty,
    product,
)
from .automaton import (
    EPSILON,
    EPSILON_TOKEN,
    Automaton,
    RunWitness,
    StateId,
    Symbol,
    UnknownStateError,
    UnknownSymbolError,
    Violation,
    Word,
    accepts,
    check_witness,
    epsilon_closure,
    letter,
    pad_alphabet,
    state,
    step,
    symbol_key,
    validate,
    witness,
    word,
)
from .cli import run_cli
from .textio import (
    ParseDiagnostic,
    ParseError,
    format_word,
    parse_automaton,
    parse_expression,
    parse_input,
    render_automaton,
    render_dot,
    render_expression,
)
from .trace import (
    Activate,
    ControlTrace,
    Handoff,
    Step,
    TraceEvent,
    Verdict,
    control_trace,
    parallel_verdicts,
    splits,
)

__version__ = "0.1.0"

__all__ = [
    "EPSILON",
    "EPSILON_TOKEN",
    "Activate",
    "AlphabetMismatchError",
    "Automaton",
    "CompositionExpr",
    "Concat",
    "ControlTrace",
    "Device",
    "DeviceEnvironment",
    "Dfa",
    "EnumerationBoundError",
    "EquivalenceVerdict",
    "Handoff",
    "InvalidAutomatonError",
    "InvalidDeviceError",
    "Parallel",
    "ParseDiagnostic",
    "ParseError",
    "RunWitness",
    "StateClashError",
    "StateId",
    "Step",
    "SubsetState",
    "Symbol",
    "TraceEvent",
    "UnboundDeviceError",
    "UnknownStateError",
    "UnknownSymbolError",
    "Verdict",
    "Violation",
    "Word",
    "accepts",
    "check_witness",
    "concat",
    "control_trace",
    "determinize",
    "dfa_accepts",
    "dfa_to_automaton",
    "elaborate",
    "enumerate_language",
    "epsilon_closure",
    "equivalent",
    "format_word",
    "instantiate",
    "is_empty",
    "leaf_devices",
    "letter",
    "pad_alphabet",
    "parallel",
    "parallel_verdicts",
    "parse_automaton",
    "parse_expression",
    "parse_input",
    "product",
    "render_automaton",
    "render_dot",
    "render_expression",
    "run_cli",
    "splits",
    "state",
    "step",
    "subexpressions",
    "symbol_key",
    "validate",
    "witness",
    "word",
]
