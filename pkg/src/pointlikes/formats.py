"""Cayley table text files and DFA descriptions.

Cayley format: ``#`` starts a comment line; the first other line is the
order n; the next n lines hold the rows as space separated ids; an optional
line ``identity k`` declares a two-sided identity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import InputError
from .semigroup import FiniteSemigroup, TransformationSemigroup, close_transformations


def parse_cayley(text: str) -> FiniteSemigroup:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append((lineno, line))
    if not lines:
        raise InputError("empty Cayley file")
    lineno, first = lines[0]
    try:
        n = int(first)
    except ValueError:
        raise InputError(f"line {lineno}: expected the order, got {first!r}") from None
    if n < 1:
        raise InputError(f"line {lineno}: order must be positive")
    rows = []
    identity = None
    for lineno, line in lines[1:]:
        if line.startswith("identity"):
            if identity is not None:
                raise InputError(f"line {lineno}: repeated identity line")
            parts = line.split()
            if len(parts) != 2:
                raise InputError(f"line {lineno}: expected 'identity k'")
            try:
                identity = int(parts[1])
            except ValueError:
                raise InputError(f"line {lineno}: bad identity {parts[1]!r}") from None
            continue
        if len(rows) == n:
            raise InputError(f"line {lineno}: more than {n} rows")
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise InputError(f"line {lineno}: non-integer entry") from None
        if len(row) != n:
            raise InputError(f"line {lineno}: expected {n} entries, got {len(row)}")
        rows.append(row)
    if len(rows) != n:
        raise InputError(f"expected {n} rows, got {len(rows)}")
    return FiniteSemigroup.from_table(rows, identity)


def read_cayley(path) -> FiniteSemigroup:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    return parse_cayley(text)


def format_cayley(S: FiniteSemigroup, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(str(S.order))
    out.extend(" ".join(str(x) for x in row) for row in S.table)
    if S.identity is not None:
        out.append(f"identity {S.identity}")
    return "\n".join(out) + "\n"


@dataclass
class DfaDescription:
    num_states: int
    alphabet: list
    transitions: dict  # symbol -> list of target states
    initial: int | None = None
    accepting: list | None = None

    def __post_init__(self):
        if self.num_states < 1:
            raise InputError("a DFA needs at least one state")
        if not self.alphabet:
            raise InputError("a DFA needs a nonempty alphabet")
        for a in self.alphabet:
            delta = self.transitions.get(a)
            if delta is None:
                raise InputError(f"no transitions for symbol {a!r}")
            if len(delta) != self.num_states or any(
                    not isinstance(q, int) or not 0 <= q < self.num_states for q in delta):
                raise InputError(f"transitions for {a!r} are not a total map on {self.num_states} states")

    @classmethod
    def from_json(cls, data: dict) -> DfaDescription:
        try:
            return cls(int(data["numStates"]), list(data["alphabet"]),
                       {str(k): list(v) for k, v in data["transitions"].items()},
                       data.get("initial"), data.get("accepting"))
        except (KeyError, TypeError, AttributeError) as exc:
            raise InputError(f"malformed DFA description: {exc}") from None


def read_dfa(path) -> DfaDescription:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read DFA {path}: {exc}") from None
    return DfaDescription.from_json(data)


def transition_semigroup(dfa: DfaDescription, max_elements: int = 100_000) -> tuple[FiniteSemigroup, TransformationSemigroup]:
    """The semigroup of state maps induced by nonempty words.

    Element ids follow shortlex order of the witnessing words.
    """
    ts = close_transformations(dfa.num_states, [(a, dfa.transitions[a]) for a in dfa.alphabet], max_elements)
    return ts.to_semigroup(), ts
