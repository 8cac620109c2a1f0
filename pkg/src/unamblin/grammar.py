"""Context-free grammars: data model, validation, linearity and the text format.

A grammar is the usual quadruple of terminals, nonterminals, rules and a start
symbol.  Rules keep their declaration order; the empty right-hand side stands
for an epsilon rule.

Text format, one rule per line::

    start: S            # optional header, otherwise the first lhs is the start
    S -> a1 S a9 | B
    B -> epsilon

Tokens matching ``a[0-9]+`` and quoted literals are terminals; every other
token on either side of ``->`` is a nonterminal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "EPSILON",
    "FormatError",
    "Grammar",
    "GrammarError",
    "Rule",
    "Symbol",
    "format_grammar",
    "is_linear",
    "nt",
    "parse_grammar",
    "parse_word",
    "format_word",
    "t",
    "validate",
]

EPSILON = "epsilon"
_TERMINAL_TOKEN = re.compile(r"a[0-9]+")
_QUOTED = re.compile(r"""^(['"])(.+)\1$""")


class GrammarError(ValueError):
    """Raised when an operation requires a valid grammar or a well-formed input."""


class FormatError(ValueError):
    """Raised on malformed text input (grammar files, points, union files)."""


@dataclass(frozen=True)
class Symbol:
    name: str
    is_terminal: bool

    def __str__(self) -> str:
        if self.is_terminal and not _TERMINAL_TOKEN.fullmatch(self.name):
            return repr(self.name)
        return self.name


def t(name: str) -> Symbol:
    return Symbol(name, True)


def nt(name: str) -> Symbol:
    return Symbol(name, False)


@dataclass(frozen=True)
class Rule:
    lhs: str
    rhs: tuple[Symbol, ...] = ()

    @property
    def nonterminal_count(self) -> int:
        return sum(1 for s in self.rhs if not s.is_terminal)

    def __str__(self) -> str:
        body = " ".join(str(s) for s in self.rhs) if self.rhs else EPSILON
        return f"{self.lhs} -> {body}"


@dataclass(frozen=True)
class Grammar:
    """An immutable context-free grammar ``(terminals, nonterminals, rules, start)``.

    Construction never fails on semantic problems; use :func:`validate` to get
    the list of violated invariants.
    """

    terminals: frozenset[str]
    nonterminals: frozenset[str]
    rules: tuple[Rule, ...]
    start: str

    @classmethod
    def from_rules(cls, rules: Iterable[Rule], start: str | None = None) -> Grammar:
        """Build a grammar whose symbol sets are read off the rules."""
        rules = tuple(rules)
        terminals: set[str] = set()
        nonterminals: set[str] = set()
        for rule in rules:
            nonterminals.add(rule.lhs)
            for sym in rule.rhs:
                (terminals if sym.is_terminal else nonterminals).add(sym.name)
        if start is None:
            if not rules:
                raise GrammarError("cannot infer a start symbol from an empty rule list")
            start = rules[0].lhs
        nonterminals.add(start)
        return cls(frozenset(terminals), frozenset(nonterminals), rules, start)

    def rules_for(self, lhs: str) -> list[Rule]:
        return [r for r in self.rules if r.lhs == lhs]

    @cached_property
    def chart(self):
        # Per-grammar memo of chart tables, shared by recognize/count_parses.
        from .chart import ChartEngine

        return ChartEngine(self)

    def __str__(self) -> str:
        return format_grammar(self)


def validate(grammar: Grammar) -> list[str]:
    """Return one diagnostic per violated grammar invariant (empty if valid)."""
    problems = []
    overlap = grammar.terminals & grammar.nonterminals
    for name in sorted(overlap):
        problems.append(f"symbol {name!r} is declared both terminal and nonterminal")
    if grammar.start not in grammar.nonterminals:
        problems.append(f"start symbol {grammar.start!r} is not a declared nonterminal")
    seen = set()
    for i, rule in enumerate(grammar.rules, 1):
        if rule in seen:
            problems.append(f"rule {i} ({rule}) is a duplicate")
        seen.add(rule)
        if rule.lhs not in grammar.nonterminals:
            problems.append(f"rule {i}: lhs {rule.lhs!r} is not a declared nonterminal")
        for sym in rule.rhs:
            declared = grammar.terminals if sym.is_terminal else grammar.nonterminals
            if sym.name not in declared:
                kind = "terminal" if sym.is_terminal else "nonterminal"
                problems.append(f"rule {i}: {kind} {sym.name!r} is not declared")
    return problems


def require_valid(grammar: Grammar) -> None:
    problems = validate(grammar)
    if problems:
        raise GrammarError("invalid grammar: " + "; ".join(problems))


def is_linear(grammar: Grammar) -> bool:
    """True iff every right-hand side holds at most one nonterminal."""
    require_valid(grammar)
    return all(rule.nonterminal_count <= 1 for rule in grammar.rules)


# -- words ---------------------------------------------------------------------


def parse_word(text: str | Sequence[str]) -> tuple[str, ...]:
    """Turn ``"a1 a2 a2"`` (or an already split sequence) into a token tuple.

    ``""`` and ``"epsilon"`` both denote the empty word.
    """
    if isinstance(text, str):
        tokens = text.split()
    else:
        tokens = list(text)
    if tokens == [EPSILON]:
        return ()
    out = []
    for tok in tokens:
        m = _QUOTED.match(tok)
        out.append(m.group(2) if m else tok)
    return tuple(out)


def format_word(word: Sequence[str]) -> str:
    if not word:
        return EPSILON
    return " ".join(str(t(x)) for x in word)


# -- text format ---------------------------------------------------------------


def _symbol_from_token(token: str, lineno: int) -> Symbol:
    m = _QUOTED.match(token)
    if m:
        return t(m.group(2))
    if _TERMINAL_TOKEN.fullmatch(token):
        return t(token)
    if token in ("->", "|", EPSILON) or token.startswith(("'", '"')):
        raise FormatError(f"line {lineno}: unexpected token {token!r}")
    return nt(token)


def parse_grammar(text: str) -> Grammar:
    """Parse the line-oriented grammar format described in the module docstring."""
    rules: list[Rule] = []
    start = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("start:"):
            if start is not None:
                raise FormatError(f"line {lineno}: duplicate start header")
            start = line[len("start:"):].strip()
            if not start or len(start.split()) != 1:
                raise FormatError(f"line {lineno}: malformed start header")
            continue
        lhs, arrow, body = line.partition("->")
        lhs = lhs.strip()
        if not arrow or not lhs or len(lhs.split()) != 1:
            raise FormatError(f"line {lineno}: expected 'A -> ...'")
        lhs_sym = _symbol_from_token(lhs, lineno)
        if lhs_sym.is_terminal:
            raise FormatError(f"line {lineno}: terminal {lhs!r} on the left of a rule")
        for alternative in body.split("|"):
            tokens = alternative.split()
            if not tokens:
                raise FormatError(f"line {lineno}: empty alternative (write 'epsilon')")
            if tokens == [EPSILON]:
                rules.append(Rule(lhs, ()))
            else:
                rules.append(Rule(lhs, tuple(_symbol_from_token(x, lineno) for x in tokens)))
    if start is None and not rules:
        raise FormatError("grammar has neither rules nor a start header")
    return Grammar.from_rules(rules, start)


def format_grammar(grammar: Grammar) -> str:
    """Serialize with one line per lhs, alternatives joined by ``|``.

    Lines appear in order of each lhs's first rule; a ``start:`` header is
    written only when the start symbol is not the first lhs.
    """
    order: dict[str, list[Rule]] = {}
    for rule in grammar.rules:
        order.setdefault(rule.lhs, []).append(rule)
    lines = []
    if not grammar.rules or grammar.rules[0].lhs != grammar.start:
        lines.append(f"start: {grammar.start}")
    for lhs, rules in order.items():
        bodies = [" ".join(str(s) for s in r.rhs) if r.rhs else EPSILON for r in rules]
        lines.append(f"{lhs} -> " + " | ".join(bodies))
    return "\n".join(lines) + "\n"
