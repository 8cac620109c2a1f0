"""Chart-based recognition, parse-tree counting and bounded enumeration.

Counts are computed per distinct subword: ``table(w)`` maps every nonterminal
to the number of parse trees with that root and yield ``w``.  Decompositions
using strictly shorter subwords are looked up recursively; the remaining ones
(a single nonterminal spanning all of ``w``, its siblings deriving epsilon)
form a same-span dependency graph that is solved exactly, reporting
``INFINITE`` for nonterminals that reach a productive cycle.

Tables are memoized per grammar and keyed by the subword itself, so a sweep
over many related inputs reuses work across strings.
"""

from __future__ import annotations

import math
import sys
from collections import defaultdict
from typing import Iterable, Sequence, Union

from .grammar import Grammar, GrammarError, Symbol, parse_word, require_valid

__all__ = ["INFINITE", "count_parses", "enumerate_language", "recognize"]

INFINITE = math.inf
"""Parse count returned when unit/epsilon cycles make the number of trees unbounded."""

Count = Union[int, float]


def _add(a: Count, b: Count) -> Count:
    return a + b


def _mul(a: Count, b: Count) -> Count:
    if a == 0 or b == 0:
        return 0
    return a * b


def _solve(nodes: Iterable[str], terms) -> dict[str, Count]:
    """Least solution of ``x[A] = sum(const * prod(x[children]))`` over N ∪ {∞}.

    ``terms[A]`` lists ``(const, children)`` pairs with ``const > 0`` and all
    children already known to be productive.  A node lying on, or reaching, a
    cycle gets ``INFINITE``: once a derivation can loop it loops unboundedly.
    """
    value: dict[str, Count] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    infinite: set[str] = set()

    def visit(a: str) -> None:
        on_stack.add(a)
        stack.append(a)
        total: Count = 0
        for const, children in terms.get(a, ()):
            prod: Count = const
            for b in children:
                if b in on_stack:
                    # everything on the stack reaches b and b reaches a
                    infinite.update(stack)
                    prod = INFINITE
                    continue
                if b not in value:
                    visit(b)
                prod = _mul(prod, value[b])
            total = _add(total, prod)
        stack.pop()
        on_stack.discard(a)
        value[a] = INFINITE if a in infinite else total

    limit = sys.getrecursionlimit()
    nodes = list(nodes)
    if len(nodes) + 100 > limit:
        sys.setrecursionlimit(len(nodes) + 100)
    for a in nodes:
        if a not in value:
            visit(a)
    return value


class ChartEngine:
    """Memoized count tables for one (valid) grammar."""

    def __init__(self, grammar: Grammar):
        require_valid(grammar)
        self.grammar = grammar
        self.terminals = grammar.terminals
        # rules with at most one nonterminal: (lhs, prefix, nonterminal|None, suffix)
        self._linear: dict[tuple, list[tuple[str, tuple, str, tuple]]] = defaultdict(list)
        self._terminal_only: dict[tuple, list[str]] = defaultdict(list)
        self._general: list[tuple[str, tuple[Symbol, ...]]] = []
        for rule in grammar.rules:
            if rule.nonterminal_count == 0:
                self._terminal_only[tuple(s.name for s in rule.rhs)].append(rule.lhs)
            elif rule.nonterminal_count == 1:
                k = next(i for i, s in enumerate(rule.rhs) if not s.is_terminal)
                prefix = tuple(s.name for s in rule.rhs[:k])
                suffix = tuple(s.name for s in rule.rhs[k + 1:])
                if prefix or suffix:
                    key = (prefix[0] if prefix else None, suffix[-1] if suffix else None)
                    self._linear[key].append((rule.lhs, prefix, rule.rhs[k].name, suffix))
            else:
                self._general.append((rule.lhs, rule.rhs))
        self.epsilon = self._epsilon_table()
        self._memo: dict[tuple[str, ...], dict[str, Count]] = {(): self.epsilon}
        self._unit_edges = self._same_span_edges()
        self._reverse = defaultdict(set)
        for a, edges in self._unit_edges.items():
            for b, _ in edges:
                self._reverse[b].add(a)

    def _epsilon_table(self) -> dict[str, Count]:
        candidates = [
            (r.lhs, tuple(s.name for s in r.rhs))
            for r in self.grammar.rules
            if all(not s.is_terminal for s in r.rhs)
        ]
        nullable: set[str] = set()
        changed = True
        while changed:
            changed = False
            for lhs, body in candidates:
                if lhs not in nullable and all(b in nullable for b in body):
                    nullable.add(lhs)
                    changed = True
        terms: dict[str, list] = defaultdict(list)
        for lhs, body in candidates:
            if lhs in nullable and all(b in nullable for b in body):
                terms[lhs].append((1, body))
        return _solve(sorted(nullable), terms)

    def _same_span_edges(self) -> dict[str, list[tuple[str, Count]]]:
        # A -> ... B ... where every sibling of B derives epsilon
        edges: dict[str, list[tuple[str, Count]]] = defaultdict(list)
        for rule in self.grammar.rules:
            for k, sym in enumerate(rule.rhs):
                if sym.is_terminal:
                    continue
                weight: Count = 1
                for j, other in enumerate(rule.rhs):
                    if j != k:
                        weight = _mul(weight, 0 if other.is_terminal else self.epsilon.get(other.name, 0))
                if weight:
                    edges[rule.lhs].append((sym.name, weight))
        return edges

    def table(self, word: tuple[str, ...]) -> dict[str, Count]:
        """Nonterminal -> number of parse trees yielding ``word`` (zeros omitted)."""
        found = self._memo.get(word)
        if found is None:
            found = self._memo[word] = self._compute(word)
        return found

    def _compute(self, word: tuple[str, ...]) -> dict[str, Count]:
        n = len(word)
        base: dict[str, Count] = defaultdict(int)
        for lhs in self._terminal_only.get(word, ()):
            base[lhs] += 1
        for key in ((None, None), (word[0], None), (None, word[-1]), (word[0], word[-1])):
            for lhs, prefix, inner_nt, suffix in self._linear.get(key, ()):
                lp, ls = len(prefix), len(suffix)
                if lp + ls > n or word[:lp] != prefix or word[n - ls:] != suffix:
                    continue
                c = self.table(word[lp:n - ls]).get(inner_nt, 0)
                if c:
                    base[lhs] = _add(base[lhs], c)
        for lhs, rhs in self._general:
            c = self._sequence(rhs, word)
            if c:
                base[lhs] = _add(base[lhs], c)
        if not base:
            return {}
        # productive nodes: those reaching a positive base through same-span edges
        productive = set(base)
        queue = list(base)
        while queue:
            b = queue.pop()
            for a in self._reverse.get(b, ()):
                if a not in productive:
                    productive.add(a)
                    queue.append(a)
        terms: dict[str, list] = {}
        for a in productive:
            ts = [(w, (b,)) for b, w in self._unit_edges.get(a, ()) if b in productive]
            if a in base:
                ts.append((base[a], ()))
            terms[a] = ts
        return _solve(sorted(productive), terms)

    def _sequence(self, rhs: Sequence[Symbol], word: tuple[str, ...]) -> Count:
        """Ways for ``rhs`` to yield ``word`` without one nonterminal spanning it all."""
        n = len(word)
        frontier: dict[int, Count] = {0: 1}
        for sym in rhs:
            nxt: dict[int, Count] = defaultdict(int)
            for pos, ways in frontier.items():
                if sym.is_terminal:
                    if pos < n and word[pos] == sym.name:
                        nxt[pos + 1] = _add(nxt[pos + 1], ways)
                    continue
                for q in range(pos, n + 1):
                    if pos == 0 and q == n:
                        continue
                    c = self.table(word[pos:q]).get(sym.name, 0)
                    if c:
                        nxt[q] = _add(nxt[q], _mul(ways, c))
            frontier = nxt
            if not frontier:
                return 0
        return frontier.get(n, 0)

    def count(self, word: tuple[str, ...]) -> Count:
        return self.table(word).get(self.grammar.start, 0)


def _checked_word(grammar: Grammar, word) -> tuple[str, ...]:
    require_valid(grammar)
    word = parse_word(word)
    for tok in word:
        if tok not in grammar.terminals:
            raise GrammarError(f"undeclared terminal {tok!r} in input")
    return word


def count_parses(grammar: Grammar, word: str | Sequence[str]) -> Count:
    """Exact number of parse trees of ``word``, or ``INFINITE``."""
    return grammar.chart.count(_checked_word(grammar, word))


def recognize(grammar: Grammar, word: str | Sequence[str]) -> bool:
    """True iff ``word`` has at least one parse tree."""
    return count_parses(grammar, word) != 0


def enumerate_language(grammar: Grammar, max_length: int) -> set[tuple[str, ...]]:
    """All words of the language with length at most ``max_length``.

    Bottom-up fixpoint over length-bounded word sets per nonterminal; every set
    is finite, so the iteration terminates.
    """
    require_valid(grammar)
    if max_length < 0:
        raise ValueError("max_length must be non-negative")
    lang: dict[str, set[tuple[str, ...]]] = {a: set() for a in grammar.nonterminals}
    changed = True
    while changed:
        changed = False
        for rule in grammar.rules:
            partial: set[tuple[str, ...]] = {()}
            for sym in rule.rhs:
                pieces = [(sym.name,)] if sym.is_terminal else lang[sym.name]
                partial = {
                    p + q for p in partial for q in pieces if len(p) + len(q) <= max_length
                }
                if not partial:
                    break
            new = partial - lang[rule.lhs]
            if new:
                lang[rule.lhs] |= new
                changed = True
    return lang[grammar.start]
