"""The witness language over ``a1 ... a9`` and its grammars.

A sorted word ``a1^i1 ... a9^i9`` is identified with its exponent vector
``(i1, ..., i9)``.  The language is the union of four components, each given
by three comparisons between a left coordinate (1, 2 or 3) and a right one:

    L1: i1 <= i9, i2 <= i7, i3 <= i5
    L2: i1 >  i9, i2 <= i6, i3 <= i4
    L3: i1 <= i8, i2 >  i7, i3 >  i4
    L4: i1 >  i8, i2 >  i6, i3 >  i5

Every component nests its three comparisons, which is what makes a linear
grammar possible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .grammar import FormatError, Grammar, Rule, nt, parse_word, t

__all__ = [
    "COMPONENTS",
    "DIM",
    "Comparison",
    "build_component_grammar",
    "build_union_grammar",
    "failed_comparisons",
    "format_point",
    "member_L",
    "member_component",
    "parse_point",
    "psi",
    "psi_inverse",
]

DIM = 9

ExponentVector = tuple[int, ...]


@dataclass(frozen=True)
class Comparison:
    """``i_left <= i_right``, or ``i_left > i_right`` when ``strict``. Coordinates are 1-based."""

    left: int
    right: int
    strict: bool

    def holds(self, point: Sequence[int]) -> bool:
        a, b = point[self.left - 1], point[self.right - 1]
        return a > b if self.strict else a <= b

    def __str__(self) -> str:
        op = ">" if self.strict else "<="
        return f"i{self.left} {op} i{self.right}"


def _cmp(text: str) -> Comparison:
    left, op, right = text.split()
    return Comparison(int(left), int(right), op == ">")


COMPONENTS: dict[int, tuple[Comparison, Comparison, Comparison]] = {
    1: (_cmp("1 <= 9"), _cmp("2 <= 7"), _cmp("3 <= 5")),
    2: (_cmp("1 > 9"), _cmp("2 <= 6"), _cmp("3 <= 4")),
    3: (_cmp("1 <= 8"), _cmp("2 > 7"), _cmp("3 > 4")),
    4: (_cmp("1 > 8"), _cmp("2 > 6"), _cmp("3 > 5")),
}


def _check_point(point: Sequence[int], dim: int = DIM) -> None:
    if len(point) != dim:
        raise ValueError(f"expected a point of dimension {dim}, got {len(point)}")
    if any(x < 0 for x in point):
        raise ValueError(f"coordinates must be non-negative: {tuple(point)}")


def _check_component(t_: int) -> None:
    if t_ not in COMPONENTS:
        raise ValueError(f"component must be one of 1..4, got {t_!r}")


# -- psi -----------------------------------------------------------------------

_LETTER = re.compile(r"a([1-9][0-9]*)")


def psi(word: str | Sequence[str], dim: int = DIM) -> ExponentVector:
    """Exponent vector of a word in ``a1* a2* ... a_dim*``."""
    counts = [0] * dim
    last = 0
    for tok in parse_word(word):
        m = _LETTER.fullmatch(tok)
        if not m or int(m.group(1)) > dim:
            raise ValueError(f"{tok!r} is not a letter a1..a{dim}")
        j = int(m.group(1))
        if j < last:
            raise ValueError(f"not in a1*...a{dim}*: {tok} follows a{last}")
        last = j
        counts[j - 1] += 1
    return tuple(counts)


def psi_inverse(point: Sequence[int]) -> tuple[str, ...]:
    """The sorted word ``a1^p1 ... a_k^pk``."""
    _check_point(point, len(point))
    return tuple(f"a{j}" for j, e in enumerate(point, 1) for _ in range(e))


def is_sorted_word(word: Sequence[str], dim: int = DIM) -> bool:
    try:
        psi(word, dim)
    except ValueError:
        return False
    return True


# -- membership ----------------------------------------------------------------


def member_component(point: Sequence[int], t_: int) -> bool:
    _check_point(point)
    _check_component(t_)
    return all(c.holds(point) for c in COMPONENTS[t_])


def member_L(point: Sequence[int]) -> bool:
    _check_point(point)
    return any(all(c.holds(point) for c in cs) for cs in COMPONENTS.values())


def component_of(point: Sequence[int]) -> int | None:
    """The unique component containing ``point`` (components are disjoint), if any."""
    _check_point(point)
    for t_, cs in COMPONENTS.items():
        if all(c.holds(point) for c in cs):
            return t_
    return None


def failed_comparisons(point: Sequence[int], t_: int) -> list[Comparison]:
    """The comparisons of component ``t_`` that ``point`` violates."""
    _check_point(point)
    _check_component(t_)
    return [c for c in COMPONENTS[t_] if not c.holds(point)]


# -- text format for points ----------------------------------------------------


def format_point(point: Sequence[int]) -> str:
    return "(" + " ".join(str(x) for x in point) + ")"


def parse_point(text: str) -> ExponentVector:
    """Parse ``(1 3 2 ...)``; parentheses and commas are optional."""
    body = text.strip()
    if body.startswith("(") != body.endswith(")"):
        raise FormatError(f"unbalanced parentheses in point {text!r}")
    body = body.strip("()").replace(",", " ")
    try:
        coords = tuple(int(x) for x in body.split())
    except ValueError:
        raise FormatError(f"malformed point {text!r}") from None
    if not coords:
        raise FormatError("empty point")
    if any(x < 0 for x in coords):
        raise FormatError(f"negative coordinate in point {text!r}")
    return coords


# -- grammars ------------------------------------------------------------------


def _names(t_: int):
    # component 1 keeps its hand-written nonterminal names
    if t_ == 1:
        return (lambda p, q: f"A_{{{p},{q}}}"), (lambda j: f"A_{j}"), None
    return (lambda p, q: f"X_{{{p},{q}}}"), (lambda j: f"F_{j}"), (lambda p: f"Y_{p}")


@lru_cache(maxsize=None)
def build_component_grammar(t_: int) -> Grammar:
    """Unambiguous linear grammar for component ``t_``.

    Comparisons are nested outermost-first.  ``i_p <= i_q`` is
    ``X -> a_p X a_q | F_q`` with the surplus of ``a_q`` pumped by ``F_q``;
    ``i_p > i_q`` is ``X -> a_p X a_q | a_p Y_p`` with ``Y_p -> a_p Y_p | ...``
    pumping the surplus of ``a_p``.  Coordinates compared with nothing are
    pumped by chains ``F_j -> F_j a_j | next``.
    """
    _check_component(t_)
    pair_name, free_name, surplus_name = _names(t_)
    comparisons = COMPONENTS[t_]
    rules: list[Rule] = []

    def chain(coords: list[int], cont: str | None) -> list[Rule]:
        # F_j -> F_j a_j | next, for each j in the given (descending) order
        out = []
        for i, j in enumerate(coords):
            nxt = free_name(coords[i + 1]) if i + 1 < len(coords) else cont
            out.append(Rule(free_name(j), (nt(free_name(j)), t(f"a{j}"))))
            out.append(Rule(free_name(j), (nt(nxt),) if nxt else ()))
        return out

    def entry(coords: list[int], cont: str | None) -> tuple[str, ...]:
        if coords:
            return (free_name(coords[0]),)
        return (cont,) if cont else ()

    start = f"S_{t_}"
    rights = [c.right for c in comparisons]
    outer = list(range(DIM, rights[0], -1))
    rules.append(Rule(start, tuple(nt(x) for x in entry(outer, pair_name(1, rights[0])))))
    rules.extend(chain(outer, pair_name(1, rights[0])))
    for level, c in enumerate(comparisons):
        p, q = c.left, c.right
        x = pair_name(p, q)
        nxt_cmp = comparisons[level + 1] if level + 1 < len(comparisons) else None
        cont = pair_name(nxt_cmp.left, nxt_cmp.right) if nxt_cmp else None
        floor = nxt_cmp.right if nxt_cmp else p
        inner = ([] if c.strict else [q]) + list(range(q - 1, floor, -1))
        rules.append(Rule(x, (t(f"a{p}"), nt(x), t(f"a{q}"))))
        if c.strict:
            y = surplus_name(p)
            rules.append(Rule(x, (t(f"a{p}"), nt(y))))
            rules.append(Rule(y, (t(f"a{p}"), nt(y))))
            rules.append(Rule(y, tuple(nt(s) for s in entry(inner, cont))))
        else:
            rules.append(Rule(x, tuple(nt(s) for s in entry(inner, cont))))
        rules.extend(chain(inner, cont))
    return Grammar.from_rules(rules, start)


def _rename(grammar: Grammar, t_: int) -> list[Rule]:
    keep = f"S_{t_}"

    def name(a: str) -> str:
        return a if a == keep else f"{a}^{t_}"

    return [
        Rule(name(r.lhs), tuple(s if s.is_terminal else nt(name(s.name)) for s in r.rhs))
        for r in grammar.rules
    ]


@lru_cache(maxsize=None)
def build_union_grammar() -> Grammar:
    """``S -> S_1 | S_2 | S_3 | S_4`` over the four component grammars.

    Component nonterminals other than ``S_t`` get a ``^t`` suffix so the four
    rule sets are disjoint.
    """
    rules = [Rule("S", (nt(f"S_{k}"),)) for k in COMPONENTS]
    for k in COMPONENTS:
        rules.extend(_rename(build_component_grammar(k), k))
    return Grammar.from_rules(rules, "S")
