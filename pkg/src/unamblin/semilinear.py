"""Linear sets ``{shift + sum c_i * basis_i : c_i in N}`` and finite unions of them.

Union text format: one set per block, blocks separated by blank lines::

    # comment
    alpha: 1 0
    beta: 2 1

    alpha: 0 0
    beta: 1 0

The dimension is taken from the first vector and enforced for the rest.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .grammar import FormatError

__all__ = [
    "LinearSet",
    "MembershipWitness",
    "SemilinearUnion",
    "format_union",
    "is_light",
    "is_stratified",
    "member",
    "member_union",
    "normalize",
    "parse_union",
]

Vector = tuple[int, ...]


def _vector(v: Iterable[int], dim: int | None, what: str) -> Vector:
    v = tuple(operator.index(x) for x in v)
    if any(x < 0 for x in v):
        raise ValueError(f"{what} must have non-negative integer coordinates: {v}")
    if dim is not None and len(v) != dim:
        raise ValueError(f"{what} has dimension {len(v)}, expected {dim}")
    return v


@dataclass(frozen=True)
class LinearSet:
    shift: Vector
    basis: tuple[Vector, ...] = ()

    def __post_init__(self):
        shift = _vector(self.shift, None, "shift")
        basis = tuple(_vector(b, len(shift), "basis vector") for b in self.basis)
        object.__setattr__(self, "shift", shift)
        object.__setattr__(self, "basis", basis)

    @property
    def dimension(self) -> int:
        return len(self.shift)

    def point(self, coefficients: Sequence[int]) -> Vector:
        """``shift + sum(c_i * basis_i)``."""
        if len(coefficients) != len(self.basis):
            raise ValueError("coefficient list does not match the basis")
        out = list(self.shift)
        for c, b in zip(coefficients, self.basis):
            if c < 0:
                raise ValueError("coefficients must be non-negative")
            if c:
                for j, x in enumerate(b):
                    out[j] += c * x
        return tuple(out)


@dataclass(frozen=True)
class SemilinearUnion:
    dimension: int
    sets: tuple[LinearSet, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(self.sets))
        for i, s in enumerate(self.sets, 1):
            if s.dimension != self.dimension:
                raise ValueError(f"set {i} has dimension {s.dimension}, union has {self.dimension}")


@dataclass(frozen=True)
class MembershipWitness:
    """``set_index`` is 1-based; ``coefficients`` align with that set's basis."""

    set_index: int
    coefficients: tuple[int, ...]


def normalize(s: LinearSet) -> LinearSet:
    """Drop zero and repeated basis vectors, keeping first occurrences in order."""
    seen = []
    for b in s.basis:
        if any(b) and b not in seen:
            seen.append(b)
    return LinearSet(s.shift, tuple(seen))


def _check_dim(dim: int, point: Sequence[int]) -> Vector:
    point = tuple(point)
    if len(point) != dim:
        raise ValueError(f"point has dimension {len(point)}, expected {dim}")
    return point


def member(s: LinearSet, point: Sequence[int]) -> tuple[int, ...] | None:
    """Coefficients expressing ``point`` in ``s``, or None if there are none.

    Exhaustive backtracking over the basis in order.  A coefficient never
    exceeds ``residual_j // basis_j`` on its support, and when a coordinate is
    supported by no later vector the coefficient is forced.
    """
    point = _check_dim(s.dimension, point)
    residual = [p - a for p, a in zip(point, s.shift)]
    if any(r < 0 for r in residual):
        return None
    basis = s.basis
    m = len(basis)
    supports = [tuple(j for j, x in enumerate(b) if x) for b in basis]
    # coordinates touched by basis[i:], for pruning
    later = [frozenset()] * (m + 1)
    for i in range(m - 1, -1, -1):
        later[i] = later[i + 1] | frozenset(supports[i])
    coeffs = [0] * m

    def search(i: int) -> bool:
        if any(r and j not in later[i] for j, r in enumerate(residual)):
            return False
        if i == m:
            return True
        b, supp = basis[i], supports[i]
        if not supp:
            coeffs[i] = 0
            return search(i + 1)
        hi = min(residual[j] // b[j] for j in supp)
        lo = 0
        for j in supp:
            if j not in later[i + 1]:
                if residual[j] % b[j]:
                    return False
                need = residual[j] // b[j]
                lo = max(lo, need)
                hi = min(hi, need)
        for c in range(hi, lo - 1, -1):
            for j in supp:
                residual[j] -= c * b[j]
            coeffs[i] = c
            ok = search(i + 1)
            for j in supp:
                residual[j] += c * b[j]
            if ok:
                return True
        coeffs[i] = 0
        return False

    return tuple(coeffs) if search(0) else None


def member_union(union: SemilinearUnion, point: Sequence[int]) -> MembershipWitness | None:
    """Witness from the first set (in list order) containing ``point``."""
    point = _check_dim(union.dimension, point)
    for i, s in enumerate(union.sets, 1):
        c = member(s, point)
        if c is not None:
            return MembershipWitness(i, c)
    return None


def is_light(s: LinearSet) -> bool:
    """Every basis vector has at most two nonzero coordinates."""
    return all(sum(1 for x in b if x) <= 2 for b in s.basis)


def is_stratified(s: LinearSet) -> bool:
    """Light, and no two basis vectors have interleaved supports ``j1 < j2 < j3 < j4``."""
    if not is_light(s):
        return False
    supports = [[j for j, x in enumerate(b) if x] for b in s.basis]
    for first in supports:
        for second in supports:
            for j1, j3 in combinations(first, 2):
                for j2, j4 in combinations(second, 2):
                    if j1 < j2 < j3 < j4:
                        return False
    return True


# -- text format ---------------------------------------------------------------


def _parse_numbers(text: str, lineno: int) -> Vector:
    try:
        v = tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise FormatError(f"line {lineno}: malformed vector {text.strip()!r}") from None
    if not v:
        raise FormatError(f"line {lineno}: empty vector")
    if any(x < 0 for x in v):
        raise FormatError(f"line {lineno}: negative coordinate")
    return v


def parse_union(text: str, dimension: int | None = None) -> SemilinearUnion:
    """Parse the block format.  ``dimension`` applies to files without any vector."""
    blocks: list[tuple[Vector, list[Vector]]] = []
    current: tuple[Vector, list[Vector]] | None = None
    dim = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            current = None
            continue
        key, colon, rest = line.partition(":")
        key = key.strip().lower()
        if not colon or key not in ("alpha", "beta"):
            raise FormatError(f"line {lineno}: expected 'alpha: ...' or 'beta: ...'")
        v = _parse_numbers(rest, lineno)
        if dim is None:
            dim = len(v)
        elif len(v) != dim:
            raise FormatError(f"line {lineno}: vector of dimension {len(v)}, expected {dim}")
        if key == "alpha":
            if current is not None:
                raise FormatError(f"line {lineno}: second alpha in one block")
            current = (v, [])
            blocks.append(current)
        else:
            if current is None:
                raise FormatError(f"line {lineno}: beta before alpha")
            current[1].append(v)
    if dim is None:
        dim = dimension if dimension is not None else 9
    elif dimension is not None and dim != dimension:
        raise FormatError(f"union has dimension {dim}, expected {dimension}")
    return SemilinearUnion(dim, tuple(LinearSet(a, tuple(bs)) for a, bs in blocks))


def format_union(union: SemilinearUnion) -> str:
    blocks = []
    for s in union.sets:
        lines = ["alpha: " + " ".join(map(str, s.shift))]
        lines += ["beta: " + " ".join(map(str, b)) for b in s.basis]
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + ("\n" if blocks else "")
