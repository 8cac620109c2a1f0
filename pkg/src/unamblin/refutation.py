"""Counterexamples for light linear covers of the complement of the witness language.

Given any finite union of light linear sets over N^9 (every basis vector has
at most two nonzero coordinates), :func:`refute` returns a point on which the
union and the complement of psi(L) disagree:

* UNCOVERED: the pivot point ``v = (M, 3M, 2M, 2M, M, 2M, 2M, M, M)`` lies
  outside psi(L) and outside the union;
* OVERCOVERED: a point of the union that lies in psi(L).

``M`` is one more than the largest coordinate occurring in the union.  When
``v`` is covered, the covering representation is moved step by step until it
lands in one of the four components:

1. a basis vector with unequal 1st/8th coordinates pushes ``v`` into L4;
2. a basis vector with unequal 3rd/4th coordinates pushes ``v`` into L3;
3. dropping the vectors on coordinates 3 and 4 gives ``u``; if the vectors
   supported on coordinates 2 and 6 contribute at least ``M`` to ``u_2``,
   dropping them lands in L1;
4. otherwise dropping the vectors on coordinate 2 but not 6, and adding
   ``M + 1`` copies of a vector supported on coordinates 1 and 8, lands in L2.

Each step is checked against the arithmetic predicates before returning;
a failed check raises :class:`InternalInconsistencyError`.

Worked example (:data:`WORKED_UNION`): one set with zero shift and basis
e1+e8, e2+e7, e2, e3+e4, e5, e6, e9.  Here M = 2 and v = (2 6 4 4 2 4 4 2 2)
is covered with coefficients [2, 4, 2, 4, 2, 4, 2].  No vector separates
coordinates 1/8 or 3/4, so dropping e3+e4 gives u = (2 6 0 0 2 4 4 2 2).
No vector lives on coordinates 2 and 6, so e2+e7 and e2 are dropped and
e1+e8 gains M + 1 = 3, giving w = (5 0 0 0 2 4 0 5 2) in psi(L2).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .semilinear import (
    LinearSet,
    MembershipWitness,
    SemilinearUnion,
    format_union,
    is_light,
    member_union,
    normalize,
)
from .witness import DIM, component_of, format_point, member_L, member_component

__all__ = [
    "InternalInconsistencyError",
    "Kind",
    "NotLightError",
    "RefutationResult",
    "RefutationTrace",
    "Step",
    "compute_M",
    "format_result",
    "refute",
    "replay",
    "verify_result",
    "witness_point",
    "WORKED_UNION",
]


def _unit(*coords: int) -> tuple[int, ...]:
    return tuple(1 if j + 1 in coords else 0 for j in range(DIM))


WORKED_UNION = SemilinearUnion(DIM, (
    LinearSet((0,) * DIM, (_unit(1, 8), _unit(2, 7), _unit(2), _unit(3, 4),
                           _unit(5), _unit(6), _unit(9))),
))


class InternalInconsistencyError(RuntimeError):
    """A step that cannot fail did fail: this is a bug, not a property of the input."""


class NotLightError(ValueError):
    def __init__(self, set_index: int, vector: tuple[int, ...]):
        super().__init__(
            f"set {set_index} has basis vector {format_point(vector)} "
            "with more than two nonzero coordinates"
        )
        self.set_index = set_index
        self.vector = vector


class Kind(enum.Enum):
    UNCOVERED = "UNCOVERED"
    OVERCOVERED = "OVERCOVERED"


class Step(enum.Enum):
    NO_COVER = "NO_COVER"
    CLAIM_1_8 = "CLAIM_1_8"
    CLAIM_3_4 = "CLAIM_3_4"
    CLAIM_2_6 = "CLAIM_2_6"
    FINAL_W = "FINAL_W"


@dataclass(frozen=True)
class RefutationTrace:
    """Enough to replay the arithmetic; basis indices are 1-based.

    ``witness`` is the covering representation of ``v`` and
    ``final_coefficients`` the representation of the returned point in the
    same set, so ``shift + sum(final_coefficients * basis)`` is that point.
    """

    M: int
    v: tuple[int, ...]
    fired_step: Step
    witness: MembershipWitness | None = None
    active_indices: tuple[int, ...] = ()
    adjusted_index: int | None = None
    delta: int | None = None
    beta_18_index: int | None = None
    u: tuple[int, ...] | None = None
    removed_indices: tuple[int, ...] = ()
    contribution_2_6: int | None = None
    final_coefficients: tuple[int, ...] | None = None


@dataclass(frozen=True)
class RefutationResult:
    kind: Kind
    point: tuple[int, ...]
    trace: RefutationTrace
    set_index: int | None = None
    component: int | None = None


def _max_coordinate(union: SemilinearUnion) -> int:
    best = 0
    for s in union.sets:
        best = max(best, *s.shift, *(x for b in s.basis for x in b))
    return best


def _check_light(union: SemilinearUnion) -> None:
    for i, s in enumerate(union.sets, 1):
        if not is_light(s):
            bad = next(b for b in s.basis if sum(1 for x in b if x) > 2)
            raise NotLightError(i, bad)


def compute_M(union: SemilinearUnion) -> int:
    """One more than the largest coordinate of any shift or basis vector (1 if empty)."""
    _check_light(union)
    return _max_coordinate(union) + 1


def witness_point(M: int) -> tuple[int, ...]:
    if M < 1:
        raise ValueError("M must be positive")
    return (M, 3 * M, 2 * M, 2 * M, M, 2 * M, 2 * M, M, M)


def _ensure(condition: bool, message: str) -> None:
    if not condition:
        raise InternalInconsistencyError(message)


def refute(union: SemilinearUnion) -> RefutationResult:
    """Find a point where ``union`` differs from the complement of psi(L)."""
    if union.dimension != DIM:
        raise ValueError(f"refutation needs dimension {DIM}, got {union.dimension}")
    _check_light(union)
    union = SemilinearUnion(union.dimension, tuple(normalize(s) for s in union.sets))
    M = compute_M(union)
    v = witness_point(M)
    _ensure(not member_L(v), f"v = {format_point(v)} lies in psi(L)")

    found = member_union(union, v)
    if found is None:
        trace = RefutationTrace(M=M, v=v, fired_step=Step.NO_COVER)
        return RefutationResult(Kind.UNCOVERED, v, trace)

    s = union.sets[found.set_index - 1]
    coeffs = list(found.coefficients)
    _ensure(s.point(coeffs) == v, "membership witness does not reproduce v")
    # vectors used with coefficient 0 are dropped from the covering set
    active = [i for i, c in enumerate(coeffs) if c > 0]
    basis = s.basis
    record = dict(M=M, v=v, witness=found, active_indices=tuple(i + 1 for i in active))

    def finish(step: Step, final: list[int], component: int, **extra) -> RefutationResult:
        point = s.point(final)
        _ensure(member_component(point, component),
                f"{step.value}: {format_point(point)} is not in psi(L{component})")
        trace = RefutationTrace(fired_step=step, final_coefficients=tuple(final), **record, **extra)
        return RefutationResult(Kind.OVERCOVERED, point, trace, found.set_index, component)

    # 1st and 8th coordinates
    for i in active:
        b = basis[i]
        if b[0] != b[7]:
            delta = 1 if b[0] > b[7] else -1
            final = coeffs.copy()
            final[i] += delta
            return finish(Step.CLAIM_1_8, final, 4, adjusted_index=i + 1, delta=delta)
    beta_18 = next((i for i in active if basis[i][0] > 0), None)
    _ensure(beta_18 is not None, "no basis vector supported on coordinates 1 and 8")
    _ensure(all(x == 0 for j, x in enumerate(basis[beta_18]) if j not in (0, 7)),
            "the vector on coordinates 1 and 8 has other nonzero coordinates")
    record["beta_18_index"] = beta_18 + 1

    # 3rd and 4th coordinates
    for i in active:
        b = basis[i]
        if b[2] != b[3]:
            delta = 1 if b[2] > b[3] else -1
            final = coeffs.copy()
            final[i] += delta
            return finish(Step.CLAIM_3_4, final, 3, adjusted_index=i + 1, delta=delta)

    # u: drop every vector on coordinates 3 and 4
    on_34 = [i for i in active if basis[i][2] > 0]
    u_coeffs = coeffs.copy()
    for i in on_34:
        u_coeffs[i] = 0
    u = s.point(u_coeffs)
    _ensure(all(u[j] == v[j] for j in range(DIM) if j not in (2, 3)),
            "u differs from v outside coordinates 3 and 4")
    _ensure(u[2] == u[3] == s.shift[2] and u[2] < M, "u_3 = u_4 < M fails")
    record["u"] = u
    record["removed_indices"] = tuple(i + 1 for i in on_34)

    # vectors on coordinates 2 and 6
    on_26 = [i for i in active if basis[i][1] > 0 and basis[i][5] > 0]
    contribution = sum(u_coeffs[i] * basis[i][1] for i in on_26)
    record["contribution_2_6"] = contribution
    if contribution >= M:
        final = u_coeffs.copy()
        for i in on_26:
            final[i] = 0
        record["removed_indices"] += tuple(i + 1 for i in on_26)
        return finish(Step.CLAIM_2_6, final, 1)

    # w: drop vectors on coordinate 2 but not 6, pump the (1,8) vector
    on_2_only = [i for i in active if basis[i][1] > 0 and basis[i][5] == 0]
    final = u_coeffs.copy()
    for i in on_2_only:
        final[i] = 0
    final[beta_18] += M + 1
    record["removed_indices"] += tuple(i + 1 for i in on_2_only)
    w = s.point(final)
    _ensure(w[0] > w[8], "w_1 > w_9 fails")
    _ensure(w[1] <= w[5], "w_2 <= w_6 fails")
    _ensure(w[2] == w[3], "w_3 = w_4 fails")
    return finish(Step.FINAL_W, final, 2)


def verify_result(union: SemilinearUnion, result: RefutationResult) -> bool:
    """Re-check ``result`` using only set membership and the psi(L) predicate."""
    point = tuple(result.point)
    if len(point) != DIM or union.dimension != DIM or any(x < 0 for x in point):
        return False
    covered = member_union(union, point) is not None
    inside = member_L(point)
    if result.kind is Kind.UNCOVERED:
        return not covered and not inside
    if result.kind is Kind.OVERCOVERED:
        return covered and inside
    return False


def replay(union: SemilinearUnion, result: RefutationResult) -> tuple[int, ...]:
    """Recompute the result point from the trace alone."""
    trace = result.trace
    if result.kind is Kind.UNCOVERED:
        return witness_point(trace.M)
    s = normalize(union.sets[result.set_index - 1])
    return s.point(trace.final_coefficients)


# -- report --------------------------------------------------------------------


def _indices(ix: Sequence[int]) -> str:
    return "[" + ", ".join(map(str, ix)) + "]"


def format_result(result: RefutationResult, union: SemilinearUnion | None = None,
                  trace: bool = False) -> str:
    """First line: kind, point and step; with ``trace`` a replayable report follows."""
    tr = result.trace
    head = f"{result.kind.value} {format_point(result.point)} step={tr.fired_step.value}"
    if result.kind is Kind.OVERCOVERED:
        head += f" in=psi(L{result.component})"
    lines = [head]
    if not trace:
        return head + "\n"
    lines.append(f"M = {tr.M}")
    lines.append(f"v = {format_point(tr.v)}")
    if tr.witness is not None:
        lines.append(f"covering set = {tr.witness.set_index}")
        lines.append(f"coefficients = {_indices(tr.witness.coefficients)}")
        lines.append(f"active basis indices = {_indices(tr.active_indices)}")
    if tr.beta_18_index is not None:
        lines.append(f"beta_18 index = {tr.beta_18_index}")
    if tr.adjusted_index is not None:
        lines.append(f"adjusted index = {tr.adjusted_index} delta = {tr.delta:+d}")
    if tr.u is not None:
        lines.append(f"u = {format_point(tr.u)}")
    if tr.contribution_2_6 is not None:
        lines.append(f"contribution of (2,6) vectors to u_2 = {tr.contribution_2_6}")
    if tr.removed_indices:
        lines.append(f"removed indices = {_indices(tr.removed_indices)}")
    if tr.final_coefficients is not None:
        lines.append(f"final coefficients = {_indices(tr.final_coefficients)}")
    lines.append(f"point = {format_point(result.point)}")
    if union is not None:
        lines.append("--- union ---")
        lines.append(format_union(union).rstrip("\n"))
        lines.append("--- end union ---")
    return "\n".join(lines) + "\n"
