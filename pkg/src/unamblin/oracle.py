"""Brute-force cross-checks: grammars against predicates, disjointness, the
membership solver against exhaustive enumeration, and the refuter against
its independent verifier.

Random sweeps draw from :class:`~unamblin.rng.Lcg64`, in the order documented
on each generator, so a seed fixes the whole sweep.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .chart import count_parses, recognize
from .grammar import Grammar, format_word
from .refutation import InternalInconsistencyError, refute, verify_result, witness_point
from .rng import Lcg64
from .semilinear import LinearSet, SemilinearUnion, is_light, is_stratified, member
from .witness import COMPONENTS, DIM, format_point, member_L, member_component, psi_inverse

__all__ = [
    "SweepReport",
    "random_covering_union",
    "random_light_union",
    "sorted_points",
    "sweep_disjointness",
    "sweep_grammar_vs_predicate",
    "sweep_member_oracle",
    "sweep_refuter",
    "sweep_separation_pairs",
    "sweep_stratified",
]


@dataclass
class SweepReport:
    domain_description: str
    points_checked: int = 0
    mismatches: list[tuple[str, str, str]] = field(default_factory=list)
    stats: dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def bump(self, key: str) -> None:
        self.stats[key] = self.stats.get(key, 0) + 1

    def format(self, tsv: bool = False) -> str:
        mismatches = sorted(self.mismatches)
        if tsv:
            lines = ["item\texpected\tactual"]
            lines += ["\t".join(m) for m in mismatches]
        else:
            lines = [self.domain_description, f"checked: {self.points_checked}"]
            lines += [f"{k}: {v}" for k, v in sorted(self.stats.items())]
            lines += [f"mismatch: {i} expected={e} actual={a}" for i, e, a in mismatches]
        lines.append("PASS" if self.passed else f"FAIL {len(mismatches)} mismatches")
        return "\n".join(lines) + "\n"


def sorted_points(max_total: int, dim: int = DIM) -> Iterator[tuple[int, ...]]:
    """All points of N^dim with coordinate sum at most ``max_total`` (stars and bars)."""
    for total in range(max_total + 1):
        for bars in itertools.combinations(range(total + dim - 1), dim - 1):
            prev = -1
            out = []
            for b in bars:
                out.append(b - prev - 1)
                prev = b
            out.append(total + dim - 2 - prev)
            yield tuple(out)


def _predicate(target):
    if target in ("L", "union"):
        return member_L, "psi(L)"
    t_ = int(target)
    return (lambda p: member_component(p, t_)), f"psi(L{t_})"


def sweep_grammar_vs_predicate(grammar: Grammar, target, max_length: int,
                               counts: bool = False) -> SweepReport:
    """Compare recognition with the arithmetic predicate on every sorted word.

    ``target`` is a component number or ``"L"``.  With ``counts`` the parse
    count must also be exactly 1 on members and 0 elsewhere.
    """
    pred, name = _predicate(target)
    report = SweepReport(f"grammar vs {name}, sorted words of length <= {max_length}")
    for p in sorted_points(max_length):
        word = psi_inverse(p)
        expected = pred(p)
        report.points_checked += 1
        if counts:
            got = count_parses(grammar, word)
            if got != (1 if expected else 0):
                report.mismatches.append((format_word(word), str(int(expected)), str(got)))
        else:
            got = recognize(grammar, word)
            if got != expected:
                report.mismatches.append((format_word(word), str(expected), str(got)))
        if expected:
            report.bump("members")
    return report


def sweep_disjointness(max_coord: int) -> SweepReport:
    """No point with coordinates <= ``max_coord`` lies in two components."""
    report = SweepReport(f"pairwise disjointness, coordinates <= {max_coord}")
    tables = list(COMPONENTS.items())
    for p in itertools.product(range(max_coord + 1), repeat=DIM):
        hits = [t_ for t_, cs in tables if all(c.holds(p) for c in cs)]
        report.points_checked += 1
        if len(hits) > 1:
            report.mismatches.append((format_point(p), "<=1 component", str(hits)))
        elif hits:
            report.bump(f"in L{hits[0]}")
    return report


def sweep_separation_pairs(max_coord: int) -> SweepReport:
    """Each two components share exactly one compared pair, with opposite senses."""
    report = SweepReport(f"separating pairs, pair values <= {max_coord}")
    for t1, t2 in itertools.combinations(COMPONENTS, 2):
        first = {(c.left, c.right): c for c in COMPONENTS[t1]}
        second = {(c.left, c.right): c for c in COMPONENTS[t2]}
        shared = sorted(first.keys() & second.keys())
        label = f"L{t1}/L{t2}"
        if len(shared) != 1:
            report.mismatches.append((label, "1 shared pair", str(shared)))
            continue
        key = shared[0]
        c1, c2 = first[key], second[key]
        if c1.strict == c2.strict:
            report.mismatches.append((label, "opposite senses", f"{c1} / {c2}"))
            continue
        report.stats[f"{label} separated by"] = f"({key[0]},{key[1]})"
        for x, y in itertools.product(range(max_coord + 1), repeat=2):
            p = [0] * DIM
            p[key[0] - 1], p[key[1] - 1] = x, y
            report.points_checked += 1
            if c1.holds(p) == c2.holds(p):
                report.mismatches.append((f"{label} {key}={x},{y}", "exactly one", str(c1.holds(p))))
    return report


# -- random unions ---------------------------------------------------------------


def _random_light_vector(rng: Lcg64, max_coord: int) -> tuple[int, ...]:
    # draws: support size in {1,2}, positions, then one value per position
    k = rng.randint(1, 2)
    v = [0] * DIM
    for j in rng.sample_positions(k, DIM):
        v[j] = rng.randint(1, max_coord)
    return tuple(v)


def random_light_union(rng: Lcg64, max_sets: int, max_basis: int,
                       max_coord: int) -> SemilinearUnion:
    """Draw order: set count in [0, max_sets]; per set nine shift coordinates in
    [0, max_coord], basis size in [0, max_basis], then each basis vector.
    With ``max_coord == 0`` no basis vectors are drawn."""
    sets = []
    for _ in range(rng.randint(0, max_sets)):
        shift = tuple(rng.randint(0, max_coord) for _ in range(DIM))
        m = rng.randint(0, max_basis)
        basis = tuple(_random_light_vector(rng, max_coord) for _ in range(m)) if max_coord else ()
        sets.append(LinearSet(shift, basis))
    return SemilinearUnion(DIM, tuple(sets))


_TIED_SUPPORTS = [(0, 7), (2, 3), (1,), (4,), (5,), (6,), (8,),
                  (1, 5), (1, 6), (1, 4), (4, 5), (5, 6), (6, 8), (1, 8)]
_LOOSE_34_SUPPORTS = [(2,), (3,), (2, 4), (3, 5), (2, 3)]


def random_covering_union(rng: Lcg64, max_coord: int = 4, decoys: int = 2) -> SemilinearUnion:
    """A light union whose last set provably contains the pivot point ``v``.

    The covering set is drawn in one of three modes (first draw after the
    decoys): unconstrained light vectors; coordinates 1/8 and 3/4 tied; or
    only 1/8 tied.  Tying keeps the early adjustments from firing so that
    later stages get exercised.  The residual is filled with unit vectors, or
    with ``e_1 + e_8`` / ``e_3 + e_4`` on tied pairs, so the set covers ``v``.
    """
    max_coord = max(max_coord, 1)
    sets = [s for s in random_light_union(rng, decoys, 3, max_coord).sets]
    mode = rng.randint(0, 2)
    tie18, tie34 = mode in (1, 2), mode == 1
    shift = [rng.randint(0, max_coord) for _ in range(DIM)]
    if tie18:
        shift[7] = shift[0]
        if tie34:
            shift[3] = shift[2]
        pool = _TIED_SUPPORTS if tie34 else _TIED_SUPPORTS + _LOOSE_34_SUPPORTS
        vectors = []
        for _ in range(rng.randint(1, 6)):
            supp = pool[rng.randint(0, len(pool) - 1)]
            v = [0] * DIM
            value = rng.randint(1, max_coord)
            for j in supp:
                same = supp == (0, 7) or (tie34 and supp == (2, 3))
                v[j] = value if same else rng.randint(1, max_coord)
            vectors.append(tuple(v))
    else:
        vectors = [_random_light_vector(rng, max_coord) for _ in range(rng.randint(1, 6))]
    # every coordinate of the finished union, fill vectors included (value 1)
    top = max([1] + shift + [x for b in vectors for x in b]
              + [x for d in sets for x in (*d.shift, *(y for b in d.basis for y in b))])
    M = top + 1
    v = witness_point(M)
    residual = [a - b for a, b in zip(v, shift)]
    coeffs = []
    for b in vectors:
        cap = min(residual[j] // x for j, x in enumerate(b) if x)
        c = rng.randint(0, cap)
        coeffs.append(c)
        residual = [r - c * x for r, x in zip(residual, b)]
    fill = []
    tied_pairs = [(0, 7)] * tie18 + [(2, 3)] * tie34
    if tied_pairs:
        for a, b in tied_pairs:
            # residuals stay equal on tied pairs since every vector is tied there
            if residual[a]:
                e = [0] * DIM
                e[a] = e[b] = 1
                fill.append((tuple(e), residual[a]))
                residual[a] = residual[b] = 0
    for j, r in enumerate(residual):
        if r:
            e = [0] * DIM
            e[j] = 1
            fill.append((tuple(e), r))
    basis = tuple(vectors) + tuple(e for e, _ in fill)
    sets.append(LinearSet(tuple(shift), basis))
    return SemilinearUnion(DIM, tuple(sets))


def sweep_refuter(trials: int, max_sets: int, max_basis: int, max_coord: int, seed: int,
                  covering: bool = False) -> SweepReport:
    """Refute random light unions and re-verify every result independently.

    With ``covering`` each union is built by :func:`random_covering_union`
    so that the pivot point is always covered.
    """
    rng = Lcg64(seed)
    kind = "covering " if covering else ""
    report = SweepReport(
        f"refuter on {trials} random {kind}light unions "
        f"(sets<={max_sets}, basis<={max_basis}, coords<={max_coord}, seed={seed})"
    )
    for trial in range(trials):
        if covering:
            union = random_covering_union(rng, max_coord)
        else:
            union = random_light_union(rng, max_sets, max_basis, max_coord)
        report.points_checked += 1
        try:
            result = refute(union)
        except InternalInconsistencyError as exc:
            report.mismatches.append((f"trial {trial}", "result", f"internal error: {exc}"))
            continue
        report.bump(f"{result.kind.value} {result.trace.fired_step.value}")
        if not verify_result(union, result):
            report.mismatches.append(
                (f"trial {trial}", "verified", f"{result.kind.value} {format_point(result.point)}")
            )
    return report


# -- membership solver vs exhaustive enumeration ----------------------------------


def brute_force_member(s: LinearSet, point: Sequence[int]) -> bool:
    """Enumerate every coefficient tuple with entries up to ``max(point)``."""
    point = np.asarray(point, dtype=np.int64)
    m = len(s.basis)
    shift = np.asarray(s.shift, dtype=np.int64)
    if m == 0:
        return bool(np.array_equal(shift, point))
    bound = int(point.max()) if point.size else 0
    grid = np.array(list(itertools.product(range(bound + 1), repeat=m)), dtype=np.int64)
    basis = np.asarray(s.basis, dtype=np.int64).reshape(m, -1)
    reached = shift + grid @ basis
    return bool((reached == point).all(axis=1).any())


def _random_set(rng: Lcg64, dim: int, max_basis: int, max_coord: int) -> LinearSet:
    shift = tuple(rng.randint(0, max_coord) for _ in range(dim))
    basis = []
    for _ in range(rng.randint(0, max_basis)):
        basis.append(tuple(rng.randint(1, max_coord) if rng.randint(0, 1) else 0
                           for _ in range(dim)))
    return LinearSet(shift, tuple(basis))


def sweep_member_oracle(queries: int, seed: int, max_dim: int = DIM, max_basis: int = 5,
                        max_coord: int = 4) -> SweepReport:
    """Backtracking membership against brute force on random (set, point) queries.

    Per query: dimension in [1, max_dim], a random set (shift coordinates in
    [0, max_coord], each basis coordinate zero or in [1, max_coord]), and a
    point that is either uniform in [0, max_coord]^dim or, when small enough,
    a 0/1 combination of the basis.
    """
    rng = Lcg64(seed)
    report = SweepReport(
        f"membership solver vs enumeration, {queries} queries "
        f"(dim<={max_dim}, basis<={max_basis}, coords<={max_coord}, seed={seed})"
    )
    for q in range(queries):
        dim = rng.randint(1, max_dim)
        s = _random_set(rng, dim, max_basis, max_coord)
        point = tuple(rng.randint(0, max_coord) for _ in range(dim))
        if rng.randint(0, 1):
            candidate = s.point([rng.randint(0, 1) for _ in s.basis])
            if max(candidate) <= max_coord:
                point = candidate
        found = member(s, point)
        expected = brute_force_member(s, point)
        report.points_checked += 1
        report.bump("members" if expected else "non-members")
        if found is not None and s.point(found) != point:
            report.mismatches.append((f"query {q}", "valid coefficients", str(found)))
        elif (found is not None) != expected:
            report.mismatches.append((f"query {q}", str(expected), str(found is not None)))
    return report


# -- stratified predicate ------------------------------------------------------------


def _crosses(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    # interval picture: supports {a0<a1}, {b0<b1} interleave
    if len(a) < 2 or len(b) < 2:
        return False
    return a[0] < b[0] < a[1] < b[1] or b[0] < a[0] < b[1] < a[1]


def nested_witness_basis(t_: int) -> tuple[tuple[int, ...], ...]:
    """``e_p + e_q`` for each comparison of component ``t_``, plus all unit vectors."""
    basis = []
    for c in COMPONENTS[t_]:
        v = [0] * DIM
        v[c.left - 1] = v[c.right - 1] = 1
        basis.append(tuple(v))
    for j in range(DIM):
        v = [0] * DIM
        v[j] = 1
        basis.append(tuple(v))
    return tuple(basis)


def sweep_stratified(trials: int = 2000, seed: int = 7) -> SweepReport:
    """Fixed instances plus random light sets checked against the interval picture."""
    report = SweepReport(f"stratified predicate, fixed instances + {trials} random sets")
    crossing = LinearSet((0, 0, 0, 0), ((1, 0, 1, 0), (0, 1, 0, 1)))
    report.points_checked += 1
    if is_stratified(crossing):
        report.mismatches.append(("crossing {1,3}/{2,4}", "False", "True"))
    for t_ in COMPONENTS:
        s = LinearSet((0,) * DIM, nested_witness_basis(t_))
        report.points_checked += 1
        if not is_stratified(s):
            report.mismatches.append((f"nested basis of L{t_}", "True", "False"))
    rng = Lcg64(seed)
    for i in range(trials):
        s = _random_set(rng, rng.randint(1, DIM), 4, 2)
        supports = [tuple(j for j, x in enumerate(b) if x) for b in s.basis]
        light = all(len(x) <= 2 for x in supports)
        expected = light and not any(_crosses(a, b) for a in supports for b in supports)
        report.points_checked += 1
        report.bump("stratified" if expected else "not stratified")
        if is_light(s) != light or is_stratified(s) != expected:
            report.mismatches.append((f"random set {i}", str(expected), str(is_stratified(s))))
    return report
