import pytest
from hypothesis import given, settings, strategies as st

from unamblin.oracle import random_covering_union
from unamblin.refutation import (
    WORKED_UNION,
    InternalInconsistencyError,
    Kind,
    NotLightError,
    RefutationResult,
    Step,
    compute_M,
    format_result,
    refute,
    replay,
    verify_result,
    witness_point,
)
from unamblin.rng import Lcg64
from unamblin.semilinear import LinearSet, SemilinearUnion, member_union
from unamblin.witness import failed_comparisons, member_L, member_component

ZERO = (0,) * 9


def unit(*coords):
    return tuple(1 if j + 1 in coords else 0 for j in range(9))


def one_set(*basis, shift=ZERO):
    return SemilinearUnion(9, (LinearSet(shift, tuple(basis)),))


@st.composite
def light_vectors(draw, max_coord=4):
    support = draw(st.lists(st.integers(0, 8), min_size=1, max_size=2, unique=True))
    v = [0] * 9
    for j in support:
        v[j] = draw(st.integers(1, max_coord))
    return tuple(v)


@st.composite
def light_unions(draw, max_sets=5, max_basis=6, max_coord=4):
    sets = []
    for _ in range(draw(st.integers(0, max_sets))):
        shift = draw(st.tuples(*[st.integers(0, max_coord)] * 9))
        sets.append(LinearSet(shift, tuple(draw(st.lists(light_vectors(max_coord), max_size=max_basis)))))
    return SemilinearUnion(9, tuple(sets))


# -- M and v ------------------------------------------------------------------------------


def test_compute_M_examples():
    assert compute_M(SemilinearUnion(9)) == 1
    assert compute_M(one_set(unit(1), shift=(0, 0, 6, 0, 0, 0, 0, 0, 0))) == 7
    assert compute_M(one_set(unit(1, 8), unit(3))) == 2


def test_witness_point_examples():
    assert witness_point(1) == (1, 3, 2, 2, 1, 2, 2, 1, 1)
    assert witness_point(2) == (2, 6, 4, 4, 2, 4, 4, 2, 2)
    with pytest.raises(ValueError):
        witness_point(0)


def test_witness_point_excluded_for_M_up_to_1000():
    for M in range(1, 1001):
        v = witness_point(M)
        assert not member_L(v)
        assert "i2 <= i7" in map(str, failed_comparisons(v, 1))
        assert "i2 <= i6" in map(str, failed_comparisons(v, 2))
        assert list(map(str, failed_comparisons(v, 3))) == ["i3 > i4"]
        assert list(map(str, failed_comparisons(v, 4))) == ["i1 > i8"]


# -- refute examples --------------------------------------------------------------------------


def test_uncovered_single_unit():
    u = one_set(unit(1))
    r = refute(u)
    assert r.kind is Kind.UNCOVERED
    assert r.point == (2, 6, 4, 4, 2, 4, 4, 2, 2)
    assert r.trace.M == 2 and r.trace.fired_step is Step.NO_COVER
    assert verify_result(u, r)


def test_empty_union_uncovered():
    r = refute(SemilinearUnion(9))
    assert r.kind is Kind.UNCOVERED and r.point == witness_point(1)
    assert verify_result(SemilinearUnion(9), r)


def test_worked_example():
    r = refute(WORKED_UNION)
    tr = r.trace
    assert (r.kind, r.point, r.component) == (Kind.OVERCOVERED, (5, 0, 0, 0, 2, 4, 0, 5, 2), 2)
    assert tr.fired_step is Step.FINAL_W
    assert tr.M == 2
    assert tr.witness.coefficients == (2, 4, 2, 4, 2, 4, 2)
    assert tr.u == (2, 6, 0, 0, 2, 4, 4, 2, 2)
    assert tr.contribution_2_6 == 0
    assert tr.beta_18_index == 1
    assert tr.final_coefficients[0] - tr.witness.coefficients[0] == 3
    assert verify_result(WORKED_UNION, r)
    assert replay(WORKED_UNION, r) == r.point


def test_claim_1_8_fires():
    # e1 + e9 moves coordinate 1 without coordinate 8
    u = one_set(unit(1, 9), *(unit(j) for j in range(2, 9)))
    r = refute(u)
    assert r.trace.fired_step is Step.CLAIM_1_8
    assert r.component == 4 and member_component(r.point, 4)
    assert r.trace.adjusted_index == 1 and r.trace.delta == 1
    assert verify_result(u, r)


def test_claim_3_4_fires():
    u = one_set(unit(1, 8), unit(9), unit(2), unit(3), unit(4), unit(5), unit(6), unit(7))
    r = refute(u)
    assert r.trace.fired_step is Step.CLAIM_3_4
    assert r.component == 3 and member_component(r.point, 3)
    assert verify_result(u, r)


def test_claim_2_6_fires():
    # e2 + e6 carries 4 >= M = 2 of coordinate 2
    u = one_set(unit(1, 8), unit(2, 6), unit(2), unit(3, 4), unit(5), unit(7), unit(9))
    r = refute(u)
    assert r.trace.fired_step is Step.CLAIM_2_6
    assert r.trace.contribution_2_6 >= r.trace.M
    assert r.component == 1 and verify_result(u, r)


def test_first_covering_set_wins():
    decoy = LinearSet(ZERO, (unit(1),))
    u = SemilinearUnion(9, (decoy,) + WORKED_UNION.sets)
    r = refute(u)
    assert r.set_index == 2 and r.point == (5, 0, 0, 0, 2, 4, 0, 5, 2)


# -- verify_result --------------------------------------------------------------------------


def test_tampered_result_rejected():
    u = one_set(unit(1))
    r = refute(u)
    fake = RefutationResult(Kind.OVERCOVERED, ZERO, r.trace, 1, 1)
    assert member_L(ZERO) and member_union(u, ZERO) is not None
    assert verify_result(u, fake)
    empty = SemilinearUnion(9)
    assert not verify_result(empty, fake)
    wrong_kind = RefutationResult(Kind.UNCOVERED, ZERO, r.trace)
    assert not verify_result(u, wrong_kind)


# -- errors -------------------------------------------------------------------------------------


def test_non_light_rejected():
    heavy = one_set(unit(1, 2, 3))
    with pytest.raises(NotLightError) as info:
        refute(heavy)
    assert info.value.set_index == 1
    with pytest.raises(NotLightError):
        compute_M(heavy)


def test_wrong_dimension_rejected():
    with pytest.raises(ValueError):
        refute(SemilinearUnion(3, (LinearSet((0, 0, 0), ((1, 0, 0),)),)))


def test_internal_error_is_distinct():
    assert not issubclass(InternalInconsistencyError, ValueError)


# -- properties -------------------------------------------------------------------------------


@given(light_unions())
@settings(max_examples=300, deadline=None)
def test_refute_random_light_unions(u):
    r = refute(u)
    assert verify_result(u, r)
    assert replay(u, r) == r.point


@pytest.mark.parametrize("seed", range(200))
def test_refute_covering_unions(seed):
    u = random_covering_union(Lcg64(seed))
    v = witness_point(compute_M(u))
    assert member_union(u, v) is not None
    r = refute(u)
    assert r.kind is Kind.OVERCOVERED
    assert verify_result(u, r) and replay(u, r) == r.point


@given(light_unions(), st.randoms(use_true_random=False))
@settings(max_examples=100, deadline=None)
def test_verification_survives_permutation(u, rnd):
    sets = list(u.sets)
    rnd.shuffle(sets)
    permuted = SemilinearUnion(9, tuple(sets))
    assert verify_result(permuted, refute(permuted))


@given(light_vectors(max_coord=50), st.integers(1, 60))
def test_single_adjustment_moves_differences_by_less_than_M(b, extra):
    M = max(b) + extra
    v = witness_point(M)
    for delta in (1, -1):
        p = [x + delta * y for x, y in zip(v, b)]
        assert abs((p[1] - p[5]) - (v[1] - v[5])) < M
        assert abs((p[2] - p[4]) - (v[2] - v[4])) < M


def test_format_result_lines():
    r = refute(WORKED_UNION)
    assert format_result(r) == "OVERCOVERED (5 0 0 0 2 4 0 5 2) step=FINAL_W in=psi(L2)\n"
    text = format_result(r, WORKED_UNION, trace=True)
    assert "u = (2 6 0 0 2 4 4 2 2)" in text
    assert "--- union ---" in text and text.rstrip().endswith("--- end union ---")
    assert format_result(refute(SemilinearUnion(9))) == "UNCOVERED (1 3 2 2 1 2 2 1 1) step=NO_COVER\n"


def test_large_coordinates():
    big = 10**30
    u = one_set(unit(1), shift=(0, big, 0, 0, 0, 0, 0, 0, 0))
    r = refute(u)
    assert r.trace.M == big + 1
    assert verify_result(u, r)
