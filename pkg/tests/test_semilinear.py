import itertools

import pytest
from hypothesis import given, settings, strategies as st

from unamblin.grammar import FormatError
from unamblin.semilinear import (
    LinearSet,
    MembershipWitness,
    SemilinearUnion,
    format_union,
    is_light,
    is_stratified,
    member,
    member_union,
    normalize,
    parse_union,
)


def unit(j, k=9):
    v = [0] * k
    v[j - 1] = 1
    return tuple(v)


def brute_member(s, point):
    """Every coefficient tuple with entries up to max(point)."""
    bound = max(point, default=0)
    for cs in itertools.product(range(bound + 1), repeat=len(s.basis)):
        if s.point(cs) == tuple(point):
            return True
    return False


@st.composite
def sets_and_points(draw, max_dim=9, max_basis=5, max_coord=4):
    k = draw(st.integers(1, max_dim))
    vec = st.tuples(*[st.integers(0, max_coord)] * k)
    s = LinearSet(draw(vec), tuple(draw(st.lists(vec, max_size=max_basis))))
    if draw(st.booleans()):
        point = draw(vec)
    else:
        point = s.point(draw(st.lists(st.integers(0, 2), min_size=len(s.basis),
                                      max_size=len(s.basis))))
    return s, point


# -- normalize -----------------------------------------------------------------------


def test_normalize_examples():
    assert normalize(LinearSet((1, 0), ((0, 0), (2, 1)))).basis == ((2, 1),)
    assert normalize(LinearSet((1, 0), ((2, 1), (2, 1)))).basis == ((2, 1),)
    s = LinearSet((3, 4))
    assert normalize(s) == s
    assert member(s, (3, 4)) == () and member(s, (3, 5)) is None


@given(sets_and_points(max_dim=4, max_basis=4, max_coord=3))
@settings(max_examples=200)
def test_normalize_preserves_membership(sp):
    s, p = sp
    assert (member(s, p) is None) == (member(normalize(s), p) is None)


# -- member --------------------------------------------------------------------------


def test_member_examples():
    s = LinearSet((1, 0), ((2, 1),))
    assert member(s, (5, 2)) == (2,)
    assert member(s, (4, 2)) is None
    assert member(LinearSet((0,) * 9, (unit(1),)), (0,) * 9) == (0,)


def test_member_dimension_mismatch():
    with pytest.raises(ValueError):
        member(LinearSet((0, 0)), (1, 2, 3))


@given(sets_and_points(max_basis=4, max_coord=3))
@settings(max_examples=400, deadline=None)
def test_member_matches_brute_force(sp):
    s, p = sp
    found = member(s, p)
    if found is not None:
        assert s.point(found) == p
    assert (found is not None) == brute_member(s, p)


@given(sets_and_points())
def test_member_of_shift_on_normalized_set(sp):
    s = normalize(sp[0])
    assert member(s, s.shift) == (0,) * len(s.basis)


def test_member_large_coordinates():
    big = 2**63 - 1
    s = LinearSet((0, 0), ((1, 0), (0, 1)))
    assert member(s, (big, big)) == (big, big)
    s = LinearSet((1, 0), ((2, 1),))
    assert member(s, (2 * big + 1, big)) == (big,)


def test_member_union_examples():
    u = SemilinearUnion(2, (LinearSet((1, 0), ((2, 1),)), LinearSet((0, 0), ((1, 0),))))
    assert member_union(u, (4, 0)) == MembershipWitness(2, (4,))
    assert member_union(SemilinearUnion(9), (0,) * 9) is None
    assert member_union(SemilinearUnion(1, (LinearSet((0,), ((1,),)),)), (7,)) == MembershipWitness(1, (7,))
    with pytest.raises(ValueError):
        member_union(u, (1, 2, 3))


def test_union_dimension_invariant():
    with pytest.raises(ValueError):
        SemilinearUnion(2, (LinearSet((0, 0, 0)),))
    with pytest.raises(ValueError):
        LinearSet((0, 0), ((1,),))
    with pytest.raises(ValueError):
        LinearSet((0, -1))


# -- light / stratified ----------------------------------------------------------------


def test_is_light_examples():
    assert is_light(LinearSet((0,) * 9, ((1, 0, 0, 0, 0, 0, 0, 1, 0),)))
    assert not is_light(LinearSet((0,) * 9, ((1, 1, 1, 0, 0, 0, 0, 0, 0),)))
    assert is_light(LinearSet((0,) * 9))


def test_is_stratified_examples():
    nested = LinearSet((0,) * 9, ((1, 0, 0, 0, 0, 0, 0, 0, 1), (0, 1, 0, 0, 0, 0, 1, 0, 0)))
    assert is_stratified(nested)
    assert not is_stratified(LinearSet((0,) * 4, ((1, 0, 1, 0), (0, 1, 0, 1))))
    assert is_stratified(LinearSet((0,) * 9, tuple(unit(j) for j in range(1, 10))))
    # disjoint supports side by side do not cross
    assert is_stratified(LinearSet((0,) * 4, ((1, 1, 0, 0), (0, 0, 1, 1))))
    assert not is_stratified(LinearSet((0,) * 9, ((1, 1, 1, 0, 0, 0, 0, 0, 0),)))


def interleave_by_enumeration(s):
    """Direct reading of the definition over every index quadruple."""
    k = s.dimension
    for b1 in s.basis:
        for b2 in s.basis:
            for j1, j2, j3, j4 in itertools.combinations(range(k), 4):
                if b1[j1] and b2[j2] and b1[j3] and b2[j4]:
                    return True
    return False


@given(sets_and_points(max_dim=7, max_basis=4, max_coord=1))
@settings(max_examples=300)
def test_stratified_matches_quadruple_enumeration(sp):
    s = sp[0]
    assert is_stratified(s) == (is_light(s) and not interleave_by_enumeration(s))
    if is_stratified(s):
        assert is_light(s)


# -- text format -------------------------------------------------------------------------


def test_union_text_roundtrip():
    text = "# sets\nalpha: 1 0\nbeta: 2 1\n\nalpha: 0 0\nbeta: 1 0\n"
    u = parse_union(text)
    assert u.dimension == 2 and len(u.sets) == 2
    assert u.sets[0] == LinearSet((1, 0), ((2, 1),))
    assert parse_union(format_union(u)) == u


def test_empty_union_text():
    u = parse_union("# nothing\n")
    assert u == SemilinearUnion(9)
    assert parse_union("", dimension=3).dimension == 3


@pytest.mark.parametrize("text", [
    "beta: 1 0\n",
    "alpha: 1 0\nalpha: 0 0\n",
    "alpha: 1 0\nbeta: 1 0 0\n",
    "alpha: 1 x\n",
    "gamma: 1\n",
    "alpha: -1 0\n",
    "alpha:\n",
])
def test_union_text_errors(text):
    with pytest.raises(FormatError):
        parse_union(text)
