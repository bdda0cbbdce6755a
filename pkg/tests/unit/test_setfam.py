import pytest
from hypothesis import given, settings, strategies as st

from src.core import setfam
from src.core.errors import NotAFilterError, SizeLimitError
from src.core.setfam import (
    Family,
    brute_force_families,
    classify,
    classify_literal,
    closure_of_antichain,
    complement,
    elements,
    enumerate_filters,
    enumerate_grills,
    enumerate_stacks,
    enumerate_ultrafilters,
    filter_base,
    from_elements,
    intersection_family,
    mesh,
    minimal_members,
    principal_filter,
    principal_ultrafilter,
    schmidt_mesh,
    sets_meeting,
    submasks,
    upward_closure,
)


def test_mask_helpers():
    assert from_elements([0, 2]) == 0b101
    assert elements(0b101) == [0, 2]
    assert complement(0b101, 3) == 0b010
    assert list(submasks(0b11)) == [0b11, 0b10, 0b01]


def test_mesh_of_single_point_family():
    F = Family.from_sets(2, [[0]])
    assert mesh(F) == Family.from_sets(2, [[], [0], [0, 1]])


def test_schmidt_mesh_of_single_point_family():
    F = Family.from_sets(2, [[0]])
    assert schmidt_mesh(F) == Family.from_sets(2, [[0], [0, 1]])


def test_family_container_protocol():
    F = Family.from_sets(3, [[0], [0, 1]])
    assert 0b001 in F
    assert 0b010 not in F
    assert len(F) == 2
    assert list(F) == [0b001, 0b011]
    assert F.sets() == [[0], [0, 1]]
    assert F <= (F | Family.from_sets(3, [[2]]))


def test_family_size_cap():
    with pytest.raises(SizeLimitError):
        Family(7, 0)


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 4), (3, 18), (4, 166)])
def test_stack_counts(n, expected):
    assert sum(1 for _ in enumerate_stacks(n)) == expected


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_filter_grill_ultrafilter_counts(n):
    assert sum(1 for _ in enumerate_filters(n)) == 2 ** n - 1
    assert sum(1 for _ in enumerate_grills(n)) == 2 ** n - 1
    assert sum(1 for _ in enumerate_ultrafilters(n)) == n


def test_brute_force_covers_every_family():
    fams = list(brute_force_families(2))
    assert len(fams) == 16
    assert sum(classify(F).is_stack for F in fams) == 4


def test_classify_matches_literal_exhaustively_at_n2():
    for F in brute_force_families(2):
        assert classify(F) == classify_literal(F)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 16 - 1))
def test_classify_matches_literal_at_n4(bits):
    F = Family(4, bits)
    assert classify(F) == classify_literal(F)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=15), min_size=1, max_size=5))
def test_upward_closure_of_generators_is_a_stack(gens):
    F = closure_of_antichain(gens, 4)
    assert classify(F).is_stack
    assert mesh(mesh(F)) == F


def test_upward_closure_examples():
    assert upward_closure(Family.from_sets(2, [[0]])) == Family.from_sets(2, [[0], [0, 1]])
    assert upward_closure(Family.from_sets(3, [[]])) == Family.everything(3)
    assert upward_closure(Family.empty(3)) == Family.empty(3)
    assert upward_closure(Family.from_sets(3, [[0], [1]])) == sets_meeting(0b011, 3)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 16 - 1))
def test_upward_closure_is_idempotent_and_extensive(bits):
    F = Family(4, bits)
    up = upward_closure(F)
    assert F <= up
    assert upward_closure(up) == up


def test_clear_caches_empties_the_caches():
    classify(Family.from_sets(2, [[0]]))
    mesh(Family.from_sets(2, [[0]]))
    assert classify.cache_info().currsize > 0
    setfam.clear_caches()
    assert classify.cache_info().currsize == 0
    assert mesh.cache_info().currsize == 0
    assert upward_closure.cache_info().currsize == 0


def test_ultrafilters_are_filters_and_grills():
    for p in enumerate_ultrafilters(3):
        c = classify(p)
        assert c.is_filter and c.is_grill and c.is_ultrafilter
        assert mesh(p) == p


def test_set_with_two_or_more_points_is_self_mesh_but_not_ultrafilter():
    F = Family.from_predicate(3, lambda a: bin(a).count("1") >= 2)
    c = classify(F)
    assert c.is_stack and not c.is_filter
    assert mesh(F) == F


def test_mesh_of_filter_is_grill_of_meeting_sets():
    F = principal_filter(0b011, 3)
    assert mesh(F) == sets_meeting(0b011, 3)
    assert classify(mesh(F)).is_grill


def test_filter_base_and_errors():
    assert filter_base(principal_filter(0b110, 3)) == 0b110
    with pytest.raises(NotAFilterError):
        principal_filter(0, 3)
    with pytest.raises(NotAFilterError):
        filter_base(Family.from_sets(2, [[0], [1], [0, 1]]))
    with pytest.raises(ValueError):
        principal_ultrafilter(3, 3)


def test_minimal_members():
    F = closure_of_antichain([0b001, 0b110], 3)
    assert minimal_members(F) == (0b001, 0b110)


def test_intersection_family_of_filter_and_its_mesh_is_grill():
    for F in enumerate_stacks(3):
        built = intersection_family(F, mesh(F))
        assert classify(built).is_grill
        assert F <= built and mesh(F) <= built
