import itertools

import pytest
from hypothesis import given, settings, strategies as st

from src.core.errors import NotAStackError, PreconditionError
from src.core.notions import (
    clear_caches,
    is_ps_literal,
    is_piecewise_syndetic,
    is_rel_syndetic,
    is_rel_syndetic_literal,
    is_rel_thick,
    is_rel_thick_literal,
    is_syndetic,
    is_syndetic_literal,
    is_szz_piecewise_syndetic,
    is_thick,
    is_thick_literal,
    rel_ps_family,
    rel_syn_family,
    rel_thick_family,
    size_families,
    stack_product,
    szz_family,
)
from src.core.semigroup import cyclic_group, enumerate_semigroups, left_zero, null_semigroup, set_product
from src.core.setfam import (
    Family,
    closure_of_antichain,
    enumerate_filters,
    enumerate_stacks,
    principal_filter,
    principal_ultrafilter,
)


def test_group_notions(z3):
    fams = size_families(z3)
    nonempty = Family.from_predicate(3, lambda a: a != 0)
    assert fams.syn == fams.ps == nonempty
    # the only minimal left ideal is S itself
    assert fams.thick == principal_filter(0b111, 3)


def test_right_zero_notions(rz3):
    fams = size_families(rz3)
    assert fams.syn == Family.from_predicate(3, lambda a: a == 0b111)
    assert fams.thick == Family.from_predicate(3, lambda a: a != 0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_classical_deciders_match_literal_sweeps(n):
    for table in enumerate_semigroups(n):
        fams = size_families(table)
        for A in range(1 << n):
            assert is_syndetic(table, A) == is_syndetic_literal(table, A) == (A in fams.syn)
            assert is_thick(table, A) == is_thick_literal(table, A) == (A in fams.thick)
            assert is_piecewise_syndetic(table, A) == is_ps_literal(table, A) == (A in fams.ps)


def test_relative_deciders_match_literal_sweeps_over_stacks(named_tables):
    for table in named_tables:
        n = table.n
        stacks = list(enumerate_stacks(n))
        for F, G in itertools.product(stacks, repeat=2):
            syn = rel_syn_family(table, F, G)
            thick = rel_thick_family(table, F, G)
            for A in range(1 << n):
                assert is_rel_syndetic(table, A, F, G) == is_rel_syndetic_literal(table, A, F, G) == (A in syn)
                assert is_rel_thick(table, A, F, G) == is_rel_thick_literal(table, A, F, G) == (A in thick)


_tables4 = list(enumerate_semigroups(4, "iso"))
_stacks4 = st.lists(st.integers(min_value=1, max_value=15), min_size=1, max_size=4).map(
    lambda gens: closure_of_antichain(gens, 4))


@settings(max_examples=500, deadline=None)
@given(st.sampled_from(_tables4), _stacks4, _stacks4, st.integers(min_value=0, max_value=15))
def test_relative_deciders_match_literal_at_n4(table, F, G, A):
    assert is_rel_syndetic(table, A, F, G) == is_rel_syndetic_literal(table, A, F, G)
    assert is_rel_thick(table, A, F, G) == is_rel_thick_literal(table, A, F, G)


def test_whole_stack_gives_classical_notions(named_tables):
    for table in named_tables:
        S = principal_filter(table.full, table.n)
        fams = size_families(table)
        assert rel_syn_family(table, S, S) == fams.syn
        assert rel_thick_family(table, S, S) == fams.thick
        assert rel_ps_family(table, S, S) == fams.ps


def test_relative_notions_need_stacks(rz3):
    not_a_stack = Family.from_sets(3, [[0]])
    S = principal_filter(0b111, 3)
    with pytest.raises(NotAStackError):
        rel_syn_family(rz3, not_a_stack, S)
    with pytest.raises(NotAStackError):
        is_rel_thick(rz3, 0b1, S, not_a_stack)


def test_product_of_ultrafilters_is_ultrafilter_at_product():
    t = cyclic_group(3)
    for x, y in itertools.product(range(3), repeat=2):
        got = stack_product(t, principal_ultrafilter(x, 3), principal_ultrafilter(y, 3))
        assert got == principal_ultrafilter((x + y) % 3, 3)


def test_szz_requires_subsemigroup_base():
    t = null_semigroup(3)
    F = principal_filter(0b010, 3)   # {1}·{1} = {0}
    with pytest.raises(PreconditionError):
        szz_family(t, F)


def test_ps_sets_meet_the_szz_condition(named_tables):
    for table in named_tables:
        for F in enumerate_filters(table.n):
            try:
                szz = szz_family(table, F)
            except PreconditionError:
                continue
            assert rel_ps_family(table, F, F) <= szz


def test_szz_membership_for_left_zero():
    t = left_zero(2)
    F = principal_filter(0b11, 2)
    assert is_szz_piecewise_syndetic(t, 0b01, F)
    assert not is_szz_piecewise_syndetic(t, 0, F)


def test_clear_caches_keeps_results_stable(rz3, filters3):
    before = [rel_ps_family(rz3, F, G) for F in filters3 for G in filters3]
    clear_caches()
    after = [rel_ps_family(rz3, F, G) for F in filters3 for G in filters3]
    assert before == after


_tables3 = list(enumerate_semigroups(3, "iso"))
_stacks3 = list(enumerate_stacks(3))


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(_tables3), st.sampled_from(_stacks3), st.sampled_from(_stacks3),
       st.sampled_from(_stacks3))
def test_stack_product_is_associative(table, F, G, H):
    left = stack_product(table, stack_product(table, F, G), H)
    right = stack_product(table, F, stack_product(table, G, H))
    assert left == right


def test_product_of_principal_filters_is_principal_at_set_product():
    for table in _tables3:
        for X, Y in itertools.product(range(1, 8), repeat=2):
            got = stack_product(table, principal_filter(X, 3), principal_filter(Y, 3))
            assert got == principal_filter(set_product(table, X, Y), 3)
