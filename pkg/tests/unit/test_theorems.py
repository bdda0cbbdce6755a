import itertools

import pytest
from pydantic import ValidationError

from src.core import notions, semigroup, setfam
from src.core.errors import NotAFilterError
from src.core.notions import size_families
from src.core.semigroup import (
    cyclic_group,
    enumerate_semigroups,
    left_zero,
    right_zero,
    set_product,
    smallest_ideal,
)
from src.core.setfam import Family, principal_filter, principal_ultrafilter
from src.theorems.checks import (
    STACK_LAYER,
    check_claim,
    check_cor_2_6,
    check_cor_3_12,
    check_example_3_4,
    check_lemma_3_8,
    check_prop_2_4,
    check_prop_3_2,
    check_prop_3_5,
    check_prop_3_7,
    check_sec4,
    check_stack_pairs,
    check_table,
    check_thm_1_4,
    check_thm_3_10,
    check_thm_3_11,
)
from src.theorems.claims import (
    CLAIMS,
    Claim,
    Relation,
    Scope,
    Universe,
    evaluate,
    reverify,
    stack_universes,
)
from src.theorems.reports import CheckReport, ClaimId, Status
from src.theorems.search import search_question_4_6, verify_candidate
from src.theorems.suite import SuiteConfig, run_suite


def _statuses(reports):
    return [r.status for r in reports]


def test_every_claim_is_registered():
    assert set(CLAIMS) == set(ClaimId)


@pytest.mark.parametrize("table", [right_zero(3), cyclic_group(3), left_zero(1)])
def test_minimal_left_ideal_characterizations(table):
    reports = check_thm_1_4(table)
    assert len(reports) == 3
    assert _statuses(reports) == [Status.PASS] * 3


@pytest.mark.parametrize("n", [2, 3])
def test_family_statements(n):
    reports = check_prop_2_4(n)
    assert len(reports) == 8
    assert _statuses(reports) == [Status.PASS] * 8
    # brute-force layer: non-stacks are skipped, never silently passed
    by_claim = {r.claim: r for r in reports}
    assert by_claim[ClaimId.P2_4B].skipped > 0


def test_family_statements_over_all_families_on_four_points():
    reports = check_prop_2_4(3, brute_force_n=4)
    assert _statuses(reports) == [Status.PASS] * 8
    by_claim = {r.claim: r for r in reports}
    assert by_claim[ClaimId.P2_4B].skipped > 0
    assert by_claim[ClaimId.P2_4B].checked > 0


def test_core_notions_over_all_order_3_tables():
    for table in enumerate_semigroups(3):
        for report in check_thm_1_4(table) + check_cor_2_6(table) + check_prop_3_7(table):
            assert report.status is Status.PASS, report


def test_filter_relative_checkers_on_right_zero(rz3, filters3):
    for F, G in itertools.product(filters3, repeat=2):
        for report in check_lemma_3_8(rz3, F, G) + check_thm_3_10(rz3, F, G) + check_prop_3_2(rz3, F, G):
            assert report.status is Status.PASS, report
        for report in check_sec4(rz3, F, G):
            assert report.status in (Status.PASS, Status.SKIPPED), report


def test_monotonicity_over_comparable_filters(z3, filters3):
    for F, H in itertools.product(filters3, repeat=2):
        if F <= H:
            for report in check_prop_3_5(z3, F, filters3[0], H):
                assert report.status is not Status.FAIL


def test_lemma_3_8_rejects_non_filters(rz3):
    grill = Family.from_predicate(3, lambda a: a & 0b011 != 0)
    with pytest.raises(NotAFilterError):
        check_lemma_3_8(rz3, grill, principal_filter(0b111, 3))


def test_ultrafilter_products_collapse_to_a_point(z3):
    p, q = principal_ultrafilter(1, 3), principal_ultrafilter(2, 3)
    reports = check_thm_3_10(z3, p, q)
    assert _statuses(reports) == [Status.PASS] * 3


def test_thm_3_11_both_directions(z3):
    F, G = principal_filter(0b001, 3), principal_filter(0b010, 3)
    product = set_product(z3, 0b001, 0b010)
    assert check_thm_3_11(z3, F, G, principal_filter(product, 3)).status is Status.PASS
    outside = principal_ultrafilter(2, 3)
    u = Universe(3, z3, F, G, outside)
    assert CLAIMS[ClaimId.T3_11].lhs(u) is False
    assert evaluate(ClaimId.T3_11, u).status is Status.PASS


def test_cor_3_12_on_smallest_ideal_and_idempotent():
    for table in enumerate_semigroups(2):
        K = principal_filter(smallest_ideal(table), table.n)
        reports = check_cor_3_12(table, K)
        assert _statuses(reports) == [Status.PASS] * 4
        assert CLAIMS[ClaimId.C3_12D].lhs(Universe(table.n, table, K))


def test_example_3_4_strictness_witness():
    table = left_zero(2)
    report = check_example_3_4(table, principal_filter(0b01, 2))
    assert report.status is Status.PASS
    assert report.witness["set"] == [0]
    assert report.witness["in_rhs"] and not report.witness["in_lhs"]


def test_thm_4_4_hypothesis_failure_is_skipped_with_reason():
    table = cyclic_group(2)
    F = principal_filter(0b10, 2)   # {1}+{1} = {0}, not a subsemigroup
    out = evaluate(ClaimId.T4_4, Universe(2, table, F, F))
    assert out.status is Status.SKIPPED
    assert "subsemigroup" in out.reason


def test_check_table_covers_every_table_level_claim():
    claims = [c for c in ClaimId if CLAIMS[c].scope not in (Scope.GROUND, Scope.GROUND_PAIR)]
    reports = check_table(right_zero(2), claims)
    assert [r.claim for r in reports] == claims
    assert Status.FAIL not in _statuses(reports)


def test_universe_payload_round_trip(rz3, filters3):
    u = Universe(3, rz3, filters3[0], filters3[4])
    assert Universe.from_payload(u.payload()) == u


def test_failures_carry_reproducible_counterexamples(monkeypatch, rz3):
    broken = Claim(ClaimId.P3_7A, Scope.TABLE, Relation.EQUAL,
                   lambda u: size_families(u.table).syn,
                   lambda u: size_families(u.table).thick)
    monkeypatch.setitem(CLAIMS, ClaimId.P3_7A, broken)
    report = check_claim(ClaimId.P3_7A, [Universe(3, rz3)], "rz3")
    assert report.status is Status.FAIL
    assert report.counterexample["set"] == [0]
    assert report.counterexample["in_lhs"] is False and report.counterexample["in_rhs"] is True
    assert reverify(report)


def test_reverify_rejects_fabricated_failures(rz3):
    u = Universe(3, rz3, principal_filter(0b111, 3), principal_filter(0b111, 3))
    fake = CheckReport(claim=ClaimId.P3_2A, universe="rz3", status=Status.FAIL,
                       counterexample={"universe": u.payload(), "set": [0], "mask": 1,
                                       "in_lhs": True, "in_rhs": False})
    assert not reverify(fake)
    assert not reverify(CheckReport(claim=ClaimId.P3_2A, universe="rz3", status=Status.PASS))


def test_reverify_starts_from_cold_caches(monkeypatch, rz3):
    cleared = []
    for module in (notions, semigroup, setfam):
        original = module.clear_caches

        def spy(original=original, name=module.__name__.rsplit(".", 1)[-1]):
            cleared.append(name)
            original()

        monkeypatch.setattr(module, "clear_caches", spy)
    broken = Claim(ClaimId.P3_7A, Scope.TABLE, Relation.EQUAL,
                   lambda u: size_families(u.table).syn,
                   lambda u: size_families(u.table).thick)
    monkeypatch.setitem(CLAIMS, ClaimId.P3_7A, broken)
    report = check_claim(ClaimId.P3_7A, [Universe(3, rz3)], "rz3")
    assert reverify(report)
    assert sorted(cleared) == ["notions", "semigroup", "setfam"]


# --- STACK PAIRS ---

def test_stack_pairs_over_small_tables():
    for order in (1, 2, 3):
        for table in enumerate_semigroups(order, "iso"):
            reports = check_stack_pairs(table, STACK_LAYER)
            assert len(reports) == len(STACK_LAYER)
            assert Status.FAIL not in _statuses(reports), table.label
            assert all(r.universe.endswith("stack pairs") for r in reports)


def test_stack_pairs_include_non_filters(z3):
    stacks = list(setfam.enumerate_stacks(3))
    filters = list(setfam.enumerate_filters(3))
    pairs = list(stack_universes(ClaimId.P3_2A, z3, stacks, filters))
    assert len(pairs) == len(stacks) ** 2
    assert any(not setfam.classify(u.F).is_filter for u in pairs)
    nested_f = list(stack_universes(ClaimId.P3_5A, z3, stacks, filters))
    assert nested_f and all(u.F.issubset(u.H) for u in nested_f)
    nested_g = list(stack_universes(ClaimId.P3_5B, z3, stacks, filters))
    assert nested_g and all(u.G.issubset(u.H) for u in nested_g)


def test_stack_pairs_reject_table_claims(z3):
    with pytest.raises(ValueError):
        list(stack_universes(ClaimId.P3_7A, z3, [], []))


# --- SUITE ---

def test_suite_order_2_all_pass():
    result = run_suite(SuiteConfig(max_order=2))
    summary = result.summary
    assert summary.exit_status == 0
    assert summary.tables == 9
    assert summary.first_counterexample == {}
    assert all(counts["fail"] == 0 for counts in summary.claims.values())
    assert set(summary.claims) == {c.value for c in ClaimId}


def test_suite_adds_stack_pair_reports():
    result = run_suite(SuiteConfig(max_order=2, claims=["P3_2"]))
    assert result.summary.exit_status == 0
    # 9 raw tables plus 6 relabeling classes, two claims each
    assert len(result.reports) == 30
    assert sum(r.universe.endswith("stack pairs") for r in result.reports) == 12
    filters_only = run_suite(SuiteConfig(max_order=2, claims=["P3_2"], stack_layer=False))
    assert len(filters_only.reports) == 18


def test_suite_filter_relative_claims_at_order_3():
    claims = ["P3_2", "P3_5", "L3_8", "T3_10", "T3_11", "C3_12", "T4_2", "P4_3", "T4_4", "C4_5"]
    result = run_suite(SuiteConfig(max_order=3, claims=claims, jobs=2))
    assert result.summary.exit_status == 0
    assert result.summary.tables == 1 + 8 + 113
    assert result.summary.first_counterexample == {}


def test_suite_family_statements_only():
    result = run_suite(SuiteConfig(claims=["P2_4"], prop_2_4_n=2))
    assert result.summary.tables == 0
    assert len(result.reports) == 8
    assert result.summary.exit_status == 0


def test_suite_is_independent_of_jobs():
    base = dict(max_order=2, claims=["T1_4", "L3_8a", "T4_4"])
    one = run_suite(SuiteConfig(jobs=1, **base))
    two = run_suite(SuiteConfig(jobs=2, **base))
    assert one.summary.to_json(stable=True) == two.summary.to_json(stable=True)
    assert [r.to_json(stable=True) for r in one.reports] == [r.to_json(stable=True) for r in two.reports]


def test_claim_selection_by_prefix():
    cfg = SuiteConfig(claims=["L3_8", "T3_10"])
    selected = cfg.selected()
    assert len(selected) == 11
    assert ClaimId.T3_10_BH in selected


@pytest.mark.parametrize("kwargs", [
    {"max_order": 4},
    {"max_order": 6, "dedupe": "iso"},
    {"claims": ["X9_9"]},
    {"claims": []},
    {"jobs": 0},
    {"colour": "blue"},
])
def test_suite_config_rejects_bad_values(kwargs):
    with pytest.raises(ValidationError):
        SuiteConfig(**kwargs)


# --- SEARCH ---

def test_search_order_2_is_pinned():
    report = search_question_4_6(2)
    assert report.outcome == "none_found"
    assert report.universes_examined == 14
    assert report.sets_examined == 54
    assert report.per_order["1"] == {"tables": 1, "universes": 1, "sets": 2}
    assert not report.partial
    assert report.candidate is None


def test_search_order_3_finds_nothing():
    report = search_question_4_6(3)
    assert report.outcome == "none_found"
    assert not report.partial
    assert report.universes_examined == 142
    assert report.sets_examined == 1078
    assert report.per_order == {
        "1": {"tables": 1, "universes": 1, "sets": 2},
        "2": {"tables": 5, "universes": 13, "sets": 52},
        "3": {"tables": 24, "universes": 128, "sets": 1024},
    }


def test_search_with_zero_budget():
    report = search_question_4_6(2, budget=0)
    assert report.outcome == "none_found"
    assert report.universes_examined == 0
    assert report.partial


def test_verify_candidate_rejects_ps_sets():
    payload = {"table": [[0, 1], [0, 1]], "F": [[0, 1]], "A": [0, 1], "mask": 3}
    assert not verify_candidate(payload)
