"""
Checkers: each runs a group of registered claims over a set of universes and
returns one CheckReport per claim.
"""
from __future__ import annotations

import itertools
from typing import Iterable, Optional, Sequence

from src import config
from src.core.errors import NotAFilterError, NotAStackError, SizeLimitError
from src.core.semigroup import CayleyTable
from src.core.setfam import (
    Family,
    brute_force_families,
    classify,
    enumerate_filters,
    enumerate_stacks,
    popcount,
)
from src.theorems.claims import CLAIMS, Scope, Universe, evaluate, stack_universes, table_universes
from src.theorems.reports import CheckReport, ClaimId, Status
from src.utils.log import get_logger
from src.utils.profiling import timed

logger = get_logger("CHECKS")

PROP_2_4 = [c for c in ClaimId if c.value.startswith("P2_4")]
THM_1_4 = [ClaimId.T1_4A, ClaimId.T1_4B, ClaimId.T1_4C]
COR_2_6 = [ClaimId.C2_6, ClaimId.C2_6_BHM]
PROP_3_2 = [ClaimId.P3_2A, ClaimId.P3_2B]
PROP_3_5 = [ClaimId.P3_5A, ClaimId.P3_5B, ClaimId.P3_5A_PRIME, ClaimId.P3_5B_PRIME]
PROP_3_7 = [ClaimId.P3_7A, ClaimId.P3_7B, ClaimId.P3_7C, ClaimId.P3_7D]
LEMMA_3_8 = [c for c in ClaimId if c.value.startswith("L3_8")]
THM_3_10 = [ClaimId.T3_10A, ClaimId.T3_10B, ClaimId.T3_10_BH]
COR_3_12 = [ClaimId.C3_12A, ClaimId.C3_12B, ClaimId.C3_12C, ClaimId.C3_12D]
SEC_4 = [ClaimId.T4_2, ClaimId.P4_3A, ClaimId.P4_3B, ClaimId.P4_3C, ClaimId.P4_3D,
         ClaimId.T4_4, ClaimId.C4_5]
STACK_LAYER = PROP_3_2 + PROP_3_5 + [ClaimId.T4_2]


def check_claim(claim_id: ClaimId, universes: Iterable[Universe], label: str) -> CheckReport:
    """Evaluate one claim over every universe; stops at the first failure."""
    passed = skipped = 0
    reason: Optional[str] = None
    witness = None
    with timed() as clock:
        for u in universes:
            out = evaluate(claim_id, u)
            if out.status is Status.SKIPPED:
                skipped += 1
                reason = reason or out.reason
                continue
            if out.status is Status.FAIL:
                logger.warning(f"{claim_id.value} fails on {u.describe()}")
                return CheckReport(claim=claim_id, universe=label, status=Status.FAIL,
                                   instances=passed + 1, skipped=skipped,
                                   counterexample=out.counterexample, elapsed=clock.elapsed)
            passed += 1
            if witness is None and out.witness is not None:
                witness = out.witness
    status = Status.PASS if passed else Status.SKIPPED
    return CheckReport(claim=claim_id, universe=label, status=status, instances=passed,
                       skipped=skipped, witness=witness,
                       reason=reason if status is Status.SKIPPED else None,
                       elapsed=clock.elapsed)


def _label(table: CayleyTable, **families: Family) -> str:
    parts = [f"table={table.label}"]
    parts += [f"{name}={fam.sets()}" for name, fam in families.items()]
    return "; ".join(parts)


def _require_filters(**families: Family) -> None:
    for name, fam in families.items():
        if not classify(fam).is_filter:
            raise NotAFilterError(f"{name} is not a proper filter: {fam!r}")


def _single(claims: Sequence[ClaimId], u: Universe, label: str) -> list[CheckReport]:
    return [check_claim(cid, [u], label) for cid in claims]


# --- PER-UNIVERSE CHECKERS ---

def check_thm_1_4(table: CayleyTable) -> list[CheckReport]:
    return _single(THM_1_4, Universe(table.n, table), _label(table))


def check_cor_2_6(table: CayleyTable) -> list[CheckReport]:
    return _single(COR_2_6, Universe(table.n, table), _label(table))


def check_prop_3_7(table: CayleyTable) -> list[CheckReport]:
    return _single(PROP_3_7, Universe(table.n, table), _label(table))


def check_prop_3_2(table: CayleyTable, F: Family, G: Family) -> list[CheckReport]:
    _require_filters(F=F, G=G)
    return _single(PROP_3_2, Universe(table.n, table, F, G), _label(table, F=F, G=G))


def check_prop_3_5(table: CayleyTable, F: Family, G: Family, H: Family) -> list[CheckReport]:
    """H plays the larger family: F ⊆ H for (a)/(a′), G ⊆ H for (b)/(b′)."""
    for name, fam in (("F", F), ("G", G), ("H", H)):
        if not classify(fam).is_stack:
            raise NotAStackError(f"{name} is not a stack: {fam!r}")
    return _single(PROP_3_5, Universe(table.n, table, F, G, H), _label(table, F=F, G=G, H=H))


def check_example_3_4(table: CayleyTable, F: Family) -> CheckReport:
    _require_filters(F=F)
    return check_claim(ClaimId.E3_4, [Universe(table.n, table, F)], _label(table, F=F))


def check_lemma_3_8(table: CayleyTable, F: Family, G: Family) -> list[CheckReport]:
    _require_filters(F=F, G=G)
    return _single(LEMMA_3_8, Universe(table.n, table, F, G), _label(table, F=F, G=G))


def check_thm_3_10(table: CayleyTable, F: Family, G: Family) -> list[CheckReport]:
    _require_filters(F=F, G=G)
    return _single(THM_3_10, Universe(table.n, table, F, G), _label(table, F=F, G=G))


def check_thm_3_11(table: CayleyTable, F: Family, G: Family, H: Family) -> CheckReport:
    _require_filters(F=F, G=G, H=H)
    return check_claim(ClaimId.T3_11, [Universe(table.n, table, F, G, H)], _label(table, F=F, G=G, H=H))


def check_cor_3_12(table: CayleyTable, F: Family) -> list[CheckReport]:
    _require_filters(F=F)
    return _single(COR_3_12, Universe(table.n, table, F), _label(table, F=F))


def check_sec4(table: CayleyTable, F: Family, G: Family) -> list[CheckReport]:
    """T4_2 needs stacks; the rest need proper filters and report skipped on their own hypotheses."""
    u = Universe(table.n, table, F, G)
    label = _label(table, F=F, G=G)
    reports = [check_claim(ClaimId.T4_2, [u], label)]
    _require_filters(F=F, G=G)
    reports += _single(SEC_4[1:], u, label)
    return reports


# --- SET-FAMILY CLAIMS ---

def _ground_universes(n: int, brute_force_n: int) -> list[Universe]:
    out = [Universe(n, F=F) for F in enumerate_stacks(n)]
    if n >= 3:
        # a stack equal to its own mesh that is not an ultrafilter
        out.append(Universe(n, F=Family.from_predicate(n, lambda a: popcount(a) >= 2)))
    out += [Universe(brute_force_n, F=F) for F in brute_force_families(brute_force_n)]
    return out


def _ground_pair_universes(n: int, brute_force_n: int) -> Iterable[Universe]:
    for size in sorted({n, brute_force_n}):
        if size > config.MAX_STACK_ENUM_N:
            continue
        stacks = list(enumerate_stacks(size))
        for F, G in itertools.product(stacks, repeat=2):
            yield Universe(size, F=F, G=G)


def check_prop_2_4(n: int, brute_force_n: int = config.BRUTE_FORCE_N_DEFAULT,
                   claims: Optional[Sequence[ClaimId]] = None) -> list[CheckReport]:
    """
    Statements (a)-(h) over every stack on n points, plus every family on
    brute_force_n points (non-stacks are skipped by the stack hypothesis).
    """
    if not 1 <= n <= config.PROP_2_4_MAX_N:
        raise SizeLimitError(f"family statements are checked for 1 <= n <= {config.PROP_2_4_MAX_N}, got {n}")
    selected = [c for c in PROP_2_4 if claims is None or c in claims]
    single = _ground_universes(n, brute_force_n)
    label = f"stacks n={n}; all families n={brute_force_n}"
    reports = []
    for cid in selected:
        if CLAIMS[cid].scope is Scope.GROUND_PAIR:
            reports.append(check_claim(cid, _ground_pair_universes(n, brute_force_n),
                                       f"stack pairs n={sorted({n, brute_force_n})}"))
        else:
            reports.append(check_claim(cid, single, label))
    logger.info(f"family statements at n={n}: {[r.status.value for r in reports]}")
    return reports


# --- SUITE WORKER ---

def check_table(table: CayleyTable, claims: Sequence[ClaimId]) -> list[CheckReport]:
    """Every table-level claim in `claims` over this table and all of its filters."""
    filters = list(enumerate_filters(table.n))
    return [check_claim(cid, table_universes(cid, table, filters), _label(table)) for cid in claims]


def check_stack_pairs(table: CayleyTable, claims: Sequence[ClaimId]) -> list[CheckReport]:
    """The claims of STACK_LAYER in `claims` over every pair of stacks on the table."""
    if table.n > config.MAX_STACK_ENUM_N:
        raise SizeLimitError(f"stack pairs need n <= {config.MAX_STACK_ENUM_N}, got {table.n}")
    stacks = list(enumerate_stacks(table.n))
    filters = list(enumerate_filters(table.n))
    label = f"{_label(table)}; stack pairs"
    return [check_claim(cid, stack_universes(cid, table, stacks, filters), label)
            for cid in claims if cid in STACK_LAYER]
