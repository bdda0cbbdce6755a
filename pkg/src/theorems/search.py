"""
Finite search for a set that meets the SZZ condition for F but is not in PS(F,F).

Order of the scan: semigroup order ascending (one table per relabeling orbit),
then filter bases with larger bases first, keeping only subsemigroup bases,
then A by popcount and mask. Only finite universes are examined.
"""
from __future__ import annotations

from typing import Any, Optional

from src import config
from src.core import notions
from src.core.errors import SizeLimitError
from src.core.notions import rel_ps_family, szz_family, szz_witness
from src.core.semigroup import CayleyTable, enumerate_semigroups, is_subsemigroup
from src.core.setfam import Family, elements, popcount, principal_filter
from src.theorems.reports import SearchReport
from src.utils.log import get_logger
from src.utils.profiling import timed

logger = get_logger("SEARCH")


def _bases(n: int) -> list[int]:
    return sorted(range(1, 1 << n), key=lambda b: (-popcount(b), b))


def _sets_in_order(n: int) -> list[int]:
    return sorted(range(1 << n), key=lambda a: (popcount(a), a))


def _candidate(table: CayleyTable, F: Family, A: int) -> dict[str, Any]:
    return {
        "table": [list(row) for row in table.rows],
        "F": F.sets(),
        "A": elements(A),
        "mask": A,
        "y": szz_witness(table, A, F),
    }


def verify_candidate(payload: dict[str, Any]) -> bool:
    """Recompute from scratch: A meets the SZZ condition for F and A ∉ PS(F,F)."""
    notions.clear_caches()
    table = CayleyTable.from_rows(payload["table"])
    F = Family.from_sets(table.n, payload["F"])
    A = int(payload["mask"])
    return szz_witness(table, A, F) is not None and A not in rel_ps_family(table, F, F)


def search_question_4_6(max_order: int, budget: Optional[int] = None) -> SearchReport:
    """budget caps the number of (table, F) universes examined."""
    if not 1 <= max_order <= config.MAX_SEARCH_ORDER:
        raise SizeLimitError(f"search supports 1 <= max_order <= {config.MAX_SEARCH_ORDER}, got {max_order}")
    if budget is not None and budget < 0:
        raise ValueError(f"budget must be >= 0, got {budget}")

    universes = sets = 0
    per_order: dict[str, dict[str, int]] = {}
    partial = False
    candidate = None

    with timed() as clock:
        for order in range(1, max_order + 1):
            stats = {"tables": 0, "universes": 0, "sets": 0}
            per_order[str(order)] = stats
            bases = _bases(order)
            order_sets = _sets_in_order(order)
            for table in enumerate_semigroups(order, "iso"):
                stats["tables"] += 1
                for base in bases:
                    if not is_subsemigroup(table, base):
                        continue
                    if budget is not None and universes >= budget:
                        partial = True
                        break
                    F = principal_filter(base, order)
                    universes += 1
                    stats["universes"] += 1
                    gap = szz_family(table, F).bits & ~rel_ps_family(table, F, F).bits
                    if not gap:
                        sets += len(order_sets)
                        stats["sets"] += len(order_sets)
                        continue
                    for pos, A in enumerate(order_sets):
                        if (gap >> A) & 1:
                            sets += pos + 1
                            stats["sets"] += pos + 1
                            candidate = _candidate(table, F, A)
                            break
                    break
                if partial or candidate is not None:
                    break
            logger.info(f"order {order}: {stats}")
            if partial or candidate is not None:
                break

    if candidate is not None:
        logger.warning(f"candidate found: {candidate}")
    return SearchReport(
        max_order=max_order,
        budget=budget,
        universes_examined=universes,
        sets_examined=sets,
        per_order=per_order,
        partial=partial,
        outcome="candidate" if candidate is not None else "none_found",
        candidate=candidate,
        elapsed=clock.elapsed,
    )
