import cProfile
import pstats
import time

import numpy as np

from src.core.notions import is_rel_syndetic, is_rel_syndetic_literal, is_rel_thick, is_rel_thick_literal
from src.core.semigroup import enumerate_semigroups
from src.core.setfam import closure_of_antichain
from src.natwin.analysis import example_3_4_probe, find_ap, gap_bound
from src.natwin.window import WindowSet
from src.theorems.checks import check_prop_2_4
from src.theorems.search import search_question_4_6
from src.theorems.suite import SuiteConfig, run_suite


def random_deciders_n4(count: int = 100_000, seed: int = 7) -> int:
    """Relative deciders against the literal sweeps on random order-4 instances."""
    rng = np.random.default_rng(seed)
    tables = list(enumerate_semigroups(4, "iso"))
    for _ in range(count):
        table = tables[rng.integers(len(tables))]
        F, G = (closure_of_antichain(rng.integers(1, 16, size=rng.integers(1, 5)).tolist(), 4)
                for _ in range(2))
        A = int(rng.integers(16))
        if (is_rel_syndetic(table, A, F, G) != is_rel_syndetic_literal(table, A, F, G)
                or is_rel_thick(table, A, F, G) != is_rel_thick_literal(table, A, F, G)):
            raise AssertionError(f"decider mismatch on {table.label}, F={F}, G={G}, A={A}")
    return count


# (label, callable, time limit in seconds)
CASES = [
    ("family statements, stacks n=3 + all families n=2",
     lambda: run_suite(SuiteConfig(claims=["P2_4"])), 30.0),
    ("core notions, all tables of order <= 3",
     lambda: run_suite(SuiteConfig(max_order=3, claims=["T1_4", "C2_6", "P3_7"])), 120.0),
    ("filter-relative claims, all tables of order <= 3",
     lambda: run_suite(SuiteConfig(max_order=3, claims=["P3_2", "P3_5", "L3_8", "T3_10", "T3_11",
                                                         "C3_12", "T4_2", "P4_3", "T4_4", "C4_5"])), 600.0),
    ("evens window demo",
     lambda: (gap_bound(WindowSet.evens(200)), find_ap(WindowSet.evens(200), 9), example_3_4_probe(200, 20)),
     1.0),
    ("family statements, every family on four points",
     lambda: check_prop_2_4(3, brute_force_n=4), 120.0),
    ("relative deciders vs literal sweeps, 10^5 random order-4 instances", random_deciders_n4, 600.0),
    ("SZZ search, order <= 3", lambda: search_question_4_6(3), 60.0),
]


def run_benchmark():
    failures = 0
    for label, case, limit in CASES:
        print(f"Running {label}...")
        profiler = cProfile.Profile()
        profiler.enable()
        start_time = time.time()

        case()

        duration = time.time() - start_time
        profiler.disable()
        print(f"Total Duration: {duration:.4f} seconds")

        if duration < limit:
            print(f"PASS: under {limit:.0f}s.")
        else:
            print(f"FAIL: over {limit:.0f}s.")
            failures += 1
            stats = pstats.Stats(profiler).sort_stats('cumtime')
            stats.print_stats(20)
    return failures


if __name__ == "__main__":
    raise SystemExit(1 if run_benchmark() else 0)
