import os
import sys
import time

# Add repo root to path
# Assuming script is in src/scripts/
current_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.append(os.path.dirname(os.path.dirname(current_dir)))

from src import config
from src.ingestion.loader import save_window
from src.natwin.analysis import example_3_4_probe, find_ap, gap_bound
from src.natwin.window import WindowSet
from src.theorems.suite import SuiteConfig, run_suite
from src.utils.log import setup_logging


def main():
    setup_logging("INFO")
    start_time = time.time()
    print("=== sgsize quick demo ===")

    # 1. Windows
    evens = WindowSet.evens(200)
    print(f"[DEMO] evens in [1,200]: gap bound {gap_bound(evens)}, 9-term AP {find_ap(evens, 9)}")
    probe = example_3_4_probe(200, 20)
    print(f"[DEMO] evens probe (m=20): {'passed' if probe['passed'] else 'FAILED'}")

    os.makedirs(config.OUTPUT_DIR, exist_ok=True)
    out_path = os.path.join(config.OUTPUT_DIR, "evens_200.rle")
    save_window(evens, out_path)
    print(f"[DEMO] window written to {out_path}")

    # 2. Claims over every table of order <= 2
    result = run_suite(SuiteConfig(max_order=2))
    summary = result.summary
    failing = [c for c, counts in summary.claims.items() if counts["fail"]]
    print(f"[DEMO] {summary.reports} reports over {summary.tables} tables; "
          f"{'no failures' if not failing else 'failures: ' + ', '.join(failing)}")

    print(f"=== done in {time.time() - start_time:.2f}s ===")
    return summary.exit_status


if __name__ == "__main__":
    sys.exit(main())
