"""Run the acceptance checks outside pytest and print one line per criterion.

Exit status is 0 when every criterion except the documented oracle one passes.
"""
import argparse
import os
import sys
import time
from dataclasses import dataclass

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "tests"))

import test_acceptance as acc  # noqa: E402

# the oracle criterion is known to fail on relations with finite cliques only
EXPECTED_FAIL = {9}


@dataclass
class AcceptanceConfig:
    only: tuple = ()
    timings: bool = True


def run(cfg: AcceptanceConfig) -> int:
    failed = []
    for n, check in enumerate(acc.CHECKS, 1):
        if cfg.only and n not in cfg.only:
            continue
        t = time.perf_counter()
        ok = acc.record(n, *check())
        if cfg.timings:
            print(f"  ({time.perf_counter() - t:.1f} s)")
        if not ok and n not in EXPECTED_FAIL:
            failed.append(n)
    return 1 if failed else 0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--only", type=int, nargs="*", default=[], help="criterion numbers to run")
    ap.add_argument("--no-timings", action="store_true")
    args = ap.parse_args()
    sys.exit(run(AcceptanceConfig(tuple(args.only), not args.no_timings)))


if __name__ == "__main__":
    main()
