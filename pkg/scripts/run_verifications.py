#!/usr/bin/env python3
"""Run the randomized verification suites over every catalog example."""

import argparse
import json
import time

from symkring.catalog import EXAMPLES, example_spec
from symkring.fans import build_positive_fan
from symkring.root_data import build_symmetric_datum
from symkring.verify import run_full_verification


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument(
        "--examples",
        nargs="*",
        default=sorted(EXAMPLES),
        help="catalog names (default: all)",
    )
    args = parser.parse_args()

    failures = 0
    for name in args.examples:
        spec = example_spec(name)
        datum = build_symmetric_datum(spec)
        fan = build_positive_fan(datum, spec.get("subdivision"))
        t0 = time.monotonic()
        for suite, report in run_full_verification(datum, fan, args.seed):
            status = "PASS" if report["passed"] else "FAIL"
            if not report["passed"]:
                failures += 1
            print(f"[{status}] {name} / {suite}: {json.dumps(report, sort_keys=True)}")
        print(f"       {name}: {time.monotonic() - t0:.1f}s")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
