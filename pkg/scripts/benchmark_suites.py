import os
import sys
import time

import pandas as pd

sys.path.append(os.getcwd())

from config import DEFAULT_SEED
from reporting.tables import build_tables
from reporting.verification import suite_registry

# Time limits per suite, seconds
TIME_LIMITS = {
    "tables": 5.0,
    "orbit-recovery": 60.0,
    "discreteness": 30.0,
    "stabilizer": 30.0,
    "exact-sequence": 5.0,
    "census": 10.0,
    "curve-topology": 1.0,
}


def benchmark(samples: int = 200):
    print(f"VERIFICATION BENCHMARK (samples={samples}, seed={DEFAULT_SEED})")
    rows = []

    start = time.perf_counter()
    report = build_tables()
    elapsed = time.perf_counter() - start
    rows.append({"suite": "tables", "checks": len(report.point_rows) + len(report.pi0_entries),
                 "passed": True, "seconds": elapsed})

    for name, runner in suite_registry(samples, DEFAULT_SEED, 1e-8).items():
        print(f"\n[{name}]")
        result = runner()
        print(f"{result.checks} checks in {result.seconds:.3f}s, {'PASS' if result.passed else 'FAIL'}")
        rows.append({"suite": name, "checks": result.checks, "passed": result.passed, "seconds": result.seconds})

    frame = pd.DataFrame(rows)
    frame["limit"] = frame["suite"].map(TIME_LIMITS)
    frame["within limit"] = frame["seconds"] <= frame["limit"]
    print()
    print(frame.to_string(index=False))


if __name__ == "__main__":
    benchmark(int(sys.argv[1]) if len(sys.argv) > 1 else 200)
