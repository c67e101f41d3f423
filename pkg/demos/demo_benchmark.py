#!/usr/bin/env python3
"""Small seeded benchmark: recovery error across methods and sample sizes.

Ten replicates per cell keep this quick; the shipped defaults use 100.  Rows
are written the same way `nicecorr simulate` writes its CSV, so the summary
here matches what the CLI would report.
"""

from nicecorr import SyntheticSpec, run_benchmark, summarize_benchmark


def main():
    for n in (25, 50):
        spec = SyntheticSpec(n=n)
        result = run_benchmark(spec, replicates=10, perm_iters=300)
        print(f"=== n = {n} (10 replicates) ===")
        for row in summarize_benchmark(result):
            print(
                f"  {row['method']:<10} T={str(row['tuning']):<5}"
                f"  FP {row['fp_med']:6.1f} ({row['fp_q25']:.0f}-{row['fp_q75']:.0f})"
                f"  FN {row['fn_med']:5.1f} ({row['fn_q25']:.0f}-{row['fn_q75']:.0f})"
            )


if __name__ == "__main__":
    main()
