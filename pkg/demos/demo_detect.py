#!/usr/bin/env python3
"""Community detection end to end on a planted two-clique design.

Runs the detection half of the pipeline only (no thresholding): mixture fit,
posterior weights, spectral partition selection, then the permutation screen.
Prints which communities survive and how they line up with the planted cliques.
"""

import numpy as np

from nicecorr import SyntheticSpec, generate_synthetic, run_pipeline


def main():
    spec = SyntheticSpec(p=80, clique_sizes=(14, 9), rho=0.7, n=100, seed=3)
    data, truth = generate_synthetic(spec)

    stages = []
    res = run_pipeline(
        data,
        detect_only=True,
        perm_iters=500,
        seed=3,
        on_stage=lambda name, ms, **info: stages.append((name, ms)),
    )
    part = res.partition

    print(f"selected C = {part.C} (criterion = {part.criterion_value:.2f})")
    for i, comm in enumerate(part.communities):
        flag = "significant" if i in part.significant else f"p = {part.p_values[i]:.3f}"
        print(f"  community {i}: {len(comm):3d} nodes   [{flag}]")

    # Planted cliques occupy the first 14 and next 9 node slots before the
    # generator shuffles; recover their positions from the edge mask instead.
    deg = truth.sum(axis=1)
    planted = [set(np.flatnonzero(deg == k - 1)) for k in spec.clique_sizes]
    found = [set(part.communities[i]) for i in part.significant]
    for k, clique in zip(spec.clique_sizes, planted):
        hit = any(clique == f for f in found)
        print(f"planted {k}-clique recovered exactly: {hit}")

    print("stage timings:", ", ".join(f"{n} {ms}ms" for n, ms in stages))


if __name__ == "__main__":
    main()
