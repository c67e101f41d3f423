"""Deterministic CSV/JSON artifact writers behind the command-line tools.

Every writer here produces byte-identical output for identical inputs: fixed
float formatting (shortest round-trip via ``repr``), sorted JSON keys, and
``\\n`` newlines.  Infinities are legal values (``theta = inf`` whenever a
stratum's null fraction hits 1) but strict JSON has no literal for them, so
non-finite floats serialize as the strings ``"inf"`` / ``"-inf"`` / ``"nan"``.
"""

from __future__ import annotations

import csv
import json

import numpy as np

from .errors import InputError

__all__ = [
    "write_matrix_csv",
    "write_edges_csv",
    "partition_payload",
    "write_partition_json",
    "write_mixture_json",
    "summary_payload",
    "write_summary_json",
    "write_heatmap_csvs",
    "write_bench_csv",
    "write_bench_summary_csv",
    "write_json",
]


def _fmt(v) -> str:
    # repr of a python float is the shortest string that round-trips
    return repr(float(v))


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        v = float(x)
        if np.isfinite(v):
            return v
        return "nan" if np.isnan(v) else ("inf" if v > 0 else "-inf")
    return x


def write_json(path, payload) -> None:
    text = json.dumps(_jsonable(payload), sort_keys=True, indent=2, allow_nan=False)
    with open(path, "w", newline="\n") as fh:
        fh.write(text + "\n")


def _open_csv(path):
    return open(path, "w", newline="\n")


def write_matrix_csv(path, values, names) -> None:
    """Square matrix with row/column labels; cell order follows ``names``."""
    values = np.asarray(values, dtype=float)
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise InputError(f"matrix CSV needs a square matrix, got shape {values.shape}")
    if len(names) != values.shape[0]:
        raise InputError(f"got {len(names)} labels for {values.shape[0]} rows")
    with _open_csv(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([""] + list(names))
        for label, row in zip(names, values):
            w.writerow([label] + [_fmt(v) for v in row])


def write_edges_csv(path, corr, zm, estimate, names) -> None:
    """One row per unordered pair (upper-triangle order): i,j,r,z,BF,stratum,kept."""
    p = corr.p
    bf = estimate.bayes_factors
    with _open_csv(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["i", "j", "r", "z", "BF", "stratum", "kept"])
        for i in range(p):
            for j in range(i + 1, p):
                w.writerow(
                    [
                        names[i],
                        names[j],
                        _fmt(corr.values[i, j]),
                        _fmt(zm.values[i, j]),
                        "" if bf is None else _fmt(bf[i, j]),
                        "in" if estimate.in_mask[i, j] else "out",
                        int(estimate.edges[i, j]),
                    ]
                )


def partition_payload(partition, names) -> dict:
    """JSON-ready view of a Partition, node ids mapped to column names."""
    if partition.p != len(names):
        raise InputError(f"partition covers {partition.p} nodes but got {len(names)} names")
    return {
        "C": partition.C,
        "lambda0": partition.lambda0,
        "communities": [[names[i] for i in comm] for comm in partition.communities],
        "singletons": [names[i] for i in partition.singletons],
        "significant": list(partition.significant),
        "criterion": partition.criterion_value,
        "perm": {
            "M": partition.perm_iters,
            "alpha": partition.alpha,
            "p_values": None if partition.p_values is None else list(partition.p_values),
        },
    }


def write_partition_json(path, partition, names) -> None:
    write_json(path, partition_payload(partition, names))


def write_mixture_json(path, fit) -> None:
    write_json(path, fit.to_dict())


def summary_payload(estimate) -> dict:
    """Threshold summary: T, the stratum odds, and kept/dropped counts per stratum."""
    odds = estimate.odds
    return {
        "T": estimate.T,
        "odds": None
        if odds is None
        else {
            "theta_in": odds.theta_in,
            "theta_out": odds.theta_out,
            "theta_all": odds.theta_all,
            "pi0_in": odds.pi0_in,
            "pi0_out": odds.pi0_out,
            "pi0_all": odds.pi0_all,
        },
        "counts": estimate.kept_counts(),
    }


def write_summary_json(path, estimate) -> None:
    write_json(path, summary_payload(estimate))


def community_order(partition) -> list[int]:
    """Node order for block-diagonal heatmaps: communities first, then singletons."""
    order = [i for comm in partition.communities for i in comm]
    order += list(partition.singletons)
    return order


def write_heatmap_csvs(weights_path, corr_path, weights, corr, partition, names) -> None:
    """Plot-ready W and R-hat matrices with rows/columns permuted community-first."""
    order = community_order(partition)
    idx = np.ix_(order, order)
    labels = [names[i] for i in order]
    write_matrix_csv(weights_path, np.asarray(weights)[idx], labels)
    write_matrix_csv(corr_path, corr.values[idx], labels)


def _tuning_label(tuning) -> str:
    # Table-1 style: the self-tuned row prints "None", comparators print T
    return "None" if tuning == "none" else f"{float(tuning):g}"


def write_bench_csv(path, result) -> None:
    with _open_csv(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["method", "tuning", "replicate", "fp", "fn", "runtime_ms"])
        for row in result.rows:
            w.writerow(
                [
                    row.method,
                    _tuning_label(row.tuning),
                    row.replicate,
                    row.fp,
                    row.fn,
                    f"{row.runtime_ms:.3f}",
                ]
            )


def write_bench_summary_csv(path, summary_rows) -> None:
    cols = ["fp_med", "fp_q25", "fp_q75", "fn_med", "fn_q25", "fn_q75"]
    with _open_csv(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["method", "tuning"] + cols)
        for row in summary_rows:
            w.writerow(
                [row["method"], _tuning_label(row["tuning"])] + [f"{row[c]:g}" for c in cols]
            )
