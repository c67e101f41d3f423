"""End-to-end estimation: correlations -> mixture -> communities -> threshold."""

import time
from dataclasses import dataclass

import numpy as np

from .corr import sample_correlation, standardize, z_matrix
from .detect import DetectConfig, permutation_test, select_partition, trim_significant
from .errors import InputError
from .mixture import fit_mixture, weight_matrix
from .threshold import DEFAULT_T, estimate_odds, nice_threshold

WEIGHT_MODES = ("posterior", "raw_z")


@dataclass(frozen=True)
class PipelineResult:
    data: object
    corr: object
    zm: object
    fit: object
    weights: object
    partition: object
    odds: object  # None when detect_only
    estimate: object  # None when detect_only


def raw_z_weights(zm):
    """Fallback weight mode: Fisher-Z values clipped into [0, 1], zero diagonal."""
    w = np.clip(zm.values, 0.0, 1.0)
    np.fill_diagonal(w, 0.0)
    return w


def run_pipeline(
    data,
    *,
    lambda0=0.5,
    T=DEFAULT_T,
    c_max=None,
    kmeans_restarts=50,
    perm_iters=10000,
    alpha=0.05,
    null_mode="theoretical",
    weight_mode="posterior",
    stat_orientation="complement",
    embed_mode="c_minus_1",
    standardize_input=False,
    seed=0,
    detect_only=False,
    corr=None,
    zm=None,
    fit=None,
    on_stage=None,
):
    """Run the full two-step estimator on one data matrix.

    ``corr``/``zm``/``fit`` may be passed in when already computed (the
    benchmark shares them across comparator methods); anything omitted is
    derived from ``data``.  ``on_stage(name, elapsed_ms, **info)`` gets called
    after each stage when provided.
    """
    if weight_mode not in WEIGHT_MODES:
        raise InputError(f"weight_mode must be one of {WEIGHT_MODES}, got {weight_mode!r}")

    def stage(name, t0, **info):
        if on_stage is not None:
            on_stage(name, int(round((time.perf_counter() - t0) * 1000.0)), **info)

    if standardize_input:
        t0 = time.perf_counter()
        data = standardize(data)
        stage("standardize", t0)

    if corr is None:
        t0 = time.perf_counter()
        corr = sample_correlation(data)
        stage("correlation", t0, p=corr.values.shape[0], n=corr.n)
    if zm is None:
        t0 = time.perf_counter()
        zm = z_matrix(corr)
        stage("fisher_z", t0)
    if fit is None:
        t0 = time.perf_counter()
        fit = fit_mixture(zm.upper_values(), n=corr.n, null_mode=null_mode)
        stage("mixture", t0, pi0=fit.pi0)

    t0 = time.perf_counter()
    if weight_mode == "posterior":
        weights = weight_matrix(zm, fit)
    else:
        weights = raw_z_weights(zm)
    stage("weights", t0, mode=weight_mode)

    p = weights.shape[0]
    c_grid = None
    if c_max is not None:
        c_max = int(c_max)
        if c_max < 2:
            raise InputError(f"c_max must be >= 2, got {c_max}")
        c_grid = range(2, min(c_max, p - 1) + 1)
    cfg = DetectConfig(
        lambda0=lambda0,
        c_grid=c_grid,
        kmeans_restarts=kmeans_restarts,
        perm_iters=perm_iters,
        alpha=alpha,
        seed=seed,
        stat_orientation=stat_orientation,
        embed_mode=embed_mode,
    )
    t0 = time.perf_counter()
    partition = select_partition(weights, cfg)
    stage("partition", t0, C=partition.C, criterion=partition.criterion_value)
    t0 = time.perf_counter()
    partition = permutation_test(weights, partition, cfg)
    stage("screen", t0, significant=len(partition.significant))
    t0 = time.perf_counter()
    partition = trim_significant(weights, partition, lambda0)
    stage("trim", t0, C=partition.C)

    if detect_only:
        return PipelineResult(data, corr, zm, fit, weights, partition, None, None)

    t0 = time.perf_counter()
    odds = estimate_odds(zm, partition, fit)
    stage("odds", t0, pi0_in=odds.pi0_in, pi0_out=odds.pi0_out)
    t0 = time.perf_counter()
    estimate = nice_threshold(corr, zm, partition, fit, odds, T=T)
    counts = estimate.kept_counts()
    stage("threshold", t0, kept=counts["kept_in"] + counts["kept_out"])
    return PipelineResult(data, corr, zm, fit, weights, partition, odds, estimate)
