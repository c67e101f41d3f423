"""Seeded synthetic benchmark: planted-clique data, recovery scoring, comparators.

Data model: a block-constant correlation matrix with unit diagonal, ``rho``
inside each planted clique and 0 elsewhere, sampled as i.i.d. multivariate
normal rows.  Node labels are optionally shuffled; the shuffle is applied to
the data columns and the true edge skeleton consistently, so recovery scores
are comparable with the shuffle on or off.
"""

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .corr import DataMatrix, sample_correlation, z_matrix
from .errors import InputError
from .pipeline import run_pipeline
from .threshold import DEFAULT_T, ThresholdedEstimate, magnitude_threshold, universal_threshold
from .mixture import fit_mixture

METHODS = ("nice", "universal", "magnitude")
BENCH_PERM_ITERS = 1000  # lighter than the interactive default; per-replicate screen
DEFAULT_T_GRID = (DEFAULT_T,)

# spawn_key namespaces (k-means uses 1, permutations 2)
_NS_REPLICATE = 3
_NS_DATA = 4


@dataclass(frozen=True)
class SyntheticSpec:
    """Planted-clique generator settings."""

    p: int = 100
    clique_sizes: tuple = (15, 10)
    rho: float = 0.5
    n: int = 25
    shuffle_nodes: bool = True
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "clique_sizes", tuple(int(s) for s in self.clique_sizes))
        if self.p < 3:
            raise InputError(f"p must be at least 3, got {self.p}")
        if self.n < 4:
            raise InputError(f"n must be at least 4, got {self.n}")
        if not self.clique_sizes:
            raise InputError("need at least one planted clique")
        if any(s < 2 for s in self.clique_sizes):
            raise InputError(f"clique sizes must be >= 2, got {self.clique_sizes}")
        if sum(self.clique_sizes) > self.p:
            raise InputError(
                f"clique sizes sum to {sum(self.clique_sizes)} > p = {self.p}"
            )
        rho = float(self.rho)
        if not np.isfinite(rho) or not -1.0 < rho < 1.0:
            raise InputError(f"rho must be in (-1, 1), got {self.rho}")
        if rho == 0.0:
            raise InputError("rho must be nonzero: planted edges need signal")
        # block-constant correlation is PD iff rho > -1/(s-1) for each block
        smax = max(self.clique_sizes)
        if smax > 1 and rho <= -1.0 / (smax - 1):
            raise InputError(
                f"rho = {rho} makes a size-{smax} block non positive definite "
                f"(needs rho > {-1.0 / (smax - 1):.6g})"
            )
        object.__setattr__(self, "rho", rho)
        seed = int(self.seed)
        if not 0 <= seed < 2**64:
            raise InputError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        object.__setattr__(self, "seed", seed)

    @property
    def n_true_edges(self):
        return sum(s * (s - 1) // 2 for s in self.clique_sizes)

    @property
    def n_null_edges(self):
        return self.p * (self.p - 1) // 2 - self.n_true_edges


def block_sigma(spec):
    """Population correlation matrix before any node shuffle."""
    sigma = np.eye(spec.p)
    lo = 0
    for s in spec.clique_sizes:
        sigma[lo : lo + s, lo : lo + s] = spec.rho
        lo += s
    np.fill_diagonal(sigma, 1.0)
    return sigma


def generate_synthetic(spec):
    """Sample one data matrix plus its true edge skeleton.

    Returns (DataMatrix with n rows, p x p binary matrix marking planted
    edges).  Uses two independent seeded streams so the same seed yields the
    same underlying sample whether or not the nodes get shuffled.
    """
    sigma = block_sigma(spec)
    true = (sigma != 0).astype(np.int8)
    np.fill_diagonal(true, 0)

    data_rng = np.random.default_rng(
        np.random.SeedSequence(spec.seed, spawn_key=(_NS_DATA, 0))
    )
    x = data_rng.multivariate_normal(
        np.zeros(spec.p), sigma, size=spec.n, method="cholesky"
    )
    if spec.shuffle_nodes:
        shuffle_rng = np.random.default_rng(
            np.random.SeedSequence(spec.seed, spawn_key=(_NS_DATA, 1))
        )
        perm = shuffle_rng.permutation(spec.p)
        x = x[:, perm]
        true = true[np.ix_(perm, perm)]
    return DataMatrix(x), true


def shuffled_sigma(spec, true_edges):
    """Population matrix in the (possibly shuffled) node order of a sample."""
    sigma = np.eye(spec.p) + spec.rho * np.asarray(true_edges, dtype=float)
    return sigma


def score_recovery(estimate, true_edges):
    """(false positives, false negatives) over unordered node pairs."""
    if isinstance(estimate, ThresholdedEstimate):
        edges = estimate.edges
    else:
        edges = np.asarray(estimate)
    true = np.asarray(true_edges)
    if edges.shape != true.shape or edges.ndim != 2 or edges.shape[0] != edges.shape[1]:
        raise InputError(
            f"shape mismatch: estimate {edges.shape} vs true edges {true.shape}"
        )
    iu = np.triu_indices(edges.shape[0], k=1)
    got = edges[iu] != 0
    want = true[iu] != 0
    fp = int(np.count_nonzero(got & ~want))
    fn = int(np.count_nonzero(~got & want))
    return fp, fn


@dataclass(frozen=True)
class BenchRow:
    method: str
    tuning: object  # float, or "none" for the self-tuned pipeline
    replicate: int
    fp: int
    fn: int
    runtime_ms: int


@dataclass(frozen=True)
class BenchResult:
    spec: SyntheticSpec
    rows: tuple

    def for_method(self, method):
        return tuple(r for r in self.rows if r.method == method)


def _check_methods(methods):
    methods = tuple(methods)
    bad = [m for m in methods if m not in METHODS]
    if bad:
        raise InputError(f"unknown methods {bad}; choose from {list(METHODS)}")
    if not methods:
        raise InputError("need at least one method")
    return methods


def _replicate_seeds(spec, rep):
    words = np.random.SeedSequence(
        spec.seed, spawn_key=(_NS_REPLICATE, rep)
    ).generate_state(2, np.uint64)
    return int(words[0]), int(words[1])


def run_replicate(spec, rep, methods=METHODS, T_grid=DEFAULT_T_GRID, perm_iters=BENCH_PERM_ITERS):
    """All requested method rows for one seeded replicate."""
    methods = _check_methods(methods)
    data_seed, detect_seed = _replicate_seeds(spec, rep)
    data, true = generate_synthetic(replace(spec, seed=data_seed))

    t0 = time.perf_counter()
    corr = sample_correlation(data)
    zm = z_matrix(corr)
    t_corr = time.perf_counter() - t0

    fit = None
    t_fit = 0.0
    if "nice" in methods or "universal" in methods:
        t0 = time.perf_counter()
        fit = fit_mixture(zm.upper_values(), n=spec.n)
        t_fit = time.perf_counter() - t0

    rows = []
    if "nice" in methods:
        t0 = time.perf_counter()
        res = run_pipeline(
            data, corr=corr, zm=zm, fit=fit, perm_iters=perm_iters, seed=detect_seed
        )
        dt = time.perf_counter() - t0
        fp, fn = score_recovery(res.estimate, true)
        rows.append(
            BenchRow("nice", "none", rep, fp, fn, _ms(t_corr + t_fit + dt))
        )
    if "universal" in methods:
        for T in T_grid:
            t0 = time.perf_counter()
            est = universal_threshold(corr, zm, fit, T=float(T))
            dt = time.perf_counter() - t0
            fp, fn = score_recovery(est, true)
            rows.append(
                BenchRow("universal", float(T), rep, fp, fn, _ms(t_corr + t_fit + dt))
            )
    if "magnitude" in methods:
        for T in T_grid:
            cutoff = float(np.tanh(float(T) / np.sqrt(spec.n)))
            t0 = time.perf_counter()
            est = magnitude_threshold(corr, cutoff)
            dt = time.perf_counter() - t0
            fp, fn = score_recovery(est, true)
            rows.append(
                BenchRow("magnitude", float(T), rep, fp, fn, _ms(t_corr + dt))
            )
    return rows


def _ms(seconds):
    return int(round(seconds * 1000.0))


def _run_replicate_args(args):
    return run_replicate(*args)


def run_benchmark(
    spec,
    methods=METHODS,
    replicates=100,
    T_grid=DEFAULT_T_GRID,
    perm_iters=BENCH_PERM_ITERS,
    threads=1,
):
    """Repeat generate -> estimate -> score; one BenchRow per (method, tuning, replicate)."""
    methods = _check_methods(methods)
    replicates = int(replicates)
    if replicates < 1:
        raise InputError(f"replicates must be >= 1, got {replicates}")
    T_grid = tuple(float(t) for t in T_grid)
    if not T_grid:
        raise InputError("T_grid must not be empty")
    if any(not np.isfinite(t) or t <= 0 for t in T_grid):
        raise InputError(f"T_grid values must be positive and finite, got {T_grid}")

    jobs = [(spec, rep, methods, T_grid, perm_iters) for rep in range(replicates)]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=int(threads)) as pool:
            per_rep = list(pool.map(_run_replicate_args, jobs))
    else:
        per_rep = [run_replicate(*job) for job in jobs]
    rows = [row for rep_rows in per_rep for row in rep_rows]
    return BenchResult(spec=spec, rows=tuple(rows))


def summarize_benchmark(result):
    """Median and quartiles of FP/FN per (method, tuning), linear interpolation."""
    groups = {}
    for row in result.rows:
        groups.setdefault((row.method, row.tuning), []).append(row)

    def sort_key(key):
        method, tuning = key
        rank = METHODS.index(method)
        return (rank, -1.0 if tuning == "none" else float(tuning))

    out = []
    for key in sorted(groups, key=sort_key):
        rows = groups[key]
        fp = np.array([r.fp for r in rows], dtype=float)
        fn = np.array([r.fn for r in rows], dtype=float)
        fp_q = np.quantile(fp, [0.25, 0.5, 0.75])
        fn_q = np.quantile(fn, [0.25, 0.5, 0.75])
        out.append(
            {
                "method": key[0],
                "tuning": key[1],
                "fp_med": float(fp_q[1]),
                "fp_q25": float(fp_q[0]),
                "fp_q75": float(fp_q[2]),
                "fn_med": float(fn_q[1]),
                "fn_q25": float(fn_q[0]),
                "fn_q75": float(fn_q[2]),
            }
        )
    return out
