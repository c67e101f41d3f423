"""Latent-topology detection on a weight matrix.

The detector runs in four stages:

1. RatioCut spectral clustering of the weight matrix (unnormalized Laplacian,
   eigenvectors 2..C, seeded restarted k-means) for every candidate cluster
   count C.
2. Grid search over C scored by the quality-quantity criterion
   sum_c S_c^(1-lambda0) * (S_c / |E_c|)^lambda0, which trades within-cluster
   weight mass against cluster edge count; singleton clusters score 0.
3. A max-statistic permutation screen: every multi-node cluster's weight sum
   is recomputed over uniformly permuted weight matrices, and family-wise
   significance is decided through the null distribution of the smallest
   per-cluster permutation p-value, so one shared reference calibrates
   clusters of every size.
4. Purification of the significant clusters (merge split halves, peel
   glued-on outsiders) so downstream per-stratum decisions see clean node
   sets; see :func:`trim_significant`.

All three stages canonicalize node order internally (by weighted degree), so
relabeling the nodes of W yields the same communities up to the relabeling —
downstream edge decisions are invariant under node shuffles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.linalg import eigh
from scipy.special import gammaincc
from scipy.stats import rankdata

from ._kmeans import best_kmeans
from .errors import InputError, NumericError

_NS_PERM = 2  # spawn_key namespace for permutation streams (k-means uses 1)

DEGENERATE_TOL = 1e-6  # all weights below this: nothing to detect
WEIGHT_CLIP = 1e-12  # weights pulled into [WEIGHT_CLIP, 1-WEIGHT_CLIP] before logs
STAT_CAP = 700.0  # -log of an underflowed tail

C_GRID_CAP = 200

ORIENTATIONS = ("as_printed", "complement")
EMBED_MODES = ("c_minus_1", "c")


@dataclass(frozen=True)
class DetectConfig:
    """Knobs for detection. c_grid=None means 2..min(p-1, 200)."""

    lambda0: float = 0.5
    c_grid: tuple[int, ...] | None = None
    kmeans_restarts: int = 50
    kmeans_max_iter: int = 300
    perm_iters: int = 10_000
    alpha: float = 0.05
    seed: int = 0
    stat_orientation: str = "complement"
    embed_mode: str = "c_minus_1"

    def __post_init__(self):
        if not (0.0 < self.lambda0 < 1.0):
            raise InputError(f"lambda0 must lie in (0, 1), got {self.lambda0}")
        if not (0.0 < self.alpha < 1.0):
            raise InputError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.perm_iters < 100:
            raise InputError(f"perm_iters must be >= 100, got {self.perm_iters}")
        if self.kmeans_restarts < 1 or self.kmeans_max_iter < 1:
            raise InputError("kmeans_restarts and kmeans_max_iter must be >= 1")
        if self.stat_orientation not in ORIENTATIONS:
            raise InputError(f"stat_orientation must be one of {ORIENTATIONS}")
        if self.embed_mode not in EMBED_MODES:
            raise InputError(f"embed_mode must be one of {EMBED_MODES}")
        if self.c_grid is not None:
            object.__setattr__(self, "c_grid", tuple(int(c) for c in self.c_grid))


@dataclass(frozen=True)
class Partition:
    """A clustering of the nodes plus permutation-screen results.

    ``communities`` are the clusters with >= 2 nodes (sorted node tuples,
    ordered by smallest member); ``significant`` holds indices into
    ``communities`` for those passing the screen.
    """

    assignment: np.ndarray
    C: int
    communities: tuple[tuple[int, ...], ...]
    singletons: tuple[int, ...]
    criterion_value: float
    lambda0: float
    significant: tuple[int, ...] = ()
    degenerate: bool = False
    p_values: tuple[float, ...] | None = None
    perm_threshold: float | None = None
    observed_stats: tuple[float, ...] | None = None
    perm_iters: int | None = None
    alpha: float | None = None

    def __post_init__(self):
        a = np.asarray(self.assignment, dtype=np.intp)
        if a.ndim != 1:
            raise InputError("assignment must be a 1-d vector")
        if a.min(initial=0) < 0 or (a.size and a.max() >= self.C):
            raise InputError("cluster ids must lie in 0..C-1")
        covered = sorted(n for comm in self.communities for n in comm)
        covered += list(self.singletons)
        if sorted(covered) != list(range(a.size)):
            raise InputError("communities + singletons must partition the nodes")
        if any(len(c) < 2 for c in self.communities):
            raise InputError("communities must have >= 2 nodes")
        if not set(self.significant) <= set(range(len(self.communities))):
            raise InputError("significant indices must reference communities")
        a.flags.writeable = False
        object.__setattr__(self, "assignment", a)

    @property
    def p(self) -> int:
        return self.assignment.size

    def significant_communities(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.communities[i] for i in self.significant)

    def in_network_mask(self) -> np.ndarray:
        """p x p boolean: both endpoints inside the same significant community."""
        mask = np.zeros((self.p, self.p), dtype=bool)
        for i in self.significant:
            nodes = list(self.communities[i])
            mask[np.ix_(nodes, nodes)] = True
        np.fill_diagonal(mask, False)
        return mask


def check_weight_matrix(w) -> np.ndarray:
    """Validate a p x p weight matrix: symmetric, finite, entries in [0,1],
    zero diagonal."""
    w = np.asarray(w, dtype=float)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise InputError(f"weight matrix must be square, got shape {w.shape}")
    if not np.isfinite(w).all():
        raise InputError("weight matrix must be finite")
    if not np.array_equal(w, w.T):
        raise InputError("weight matrix must be exactly symmetric")
    if w.min() < 0.0 or w.max() > 1.0:
        raise InputError("weights must lie in [0, 1]")
    if np.any(np.diag(w) != 0.0):
        raise InputError("weight matrix diagonal must be 0")
    return w


def laplacian(w) -> np.ndarray:
    """Unnormalized graph Laplacian L = D - W (rows sum to zero)."""
    w = np.asarray(w, dtype=float)
    return np.diag(w.sum(axis=1)) - w


def _fix_signs(vecs: np.ndarray) -> np.ndarray:
    """Flip each column so its first coordinate above 1e-12 is positive."""
    vecs = vecs.copy()
    for j in range(vecs.shape[1]):
        nz = np.flatnonzero(np.abs(vecs[:, j]) > 1e-12)
        if nz.size and vecs[nz[0], j] < 0:
            vecs[:, j] = -vecs[:, j]
    return vecs


def _eigenvectors(L: np.ndarray) -> np.ndarray:
    try:
        _, vecs = eigh(L)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - rare LAPACK failure
        raise NumericError(f"Laplacian eigendecomposition failed: {exc}") from exc
    return _fix_signs(vecs)


def _embed_slice(vecs: np.ndarray, C: int, embed_mode: str) -> np.ndarray:
    hi = C if embed_mode == "c_minus_1" else C + 1
    return vecs[:, 1:hi]


def spectral_embed(L, C: int, embed_mode: str = "c_minus_1") -> np.ndarray:
    """Eigenvectors of L at ascending-eigenvalue positions 2..C.

    Skips the constant vector at eigenvalue 0; returns C-1 orthonormal
    columns (or C columns with ``embed_mode="c"``), deterministically signed.
    """
    L = np.asarray(L, dtype=float)
    p = L.shape[0]
    if not (2 <= C <= p - 1):
        raise InputError(f"C must lie in [2, p-1], got C={C} for p={p}")
    if embed_mode not in EMBED_MODES:
        raise InputError(f"embed_mode must be one of {EMBED_MODES}")
    return _embed_slice(_eigenvectors(L), C, embed_mode)


def _canonical_order(w: np.ndarray) -> np.ndarray:
    """Node order by descending weighted degree.

    Clustering in this order makes detection equivariant under node
    relabeling: the k-means++ index streams see the same point sequence no
    matter how the caller happened to order the nodes.
    """
    return np.argsort(-w.sum(axis=1), kind="stable")


def quality_quantity(w, assignment, lambda0: float) -> float:
    """Score sum_c exp(log S_c - lambda0*log|E_c|) of a node partition.

    S_c is the within-cluster weight mass, |E_c| = |V_c|(|V_c|-1)/2.
    Singleton clusters and clusters with no weight contribute 0.
    """
    w = np.asarray(w, dtype=float)
    assignment = np.asarray(assignment, dtype=np.intp)
    C = int(assignment.max()) + 1 if assignment.size else 0
    onehot = np.zeros((w.shape[0], C))
    onehot[np.arange(w.shape[0]), assignment] = 1.0
    block = onehot.T @ w @ onehot
    s = np.diag(block) / 2.0
    sizes = onehot.sum(axis=0)
    edges = sizes * (sizes - 1) / 2.0
    ok = (edges > 0) & (s > 0)
    if not ok.any():
        return 0.0
    return float(np.sum(np.exp(np.log(s[ok]) - lambda0 * np.log(edges[ok]))))


def _set_weight(wc: np.ndarray, nodes) -> float:
    sub = wc[np.ix_(nodes, nodes)]
    return float(sub.sum()) / 2.0


def _term(S: float, k: int, lambda0: float) -> float:
    """One cluster's criterion contribution S * |E|^(-lambda0); 0 below 2 nodes."""
    if k < 2 or S <= 0.0:
        return 0.0
    return S * (k * (k - 1) / 2.0) ** (-lambda0)


def _trim_cluster(wc: np.ndarray, nodes: list, lambda0: float) -> tuple[list, list]:
    """Peel glued-on nodes off one cluster; returns (kept, evicted).

    A node is evicted when dropping it raises the criterion AND its attached
    weight sits below half the average member attachment scaled by the
    cluster's mean edge weight (m * S / k).  The first condition is the
    objective; the second protects legitimately weak members — with diffuse
    edge evidence a real member's attachment spreads far below the average,
    while a glued outsider at saturated evidence still lands well under the
    scaled bar.  Evicting the lightest node first lets the bar rise as the
    cluster purifies.
    """
    kept = list(nodes)
    evicted = []
    while len(kept) >= 3:
        sub = wc[np.ix_(kept, kept)]
        S = float(sub.sum()) / 2.0
        if S <= 0.0:
            break
        k = len(kept)
        deltas = sub.sum(axis=1)
        light = int(np.argmin(deltas))
        delta = float(deltas[light])
        mean_edge = 2.0 * S / (k * (k - 1.0))
        gains = _term(S - delta, k - 1, lambda0) > _term(S, k, lambda0)
        if gains and delta < mean_edge * S / k:
            evicted.append(kept.pop(light))
        else:
            break
    return kept, evicted


def trim_significant(w, partition: Partition, lambda0: float | None = None) -> Partition:
    """Purify the screen's significant communities before thresholding.

    Spectral k-means places nodes by embedding geometry, so a community that
    passes the screen often drags one or two glued-on outsiders with it, and
    occasionally a genuine block arrives split in two.  Both contaminate the
    in-network stratum: outsider pairs dilute it, split halves push real
    edges outside it.  This pass (a) merges pairs of significant communities
    whenever that raises the quality-quantity criterion and (b) peels
    criterion-improving, clearly-light nodes (see :func:`_trim_cluster`) into
    singletons.  Non-significant communities are left untouched; each trimmed
    community keeps the p-value its untrimmed superset earned, which is the
    conservative direction because the screen statistic only sharpens as
    diluting nodes leave.
    """
    lambda0 = partition.lambda0 if lambda0 is None else float(lambda0)
    if not partition.significant:
        return partition
    w = check_weight_matrix(w)
    if w.shape[0] != partition.p:
        raise InputError(
            f"weight matrix is {w.shape[0]}x{w.shape[0]} but partition has p={partition.p}"
        )

    sig_sets = [list(partition.communities[i]) for i in partition.significant]
    sig_pvals = [
        partition.p_values[i] if partition.p_values is not None else None
        for i in partition.significant
    ]
    sig_stats = [
        partition.observed_stats[i] if partition.observed_stats is not None else None
        for i in partition.significant
    ]

    # merge split halves first so the peel sees the full block
    merged = True
    while merged and len(sig_sets) >= 2:
        merged = False
        for i in range(len(sig_sets)):
            for j in range(i + 1, len(sig_sets)):
                a, b = sig_sets[i], sig_sets[j]
                gain = (
                    _term(_set_weight(w, a + b), len(a) + len(b), lambda0)
                    - _term(_set_weight(w, a), len(a), lambda0)
                    - _term(_set_weight(w, b), len(b), lambda0)
                )
                if gain > 1e-12:
                    sig_sets[i] = a + b
                    sig_pvals[i] = _opt_min(sig_pvals[i], sig_pvals.pop(j))
                    sig_stats[i] = _opt_max(sig_stats[i], sig_stats.pop(j))
                    sig_sets.pop(j)
                    merged = True
                    break
            if merged:
                break

    new_singles = []
    for i, nodes in enumerate(sig_sets):
        kept, evicted = _trim_cluster(w, nodes, lambda0)
        sig_sets[i] = kept
        new_singles.extend(evicted)

    # rebuild the partition: untouched communities keep their node sets
    untouched = []
    for idx, comm in enumerate(partition.communities):
        if idx in partition.significant:
            continue
        pv = partition.p_values[idx] if partition.p_values is not None else None
        st = partition.observed_stats[idx] if partition.observed_stats is not None else None
        untouched.append((set(comm), pv, st))
    trimmed = [(set(s), pv, st) for s, pv, st in zip(sig_sets, sig_pvals, sig_stats)]
    all_comms = sorted(untouched + trimmed, key=lambda t: min(t[0]))
    assignment = np.full(partition.p, -1, dtype=np.intp)
    for cid, (nodes, _, _) in enumerate(all_comms):
        assignment[list(nodes)] = cid
    C = len(all_comms)
    for node in np.flatnonzero(assignment < 0):
        assignment[node] = C
        C += 1

    trimmed_keys = [frozenset(s) for s, _, _ in trimmed]
    significant = tuple(
        i for i, (nodes, _, _) in enumerate(all_comms) if frozenset(nodes) in trimmed_keys
    )
    has_p = partition.p_values is not None
    has_stats = partition.observed_stats is not None
    return replace(
        partition,
        assignment=assignment,
        C=C,
        communities=tuple(tuple(sorted(nodes)) for nodes, _, _ in all_comms),
        singletons=tuple(
            sorted(set(partition.singletons) | set(new_singles))
        ),
        criterion_value=quality_quantity(w, assignment, lambda0),
        significant=significant,
        p_values=tuple(pv for _, pv, _ in all_comms) if has_p else None,
        observed_stats=tuple(st for _, _, st in all_comms) if has_stats else None,
    )


def _opt_min(a, b):
    return None if a is None or b is None else min(a, b)


def _opt_max(a, b):
    return None if a is None or b is None else max(a, b)


def default_c_grid(p: int) -> tuple[int, ...]:
    return tuple(range(2, min(p - 1, C_GRID_CAP) + 1))


def _grid_for(p: int, cfg: DetectConfig) -> tuple[int, ...]:
    grid = cfg.c_grid if cfg.c_grid is not None else default_c_grid(p)
    grid = tuple(c for c in grid if 2 <= c <= p - 1)
    if not grid:
        raise InputError(f"no usable C values in c_grid for p={p}")
    return grid


def cluster_for_C(w, C: int, cfg: DetectConfig) -> np.ndarray:
    """RatioCut spectral clustering into exactly C clusters.

    Returns the assignment vector of the best k-means restart (lowest
    within-cluster sum of squares, ties to the lowest restart index).
    """
    w = check_weight_matrix(w)
    p = w.shape[0]
    if not (2 <= C <= p - 1):
        raise InputError(f"C must lie in [2, p-1], got C={C} for p={p}")
    order = _canonical_order(w)
    wc = w[np.ix_(order, order)]
    vecs = _eigenvectors(laplacian(wc))
    emb = _embed_slice(vecs, C, cfg.embed_mode)
    labels, _ = best_kmeans(
        emb, C, cfg.kmeans_restarts, cfg.kmeans_max_iter, cfg.seed
    )
    assignment = np.empty(p, dtype=np.intp)
    assignment[order] = labels
    return assignment


def _partition_from_assignment(
    assignment: np.ndarray, C: int, criterion: float, cfg: DetectConfig, degenerate=False
) -> Partition:
    groups: dict[int, list[int]] = {}
    for node, c in enumerate(assignment):
        groups.setdefault(int(c), []).append(node)
    communities = sorted(
        (tuple(g) for g in groups.values() if len(g) >= 2), key=lambda t: t[0]
    )
    singles = sorted(g[0] for g in groups.values() if len(g) == 1)
    return Partition(
        assignment=assignment,
        C=C,
        communities=tuple(communities),
        singletons=tuple(singles),
        criterion_value=float(criterion),
        lambda0=cfg.lambda0,
        degenerate=degenerate,
    )


def select_partition(w, cfg: DetectConfig | None = None) -> Partition:
    """Grid-search the cluster count and return the best-scoring partition.

    Candidate C values come from ``cfg.c_grid``; each is clustered with
    :func:`cluster_for_C` and scored with :func:`quality_quantity`.  Ties go
    to the later grid entry (more parsimonious communities).  A weight matrix
    with no entry above 1e-6 short-circuits to the all-singleton partition.

    The winner is returned as clustered; communities that later pass the
    permutation screen can be purified with :func:`trim_significant`.
    """
    cfg = cfg or DetectConfig()
    w = check_weight_matrix(w)
    p = w.shape[0]
    if p < 3:
        raise InputError(f"need at least 3 nodes to detect structure, got {p}")

    if w.max() < DEGENERATE_TOL:
        return _partition_from_assignment(
            np.arange(p, dtype=np.intp), p, 0.0, cfg, degenerate=True
        )

    order = _canonical_order(w)
    wc = w[np.ix_(order, order)]
    vecs = _eigenvectors(laplacian(wc))

    best_crit = -np.inf
    best_labels = None
    for C in _grid_for(p, cfg):
        emb = _embed_slice(vecs, C, cfg.embed_mode)
        labels, _ = best_kmeans(
            emb, C, cfg.kmeans_restarts, cfg.kmeans_max_iter, cfg.seed
        )
        crit = quality_quantity(wc, labels, cfg.lambda0)
        if crit >= best_crit:  # >= : ties break toward the larger grid entry
            best_crit, best_labels = crit, labels
    best_C = int(best_labels.max()) + 1

    assignment = np.empty(p, dtype=np.intp)
    assignment[order] = best_labels
    return _partition_from_assignment(assignment, best_C, best_crit, cfg)


def community_statistic(w, community, orientation: str = "complement") -> float:
    """Incomplete-gamma tail statistic of one community's weights.

    With k = |E_c| within-community pairs and s the summed log transform of
    the (clipped) weights, returns -log(1 - P(k, s)) clamped to [0, 700],
    where P is the regularized lower incomplete gamma function.

    ``orientation="as_printed"`` uses s = sum(-log w): the statistic grows as
    weights shrink.  The default ``"complement"`` uses s = sum(-log(1 - w))
    so that heavier (more connected) communities score higher; see the
    permutation screen for how significance is calibrated either way.
    """
    if orientation not in ORIENTATIONS:
        raise InputError(f"orientation must be one of {ORIENTATIONS}")
    nodes = sorted(int(i) for i in community)
    if len(nodes) < 2:
        raise InputError("community must have >= 2 nodes")
    w = np.asarray(w, dtype=float)
    sub = w[np.ix_(nodes, nodes)]
    vals = sub[np.triu_indices(len(nodes), k=1)]
    return float(_gamma_tail_stat(len(vals), _log_transform(vals, orientation).sum()))


def _log_transform(vals: np.ndarray, orientation: str) -> np.ndarray:
    clipped = np.clip(vals, WEIGHT_CLIP, 1.0 - WEIGHT_CLIP)
    return -np.log(clipped) if orientation == "as_printed" else -np.log1p(-clipped)


def _gamma_tail_stat(k, s):
    """-log of the upper regularized gamma tail Q(k, s), clamped to [0, 700]."""
    with np.errstate(divide="ignore"):
        t = -np.log(gammaincc(k, s))
    return np.clip(t, 0.0, STAT_CAP)


def perm_quantile(null_stats: np.ndarray, alpha: float) -> float:
    """Empirical (1-alpha) quantile: sorted[ceil((1-alpha)*M)], 0-based."""
    s = np.sort(np.asarray(null_stats, dtype=float))
    idx = min(s.size - 1, math.ceil((1.0 - alpha) * s.size))
    return float(s[idx])


def permutation_test(w, partition: Partition, cfg: DetectConfig | None = None) -> Partition:
    """Screen the partition's communities against a permutation null.

    For each of cfg.perm_iters seeded iterations the upper-triangle weights
    are uniformly permuted and every community's summed log-transformed
    weight recomputed over the same node sets.  Each community then gets a
    max-statistic permutation p-value: its exceedance p-value (how often the
    permuted sum is at least as organized as the observed one) is referred to
    the null distribution of the smallest exceedance p-value across all
    communities.  The p-value scale is what makes communities of different
    sizes commensurable -- a 3-node cluster and a 300-node cluster have
    identically distributed exceedance p-values under the null, while their
    raw gamma-tail statistics live on wildly different scales.

    "Organized" follows cfg.stat_orientation: large sums of -log(1-w) for
    "complement", small sums of -log(w) for "as_printed".  Exact ties
    saturate the p-values at 1, so a flat weight matrix screens nothing.
    ``observed_stats`` still reports the per-community gamma-tail statistics;
    ``p_values`` holds the adjusted (family-wise) p-values and
    ``perm_threshold`` the cutoff on the raw exceedance scale that the
    adjustment is equivalent to.

    Returns a copy of the partition with ``significant``, ``p_values``,
    ``observed_stats`` and ``perm_threshold`` filled in.
    """
    cfg = cfg or DetectConfig()
    w = check_weight_matrix(w)
    p = w.shape[0]
    if partition.p != p:
        raise InputError("partition and weight matrix disagree on node count")
    if not partition.communities:
        return replace(
            partition,
            significant=(),
            p_values=(),
            observed_stats=(),
            perm_threshold=None,
            perm_iters=cfg.perm_iters,
            alpha=cfg.alpha,
        )

    # work in canonical node order so the permutation stream hits the same
    # value layout regardless of how the caller labeled the nodes
    order = _canonical_order(w)
    rank = np.empty(p, dtype=np.intp)
    rank[order] = np.arange(p)
    wc = w[np.ix_(order, order)]

    iu = np.triu_indices(p, k=1)
    t = _log_transform(wc[iu], cfg.stat_orientation)
    E = t.size

    posmat = np.zeros((p, p), dtype=np.intp)
    posmat[iu] = np.arange(E)
    pair_pos = []  # upper-triangle positions of each community's edges
    ks = []
    for comm in partition.communities:
        nodes = np.sort(rank[list(comm)])
        sub = posmat[np.ix_(nodes, nodes)]
        pos = sub[np.triu_indices(nodes.size, k=1)]
        pair_pos.append(pos)
        ks.append(pos.size)
    ks = np.asarray(ks, dtype=float)
    C = len(pair_pos)

    obs_sum = np.array([t[pos].sum() for pos in pair_pos])
    observed = _gamma_tail_stat(ks, obs_sum)

    M = cfg.perm_iters
    null_sum = np.empty((M, C))
    for m in range(M):
        rng = np.random.default_rng(
            np.random.SeedSequence(cfg.seed, spawn_key=(_NS_PERM, m))
        )
        tp = t[rng.permutation(E)]
        null_sum[m] = [tp[pos].sum() for pos in pair_pos]

    sign = 1.0 if cfg.stat_orientation == "complement" else -1.0
    a0 = sign * obs_sum
    a = sign * null_sum

    # exceedance p-values, observed against the permutation columns ...
    p_obs = (1.0 + (a >= a0).sum(axis=0)) / (M + 1.0)
    # ... and each permutation against its own column (>= counts include self)
    p_null = np.empty_like(a)
    for c in range(C):
        p_null[:, c] = rankdata(-a[:, c], method="max")
    p_null /= M + 1.0

    q = np.sort(p_null.min(axis=1))  # null distribution of the smallest p-value
    adjusted = np.searchsorted(q, p_obs, side="right") / M
    significant = tuple(int(i) for i in np.flatnonzero(adjusted < cfg.alpha))
    # adjusted < alpha is the same event as p_obs < q[ceil(alpha*M)-1]
    threshold = float(q[math.ceil(cfg.alpha * M) - 1])

    return replace(
        partition,
        significant=significant,
        p_values=tuple(float(v) for v in adjusted),
        observed_stats=tuple(float(o) for o in observed),
        perm_threshold=threshold,
        perm_iters=cfg.perm_iters,
        alpha=cfg.alpha,
    )
