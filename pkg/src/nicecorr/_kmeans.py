"""Seeded, restart-batched Lloyd k-means for the spectral detector.

All restarts run simultaneously: distances for every (restart, cluster) pair
come out of one GEMM per iteration, restarts drop out of the batch as they
converge, and the winner is chosen by within-cluster sum of squares with ties
going to the lowest restart index.  Each restart draws from its own
`SeedSequence(seed, spawn_key=(1, C, restart))` stream, so results do not
depend on scheduling or batch composition.
"""

from __future__ import annotations

import numpy as np

_NS_KMEANS = 1  # spawn_key namespace (permutation test uses 2, bench uses 3+)


def _restart_uniforms(seed: int, C: int, restarts: int) -> np.ndarray:
    """(restarts, C) uniforms: column 0 picks the first center, column j the
    j-th k-means++ sample."""
    out = np.empty((restarts, C))
    for r in range(restarts):
        rng = np.random.default_rng(
            np.random.SeedSequence(seed, spawn_key=(_NS_KMEANS, C, r))
        )
        out[r] = rng.random(C)
    return out


def _plusplus_init(X, x2, C, U):
    """Batched k-means++ seeding. X: (p, d); U: (R, C) uniforms."""
    p, d = X.shape
    R = U.shape[0]
    centers = np.empty((R, C, d))
    idx0 = np.minimum((U[:, 0] * p).astype(np.intp), p - 1)
    centers[:, 0] = X[idx0]

    g = X @ centers[:, 0].T  # (p, R)
    c2 = np.einsum("rd,rd->r", centers[:, 0], centers[:, 0])
    mind2 = np.maximum(x2[:, None] - 2.0 * g + c2[None, :], 0.0).T  # (R, p)

    for j in range(1, C):
        tot = mind2.sum(axis=1)
        target = U[:, j] * tot
        cum = np.cumsum(mind2, axis=1)
        idx = (cum < target[:, None]).sum(axis=1)
        np.minimum(idx, p - 1, out=idx)
        dead = tot <= 0.0  # all points coincide with chosen centers
        if dead.any():
            idx[dead] = np.minimum((U[dead, j] * p).astype(np.intp), p - 1)
        cnew = X[idx]
        centers[:, j] = cnew
        g = X @ cnew.T
        c2 = np.einsum("rd,rd->r", cnew, cnew)
        np.minimum(mind2, np.maximum(x2[:, None] - 2.0 * g + c2[None, :], 0.0).T, out=mind2)
    return centers


def best_kmeans(X, C: int, restarts: int, max_iter: int, seed: int):
    """Best-of-`restarts` k-means clustering of the rows of X into C clusters.

    Returns (labels, wcss): labels is a length-p int array, wcss the winning
    within-cluster sum of squares.
    """
    X = np.ascontiguousarray(X, dtype=float)
    p, d = X.shape
    R = restarts
    x2 = np.einsum("ij,ij->i", X, X)

    U = _restart_uniforms(seed, C, R)
    centers = _plusplus_init(X, x2, C, U)

    labels = np.full((R, p), -1, dtype=np.intp)
    active = np.arange(R)
    rows = np.arange(p)
    for _ in range(max_iter):
        A = active.size
        ce = centers[active]  # (A, C, d)
        c2 = np.einsum("acd,acd->ac", ce, ce)
        g = (X @ ce.reshape(A * C, d).T).reshape(p, A, C)
        obj = c2[None, :, :] - 2.0 * g  # squared distance minus x2 (constant in c)
        lab = obj.argmin(axis=2).T  # (A, p)

        changed = (lab != labels[active]).any(axis=1)
        labels[active] = lab
        active = active[changed]
        if active.size == 0:
            break

        # recompute centers of the still-moving restarts in one GEMM
        A = active.size
        la = labels[active]
        onehot = np.zeros((A, C, p))
        onehot[np.repeat(np.arange(A), p), la.ravel(), np.tile(rows, A)] = 1.0
        counts = onehot.sum(axis=2)  # (A, C)
        sums = (onehot.reshape(A * C, p) @ X).reshape(A, C, d)
        nonempty = counts > 0
        newc = centers[active]
        newc[nonempty] = sums[nonempty] / counts[nonempty][:, None]
        if not nonempty.all():
            # park empty clusters on the farthest point of their restart
            farthest = obj[:, changed, :].min(axis=2).argmax(axis=0)  # (A,)
            for a, c in zip(*np.nonzero(~nonempty)):
                newc[a, c] = X[farthest[a]]
        centers[active] = newc

    # final objective for every restart against its final centers
    c2 = np.einsum("rcd,rcd->rc", centers, centers)
    g = (X @ centers.reshape(R * C, d).T).reshape(p, R, C)
    best_d2 = (c2[None, :, :] - 2.0 * g).min(axis=2)  # (p, R)
    wcss = best_d2.sum(axis=0) + x2.sum()
    winner = int(np.argmin(wcss))  # argmin takes the lowest index on ties
    return labels[winner].copy(), float(wcss[winner])
