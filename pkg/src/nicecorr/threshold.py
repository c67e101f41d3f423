"""Topology-guided hard thresholding of a sample correlation matrix.

Each edge carries a Bayes factor BF = f1(z)/f0(z) from the global two-groups
fit.  Edges inside a significant community are kept when BF >= T*theta_in,
everything else when BF >= T*theta_out, where theta_x = pi0_x/(1-pi0_x) are
per-stratum prior odds of the null.  Surviving entries keep their sample
values; thresholded ones become exactly 0.  The universal rule (one cutoff
T*theta_all for every edge) and plain magnitude thresholding are provided as
baselines.

The thresholded matrix is emitted as-is: it may be indefinite, since no
positive-definiteness repair is applied to the surviving pattern.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corr import CorrMatrix, ZMatrix
from .detect import Partition
from .errors import InputError
from .mixture import MixtureFit, refit_pi0

DEFAULT_T = 4.0  # the worked default: local fdr 0.2 at theta = 1
F0_FLOOR = 1e-300  # below this the null density is treated as zero (BF = inf)


def odds(pi0: float) -> float:
    """Prior odds pi0/(1-pi0) of the null; +inf at pi0 = 1."""
    if not (0.0 <= pi0 <= 1.0):
        raise InputError(f"pi0 must lie in [0, 1], got {pi0}")
    return np.inf if pi0 >= 1.0 else pi0 / (1.0 - pi0)


@dataclass(frozen=True)
class OddsPair:
    """Null prior odds for the in/out strata and the whole edge population."""

    theta_in: float
    theta_out: float
    theta_all: float
    pi0_in: float
    pi0_out: float
    pi0_all: float

    def __post_init__(self):
        for name in ("theta_in", "theta_out", "theta_all"):
            if getattr(self, name) < 0:
                raise InputError(f"{name} must be >= 0")
        for name in ("pi0_in", "pi0_out", "pi0_all"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise InputError(f"{name} must lie in [0, 1], got {v}")

    @classmethod
    def from_pi0(cls, pi0_in: float, pi0_out: float, pi0_all: float) -> "OddsPair":
        return cls(
            theta_in=odds(pi0_in),
            theta_out=odds(pi0_out),
            theta_all=odds(pi0_all),
            pi0_in=pi0_in,
            pi0_out=pi0_out,
            pi0_all=pi0_all,
        )


@dataclass(frozen=True)
class ThresholdedEstimate:
    """Hard-thresholded correlation matrix plus the evidence that made it.

    ``edges`` is the binary survival indicator; off-diagonal entries of
    ``r_hat`` are either 0 or the untouched sample value.  ``in_mask`` marks
    the in-network stratum each decision used (all-False for the universal
    and magnitude rules).
    """

    r_hat: CorrMatrix
    edges: np.ndarray
    bayes_factors: np.ndarray | None
    odds: OddsPair | None
    T: float
    in_mask: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.edges)
        if not np.array_equal(e, e.T) or not np.isin(e, (0, 1)).all():
            raise InputError("edges must be a symmetric 0/1 matrix")
        off = ~np.eye(e.shape[0], dtype=bool)
        if not np.array_equal(e[off] == 1, self.r_hat.values[off] != 0.0):
            raise InputError("edges must mark exactly the nonzero entries of r_hat")
        for name in ("edges", "in_mask"):
            a = np.asarray(getattr(self, name))
            a.flags.writeable = False
            object.__setattr__(self, name, a)

    @property
    def p(self) -> int:
        return self.r_hat.p

    def kept_counts(self) -> dict:
        """Edge bookkeeping for summaries: kept/dropped by stratum."""
        iu = np.triu_indices(self.p, k=1)
        kept = self.edges[iu] == 1
        inside = self.in_mask[iu]
        return {
            "kept_in": int(np.sum(kept & inside)),
            "kept_out": int(np.sum(kept & ~inside)),
            "dropped_in": int(np.sum(~kept & inside)),
            "dropped_out": int(np.sum(~kept & ~inside)),
        }


def bayes_factors(zm: ZMatrix, fit: MixtureFit) -> np.ndarray:
    """BF_{i,j} = f1(z_{i,j}) / f0(z_{i,j}); +inf where f0 underflows."""
    f1v = fit.f1(zm.values)
    f0v = fit.f0(zm.values)
    bf = np.full_like(f0v, np.inf)
    np.divide(f1v, f0v, out=bf, where=f0v >= F0_FLOOR)
    np.fill_diagonal(bf, 0.0)
    return bf


def estimate_odds(zm: ZMatrix, partition: Partition, global_fit: MixtureFit) -> OddsPair:
    """Per-stratum null odds via constrained pi0 refits.

    The in stratum holds edges with both endpoints in the same significant
    community; everything else (cross-community, community-to-singleton,
    singleton-to-singleton, non-significant communities) is out.  With no
    significant communities both strata inherit the global pi0, collapsing
    the rule to universal thresholding.  An empty stratum also falls back to
    the global pi0.
    """
    pi0_all = global_fit.pi0
    if not partition.significant:
        return OddsPair.from_pi0(pi0_all, pi0_all, pi0_all)

    iu = np.triu_indices(partition.p, k=1)
    inside = partition.in_network_mask()[iu]
    z = zm.values[iu]
    z_in = z[inside]
    z_out = z[~inside]
    pi0_in = refit_pi0(z_in, global_fit) if z_in.size else pi0_all
    pi0_out = refit_pi0(z_out, global_fit) if z_out.size else pi0_all
    return OddsPair.from_pi0(pi0_in, pi0_out, pi0_all)


def _assemble(corr, keep, bf, odds_pair, T, in_mask) -> ThresholdedEstimate:
    np.fill_diagonal(keep, False)
    vals = np.where(keep, corr.values, 0.0)
    np.fill_diagonal(vals, 1.0)
    return ThresholdedEstimate(
        r_hat=CorrMatrix(vals, n=corr.n),
        edges=keep.astype(np.int8),
        bayes_factors=bf,
        odds=odds_pair,
        T=float(T),
        in_mask=in_mask,
    )


def nice_threshold(
    corr: CorrMatrix,
    zm: ZMatrix,
    partition: Partition,
    fit: MixtureFit,
    odds_pair: OddsPair,
    T: float = DEFAULT_T,
) -> ThresholdedEstimate:
    """Two-tier rule: keep in-network edges at BF >= T*theta_in, all other
    edges at BF >= T*theta_out.

    An infinite theta thresholds its entire stratum, including edges whose
    BF is itself infinite (a pi0 of 1 means the stratum has no non-null
    component to keep).
    """
    if T <= 0:
        raise InputError(f"T must be positive, got {T}")
    bf = bayes_factors(zm, fit)
    in_mask = partition.in_network_mask()
    keep = np.zeros(bf.shape, dtype=bool)
    for mask, theta in ((in_mask, odds_pair.theta_in), (~in_mask, odds_pair.theta_out)):
        if np.isfinite(theta):
            keep |= mask & (bf >= T * theta)
    return _assemble(corr, keep, bf, odds_pair, T, in_mask)


def universal_threshold(
    corr: CorrMatrix, zm: ZMatrix, fit: MixtureFit, T: float = DEFAULT_T
) -> ThresholdedEstimate:
    """One-cutoff baseline: keep iff pi1*f1(z) / (pi0*f0(z)) >= T,
    i.e. BF >= T*pi0/pi1."""
    if T <= 0:
        raise InputError(f"T must be positive, got {T}")
    bf = bayes_factors(zm, fit)
    theta_all = odds(fit.pi0)
    if np.isfinite(theta_all):
        keep = bf >= T * theta_all
    else:
        keep = np.zeros(bf.shape, dtype=bool)
    odds_pair = OddsPair.from_pi0(fit.pi0, fit.pi0, fit.pi0)
    return _assemble(corr, keep, bf, odds_pair, T, np.zeros(bf.shape, dtype=bool))


def magnitude_threshold(corr: CorrMatrix, cutoff: float) -> ThresholdedEstimate:
    """Keep entries with \\|R̂_{i,j}\\| > cutoff; no model, no strata."""
    if cutoff < 0:
        raise InputError(f"cutoff must be >= 0, got {cutoff}")
    keep = np.abs(corr.values) > cutoff
    return _assemble(
        corr, keep, None, None, cutoff, np.zeros(keep.shape, dtype=bool)
    )


def fdr_for_threshold(T: float, theta_stratum: float, theta_all: float) -> float:
    """Local fdr (on the all-edges scale) at a stratum's survival boundary.

    An edge on the boundary of the stratum rule BF = T*theta_stratum has
    fdr^all = 1 / (T * theta_stratum/theta_all + 1).  With theta_stratum ==
    theta_all this is the universal link 1/(T+1).
    """
    if T <= 0:
        raise InputError(f"T must be positive, got {T}")
    if np.isinf(theta_stratum) and np.isinf(theta_all):
        ratio = 1.0
    else:
        ratio = theta_stratum / theta_all
    return float(1.0 / (T * ratio + 1.0))


def threshold_for_fdr(fdr: float, theta_stratum: float, theta_all: float) -> float:
    """Inverse of :func:`fdr_for_threshold`: the T whose boundary sits at the
    given all-edges local fdr."""
    if not (0.0 < fdr < 1.0):
        raise InputError(f"fdr must lie in (0, 1), got {fdr}")
    if np.isinf(theta_stratum) and np.isinf(theta_all):
        ratio = 1.0
    else:
        ratio = theta_stratum / theta_all
    return float((1.0 / fdr - 1.0) / ratio)


def universal_bf_cutoff(pi0: float, T: float = DEFAULT_T, pi1: float | None = None) -> float:
    """The BF value an edge must reach under the universal rule: T*pi0/pi1."""
    if pi1 is None:
        pi1 = 1.0 - pi0
    if pi1 <= 0.0:
        return np.inf
    return T * pi0 / pi1
