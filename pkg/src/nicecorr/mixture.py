"""Two-groups empirical-Bayes model for a population of edge statistics.

Every Fisher-Z statistic is treated as a draw from the mixture

    z ~ pi0 * f0(z) + pi1 * f1(z)

where f0 is the null density and f1 the non-null one.  The marginal is
estimated by Lindsey's method (Poisson regression of histogram counts on a
polynomial basis), the null is either the theoretical Normal(0, 1/(n-3)) or a
central-matching empirical normal, and pi0 comes from the smallest ratio of
the marginal to the null over the central part of the support.  Under the
theoretical null an overdispersion gate runs first: a population whose pooled
second moment sits inside its null band is declared all-null outright (pi0=1,
every posterior weight zero) rather than letting density-estimation wiggle
mint spurious non-null mass.  Everything downstream (local fdr, posterior
non-null weights, per-stratum pi0 refits) reads off the resulting
:class:`MixtureFit`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import statsmodels.api as sm
from scipy.integrate import trapezoid
from scipy.stats import norm

from .corr import ZMatrix
from .errors import InputError, NumericError

MIN_VALUES = 200  # density estimation below this is noise
LINDSEY_BINS = 120
LINDSEY_DEGREE = 7
NULL_MODES = ("theoretical", "empirical")
PI0_FLOOR = 0.01
PI0_ONE = 1.0 - 1e-6  # pi0 at or above this means "no non-null component"

# Overdispersion gate, in null standard errors of the pooled second moment.
# Calibrated z populations stay within ~+-2 even with the overlap dependence
# between pairs sharing a variable; planted designs measure at +8 and beyond,
# so 4.0 splits a wide chasm.  Below the gate the fit is forced degenerate:
# the central-ratio pi0 lands at 0.97-0.99 on pure noise, and the leftover
# 1-3% of f1 mass concentrates wherever the histogram tail happens to stick
# out, minting large posterior weights for a handful of null edges.
DISPERSION_GATE = 4.0

# the histogram always covers at least this many null standard deviations so
# the null density integrates to ~1 on the grid
_GRID_SPAN_SD = 4.6


@dataclass(frozen=True)
class MixtureFit:
    """Frozen result of a two-groups fit.

    ``f`` is the mixture reconstruction ``pi0*f0 + pi1*f1``, so the two-groups
    identity holds exactly at every grid point; the raw Lindsey marginal that
    drove the fit is kept in ``marginal`` for diagnostics.
    """

    pi0: float
    pi1: float
    grid: np.ndarray
    bin_width: float
    f0_grid: np.ndarray
    f1_grid: np.ndarray
    marginal: np.ndarray
    counts: np.ndarray
    clipped: np.ndarray
    null_mean: float
    null_sd: float
    null_mode: str
    one_sided: bool
    n: int

    def __post_init__(self):
        if not (0.0 < self.pi0 <= 1.0):
            raise NumericError(f"pi0 must lie in (0, 1], got {self.pi0}")
        if abs(self.pi0 + self.pi1 - 1.0) > 1e-12:
            raise NumericError("pi0 + pi1 must equal 1")
        if np.any(self.f1_grid < 0):
            raise NumericError("f1 must be nonnegative")
        for name in ("grid", "f0_grid", "f1_grid", "marginal", "counts", "clipped"):
            a = np.asarray(getattr(self, name))
            a.flags.writeable = False
            object.__setattr__(self, name, a)

    @property
    def f_grid(self) -> np.ndarray:
        return self.pi0 * self.f0_grid + self.pi1 * self.f1_grid

    def f0(self, z):
        return norm.pdf(z, loc=self.null_mean, scale=self.null_sd)

    def f1(self, z):
        return np.interp(z, self.grid, self.f1_grid)

    def f(self, z):
        return self.pi0 * self.f0(z) + self.pi1 * self.f1(z)

    def local_fdr(self, z):
        """pi0*f0/f clamped to [0, 1]; 1 where the marginal vanishes."""
        z = np.asarray(z, dtype=float)
        num = self.pi0 * self.f0(z)
        den = self.f(z)
        out = np.ones_like(den)
        np.divide(num, den, out=out, where=den > 0)
        out = np.clip(out, 0.0, 1.0)
        return float(out) if out.ndim == 0 else out

    def posterior_nonnull(self, z):
        """Posterior probability that z came from the non-null component."""
        return 1.0 - self.local_fdr(z)

    def to_dict(self) -> dict:
        """Plain-type dump (for JSON diagnostics / density plots)."""
        return {
            "pi0": self.pi0,
            "pi1": self.pi1,
            "null_mean": self.null_mean,
            "null_sd": self.null_sd,
            "null_mode": self.null_mode,
            "one_sided": self.one_sided,
            "n": self.n,
            "bin_width": self.bin_width,
            "grid": self.grid.tolist(),
            "f0": self.f0_grid.tolist(),
            "f1": self.f1_grid.tolist(),
            "f": self.f_grid.tolist(),
            "marginal": self.marginal.tolist(),
            "counts": self.counts.astype(int).tolist(),
        }


def _lindsey_density(z: np.ndarray, lo: float, hi: float, bins: int, degree: int):
    """Histogram + Poisson polynomial regression estimate of the marginal.

    Returns (centers, width, counts, density) with the density normalized to
    unit trapezoid integral over the bin centers.
    """
    edges = np.linspace(lo, hi, bins + 1)
    counts, _ = np.histogram(z, bins=edges)
    centers = 0.5 * (edges[:-1] + edges[1:])
    width = edges[1] - edges[0]

    basis = np.vander(centers, degree + 1)
    basis = basis / np.abs(basis).max(axis=0)  # condition the design
    start = np.linalg.lstsq(basis, np.log(counts + 1.0), rcond=None)[0]
    try:
        res = sm.GLM(counts, basis, family=sm.families.Poisson()).fit(
            start_params=start
        )
        fitted = np.asarray(res.predict(basis))
    except Exception as exc:  # IRLS blow-ups surface as many exception types
        raise NumericError(f"marginal density regression failed: {exc}") from exc
    if not np.all(np.isfinite(fitted)):
        raise NumericError("marginal density regression produced non-finite values")

    density = fitted / trapezoid(fitted, centers)
    return centers, width, counts, density


def dispersion(z_values, null_sd: float) -> float:
    """Standardized overdispersion of statistics against a zero-mean null.

    (mean((z/null_sd)^2) - 1) / sqrt(2/N): approximately standard normal when
    the population is pure null, strongly positive when a non-null component
    inflates the spread.
    """
    z = np.asarray(z_values, dtype=float).ravel()
    if z.size == 0:
        raise InputError("dispersion needs at least one statistic")
    if null_sd <= 0:
        raise InputError(f"null_sd must be positive, got {null_sd}")
    r = z / null_sd
    return float((np.mean(r * r) - 1.0) / np.sqrt(2.0 / r.size))


def _central_mask(centers: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Grid points inside the interquartile range of the data (>= 5 points)."""
    q25, q75 = np.quantile(z, [0.25, 0.75])
    mask = (centers >= q25) & (centers <= q75)
    if mask.sum() < 5:
        nearest = np.argsort(np.abs(centers - np.median(z)))[:5]
        mask = np.zeros(centers.size, dtype=bool)
        mask[nearest] = True
    return mask


def fit_mixture(
    z_values,
    n: int,
    null_mode: str = "theoretical",
    one_sided: bool = True,
) -> MixtureFit:
    """Fit the two-groups model to a population of Fisher-Z statistics.

    Parameters
    ----------
    z_values : array-like
        At least 200 finite statistics (typically all upper-triangle entries
        of a :class:`~nicecorr.corr.ZMatrix`).
    n : int
        Sample size behind the statistics; fixes the theoretical null
        Normal(0, 1/(n-3)).
    null_mode : {"theoretical", "empirical"}
        "empirical" replaces the theoretical null by a normal whose mean and
        variance are matched to the central 50% of the histogram.  Only the
        theoretical mode runs the overdispersion gate (see
        :func:`dispersion`): there the null scale is known a priori, so a
        population inside its null band can be declared all-null outright.
    one_sided : bool
        When true (default) the non-null component is restricted to z > 0:
        organized structure shows up as positive correlation, so negative
        statistics are treated as null and get near-zero posterior weight.

    Returns
    -------
    MixtureFit
    """
    z = np.asarray(z_values, dtype=float).ravel()
    if z.size < MIN_VALUES:
        raise InputError(f"need at least {MIN_VALUES} statistics, got {z.size}")
    if not np.isfinite(z).all():
        raise InputError("statistics must be finite")
    if n < 4:
        raise InputError(f"sample size must be >= 4, got {n}")
    if null_mode not in NULL_MODES:
        raise InputError(f"null_mode must be one of {NULL_MODES}, got {null_mode!r}")

    zmin, zmax = z.min(), z.max()
    if zmin == zmax:
        raise InputError("degenerate histogram: all statistics identical")

    sd0 = 1.0 / np.sqrt(n - 3)
    lo = min(zmin, -_GRID_SPAN_SD * sd0)
    hi = max(zmax, _GRID_SPAN_SD * sd0)
    pad = 1e-3 * (hi - lo)
    centers, width, counts, marginal = _lindsey_density(
        z, lo - pad, hi + pad, LINDSEY_BINS, LINDSEY_DEGREE
    )

    central = _central_mask(centers, z)

    if null_mode == "theoretical":
        null_mean, null_sd = 0.0, sd0
    else:
        # central matching: log f is quadratic near the mode if the center of
        # the histogram is dominated by a normal null
        a, b, _ = np.polyfit(centers[central], np.log(marginal[central]), 2)
        if a >= 0:
            raise NumericError("empirical null fit is not concave on the central grid")
        var = -1.0 / (2.0 * a)
        null_mean, null_sd = b * var, float(np.sqrt(var))

    f0_grid = norm.pdf(centers, loc=null_mean, scale=null_sd)

    if null_mode == "theoretical" and dispersion(z, sd0) < DISPERSION_GATE:
        pi0 = 1.0
    else:
        # f >= pi0*f0 pointwise, so the smallest central ratio is the tightest
        # upper bound available from the fitted curves; the median is noticeably
        # noisier upward and regularly clamps to 1 on sparse-signal data,
        # zeroing every posterior weight downstream
        ratio = marginal[central] / f0_grid[central]
        pi0 = float(np.clip(min(1.0, ratio.min()), PI0_FLOOR, 1.0))

    residual = marginal - pi0 * f0_grid
    clipped = residual < 0
    if one_sided:
        clipped |= centers <= 0
    f1_grid = np.where(clipped, 0.0, residual)

    if pi0 >= PI0_ONE:
        f1_grid = np.zeros_like(centers)
        clipped = np.ones_like(clipped)
        pi0 = 1.0
    else:
        mass = trapezoid(f1_grid, centers)
        if mass <= 0:
            # nothing left after clipping: no usable non-null component
            f1_grid = np.zeros_like(centers)
            clipped = np.ones_like(clipped)
            pi0 = 1.0
        else:
            f1_grid = f1_grid / mass

    return MixtureFit(
        pi0=pi0,
        pi1=1.0 - pi0,
        grid=centers,
        bin_width=width,
        f0_grid=f0_grid,
        f1_grid=f1_grid,
        marginal=marginal,
        counts=counts,
        clipped=clipped,
        null_mean=float(null_mean),
        null_sd=float(null_sd),
        null_mode=null_mode,
        one_sided=one_sided,
        n=int(n),
    )


def posterior_nonnull(fit: MixtureFit, z):
    """Posterior non-null probability pi1*f1(z)/f(z), clamped to [0, 1]."""
    return fit.posterior_nonnull(z)


def local_fdr(fit: MixtureFit, z):
    """Local false-discovery rate pi0*f0(z)/f(z), clamped to [0, 1]."""
    return fit.local_fdr(z)


def weight_matrix(zm: ZMatrix, fit: MixtureFit) -> np.ndarray:
    """Posterior non-null weight for every edge of a Z matrix.

    Returns a p x p symmetric matrix with zero diagonal and every
    off-diagonal entry in [0, 1].
    """
    w = fit.posterior_nonnull(zm.values)
    np.fill_diagonal(w, 0.0)
    return w


def refit_pi0(z_subset, fit: MixtureFit, tol: float = 1e-6) -> float:
    """Re-estimate pi0 for a subpopulation, holding f0 and f1 fixed.

    Maximizes sum(log(pi0*f0(z) + (1-pi0)*f1(z))) over pi0 in [0, 1] by
    golden-section search (the log-likelihood is concave in pi0).
    """
    z = np.sort(np.asarray(z_subset, dtype=float).ravel())  # order-insensitive sums
    if z.size == 0:
        raise InputError("cannot refit pi0 on an empty subset")
    f0v = fit.f0(z)
    f1v = fit.f1(z)

    def loglik(p: float) -> float:
        return float(np.sum(np.log(p * f0v + (1.0 - p) * f1v + 1e-300)))

    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = 0.0, 1.0
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = loglik(c), loglik(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = loglik(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = loglik(d)
    return float(np.clip(0.5 * (a + b), 0.0, 1.0))
