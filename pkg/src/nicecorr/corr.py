"""Data ingestion, sample correlation, and Fisher's Z transformation.

The objects defined here (data matrix, correlation matrix, Z matrix) are the
numeric substrate every other module operates on.  All of them are immutable
after construction and safe to share across threads.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError

# |r| is pulled back to 1 - Z_CLIP_EPS before the log so z stays finite.
Z_CLIP_EPS = 1e-12

MIN_SUBJECTS = 4  # Fisher-Z variance 1/(n-3) must be finite and positive


def _as_readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class DataMatrix:
    """n x p observation matrix: rows are subjects, columns are variables."""

    values: np.ndarray
    column_names: list[str] = field(default_factory=list)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2:
            raise InputError(f"data matrix must be 2-d, got shape {values.shape}")
        n, p = values.shape
        if n < MIN_SUBJECTS:
            raise InputError(f"need at least {MIN_SUBJECTS} rows (subjects), got {n}")
        if p < 2:
            raise InputError(f"need at least 2 columns (variables), got {p}")
        if not np.isfinite(values).all():
            i, j = np.argwhere(~np.isfinite(values))[0]
            raise InputError(f"non-finite value at row {i}, column {j}")
        names = list(self.column_names) if self.column_names else [f"V{k + 1}" for k in range(p)]
        if len(names) != p:
            raise InputError(f"got {len(names)} column names for {p} columns")
        object.__setattr__(self, "values", _as_readonly(values))
        object.__setattr__(self, "column_names", names)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class CorrMatrix:
    """p x p sample correlation matrix together with the sample size behind it.

    Symmetry and the unit diagonal are enforced exactly at construction; all
    entries are guaranteed to lie in [-1, 1].
    """

    values: np.ndarray
    n: int

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise InputError(f"correlation matrix must be square, got shape {values.shape}")
        if not np.array_equal(values, values.T):
            raise InputError("correlation matrix must be exactly symmetric")
        if not np.array_equal(np.diag(values), np.ones(values.shape[0])):
            raise InputError("correlation matrix diagonal must be exactly 1")
        if np.abs(values).max() > 1:
            raise InputError("correlation entries must lie in [-1, 1]")
        if self.n < MIN_SUBJECTS:
            raise InputError(f"sample size must be >= {MIN_SUBJECTS}, got {self.n}")
        object.__setattr__(self, "values", _as_readonly(values))

    @property
    def p(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class ZMatrix:
    """p x p matrix of Fisher-Z transformed correlations.

    The diagonal carries no statistic (a variable's correlation with itself is
    not an edge); it is stored as 0 and excluded from every downstream edge
    population via :meth:`offdiag` / :meth:`upper_values`.
    """

    values: np.ndarray
    n: int

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise InputError(f"Z matrix must be square, got shape {values.shape}")
        off = ~np.eye(values.shape[0], dtype=bool)
        if not np.isfinite(values[off]).all():
            raise InputError("Z matrix has non-finite off-diagonal entries")
        if not np.array_equal(values, values.T):
            raise InputError("Z matrix must be exactly symmetric")
        object.__setattr__(self, "values", _as_readonly(values))

    @property
    def p(self) -> int:
        return self.values.shape[0]

    def upper_values(self) -> np.ndarray:
        """Off-diagonal statistics as a 1-d vector in upper-triangle order."""
        iu = np.triu_indices(self.p, k=1)
        return self.values[iu]


def load_csv(path, has_header: bool = True) -> DataMatrix:
    """Read a rectangular numeric CSV into a :class:`DataMatrix`.

    Parameters
    ----------
    path : str or Path
        File to read: comma-separated, UTF-8, rows are subjects and columns
        are variables, with an optional single header row.
    has_header : bool
        Whether the first row holds column names.  Without a header the
        columns are named ``V1..Vp``.

    Raises
    ------
    InputError
        On ragged rows (reported with the row index), non-numeric cells
        (reported with row and column), or fewer than 4 data rows.
    """
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc

    with fh:
        reader = csv.reader(fh)
        rows = [row for row in reader if row]

    if not rows:
        raise InputError(f"{path}: empty file")

    names: list[str] = []
    if has_header:
        names = [c.strip() for c in rows[0]]
        rows = rows[1:]
    if not rows:
        raise InputError(f"{path}: no data rows")

    p = len(rows[0])
    out = np.empty((len(rows), p))
    for i, row in enumerate(rows):
        if len(row) != p:
            raise InputError(f"{path}: ragged row {i}: expected {p} cells, got {len(row)}")
        for j, cell in enumerate(row):
            try:
                v = float(cell)
            except ValueError:
                raise InputError(f"{path}: non-numeric cell at row {i}, column {j}: {cell!r}") from None
            if not np.isfinite(v):
                raise InputError(f"{path}: non-finite cell at row {i}, column {j}: {cell!r}")
            out[i, j] = v

    return DataMatrix(out, names)


def sample_correlation(data: DataMatrix) -> CorrMatrix:
    """Pearson product-moment correlation of every column pair.

    The upper triangle is computed once and mirrored, so the result is
    symmetric bit-for-bit; the diagonal is exactly 1.

    Raises
    ------
    InputError
        If a column has zero sample variance (its correlations are undefined).
    """
    x = data.values
    centered = x - x.mean(axis=0)
    ss = np.einsum("ij,ij->j", centered, centered)
    dead = np.flatnonzero(ss <= 0.0)
    if dead.size:
        raise InputError(
            f"column {dead[0]} ({data.column_names[dead[0]]}) has zero variance"
        )
    scaled = centered / np.sqrt(ss)
    c = scaled.T @ scaled
    np.clip(c, -1.0, 1.0, out=c)
    upper = np.triu(c, k=1)
    return CorrMatrix(upper + upper.T + np.eye(data.p), n=data.n)


def fisher_z(r):
    """Fisher's Z transformation ``log((1 + r) / (1 - r)) / 2``.

    Accepts a scalar or array with ``|r| <= 1``.  Inputs within ``Z_CLIP_EPS``
    of +/-1 are clipped so the result is always finite.
    """
    arr = np.asarray(r, dtype=float)
    if np.any(np.abs(arr) > 1) or not np.isfinite(arr).all():
        raise InputError("fisher_z requires |r| <= 1")
    clipped = np.clip(arr, -1.0 + Z_CLIP_EPS, 1.0 - Z_CLIP_EPS)
    out = np.arctanh(clipped)
    return float(out) if np.isscalar(r) else out


def fisher_z_inverse(z):
    """Inverse Fisher transform ``(e^{2z} - 1) / (e^{2z} + 1)``, i.e. tanh."""
    arr = np.asarray(z, dtype=float)
    if not np.isfinite(arr).all():
        raise InputError("fisher_z_inverse requires finite z")
    out = np.tanh(arr)
    return float(out) if np.isscalar(z) else out


def z_matrix(corr: CorrMatrix) -> ZMatrix:
    """Apply :func:`fisher_z` to every off-diagonal entry of ``corr``."""
    vals = corr.values.copy()
    np.fill_diagonal(vals, 0.0)
    z = fisher_z(vals)
    np.fill_diagonal(z, 0.0)
    return ZMatrix(z, n=corr.n)


def standardize(data: DataMatrix) -> DataMatrix:
    """Center each column at zero and rescale it to unit sample variance."""
    x = data.values
    sd = x.std(axis=0, ddof=1)
    dead = np.flatnonzero(sd <= 0.0)
    if dead.size:
        raise InputError(
            f"column {dead[0]} ({data.column_names[dead[0]]}) has zero variance"
        )
    return DataMatrix((x - x.mean(axis=0)) / sd, list(data.column_names))
