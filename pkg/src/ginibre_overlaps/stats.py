"""Binned estimators over record streams and theory-vs-empirics comparison.

Every estimator is a pure fold over (eigenvalue, overlap) records: counts,
sums, and sums of squares only, so partitioned streams can be merged and the
results are permutation-invariant.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

__all__ = [
    "BinSpec",
    "BinnedSeries",
    "ComparisonReport",
    "conditional_mean_series",
    "density_histogram",
    "overlap_histogram",
    "compare",
    "tail_slope",
]

# Acceptance-grade bins average on the order of 10^3 observations.
DEFAULT_MIN_COUNT = 1000


@dataclass(frozen=True)
class BinSpec:
    """Spatial acceptance regions around a list of probe targets.

    geometry='disk'    : centers are complex points, |z - center| <= window.
    geometry='annulus' : centers are radii r >= 0,   ||z| - r|    <= window.
    geometry='strip'   : centers are Re-axis targets, |Re z - target| <= window,
                         with |Im z| (or Im z if abs_im=False) confined to
                         [im_center - im_halfwidth, im_center + im_halfwidth].
    """

    centers: tuple
    window: float
    geometry: str = "disk"
    im_center: float = 0.0
    im_halfwidth: float = np.inf
    abs_im: bool = True
    min_count: int = DEFAULT_MIN_COUNT

    def __post_init__(self):
        if self.window <= 0:
            raise DomainError("window must be positive")
        if len(self.centers) == 0:
            raise DomainError("centers must be non-empty")
        if self.geometry not in ("disk", "annulus", "strip"):
            raise DomainError(f"unknown geometry {self.geometry!r}")
        if self.geometry == "strip" and not np.isfinite(self.im_halfwidth):
            raise DomainError("strip geometry needs a finite im_halfwidth")

    def mask(self, z, center):
        z = np.asarray(z)
        if self.geometry == "disk":
            return np.abs(z - center) <= self.window
        if self.geometry == "annulus":
            return np.abs(np.abs(z) - float(center)) <= self.window
        imv = np.abs(z.imag) if self.abs_im else z.imag
        return ((np.abs(z.real - float(center)) <= self.window)
                & (np.abs(imv - self.im_center) <= self.im_halfwidth))

    def measure(self, center):
        """Area of one acceptance region (for density normalization)."""
        if self.geometry == "disk":
            return np.pi * self.window**2
        if self.geometry == "annulus":
            r = float(center)
            lo = max(r - self.window, 0.0)
            return np.pi * ((r + self.window) ** 2 - lo**2)
        lo = self.im_center - self.im_halfwidth
        hi = self.im_center + self.im_halfwidth
        height = hi - lo
        if self.abs_im:
            if lo < 0.0:
                raise DomainError("abs_im strip must not straddle the real axis")
            height = 2.0 * height  # mirror band below the axis
        area = 2.0 * self.window * height
        if area <= 0.0:
            raise DomainError("zero-measure strip bin")
        return area


@dataclass
class BinnedSeries:
    """Per-bin means (or densities) with standard errors."""

    centers: np.ndarray
    counts: np.ndarray
    means: np.ndarray
    std_errors: np.ndarray
    min_count: int = DEFAULT_MIN_COUNT

    @property
    def low_statistics(self):
        return self.counts < self.min_count


@dataclass
class ComparisonReport:
    """Per-bin empirical-vs-theory discrepancies."""

    centers: np.ndarray
    counts: np.ndarray
    theory: np.ndarray
    empirical: np.ndarray
    std_errors: np.ndarray
    z_scores: np.ndarray = field(init=False)
    relative_errors: np.ndarray = field(init=False)

    def __post_init__(self):
        with np.errstate(divide="ignore", invalid="ignore"):
            self.z_scores = (self.empirical - self.theory) / self.std_errors
            self.relative_errors = np.abs(self.empirical - self.theory) / np.abs(self.theory)

    @property
    def max_abs_z(self):
        valid = np.isfinite(self.z_scores)
        return float(np.max(np.abs(self.z_scores[valid]))) if valid.any() else np.nan

    @property
    def fraction_within_3(self):
        valid = np.isfinite(self.z_scores)
        if not valid.any():
            return np.nan
        return float(np.mean(np.abs(self.z_scores[valid]) <= 3.0))


def _records_arrays(records):
    z = np.asarray(records["z"])
    o = np.asarray(records["overlap"], dtype=float)
    return z, o


def conditional_mean_series(records, spec):
    """Per-bin mean and standard error of the self-overlap.

    Empty bins are flagged by count 0 and NaN mean, never an error; each
    record enters a given bin at most once.
    """
    if len(records) == 0:
        raise DomainError("conditional_mean_series needs a non-empty record stream")
    z, o = _records_arrays(records)
    k = len(spec.centers)
    counts = np.zeros(k, dtype=np.int64)
    means = np.full(k, np.nan)
    errs = np.full(k, np.nan)
    for i, center in enumerate(spec.centers):
        sel = o[spec.mask(z, center)]
        counts[i] = sel.size
        if sel.size:
            means[i] = sel.mean()
        if sel.size > 1:
            errs[i] = sel.std(ddof=1) / np.sqrt(sel.size)
    return BinnedSeries(centers=np.asarray(spec.centers), counts=counts,
                        means=means, std_errors=errs, min_count=spec.min_count)


def density_histogram(records, spec, samples):
    """Per-bin eigenvalue density: count / (samples * bin area).

    Estimates the per-matrix density formulas directly; the Poisson standard
    error sqrt(count) / (samples * area) is attached.
    """
    if samples < 1:
        raise DomainError("samples must be >= 1")
    z, _ = _records_arrays(records)
    k = len(spec.centers)
    counts = np.zeros(k, dtype=np.int64)
    dens = np.zeros(k)
    errs = np.zeros(k)
    for i, center in enumerate(spec.centers):
        area = spec.measure(center)
        counts[i] = int(np.count_nonzero(spec.mask(z, center)))
        dens[i] = counts[i] / (samples * area)
        errs[i] = np.sqrt(counts[i]) / (samples * area)
    return BinnedSeries(centers=np.asarray(spec.centers), counts=counts,
                        means=dens, std_errors=errs, min_count=spec.min_count)


def overlap_histogram(records, scaling, edges, n):
    """Normalized histogram of self-overlaps under the requested scaling.

    scaling='raw'        : t = O - 1
    scaling='bulk_s'     : s = (O - 1) / n
    scaling='edge_sigma' : sigma = (O - 1) / sqrt(n)

    Returns ``(density, edges)`` with unit total mass over the grid; caller
    filters records to a spatial region first.  Raises on empty selection.
    """
    if len(records) == 0:
        raise DomainError("overlap_histogram: empty record selection")
    _, o = _records_arrays(records)
    t = o - 1.0
    if scaling == "raw":
        values = t
    elif scaling == "bulk_s":
        values = t / n
    elif scaling == "edge_sigma":
        values = t / np.sqrt(n)
    else:
        raise DomainError(f"unknown scaling {scaling!r}")
    edges = np.asarray(edges, dtype=float)
    counts, edges = np.histogram(values, bins=edges)
    total = counts.sum()
    if total == 0:
        raise DomainError("overlap_histogram: no records fall on the grid")
    density = counts / (total * np.diff(edges))
    return density, edges


def compare(series, theory_curve):
    """Empirical series against a theory curve (callable or per-bin array)."""
    if callable(theory_curve):
        theory = np.asarray([theory_curve(c) for c in series.centers], dtype=float)
    else:
        theory = np.asarray(theory_curve, dtype=float)
        if theory.shape != series.means.shape:
            raise DomainError("theory array must match the number of bins")
    return ComparisonReport(centers=series.centers, counts=series.counts,
                            theory=theory, empirical=series.means,
                            std_errors=series.std_errors)


def tail_slope(values, centers, fit_range):
    """Least-squares slope of log10(values) vs log10(centers) on fit_range.

    Returns ``(slope, stderr)``.  Needs at least 10 populated bins inside the
    range.
    """
    values = np.asarray(values, dtype=float)
    centers = np.asarray(centers, dtype=float)
    lo, hi = fit_range
    sel = (centers >= lo) & (centers <= hi) & (values > 0.0)
    if np.count_nonzero(sel) < 10:
        raise DomainError(
            f"tail_slope needs >= 10 populated bins in {fit_range}, "
            f"got {int(np.count_nonzero(sel))}")
    x = np.log10(centers[sel])
    y = np.log10(values[sel])
    k = x.size
    xbar = x.mean()
    sxx = np.sum((x - xbar) ** 2)
    slope = np.sum((x - xbar) * (y - y.mean())) / sxx
    resid = y - (y.mean() + slope * (x - xbar))
    sigma2 = np.sum(resid**2) / (k - 2)
    return float(slope), float(np.sqrt(sigma2 / sxx))
