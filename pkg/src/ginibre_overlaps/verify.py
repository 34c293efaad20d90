"""Verification suites: every closed-form identity and statistical acceptance
check, packaged as data so the CLI and the test suite share one implementation.

The statistical checks compare binned Monte Carlo estimates against theory.
Two conventions matter and are applied throughout:

* Bin comparators are density-weighted averages of the theory over the bin
  (the exact expectation of the binned estimator), not point values; with
  order-one bins the point value can differ from the bin expectation by far
  more than the Monte Carlo error.
* Bins never touch the real axis for GinOE conditional means: the overlap
  intensity grows like 1/|Im z| there, so the expected overlap sum of any
  axis-touching bin is logarithmically divergent and the estimator would be
  dominated by rare near-axis events.  All windows keep |Im z| >= 2, which
  also matches the validity condition of the edge scaling regime.
"""

from dataclasses import dataclass, field

import numpy as np

from . import distributions, mc, stats, theory
from .errors import DomainError

__all__ = [
    "CheckResult",
    "bulk_probe_points",
    "disk_averaged_conditional_mean",
    "finite_n_conditional_check",
    "depletion_probe_check",
    "edge_probe_check",
    "bulk_tail_check",
    "realaxis_tail_check",
    "bulk_shape_check",
    "depletion_histogram_data",
    "structural_invariant_checks",
    "specfun_checks",
    "theory_checks",
    "distributions_checks",
    "mc_checks",
    "statistical_checks",
    "report",
]

# Acceptance campaign scales (matrix size, matrix count).
FINITE_N_SCALE = (50, 20000)
REGIME_SCALE = (250, 10000)
GINUE_TAIL_SAMPLES = 3000
DEFAULT_SEED = 20240814

Y_MIN = 2.0  # near-axis exclusion for GinOE conditional-mean bins


@dataclass
class CheckResult:
    name: str
    passed: bool
    value: float = np.nan
    target: float = np.nan
    tolerance: str = ""
    detail: dict = field(default_factory=dict)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        out = f"[{status}] {self.name}"
        if np.isfinite(self.value) or np.isfinite(self.target):
            out += f": value={self.value:.6g} target={self.target:.6g}"
        if self.tolerance:
            out += f" ({self.tolerance})"
        return out


def report(results):
    """Machine-readable report of a list of CheckResult."""
    return {
        "passed": all(r.passed for r in results),
        "checks": [
            {"name": r.name, "passed": r.passed, "value": _jsonable(r.value),
             "target": _jsonable(r.target), "tolerance": r.tolerance,
             "detail": {k: _jsonable(v) for k, v in r.detail.items()}}
            for r in results
        ],
    }


def _jsonable(v):
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, np.ndarray):
        return [_jsonable(x) for x in v.tolist()]
    if isinstance(v, float) and not np.isfinite(v):
        return str(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


# --------------------------------------------------------------------------
# probe layout and bin-averaged comparators


def bulk_probe_points(n, count=20, min_im=2.0, max_abs_frac=0.9):
    """Deterministic probe grid inside the droplet, away from the real axis."""
    rmax = max_abs_frac * np.sqrt(n)
    ys = np.arange(min_im, rmax, 0.8)
    points = []
    for y in ys:
        xmax = np.sqrt(max(rmax**2 - y * y, 0.0))
        for x in np.arange(0.0, xmax, 1.4):
            points.append(complex(x, y))
            if x > 0:
                points.append(complex(-x, y))
    points.sort(key=lambda z: (abs(z), z.imag, z.real))
    if len(points) < count:
        raise DomainError(f"probe layout produced only {len(points)} points")
    return points[:count]


def _disk_nodes(center, radius, n_r=24, n_th=32):
    u, wu = np.polynomial.legendre.leggauss(n_r)   # u = (r/radius)^2 on [0, 1]
    u = 0.5 * (u + 1.0)
    wu = 0.5 * wu
    th = 2.0 * np.pi * (np.arange(n_th) + 0.5) / n_th
    r = radius * np.sqrt(u)
    z = center + r[:, None] * np.exp(1j * th[None, :])
    w = np.repeat(wu[:, None] / n_th, n_th, axis=1)
    return z.ravel(), w.ravel()


def disk_averaged_conditional_mean(kind, n, center, radius):
    """Expectation of the binned conditional-mean estimator over a disk bin.

    Int O_n(z) dA / Int rho_n(z) dA: the density-weighted average of
    conditional_mean over the bin, which is what the empirical bin mean
    estimates.
    """
    z, w = _disk_nodes(center, radius)
    if kind == theory.GINUE:
        num = np.sum(w * theory.overlap_ginue(n, z))
        den = np.sum(w * theory.density_ginue(n, z))
    else:
        num = np.sum(w * theory.overlap_ginoe(n, z))
        den = np.sum(w * theory.density_ginoe_complex(n, z))
    return float(num / den)


def _strip_averages(n, xi, half_height, half_width):
    """Finite-n and limiting bin expectations for a depletion strip probe.

    Returns ``(limit_point, limit_bin, finite_bin)``: the limiting ratio at
    the probe, its strip average, and the exact finite-n expectation of the
    scaled bin mean, all in the (1/n)-scaled variable.
    """
    ys, wy = np.polynomial.legendre.leggauss(24)
    ys = xi + half_height * ys
    xs, wx = np.polynomial.legendre.leggauss(24)
    xs = half_width * xs
    num = den = 0.0
    for yv, wv in zip(ys, wy):
        row = xs + 1j * yv
        num += wv * np.sum(wx * theory.overlap_ginoe(n, row))
        den += wv * np.sum(wx * theory.density_ginoe_complex(n, row))
    finite_bin = num / den / n
    lim_num = np.sum(wy * theory.overlap_limit_depletion(ys))
    lim_den = np.sum(wy * theory.density_limit("depletion", xi=ys))
    limit_bin = float(lim_num / lim_den)
    limit_point = (theory.overlap_limit_depletion(xi)
                   / theory.density_limit("depletion", xi=xi))
    return float(limit_point), limit_bin, float(finite_bin)


def _edge_averages(n, eta, half_width, y_min=Y_MIN):
    """Limiting and finite-n bin expectations for an edge annulus probe."""
    rn = np.sqrt(n)
    es, we = np.polynomial.legendre.leggauss(24)
    es = eta + half_width * es
    circ = rn + es
    lim_num = np.sum(we * theory.overlap_limit_edge(es) * circ)
    lim_den = np.sum(we * theory.density_limit("edge", eta=es) * circ)
    limit_bin = float(lim_num / lim_den)
    num = den = 0.0
    for ev, wv in zip(es, we):
        r = rn + ev
        th = np.linspace(np.arcsin(min(y_min / r, 1.0)), np.pi / 2, 300)
        zs = r * np.exp(1j * th)
        num += wv * r * np.trapezoid(theory.overlap_ginoe(n, zs), th)
        den += wv * r * np.trapezoid(theory.density_ginoe_complex(n, zs), th)
    finite_bin = float(num / den / rn)
    limit_point = float(theory.overlap_limit_edge(eta)
                        / theory.density_limit("edge", eta=eta))
    return limit_point, limit_bin, finite_bin


# --------------------------------------------------------------------------
# statistical acceptance checks (criteria over campaigns)


def finite_n_conditional_check(result, *, probes=None, radius=1.0, min_count=1000,
                               z_tol=3.0, rel_tol=0.05, frac_required=0.95):
    """Finite-N mean-self-overlap formula vs campaign conditional means.

    Disk bins around probe points; pass iff at least `frac_required` of the
    well-populated bins satisfy both |z-score| <= z_tol and relative error
    <= rel_tol against the bin-averaged conditional mean.
    """
    kind = result.summary["kind"]
    n = result.summary["n"]
    if probes is None:
        probes = bulk_probe_points(n)
    records = result.complex_records() if kind == theory.GINOE else result.records
    spec = stats.BinSpec(centers=tuple(probes), window=radius, geometry="disk",
                         min_count=min_count)
    series = stats.conditional_mean_series(records, spec)
    comparator = np.array(
        [disk_averaged_conditional_mean(kind, n, c, radius) for c in probes])
    rep = stats.compare(series, comparator)
    good = series.counts >= min_count
    ok = (np.abs(rep.z_scores) <= z_tol) & (rep.relative_errors <= rel_tol)
    frac = float(np.mean(ok[good])) if good.any() else 0.0
    detail = {
        "probes": [[c.real, c.imag] for c in probes],
        "counts": series.counts,
        "empirical": series.means,
        "theory": comparator,
        "z_scores": rep.z_scores,
        "relative_errors": rep.relative_errors,
        "well_populated": int(good.sum()),
    }
    return CheckResult(
        name=f"finite-n conditional mean, {kind} n={n}",
        passed=bool(good.any() and frac >= frac_required),
        value=frac, target=frac_required,
        tolerance=f"|z|<={z_tol} and rel<={rel_tol:.0%} in >= {frac_required:.0%} of bins",
        detail=detail)


DEPLETION_WINDOWS = {0.25: 0.05, 0.5: 0.05, 1.0: 0.075, 2.0: 0.15, 4.0: 0.1}


def depletion_probe_check(result, xi, *, half_width_frac=0.15, rel_tol=0.05):
    """One depletion probe: scaled conditional mean at z = i*xi vs the limit.

    Pass tolerance is max(rel_tol, 3 SE) around the strip-averaged limiting
    ratio.  The detail carries the exact finite-N bin expectation, which
    quantifies the known finite-size deficit at large xi.
    """
    n = result.summary["n"]
    samples = result.summary["samples"]
    half_height = DEPLETION_WINDOWS.get(xi, 0.1)
    half_width = half_width_frac * np.sqrt(n)
    spec = stats.BinSpec(centers=(0.0,), window=half_width, geometry="strip",
                         im_center=xi, im_halfwidth=half_height)
    series = stats.conditional_mean_series(result.complex_records(), spec)
    limit_point, limit_bin, finite_bin = _strip_averages(
        n, xi, half_height, half_width)
    emp = series.means[0] / n
    se = series.std_errors[0] / n
    tol = max(rel_tol * limit_bin, 3.0 * se)
    dev = abs(emp - limit_bin)
    return CheckResult(
        name=f"depletion conditional mean at xi={xi}, n={n}",
        passed=bool(dev <= tol),
        value=float(emp), target=limit_bin,
        tolerance=f"max({rel_tol:.0%}, 3 SE)={tol:.4f}",
        detail={"count": int(series.counts[0]), "se": float(se),
                "limit_point": limit_point, "limit_bin": limit_bin,
                "finite_n_bin_expectation": finite_bin,
                "samples": samples, "deviation": float(dev)})


def edge_probe_check(result, eta, *, half_width=0.15, rel_tol=0.07, y_min=Y_MIN):
    """One edge probe: scaled conditional mean on an annulus vs the limiting curve.

    The annulus excludes |Im z| < y_min (edge regime validity; axis-touching
    bins have divergent overlap expectations).  Hard relative tolerance, no
    SE arm.
    """
    n = result.summary["n"]
    rn = np.sqrt(n)
    records = result.complex_records()
    z = records["z"]
    sel = ((np.abs(np.abs(z) - (rn + eta)) <= half_width)
           & (np.abs(z.imag) >= y_min))
    chosen = records["overlap"][sel]
    limit_point, limit_bin, finite_bin = _edge_averages(n, eta, half_width, y_min)
    emp = chosen.mean() / rn if chosen.size else np.nan
    se = (chosen.std(ddof=1) / np.sqrt(chosen.size) / rn) if chosen.size > 1 else np.nan
    dev = abs(emp - limit_bin) / limit_bin
    return CheckResult(
        name=f"edge conditional mean at eta={eta:+.2f}, n={n}",
        passed=bool(np.isfinite(dev) and dev <= rel_tol),
        value=float(emp), target=limit_bin,
        tolerance=f"rel<={rel_tol:.0%}",
        detail={"count": int(chosen.size), "se": float(se),
                "limit_point": limit_point, "limit_bin": limit_bin,
                "finite_n_bin_expectation": finite_bin,
                "relative_deviation": float(dev)})


def _bulk_annulus_records(result, lo_frac=0.45, hi_frac=0.55, y_min=None):
    n = result.summary["n"]
    rn = np.sqrt(n)
    records = (result.complex_records()
               if result.summary["kind"] == theory.GINOE else result.records)
    z = records["z"]
    sel = (np.abs(z) >= lo_frac * rn) & (np.abs(z) <= hi_frac * rn)
    if y_min is not None:
        sel &= np.abs(z.imag) >= y_min
    return records[sel]


def bulk_tail_check(result, *, fit_range=(3.0, 30.0), target=-3.0, tol=0.3):
    """Tail exponent of the bulk self-overlap distribution (s = (O-1)/n).

    The local slope of the limiting law on this window is -2.91 (the e^{-c/s}
    body correction is still active at s ~ 3), well inside the +-0.3 band.
    """
    n = result.summary["n"]
    kind = result.summary["kind"]
    y_min = Y_MIN if kind == theory.GINOE else None
    records = _bulk_annulus_records(result, 0.40, 0.60, y_min=y_min)
    edges = np.logspace(np.log10(0.05), np.log10(60.0), 61)
    dens, edges = stats.overlap_histogram(records, "bulk_s", edges, n)
    centers = np.sqrt(edges[:-1] * edges[1:])
    slope, err = stats.tail_slope(dens, centers, fit_range)
    return CheckResult(
        name=f"bulk overlap tail exponent, {kind} n={n}",
        passed=bool(abs(slope - target) <= tol),
        value=slope, target=target, tolerance=f"+-{tol}",
        detail={"stderr": err, "records": int(records.size),
                "fit_range": list(fit_range)})


def realaxis_tail_check(result, *, fit_range=(3.0, 30.0), target=-2.0, tol=0.3,
                        x_frac=0.7):
    """Tail exponent of the real-eigenvalue self-overlap distribution."""
    n = result.summary["n"]
    rn = np.sqrt(n)
    records = result.real_records()
    records = records[np.abs(records["z"].real) <= x_frac * rn]
    edges = np.logspace(np.log10(0.05), np.log10(60.0), 61)
    dens, edges = stats.overlap_histogram(records, "bulk_s", edges, n)
    centers = np.sqrt(edges[:-1] * edges[1:])
    slope, err = stats.tail_slope(dens, centers, fit_range)
    return CheckResult(
        name=f"real-eigenvalue overlap tail exponent, ginoe n={n}",
        passed=bool(abs(slope - target) <= tol),
        value=slope, target=target, tolerance=f"+-{tol}",
        detail={"stderr": err, "records": int(records.size)})


def _annulus_averaged_bulk_pdf(s_edges, lo_frac, hi_frac):
    """Normalized bulk law averaged over |w| in [lo, hi] and over each s bin."""
    rs, wr = np.polynomial.legendre.leggauss(16)
    rs = 0.5 * (rs + 1.0) * (hi_frac - lo_frac) + lo_frac
    wr = wr * rs  # annulus measure ~ r dr
    wr = wr / wr.sum()
    out = np.zeros(len(s_edges) - 1)
    for i, (a, b) in enumerate(zip(s_edges[:-1], s_edges[1:])):
        ss, ws = np.polynomial.legendre.leggauss(8)
        ss = 0.5 * (ss + 1.0) * (b - a) + a
        ws = 0.5 * ws  # mean over the bin
        val = 0.0
        for r, wrv in zip(rs, wr):
            val += wrv * np.sum(ws * distributions.normalized_pdf(
                "bulk_ginue", ss, w=r))
        out[i] = val
    return out


def bulk_shape_check(result, *, lo_frac=0.45, hi_frac=0.55, sup_tol=0.05):
    """Sup-distance of the GinOE complex-bulk histogram from the GinUE bulk law.

    The comparator is the GinUE limiting density averaged over the annulus and
    over each histogram bin, so binning and |w| mixing cancel exactly.
    """
    n = result.summary["n"]
    records = _bulk_annulus_records(result, lo_frac, hi_frac, y_min=Y_MIN)
    edges = np.linspace(0.0, 3.0, 31)
    dens, edges = stats.overlap_histogram(records, "bulk_s", edges, n)
    curve = _annulus_averaged_bulk_pdf(edges, lo_frac, hi_frac)
    # the histogram is normalized on [0, 3]; renormalize the curve's mass there
    curve_mass = np.sum(curve * np.diff(edges))
    sup = float(np.max(np.abs(dens - curve / curve_mass)))
    return CheckResult(
        name=f"bulk overlap distribution shape, {result.summary['kind']} n={n}",
        passed=bool(sup <= sup_tol),
        value=sup, target=0.0, tolerance=f"sup<={sup_tol}",
        detail={"records": int(records.size), "edges": edges, "density": dens,
                "curve": curve / curve_mass, "curve_mass_on_grid": curve_mass})


def depletion_histogram_data(result, *, box_x_frac=0.5, box_y=1.0):
    """Depletion-region overlap histogram with both candidate limiting curves.

    The limiting law here is an open problem, so this is emitted for
    inspection with no pass/fail threshold.  The spatial box is
    |Re z| <= box_x_frac * sqrt(n), |Im z| <= box_y (recorded in the output).
    """
    n = result.summary["n"]
    rn = np.sqrt(n)
    records = result.complex_records()
    z = records["z"]
    sel = (np.abs(z.real) <= box_x_frac * rn) & (np.abs(z.imag) <= box_y)
    records = records[sel]
    edges = np.logspace(np.log10(0.02), np.log10(50.0), 41)
    dens, edges = stats.overlap_histogram(records, "bulk_s", edges, n)
    centers = np.sqrt(edges[:-1] * edges[1:])
    bulk_curve = np.array([distributions.normalized_pdf("bulk_ginue", s, w=0.0)
                           for s in centers])
    real_curve = np.array([distributions.normalized_pdf("realbulk_ginoe", s, x=0.0)
                           for s in centers])
    return CheckResult(
        name=f"depletion overlap histogram (no threshold), ginoe n={n}",
        passed=True, tolerance="informational",
        detail={"records": int(records.size), "edges": edges,
                "density": dens, "centers": centers,
                "bulk_ginue_curve": bulk_curve,
                "realbulk_ginoe_curve": real_curve,
                "selection": {"abs_re_max": box_x_frac * rn, "abs_im_max": box_y}})


def structural_invariant_checks(results, *, seed=DEFAULT_SEED,
                                bound_trials=10000, row_sum_matrices=20):
    """Cross-cutting invariants over acceptance campaigns plus fresh diagnostics."""
    out = []
    # overlaps never dip below 1 (Cauchy-Schwarz with bi-orthonormalization)
    min_overlap = min(float(r.records["overlap"].min()) for r in results)
    out.append(CheckResult(
        name="self-overlaps >= 1 - 1e-10 across all campaigns",
        passed=bool(min_overlap >= 1.0 - 1e-10),
        value=min_overlap, target=1.0, tolerance="slack 1e-10"))

    # overlap-matrix completeness on small diagnostics
    rng_cfg = mc.EnsembleConfig(kind=theory.GINOE, n=80, samples=1, master_seed=seed)
    worst = 0.0
    for i in range(row_sum_matrices):
        kind = theory.GINOE if i % 2 == 0 else theory.GINUE
        cfg = mc.EnsembleConfig(kind=kind, n=80, samples=1, master_seed=seed + i)
        _, omat = mc.overlap_matrix(mc.sample_matrix(cfg, 0))
        worst = max(worst, float(np.max(np.abs(omat.sum(axis=1) - 1.0))))
    out.append(CheckResult(
        name="overlap-matrix rows sum to 1 (n=80 diagnostics)",
        passed=bool(worst <= 1e-8), value=worst, target=0.0, tolerance="<="
        " 1e-8"))

    # conjugate pairs carry equal overlaps
    worst_pair = 0.0
    for i in range(row_sum_matrices):
        cfg = mc.EnsembleConfig(kind=theory.GINOE, n=60, samples=1,
                                master_seed=seed + 1000 + i)
        w, overlaps, _ = mc.eigen_overlaps(mc.sample_matrix(cfg, 0))
        is_real, partner = mc.classify_eigenvalues(w, overlaps, 60)
        cplx = np.flatnonzero(~is_real)
        if cplx.size:
            rel = np.abs(overlaps[cplx] - overlaps[partner[cplx]]) / overlaps[cplx]
            worst_pair = max(worst_pair, float(rel.max()))
    out.append(CheckResult(
        name="conjugate pairs carry equal overlaps",
        passed=bool(worst_pair <= 1e-6), value=worst_pair, target=0.0,
        tolerance="rel <= 1e-6"))

    # perturbation bound over randomized trials
    rng = np.random.default_rng(seed)
    violations = 0
    worst_ratio = 0.0
    trials = 0
    n_pert = 20
    while trials < bound_trials:
        g_cfg = mc.EnsembleConfig(
            kind=theory.GINOE if trials % 2 == 0 else theory.GINUE,
            n=n_pert, samples=1, master_seed=seed + 7 * trials + 3)
        g = mc.sample_matrix(g_cfg, 0)
        w, s = np.linalg.eig(g)
        s_inv = np.linalg.inv(s)
        bounds = np.sqrt((np.sum(np.abs(s_inv) ** 2, axis=1)
                          * np.sum(np.abs(s) ** 2, axis=0)).real)
        for _ in range(25):
            p = rng.standard_normal((n_pert, n_pert))
            p /= np.linalg.norm(p, 2)
            derivs = np.abs(np.einsum("ij,jk,ki->i", s_inv, p, s))
            ratio = derivs / bounds
            worst_ratio = max(worst_ratio, float(ratio.max()))
            violations += int(np.count_nonzero(ratio > 1.0 + 1e-8))
            trials += n_pert
            if trials >= bound_trials:
                break
    out.append(CheckResult(
        name=f"perturbation bound |dz| <= sqrt(O) over {trials} trials",
        passed=bool(violations == 0), value=worst_ratio, target=1.0,
        tolerance="ratio <= 1 + 1e-8",
        detail={"violations": violations, "trials": trials}))

    # determinism: re-run a slice of the first campaign
    cfg0 = mc.EnsembleConfig(kind=results[0].summary["kind"],
                             n=results[0].summary["n"],
                             samples=min(50, results[0].summary["samples"]),
                             master_seed=results[0].summary["master_seed"])
    slice_rerun = mc.run_campaign(cfg0, workers=2)
    original = results[0].records
    original = original[original["sample_index"] < cfg0.samples]
    identical = original.tobytes() == slice_rerun.records.tobytes()
    out.append(CheckResult(
        name="record stream determinism under re-run",
        passed=bool(identical), value=float(identical), target=1.0,
        tolerance="byte-identical"))
    return out


# --------------------------------------------------------------------------
# formula-only suites


def specfun_checks():
    from . import specfun
    out = []
    checks = [
        ("ln_gamma(11) = ln 10!", specfun.ln_gamma(11.0),
         15.104412573075516, 1e-13),
        ("Q(3, 2) = 5 e^-2", specfun.reg_gamma_q(3, 2.0),
         0.6766764161830635, 1e-12),
        ("erfc(1)", specfun.erfc(1.0), 0.15729920705028513, 1e-12),
        ("erfcx(1) = e erfc(1)", specfun.erfcx(1.0), 0.427583576155807, 1e-12),
        ("P_3(2) = 17", specfun.legendre_p(3, 2.0), 17.0, 1e-12),
    ]
    for name, value, target, rtol in checks:
        out.append(CheckResult(name=name, passed=bool(abs(value / target - 1) <= rtol),
                               value=value, target=target, tolerance=f"rel {rtol:g}"))
    # recurrence identity on a grid
    worst = 0.0
    for n in (1.0, 7.0, 60.0, 240.0, 500.0):
        for frac in (0.0, 0.4, 1.0, 1.6, 2.0):
            a = frac * n
            step = (np.exp(n * np.log(a) - a - specfun.ln_gamma(n + 1.0))
                    if a > 0 else 0.0)
            lhs = specfun.reg_gamma_q(n + 1.0, a)
            rhs = specfun.reg_gamma_q(n, a) + step
            worst = max(worst, abs(lhs - rhs) / max(lhs, 1e-300))
    out.append(CheckResult(name="incomplete-gamma recurrence on grid",
                           passed=bool(worst <= 1e-10), value=worst, target=0.0,
                           tolerance="rel <= 1e-10"))
    # erfcx consistency
    x = np.linspace(0.0, 20.0, 101)
    dev = float(np.max(np.abs(specfun.erfcx(x) * np.exp(-x * x) - specfun.erfc(x))))
    out.append(CheckResult(name="erfcx e^{-x^2} = erfc on [0, 20]",
                           passed=bool(dev <= 1e-13), value=dev, target=0.0,
                           tolerance="abs <= 1e-13"))
    # quadrature example
    val, _ = specfun.integrate_semi_infinite(lambda r: np.exp(-r) * (r + 1.0) ** 3)
    out.append(CheckResult(name="semi-infinite quadrature of e^-R (R+1)^3 = 16",
                           passed=bool(abs(val - 16.0) <= 1e-9), value=val,
                           target=16.0, tolerance="abs 1e-9"))
    return out


def theory_checks(*, bulk_n=4000, limit_n=10**6):
    """Closed-form identities plus the analytic limit-consistency grids."""
    from . import specfun
    out = []

    # determinant-average identity at mu = 0
    worst = 0.0
    for n in (1, 5, 20, 50):
        for az in (0.5, 2.0, 5.0):
            a = az * az
            ref = np.exp(a + specfun.ln_gamma(n + 1.0)) * specfun.reg_gamma_q(n + 1, a)
            worst = max(worst, abs(theory.avg_det_charpoly(n, az, 0.0) / ref - 1))
    out.append(CheckResult(name="avg_det_charpoly(mu=0) = e^a Gamma(n+1, a)",
                           passed=bool(worst <= 1e-9), value=worst, target=0.0,
                           tolerance="rel <= 1e-9, n <= 50, |z| <= 5"))

    # mu derivative closed form vs one-sided Richardson difference
    n_block, z = 4, 1 + 1j
    h = 1e-5
    f0 = theory.avg_det_charpoly(n_block, z, 0.0)
    d1 = (theory.avg_det_charpoly(n_block, z, h) - f0) / h
    d2 = (theory.avg_det_charpoly(n_block, z, h / 2) - f0) / (h / 2)
    fd = 2.0 * d2 - d1
    _, deriv = theory.avg_det_charpoly_mu0(n_block, z)
    out.append(CheckResult(name="avg_det mu-derivative vs finite difference",
                           passed=bool(abs(fd / deriv - 1) <= 1e-6), value=fd,
                           target=deriv, tolerance="rel <= 1e-6"))

    # near-axis prefactor: closed form vs its integral representation
    worst = max(abs(theory.overlap_prefactor_ginoe(y, method="quadrature")
                    / theory.overlap_prefactor_ginoe(y) - 1)
                for y in (0.3, 0.5, 1.0, 2.5))
    out.append(CheckResult(name="axis prefactor closed form = gap integral",
                           passed=bool(worst <= 1e-10), value=worst, target=0.0,
                           tolerance="rel <= 1e-10"))

    # bulk limit consistency (formula only)
    n = bulk_n
    guard = 5.0 / np.sqrt(n)
    ws = [complex(x, y) for x in np.linspace(-0.75, 0.75, 7)
          for y in np.linspace(guard, 0.78, 6) if abs(complex(x, y)) <= 0.8]
    dev = max(abs(theory.overlap_ginoe(n, np.sqrt(n) * w) / n
                  - theory.overlap_limit_bulk(w)) for w in ws)
    out.append(CheckResult(
        name=f"bulk limit consistency at n={n}",
        passed=bool(dev <= 0.02 / np.pi), value=dev, target=0.0,
        tolerance="abs <= 0.02/pi on |w|<=0.8, Im w >= 5/sqrt(n)"))

    # edge limit consistency
    n = limit_n
    etas = np.linspace(-2.0, 2.0, 17)
    dev = max(abs(theory.overlap_ginoe(n, (np.sqrt(n) + e) * 1j) / np.sqrt(n)
                  - theory.overlap_limit_edge(e)) for e in etas)
    out.append(CheckResult(
        name=f"edge limit consistency at n={n}",
        passed=bool(dev <= 0.01 * theory.overlap_limit_edge(0.0)),
        value=dev, target=0.0, tolerance="abs <= 1% of edge(0)"))

    # ginue edge consistency and rotational symmetry
    dev = 0.0
    rot = 0.0
    for e in (-1.5, 0.0, 1.0):
        vals = [theory.overlap_ginue(n, (np.sqrt(n) + e) * np.exp(1j * th))
                / np.sqrt(n) for th in (0.4, 1.2, 2.2)]
        rot = max(rot, float(np.ptp(vals) / abs(vals[0])))
        dev = max(dev, abs(vals[0] - theory.overlap_limit_edge(e)))
    out.append(CheckResult(
        name=f"ginue edge limit consistency at n={n}",
        passed=bool(dev <= 0.01 * theory.overlap_limit_edge(0.0) and rot <= 1e-9),
        value=dev, target=0.0,
        tolerance="abs <= 1% of edge(0); theta-spread <= 1e-9 rel "
                  "(n*eps evaluation floor)"))

    # depletion limit consistency
    dev = 0.0
    for xi in (0.25, 0.5, 1.0, 2.0):
        for delta in (0.0, 0.5):
            val = theory.overlap_ginoe(n, np.sqrt(n) * delta + 1j * xi) / n
            ref = theory.overlap_limit_depletion(xi, delta)
            dev = max(dev, abs(val / ref - 1))
    out.append(CheckResult(
        name=f"depletion limit consistency at n={n}",
        passed=bool(dev <= 0.01), value=dev, target=0.0, tolerance="rel <= 1%"))

    # symmetry of the finite-N formulas
    sym = 0.0
    for z in (1.5 + 2.0j, -2.0 + 0.6j):
        for f in (theory.overlap_ginoe, theory.density_ginoe_complex):
            a = f(60, z)
            sym = max(sym, abs(f(60, z.conjugate()) - a) / a,
                      abs(f(60, complex(-z.real, z.imag)) - a) / a)
    out.append(CheckResult(name="finite-n formulas depend only on (|y|, |z|)",
                           passed=bool(sym <= 1e-14), value=sym, target=0.0,
                           tolerance="rel <= 1e-14"))
    return out


def distributions_checks():
    """Moment oracles for the finite-N and limiting self-overlap densities."""
    from scipy.integrate import quad
    out = []

    worst0 = worst1 = 0.0
    for n in (3, 5, 10):
        for az in (0.5, 1.0, 2.0):
            m0, _ = quad(lambda o: distributions.jpdf_ginue_finite(n, o, az),
                         1.0, np.inf, limit=400)
            m1, _ = quad(lambda o: o * distributions.jpdf_ginue_finite(n, o, az),
                         1.0, np.inf, limit=400)
            worst0 = max(worst0, abs(m0 / theory.density_ginue(n, az) - 1))
            worst1 = max(worst1, abs(m1 / theory.overlap_ginue(n, az) - 1))
    out.append(CheckResult(name="finite-n jpdf zeroth moment = density",
                           passed=bool(worst0 <= 1e-8), value=worst0, target=0.0,
                           tolerance="rel <= 1e-8 on n in {3,5,10}, |z| in {.5,1,2}"))
    out.append(CheckResult(name="finite-n jpdf first moment = mean overlap",
                           passed=bool(worst1 <= 1e-8), value=worst1, target=0.0,
                           tolerance="rel <= 1e-8 on same grid"))

    worst0 = worst1 = 0.0
    for w in (0.0, 0.5j, 0.6 + 0.4j):
        m0, _ = quad(lambda s: distributions.jpdf_limit_bulk_ginue(s, w),
                     0, np.inf, limit=300)
        m1, _ = quad(lambda s: s * distributions.jpdf_limit_bulk_ginue(s, w),
                     0, np.inf, limit=300)
        worst0 = max(worst0, abs(m0 * np.pi - 1))
        worst1 = max(worst1, abs(m1 / theory.overlap_limit_bulk(w) - 1))
    out.append(CheckResult(name="bulk limit jpdf moments (marginal, mean)",
                           passed=bool(worst0 <= 1e-8 and worst1 <= 1e-8),
                           value=max(worst0, worst1), target=0.0,
                           tolerance="rel <= 1e-8"))

    worst0 = worst1 = 0.0
    for eta in (-1.0, 0.0, 1.0):
        m0, _ = quad(lambda s: distributions.jpdf_limit_edge_ginue(s, eta),
                     0, np.inf, limit=400)
        m1, _ = quad(lambda s: s * distributions.jpdf_limit_edge_ginue(s, eta),
                     0, np.inf, limit=400)
        worst0 = max(worst0, abs(m0 / theory.density_limit("edge", eta=eta) - 1))
        worst1 = max(worst1, abs(m1 / theory.overlap_limit_edge(eta) - 1))
    out.append(CheckResult(
        name="edge limit jpdf moments adjudicate the internal argument",
        passed=bool(worst0 <= 1e-6 and worst1 <= 1e-6),
        value=max(worst0, worst1), target=0.0,
        tolerance="rel <= 1e-6 at eta in {-1, 0, 1}"))

    s = np.logspace(2, 4, 50)
    slope_b, _ = stats.tail_slope(distributions.jpdf_limit_bulk_ginue(s, 0.0),
                                  s, (1e2, 1e4))
    slope_r, _ = stats.tail_slope(distributions.jpdf_limit_realbulk_ginoe(s, 0.0),
                                  s, (1e2, 1e4))
    out.append(CheckResult(name="limiting tail exponents (bulk -3, real bulk -2)",
                           passed=bool(abs(slope_b + 3) <= 0.02
                                       and abs(slope_r + 2) <= 0.02),
                           value=slope_b, target=-3.0, tolerance="+-0.02",
                           detail={"realbulk_slope": slope_r}))

    n = 500
    worst = max(abs(n * distributions.jpdf_ginue_finite(n, 1.0 + n * s0, 0.0)
                    / distributions.jpdf_limit_bulk_ginue(s0, 0.0) - 1)
                for s0 in (0.5, 1.0, 2.0))
    out.append(CheckResult(name=f"finite-n jpdf converges to bulk law at n={n}",
                           passed=bool(worst <= 0.03), value=worst, target=0.0,
                           tolerance="rel <= 3%"))
    return out


def mc_checks(*, schur_trials=100, det_samples=10**5, seed=DEFAULT_SEED):
    """Schur-route equivalence and the Monte Carlo determinant identity."""
    out = []
    rng = np.random.default_rng(seed)
    worst = 0.0
    done = 0
    attempts = 0
    while done < schur_trials and attempts < 100 * schur_trials:
        attempts += 1
        n = int(rng.choice([4, 6, 10]))
        cfg = mc.EnsembleConfig(kind=theory.GINOE, n=n, samples=1,
                                master_seed=seed + attempts)
        g = mc.sample_matrix(cfg, 0)
        w, _, _ = mc.eigen_overlaps(g)
        cplx = w[w.imag > 1e-8 * np.sqrt(n)]
        if cplx.size == 0:
            continue
        z = cplx[int(rng.integers(cplx.size))]
        o_schur, o_direct = mc.schur_cross_check(g, z)
        worst = max(worst, abs(o_schur - o_direct) / o_direct)
        done += 1
    out.append(CheckResult(
        name=f"schur route = eigendecomposition route ({done} trials)",
        passed=bool(done == schur_trials and worst <= 1e-8),
        value=worst, target=0.0, tolerance="rel <= 1e-8",
        detail={"trials": done}))

    # MC average of det[(x I - G)^2 + y^2 I] = |det(z I - G)|^2 over 3x3 samples
    n, z = 3, 1 + 1j
    gen = np.random.Generator(np.random.Philox(key=(seed << 64) + 12345))
    mats = gen.standard_normal((det_samples, n, n))
    x, y = z.real, z.imag
    shifted = x * np.eye(n) - mats
    dets = np.linalg.det(shifted @ shifted + y * y * np.eye(n))
    mean = float(dets.mean())
    se = float(dets.std(ddof=1) / np.sqrt(det_samples))
    ref = theory.avg_det_charpoly(n, z, 0.0)
    out.append(CheckResult(
        name=f"MC determinant average vs closed form ({det_samples} samples)",
        passed=bool(abs(mean - ref) <= 3.0 * se),
        value=mean, target=ref, tolerance=f"3 SE = {3*se:.4g}",
        detail={"se": se}))
    return out


def statistical_checks(ginoe_fine=None, ginue_fine=None, ginoe_regime=None,
                       ginue_tail=None, *, seed=DEFAULT_SEED, workers=None):
    """Campaign-driven acceptance checks; campaigns are run if not supplied."""
    n_fine, m_fine = FINITE_N_SCALE
    n_reg, m_reg = REGIME_SCALE
    if ginoe_fine is None:
        ginoe_fine = mc.run_campaign(mc.EnsembleConfig(
            theory.GINOE, n_fine, m_fine, seed), workers=workers)
    if ginue_fine is None:
        ginue_fine = mc.run_campaign(mc.EnsembleConfig(
            theory.GINUE, n_fine, m_fine, seed + 1), workers=workers)
    if ginoe_regime is None:
        ginoe_regime = mc.run_campaign(mc.EnsembleConfig(
            theory.GINOE, n_reg, m_reg, seed + 2), workers=workers)
    if ginue_tail is None:
        ginue_tail = mc.run_campaign(mc.EnsembleConfig(
            theory.GINUE, n_reg, GINUE_TAIL_SAMPLES, seed + 3), workers=workers)

    out = [
        finite_n_conditional_check(ginoe_fine),
        finite_n_conditional_check(ginue_fine),
    ]
    for xi in (0.25, 0.5, 1.0, 2.0, 4.0):
        out.append(depletion_probe_check(ginoe_regime, xi))
    for eta in (-1.5, -1.0, 0.0, 1.0):
        out.append(edge_probe_check(ginoe_regime, eta))
    out.append(bulk_tail_check(ginue_tail))
    out.append(realaxis_tail_check(ginoe_regime))
    out.append(bulk_shape_check(ginoe_regime))
    out.append(depletion_histogram_data(ginoe_regime))
    out.extend(structural_invariant_checks(
        [ginoe_fine, ginue_fine, ginoe_regime, ginue_tail], seed=seed))
    return out
