"""Figure-data presets: empirical series with matching theory curves.

Each preset reproduces one of the standard views of the overlap statistics at
a configurable (desk) scale and returns plain row dictionaries ready for CSV
emission, plus a self-contained gnuplot script that references only the CSVs.
"""

import numpy as np

from . import distributions, mc, stats, theory, verify

__all__ = ["FIGURES", "figure_data"]


def _campaign(kind, n, samples, seed, workers=None):
    cfg = mc.EnsembleConfig(kind=kind, n=n, samples=samples, master_seed=seed)
    return mc.run_campaign(cfg, workers=workers)


def _axis_series(result, y_grid, x_half_width, y_half_width):
    """Conditional means in strips along the imaginary axis."""
    rows = []
    records = (result.complex_records()
               if result.summary["kind"] == theory.GINOE else result.records)
    z = records["z"]
    o = records["overlap"]
    for y in y_grid:
        sel = (np.abs(z.real) <= x_half_width) & (np.abs(np.abs(z.imag) - y)
                                                  <= y_half_width)
        chosen = o[sel]
        rows.append({
            "y": y,
            "count": int(chosen.size),
            "mean_overlap": float(chosen.mean()) if chosen.size else np.nan,
            "std_error": (float(chosen.std(ddof=1) / np.sqrt(chosen.size))
                          if chosen.size > 1 else np.nan),
        })
    return rows


def fig_imaginary_axis(n=20, samples=4000, seed=verify.DEFAULT_SEED, workers=None):
    """Mean conditional self-overlap along the imaginary axis, both ensembles."""
    rn = np.sqrt(n)
    y_grid = np.arange(0.25, 0.95 * rn, 0.25)
    empirical = []
    for kind in (theory.GINOE, theory.GINUE):
        res = _campaign(kind, n, samples, seed, workers)
        for row in _axis_series(res, y_grid, x_half_width=0.15 * rn,
                                y_half_width=max(1.0 / rn, 0.1)):
            row["ensemble"] = kind
            empirical.append(row)
    curves = []
    for y in np.linspace(0.05, 0.95 * rn, 200):
        curves.append({
            "y": y,
            "conditional_ginoe": theory.conditional_mean(n, 1j * y, theory.GINOE),
            "conditional_ginue": theory.conditional_mean(n, 1j * y, theory.GINUE),
        })
    meta = {"n": n, "samples": samples, "seed": seed,
            "formula": "finite-n-conditional-mean-imaginary-axis"}
    return empirical, curves, meta


def fig_bulk(n=100, samples=2000, seed=verify.DEFAULT_SEED, workers=None):
    """Scaled conditional mean across the bulk vs the uniform-density result."""
    rn = np.sqrt(n)
    res = _campaign(theory.GINOE, n, samples, seed, workers)
    records = res.complex_records()
    z = records["z"]
    o = records["overlap"]
    empirical = []
    for w_abs in np.arange(0.1, 0.96, 0.05):
        sel = (np.abs(np.abs(z) - w_abs * rn) <= 1.0 / rn) & (np.abs(z.imag) >= 2.0)
        chosen = o[sel]
        empirical.append({
            "w_abs": w_abs,
            "count": int(chosen.size),
            "scaled_mean": float(chosen.mean() / n) if chosen.size else np.nan,
            "std_error": (float(chosen.std(ddof=1) / np.sqrt(chosen.size) / n)
                          if chosen.size > 1 else np.nan),
        })
    curves = [{"w_abs": w,
               "limit": float((1.0 - w * w)),
               "finite_n": theory.conditional_mean(
                   n, 1j * w * rn, theory.GINOE) / n if w * rn >= 2.0 / rn else np.nan}
              for w in np.linspace(0.02, 1.1, 200)]
    meta = {"n": n, "samples": samples, "seed": seed,
            "formula": "bulk-limit-conditional-mean",
            "selection": "annulus width 2/sqrt(n), |Im z| >= 2"}
    return empirical, curves, meta


def fig_edge(n=250, samples=1500, seed=verify.DEFAULT_SEED, workers=None):
    """Scaled conditional mean across the spectral edge."""
    rn = np.sqrt(n)
    res = _campaign(theory.GINOE, n, samples, seed, workers)
    records = res.complex_records()
    z = records["z"]
    o = records["overlap"]
    empirical = []
    for eta in np.arange(-3.0, 2.01, 0.25):
        sel = (np.abs(np.abs(z) - (rn + eta)) <= 0.15) & (np.abs(z.imag) >= 2.0)
        chosen = o[sel]
        empirical.append({
            "eta": eta,
            "count": int(chosen.size),
            "scaled_mean": float(chosen.mean() / rn) if chosen.size else np.nan,
            "std_error": (float(chosen.std(ddof=1) / np.sqrt(chosen.size) / rn)
                          if chosen.size > 1 else np.nan),
        })
    curves = [{"eta": e,
               "limit": float(theory.overlap_limit_edge(e)
                              / theory.density_limit("edge", eta=e))}
              for e in np.linspace(-3.0, 2.0, 200)]
    meta = {"n": n, "samples": samples, "seed": seed,
            "formula": "edge-limit-conditional-mean",
            "selection": "annulus half-width 0.15, |Im z| >= 2"}
    return empirical, curves, meta


def fig_depletion(n=250, samples=2000, seed=verify.DEFAULT_SEED, workers=None):
    """Density and scaled conditional mean in the near-axis depletion strip."""
    rn = np.sqrt(n)
    res = _campaign(theory.GINOE, n, samples, seed, workers)
    records = res.complex_records()
    z = records["z"]
    o = records["overlap"]
    empirical = []
    x_half = 0.15 * rn
    for xi in np.arange(0.1, 4.01, 0.13):
        h = min(0.05 + 0.02 * xi, 0.15)
        sel = (np.abs(z.real) <= x_half) & (np.abs(np.abs(z.imag) - xi) <= h)
        chosen = o[sel]
        area = 2 * x_half * 2 * h * 2
        empirical.append({
            "xi": xi,
            "count": int(chosen.size),
            "density": float(chosen.size / (res.summary["samples"] * area)),
            "scaled_mean": float(chosen.mean() / n) if chosen.size else np.nan,
            "std_error": (float(chosen.std(ddof=1) / np.sqrt(chosen.size) / n)
                          if chosen.size > 1 else np.nan),
        })
    curves = []
    for xi in np.linspace(0.05, 4.0, 200):
        curves.append({
            "xi": xi,
            "density_limit": theory.density_limit("depletion", xi=xi),
            "conditional_limit": float(theory.overlap_limit_depletion(xi)
                                       / theory.density_limit("depletion", xi=xi)),
            "uniform_density": 1.0 / np.pi,
            "chalker_mehlig_reference": 1.0,
        })
    meta = {"n": n, "samples": samples, "seed": seed,
            "formula": "depletion-limit-conditional-mean",
            "selection": f"|Re z| <= {x_half:.3f}"}
    return empirical, curves, meta


def fig_distributions(n=250, samples=2000, seed=verify.DEFAULT_SEED, workers=None):
    """Normalized self-overlap histograms in three regions with limiting laws."""
    res = _campaign(theory.GINOE, n, samples, seed, workers)
    rn = np.sqrt(n)
    records = res.complex_records()
    z = records["z"]
    empirical = []
    regions = {
        "depletion": (np.abs(z.real) <= 0.5 * rn) & (np.abs(z.imag) <= 1.0),
        "bulk": (np.abs(z) >= 0.45 * rn) & (np.abs(z) <= 0.55 * rn)
                & (np.abs(z.imag) >= 2.0),
        "edge": np.abs(np.abs(z) - rn) <= 0.3,
    }
    edges = np.logspace(np.log10(0.02), np.log10(50.0), 41)
    for region, sel in regions.items():
        scaling = "edge_sigma" if region == "edge" else "bulk_s"
        dens, edg = stats.overlap_histogram(records[sel], scaling, edges, n)
        centers = np.sqrt(edg[:-1] * edg[1:])
        for c, d in zip(centers, dens):
            empirical.append({"region": region, "s": float(c),
                              "density": float(d)})
    curves = []
    for s in np.logspace(np.log10(0.02), np.log10(50.0), 200):
        curves.append({
            "s": float(s),
            "bulk_ginue": distributions.normalized_pdf("bulk_ginue", s, w=0.5),
            "realbulk_ginoe": distributions.normalized_pdf("realbulk_ginoe", s, x=0.0),
            "edge_ginue": distributions.normalized_pdf("edge_ginue", s, eta=0.0),
        })
    meta = {"n": n, "samples": samples, "seed": seed,
            "formula": "self-overlap-distributions-by-region",
            "selection": {"depletion": "|Re z| <= 0.5 sqrt(n), |Im z| <= 1",
                          "bulk": "0.45 <= |z|/sqrt(n) <= 0.55, |Im z| >= 2",
                          "edge": "||z| - sqrt(n)| <= 0.3"}}
    return empirical, curves, meta


FIGURES = {
    "fig3": fig_imaginary_axis,
    "fig4": fig_bulk,
    "fig5": fig_edge,
    "fig6": fig_depletion,
    "fig7": fig_distributions,
}

_PLOT_HINTS = {
    "fig3": ("y", ["mean_overlap"], ["conditional_ginoe", "conditional_ginue"]),
    "fig4": ("w_abs", ["scaled_mean"], ["limit", "finite_n"]),
    "fig5": ("eta", ["scaled_mean"], ["limit"]),
    "fig6": ("xi", ["scaled_mean", "density"],
             ["conditional_limit", "density_limit"]),
    "fig7": ("s", ["density"], ["bulk_ginue", "realbulk_ginoe", "edge_ginue"]),
}


def gnuplot_script(figure_id, empirical_csv, theory_csv, out_png):
    """A self-contained gnuplot script referencing only the two CSVs."""
    abscissa, emp_cols, th_cols = _PLOT_HINTS[figure_id]
    lines = [
        f"# gnuplot script for {figure_id}; run: gnuplot <this file>",
        "set datafile separator ','",
        f"set output '{out_png}'",
        "set terminal pngcairo size 900,600",
        f"set xlabel '{abscissa}'",
        "set key top right",
    ]
    if figure_id == "fig7":
        lines.append("set logscale xy")
    plots = []
    for col in emp_cols:
        plots.append(f"'{empirical_csv}' using "
                     f"(column('{abscissa}')):(column('{col}')) "
                     f"with points title 'empirical {col}'")
    for col in th_cols:
        plots.append(f"'{theory_csv}' using "
                     f"(column('{abscissa}')):(column('{col}')) "
                     f"with lines title '{col}'")
    lines.append("plot " + ", \\\n     ".join(plots))
    return "\n".join(lines) + "\n"


def figure_data(figure_id, **kwargs):
    if figure_id not in FIGURES:
        raise KeyError(figure_id)
    return FIGURES[figure_id](**kwargs)
