"""Beyond the mean: the full distribution of self-overlaps, region by region.

In the bulk the scaled overlap s = (O - 1)/n follows a law with a 1/s^3 tail;
real eigenvalues carry a heavier 1/s^2 tail; and in the depletion strip of
the real ensemble the limiting law is unknown, so we just plot the histogram
against both candidates and let the tail speak.

Run:  python demos/03_overlap_distributions.py   (~1 minute)
"""

import pathlib

import numpy as np
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from ginibre_overlaps import distributions, mc, stats, theory

OUT = pathlib.Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

N = 150
SAMPLES = 1500
res = mc.run_campaign(mc.EnsembleConfig(theory.GINOE, N, SAMPLES, 4242))
rn = np.sqrt(N)
records = res.complex_records()
z = records["z"]

regions = {
    "depletion strip (|Im z| <= 1)":
        (np.abs(z.real) <= 0.5 * rn) & (np.abs(z.imag) <= 1.0),
    "bulk annulus (|w| in [0.45, 0.55])":
        (np.abs(z) >= 0.45 * rn) & (np.abs(z) <= 0.55 * rn)
        & (np.abs(z.imag) >= 2.0),
}
real = res.real_records()
real = real[np.abs(real["z"].real) <= 0.7 * rn]

edges = np.logspace(np.log10(0.02), np.log10(60.0), 36)
centers = np.sqrt(edges[:-1] * edges[1:])

fig, axes = plt.subplots(1, 3, figsize=(13, 4))
for ax, (label, sel) in zip(axes[:2], regions.items()):
    dens, _ = stats.overlap_histogram(records[sel], "bulk_s", edges, N)
    ax.loglog(centers, dens, drawstyle="steps-mid", color="tab:red",
              label=f"empirical ({int(sel.sum())} records)")
    ax.loglog(centers, [distributions.normalized_pdf("bulk_ginue", s, w=0.5)
                        for s in centers], "k-", label="bulk law (1/s^3 tail)")
    ax.loglog(centers, [distributions.normalized_pdf("realbulk_ginoe", s, x=0.0)
                        for s in centers], "b--", label="real-axis law (1/s^2 tail)")
    ax.set_title(label, fontsize=9)
    ax.set_xlabel("s = (O - 1)/n")
    ax.set_ylim(1e-6, 20)
    ax.legend(fontsize=7)

dens, _ = stats.overlap_histogram(real, "bulk_s", edges, N)
ax = axes[2]
ax.loglog(centers, dens, drawstyle="steps-mid", color="tab:red",
          label=f"real eigenvalues ({real.size} records)")
ax.loglog(centers, [distributions.normalized_pdf("realbulk_ginoe", s, x=0.0)
                    for s in centers], "b--", label="real-axis law")
slope, err = stats.tail_slope(dens, centers, (2.0, 40.0))
ax.set_title(f"real eigenvalues: fitted tail slope {slope:.2f} +- {err:.2f}",
             fontsize=9)
ax.set_xlabel("s = (O - 1)/n")
ax.set_ylim(1e-6, 20)
ax.legend(fontsize=7)

fig.tight_layout()
fig.savefig(OUT / "03_overlap_distributions.png", dpi=150)
print(f"wrote {OUT/'03_overlap_distributions.png'}")
print("the depletion histogram follows neither law exactly; its tail sits "
      "closer to the 1/s^2 candidate (an open problem).")
