"""How large is the self-overlap of an eigenvector whose eigenvalue sits at
height y above the real axis?

For the complex Ginibre ensemble the answer barely depends on where you are
inside the droplet; for the real ensemble the mean conditional self-overlap
blows up like 1/y^2 as the eigenvalue approaches the real axis.  This script
samples both ensembles at n = 20, bins the observed self-overlaps along the
imaginary axis, and overlays the exact finite-n curves.

Run:  python demos/01_conditional_mean_on_the_imaginary_axis.py
Writes demos/out/01_imaginary_axis.png and a CSV next to it.
"""

import pathlib

import numpy as np
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from ginibre_overlaps import figures

OUT = pathlib.Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

N = 20
SAMPLES = 4000

empirical, curves, meta = figures.fig_imaginary_axis(n=N, samples=SAMPLES, seed=7)

fig, ax = plt.subplots(figsize=(7, 4.5))
for kind, marker, color in (("ginoe", "^", "tab:red"), ("ginue", "o", "tab:blue")):
    rows = [r for r in empirical if r["ensemble"] == kind and r["count"] > 30]
    ax.errorbar([r["y"] for r in rows], [r["mean_overlap"] for r in rows],
                yerr=[r["std_error"] for r in rows], fmt=marker, ms=4,
                color=color, lw=0, elinewidth=1, label=f"{kind} empirical")
ys = [r["y"] for r in curves]
ax.plot(ys, [r["conditional_ginoe"] for r in curves], "--", color="tab:red",
        label="ginoe theory")
ax.plot(ys, [r["conditional_ginue"] for r in curves], "-", color="tab:blue",
        label="ginue theory")
ax.set_xlabel("Im z  (eigenvalue on the imaginary axis)")
ax.set_ylabel("mean self-overlap  E[O | z]")
ax.set_title(f"Conditional mean self-overlap, n = {N}, {SAMPLES} matrices each")
ax.legend()
ax.set_ylim(bottom=0)
fig.tight_layout()
fig.savefig(OUT / "01_imaginary_axis.png", dpi=150)

with open(OUT / "01_imaginary_axis.csv", "w") as fh:
    fh.write("ensemble,y,count,mean_overlap,std_error\n")
    for r in empirical:
        fh.write(f"{r['ensemble']},{r['y']},{r['count']},"
                 f"{r['mean_overlap']},{r['std_error']}\n")

print(f"wrote {OUT/'01_imaginary_axis.png'}")
print("note the ginoe divergence toward the axis: that is the depletion "
      "regime, where eigenvalues are scarce but badly conditioned.")
