"""The three scaling regimes of the mean self-overlap, formula only.

The finite-n mean self-overlap of the real ensemble converges, under three
different rescalings, to three different limit shapes:

  bulk       z = sqrt(n) w:        (1/n)   O_n -> (1 - |w|^2)/pi
  edge       |z| = sqrt(n) + eta:  (1/vn)  O_n -> edge profile
  depletion  z = i xi:             (1/n)   O_n -> near-axis enhancement

No sampling here; this just evaluates the closed finite-n formula at growing
n and overlays the limits, which is the cleanest way to see the convergence
(it separates formula correctness from Monte Carlo noise).

Run:  python demos/02_scaling_limits.py
"""

import pathlib

import numpy as np
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from ginibre_overlaps import theory

OUT = pathlib.Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

fig, axes = plt.subplots(1, 3, figsize=(13, 4))

# bulk: along the imaginary axis to stay clear of the depletion strip
ax = axes[0]
ws = np.linspace(0.05, 1.15, 300)
for n, color in ((100, "tab:green"), (1000, "tab:orange"), (10000, "tab:purple")):
    vals = [theory.overlap_ginoe(n, 1j * w * np.sqrt(n)) / n for w in ws]
    ax.plot(ws, vals, color=color, lw=1, label=f"n = {n}")
ax.plot(ws, [theory.overlap_limit_bulk(1j * w) for w in ws], "k--", label="limit")
ax.set_xlabel("|w| = |z|/sqrt(n)")
ax.set_ylabel("scaled mean self-overlap / n")
ax.set_title("bulk")
ax.legend()

# edge
ax = axes[1]
etas = np.linspace(-3, 2, 300)
for n, color in ((100, "tab:green"), (1000, "tab:orange"), (100000, "tab:purple")):
    vals = [theory.overlap_ginoe(n, 1j * (np.sqrt(n) + e)) / np.sqrt(n)
            for e in etas]
    ax.plot(etas, vals, color=color, lw=1, label=f"n = {n}")
ax.plot(etas, theory.overlap_limit_edge(etas), "k--", label="limit")
ax.set_xlabel("eta = |z| - sqrt(n)")
ax.set_ylabel("scaled mean self-overlap / sqrt(n)")
ax.set_title("edge")
ax.legend()

# depletion
ax = axes[2]
xis = np.linspace(0.05, 4, 300)
for n, color in ((100, "tab:green"), (1000, "tab:orange"), (10000, "tab:purple")):
    vals = [theory.overlap_ginoe(n, 1j * xi) / n for xi in xis]
    ax.plot(xis, vals, color=color, lw=1, label=f"n = {n}")
ax.plot(xis, [theory.overlap_limit_depletion(x) for x in xis], "k--", label="limit")
ax.axhline(1 / np.pi, color="gray", lw=0.8, ls=":", label="bulk value 1/pi")
ax.set_xlabel("xi = Im z")
ax.set_ylabel("scaled mean self-overlap / n")
ax.set_title("depletion (near-axis)")
ax.legend()

fig.tight_layout()
fig.savefig(OUT / "02_scaling_limits.png", dpi=150)
print(f"wrote {OUT/'02_scaling_limits.png'}")
