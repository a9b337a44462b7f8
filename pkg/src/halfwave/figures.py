"""Static figures rendered to files next to the delimited outputs.

File-only rendering (Agg backend), no interactive UI; every CLI report path
can drop a PNG beside its CSV unless --no-plot is given.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def profile_figure(profile, path) -> None:
    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(9.0, 3.4))
    x = profile.field.grid.x
    q = profile.field.values
    ax0.plot(x, np.abs(q), label="|Q|", lw=1.2)
    ax0.plot(x, q.real, label="Re Q", lw=0.8)
    ax0.plot(x, q.imag, label="Im Q", lw=0.8)
    ax0.set_xlim(-40, 40)
    ax0.set_xlabel("x")
    ax0.set_title(f"profile v={profile.v:g} (residual {profile.residual_l2:.1e})")
    ax0.legend(frameon=False, fontsize=8)

    right = x > 0
    amp = np.abs(q[right])
    keep = amp > 1e-14
    ax1.loglog(x[right][keep], amp[keep], lw=1.0, label="|Q(x)|")
    xs = x[right][keep]
    ref = amp[keep][len(xs) // 2] * (xs[len(xs) // 2] / xs) ** 2
    ax1.loglog(xs, ref, "--", lw=0.8, label="~ 1/x^2")
    ax1.set_xlabel("x")
    ax1.set_title("tail decay")
    ax1.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=140)
    plt.close(fig)


def sweep_figure(profiles, path) -> None:
    converged = [p for p in profiles if p.converged]
    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(9.0, 3.4))
    if len(converged) >= 2:
        lam = np.array([p.mu for p in converged])
        l2 = np.array([np.sqrt(p.report.mass) for p in converged])
        l5 = np.array([p.report.l5_fifth for p in converged])
        ax0.loglog(lam, l2, "o-", ms=3, lw=0.9)
        slope = np.polyfit(np.log(lam), np.log(l2), 1)[0]
        ax0.set_title(f"L2 norm vs 1-v (slope {slope:.3f}, target 1/3)")
        ax1.loglog(lam, l5, "s-", ms=3, lw=0.9, color="tab:red")
        slope5 = np.polyfit(np.log(lam), np.log(l5), 1)[0]
        ax1.set_title(f"L5 norm^5 vs 1-v (slope {slope5:.3f}, target 5/3)")
    for ax in (ax0, ax1):
        ax.set_xlabel("1 - v")
    fig.tight_layout()
    fig.savefig(path, dpi=140)
    plt.close(fig)


def trace_figure(trace, path) -> None:
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    t = trace.times[1:]
    ax.semilogy(t, np.maximum(trace.mass_drift[1:], 1e-18), label="mass drift", lw=0.9)
    ax.semilogy(t, np.maximum(trace.energy_drift[1:], 1e-18), label="energy drift", lw=0.9)
    if trace.shape_error is not None:
        ax.semilogy(t, np.maximum(trace.shape_error[1:], 1e-18), label="shape error", lw=0.9)
    ax.set_xlabel("t")
    ax.set_ylabel("relative drift")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=140)
    plt.close(fig)


def green_figure(xs, ys, values, path) -> None:
    """values[j][i] = G(xs[i], ys[j]); plots |G| and the decay-bound ratio."""
    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(9.0, 3.4))
    xs = np.asarray(xs, dtype=float)
    positive = xs > 0
    for y, row in zip(ys, values):
        row = np.asarray(row)
        ax0.loglog(xs[positive], np.abs(row[positive]), lw=0.9, label=f"y={y:g}")
        ratio = np.abs(row) * (y * y + 4 * np.pi**2 * xs**2) / (1.0 + y)
        ax1.semilogx(xs[positive], ratio[positive], lw=0.9, label=f"y={y:g}")
    ax0.set_xlabel("x")
    ax0.set_title("|G(x, y)|")
    ax1.set_xlabel("x")
    ax1.set_title("|G| (y^2 + 4 pi^2 x^2)/(1+y)")
    ax1.axhline(2.0, color="k", lw=0.6, ls=":")
    for ax in (ax0, ax1):
        ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=140)
    plt.close(fig)
