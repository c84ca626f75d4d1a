"""Figure renderers: heatmaps with trajectory overlays, 3D co-moving
curves and momentum-density contour maps.

Axis labels are in natural units: positions in 1/m, momenta in m.
Rendering is read-only over the datasets and idempotent.
"""

from __future__ import annotations

import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .manifest import (MissingColumns, RenderError, RenderManifest,
                       pivot_grid, read_sidecar, read_table)

TRAJECTORY_COLUMNS = ("x_minus", "xf1", "xf3", "xf3_tilde",
                      "ex1", "ex3", "ex3_tilde")


def _save(fig, manifest: RenderManifest) -> str:
    out = manifest.output
    os.makedirs(os.path.dirname(os.path.abspath(out)), exist_ok=True)
    fig.savefig(out, dpi=manifest.options.get("dpi", 150),
                bbox_inches="tight")
    plt.close(fig)
    return out


def render_density(manifest: RenderManifest) -> str:
    """Density heatmap with peak (dashed) and expectation (solid)
    overlays plus the potential-profile outline."""
    dens = read_table(manifest.datasets["density"], manifest,
                      require=("x_minus", "x3", "density"))
    traj = read_table(manifest.datasets["trajectory"], manifest,
                      require=TRAJECTORY_COLUMNS + ("exi",))
    xm, x3, rho = pivot_grid(dens["x_minus"], dens["x3"], dens["density"])
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    mesh = ax.pcolormesh(xm, x3, rho.T,
                         cmap=manifest.options.get("colormap", "magma"),
                         shading="auto")
    fig.colorbar(mesh, ax=ax, label=r"light-front density")
    sel = (traj["x_minus"] >= xm[0]) & (traj["x_minus"] <= xm[-1])
    ax.plot(traj["x_minus"][sel], traj["xf3_tilde"][sel], "--",
            color="lime", lw=1.4, label="peak (cycle avg)")
    ax.plot(traj["x_minus"][sel], traj["ex3_tilde"][sel], "-",
            color="deeppink", lw=1.4, label="expectation (cycle avg)")
    # potential outline along the bottom of the frame
    exi = traj["exi"][sel]
    if np.max(np.abs(exi)) > 0:
        base = x3[0]
        span = 0.18 * (x3[-1] - x3[0])
        ax.plot(traj["x_minus"][sel],
                base + span * exi / np.max(np.abs(exi)),
                ":", color="black", lw=1.0, label="potential envelope")
    ax.set_xlabel(r"$x_-$  [1/m]")
    ax.set_ylabel(r"$x_3$  [1/m]")
    ax.set_title(manifest.options.get("title", "probability density"))
    ax.legend(loc="upper right", fontsize=8)
    return _save(fig, manifest)


def render_trajectory3d(manifest: RenderManifest) -> str:
    """Co-moving 3D view: (x_minus, x1, x3 - drift line), peak and
    expectation curves."""
    traj = read_table(manifest.datasets["trajectory"], manifest,
                      require=TRAJECTORY_COLUMNS)
    com_peak = manifest.options.get("comoving_peak", "xf3_comoving_vfstar")
    com_exp = manifest.options.get("comoving_expectation",
                                   "ex3_comoving_v1d")
    missing = [c for c in (com_peak, com_exp) if c not in traj]
    if missing:
        raise MissingColumns(manifest.datasets["trajectory"], missing)
    fig = plt.figure(figsize=(6.0, 5.0))
    ax = fig.add_subplot(projection="3d")
    ax.plot(traj["x_minus"], traj["xf1"], traj[com_peak],
            color="green", lw=1.6, label="peak, frame of $v_{f*}$")
    ax.plot(traj["x_minus"], traj["ex1"], traj[com_exp],
            color="deeppink", lw=1.2, label="expectation, frame of $v_{1D}$")
    # floor projection of the peak loop (the figure-eight signature)
    z0 = float(min(np.min(traj[com_peak]), np.min(traj[com_exp])))
    ax.plot(traj["x_minus"], traj["xf1"],
            np.full_like(traj["x_minus"], z0), color="gray", lw=0.7,
            alpha=0.7)
    ax.set_xlabel(r"$x_-$ [1/m]")
    ax.set_ylabel(r"$x_1$ [1/m]")
    ax.set_zlabel(r"co-moving $x_3$ [1/m]")
    ax.legend(fontsize=8)
    ax.set_title(manifest.options.get("title", "co-moving trajectories"))
    return _save(fig, manifest)


def render_momentum_map(manifest: RenderManifest) -> str:
    """Momentum-density panels: weight over (q3/q_minus, p1) with the
    reference velocity lines from the sidecars."""
    panel_roles = sorted(k for k in manifest.datasets if k.startswith("map"))
    if not panel_roles:
        raise RenderError("momentum_map manifest needs map* datasets")
    fig, axes = plt.subplots(1, len(panel_roles),
                             figsize=(4.0 * len(panel_roles), 3.6),
                             squeeze=False)
    for ax, role in zip(axes[0], panel_roles):
        table = read_table(manifest.datasets[role], manifest,
                           require=("eta", "p1", "q3_over_qminus", "weight"))
        sc = ax.tricontourf(table["p1"], table["q3_over_qminus"],
                            table["weight"], levels=40,
                            cmap=manifest.options.get("colormap", "viridis"))
        side = manifest.datasets.get(role.replace("map", "meta"))
        if side:
            vel = read_sidecar(side).get("velocities", {})
            if "one_dimensional" in vel:
                ax.axhline(vel["one_dimensional"], color="royalblue",
                           lw=1.4, label=r"$v_{1D}/(1-v_{1D})$")
            if "full_quadrature" in vel:
                ax.axhline(vel["full_quadrature"], color="deeppink",
                           lw=1.2, ls="--", label="expectation")
        ax.set_xlabel(r"$p_1$ [m]")
        ax.set_ylabel(r"$q_3/q_-$")
        ax.legend(fontsize=7)
        fig.colorbar(sc, ax=ax)
    fig.suptitle(manifest.options.get("title", "momentum density"))
    return _save(fig, manifest)


def render_snapshots(manifest: RenderManifest) -> str:
    """Partial-wavepacket amplitude snapshots on (x3, x1) at the sampled
    times (one subplot per time)."""
    table = read_table(manifest.datasets["density"], manifest,
                       require=("x0", "x1", "x3", "density"))
    times = np.unique(table["x0"])
    fig, axes = plt.subplots(1, times.size,
                             figsize=(3.6 * times.size, 3.4), squeeze=False)
    for ax, t in zip(axes[0], times):
        sel = table["x0"] == t
        x1, x3, rho = pivot_grid(table["x1"][sel], table["x3"][sel],
                                 table["density"][sel])
        ax.pcolormesh(x3, x1, rho.reshape(x1.size, x3.size),
                      cmap=manifest.options.get("colormap", "magma"),
                      shading="auto")
        ax.set_xlabel(r"$x_3$ [1/m]")
        ax.set_ylabel(r"$x_1$ [1/m]")
        ax.set_title(f"$x_0$ = {t:g}")
    fig.suptitle(manifest.options.get("title", "partial wavepacket"))
    return _save(fig, manifest)


RENDERERS = {
    "density": render_density,
    "trajectory3d": render_trajectory3d,
    "momentum_map": render_momentum_map,
    "snapshots": render_snapshots,
}


def render(manifest: RenderManifest) -> str:
    if manifest.kind not in RENDERERS:
        raise RenderError(f"unknown manifest kind {manifest.kind!r}")
    return RENDERERS[manifest.kind](manifest)
