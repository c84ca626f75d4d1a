"""Dataset builders for the four bundled figure parameter sets.

Every builder writes deterministic CSV files (plus JSON sidecars) into
an output directory and returns the list of paths.  Rendering is a
separate, optional component that consumes these files; nothing here
draws anything.
"""

from __future__ import annotations

import os

import numpy as np

from .algebra import GM_G1, free_spinor_columns, lightfront_density
from .datasets import density_dataset, write_csv, write_json
from .field import FieldIntegrals
from .momentum import (dressed_arrays, drift_velocity_1d, onshell_arrays,
                       peak_velocity_infield, reference_kinematics)
from .spectrum import momentum_density_map
from .synthesis import density_grid, gauss_legendre_nodes
from .trajectory import (comoving_transform, distribution_moments,
                         expectation_velocity_approx, trajectory_record)
from .lifetime import peak_lifetime
from .presets import preset
from .scenario import Scenario


def _out(out_dir):
    os.makedirs(out_dir, exist_ok=True)
    return out_dir


def partial_snapshot_density(scenario: Scenario, x0: float,
                             x1_grid: np.ndarray, x3_grid: np.ndarray,
                             n_p1: int = 96) -> np.ndarray:
    """Density of the single partial wavepacket at eta_center on an
    (x1, x3) grid at fixed time x0 (x_minus varies across the grid)."""
    dist = scenario.distribution()
    spec = dist.spec
    field = scenario.plane_wave()
    p1, w_p1 = gauss_legendre_nodes(*dist.transverse.support(), n_p1)
    energy, p3, p_minus = onshell_arrays(spec, scenario.eta_center,
                                         np.abs(p1))
    slope = p3 / energy - spec.v_a
    coeff = (w_p1 * dist.transverse.amplitude(p1)
             / np.sqrt(np.abs(slope)) / np.sqrt(2.0 * p_minus))
    u = free_spinor_columns(energy, p1, p3, scenario.spin)
    g = u @ GM_G1.T
    x_minus = x0 - np.asarray(x3_grid)
    if field is not None:
        cache = FieldIntegrals(field, float(np.min(x_minus)) - field.period,
                               float(np.max(x_minus)) + field.period)
        i1 = cache.i1(x_minus)
        i2 = cache.i2(x_minus)
        e_a1 = field.potential(x_minus)
    else:
        i1 = i2 = e_a1 = np.zeros_like(x_minus)
    out = np.empty((x1_grid.size, x3_grid.size))
    base = (-energy[:, None] * x0 + p3[:, None] * x3_grid[None, :]
            + (p1[:, None] * i1[None, :] - 0.5 * i2[None, :])
            / p_minus[:, None])
    dress = e_a1[None, :] / (2.0 * p_minus[:, None])
    for i, x1 in enumerate(x1_grid):
        phase = np.exp(1j * (base + (p1 * x1)[:, None]))
        amp = coeff[:, None] * phase
        psi = np.einsum("nm,nc->mc", amp, u) \
            - np.einsum("nm,nc->mc", amp * dress, g)
        out[i] = lightfront_density(psi)
    return out


def correlation_curve(scenario: Scenario, p1_grid: np.ndarray) -> dict:
    """Mass-shell intersection curve at the central eta, free and
    dressed columns."""
    spec = scenario.correlation_spec()
    energy, p3, p_minus = onshell_arrays(spec, scenario.eta_center,
                                         np.abs(p1_grid))
    q0, q3, q_minus = dressed_arrays(energy, p3, scenario.exi_star)
    return {"p1": p1_grid, "p3": p3, "energy": energy,
            "q3": q3, "q0": q0, "q_minus": q_minus}


def run_figure1(out_dir, workers=None) -> list:
    paths = []
    snapshots = {"a": (-2000.0, 0.0, 2000.0),
                 "c": (-2000.0, 0.0, 2000.0),
                 "e": (-2000.0, 0.0, 2000.0)}
    x1 = np.linspace(-700.0, 700.0, 113)
    x3 = np.linspace(-24000.0, 24000.0, 161)
    for panel, times in snapshots.items():
        sc = preset(f"fig1{panel}")
        rows = {"x0": [], "x1": [], "x3": [], "density": []}
        for x0 in times:
            dens = partial_snapshot_density(sc, x0, x1, x3)
            nn = x1.size * x3.size
            rows["x0"].append(np.full(nn, x0))
            rows["x1"].append(np.repeat(x1, x3.size))
            rows["x3"].append(np.tile(x3, x1.size))
            rows["density"].append(dens.reshape(-1))
        cols = {k: np.concatenate(v) for k, v in rows.items()}
        path = os.path.join(_out(out_dir), f"fig1{panel}_density.csv")
        write_csv(path, cols, sc.hash)
        paths.append(path)
        curve = correlation_curve(sc, np.linspace(-0.05, 0.05, 201))
        cpath = os.path.join(out_dir, f"fig1{panel}_momentum.csv")
        write_csv(cpath, curve, sc.hash)
        paths.append(cpath)
        write_json(os.path.join(out_dir, f"fig1{panel}.json"),
                   {"scenario": sc.raw, "scenario_hash": sc.hash,
                    "derived": sc.derived, "snapshots": list(times)})
        paths.append(os.path.join(out_dir, f"fig1{panel}.json"))
    return paths


def _trajectory_columns(scenario: Scenario, x_minus: np.ndarray,
                        comoving_velocities: dict | None = None) -> dict:
    field = scenario.plane_wave()
    integrals = None
    if field is not None:
        integrals = FieldIntegrals(field, float(np.min(x_minus))
                                   - field.period,
                                   float(np.max(x_minus)) + field.period)
    rec = trajectory_record(scenario.distribution(), x_minus, field,
                            integrals)
    cols = rec.columns()
    cols["exi"] = field.envelope(x_minus) if field is not None \
        else np.zeros_like(x_minus)
    for label, v in (comoving_velocities or {}).items():
        com = comoving_transform(rec, v)
        cols[f"xf3_comoving_{label}"] = com.xf3
        cols[f"ex3_comoving_{label}"] = com.ex3
    return cols


def run_figure2(out_dir, workers=None, panels="abc") -> list:
    paths = []
    for panel in panels:
        sc = preset(f"fig2{panel}")
        ctx = sc.context()
        grid = sc.grid()
        field = density_grid(ctx, grid, workers=workers)
        cpath, jpath = density_dataset(_out(out_dir), f"fig2{panel}_density",
                                       field, sc)
        paths += [cpath, jpath]
        span = 7.5e4
        x_minus = np.linspace(-span, span, 1201)
        cols = _trajectory_columns(sc, x_minus)
        tpath = os.path.join(out_dir, f"fig2{panel}_trajectory.csv")
        write_csv(tpath, cols, sc.hash)
        paths.append(tpath)
    return paths


def run_figure3(out_dir, workers=None) -> list:
    sc = preset("fig3")
    field = sc.plane_wave()
    omega = field.omega
    x_minus = np.linspace(-np.pi / omega, np.pi / omega, 2001)
    vf = peak_velocity_infield(sc.v_a, sc.exi_star, sc.p_minus)
    p3, energy = reference_kinematics(sc.p_minus)
    v1d = drift_velocity_1d(p3 / energy, sc.exi_star, sc.p_minus)
    cols = _trajectory_columns(sc, x_minus,
                               {"vfstar": vf, "v1d": v1d})
    paths = []
    tpath = os.path.join(_out(out_dir), "fig3_trajectory.csv")
    write_csv(tpath, cols, sc.hash)
    paths.append(tpath)

    # transverse density cut at the coincidence slice
    ctx = sc.context()
    x1 = np.linspace(-550.0, 550.0, 101)
    x3 = np.linspace(-640.0, 640.0, 101)
    dens = np.empty((x1.size, x3.size))
    for i, xx1 in enumerate(x1):
        dens[i] = ctx.density_line(0.0, x3, float(xx1))
    cpath = os.path.join(out_dir, "fig3_transverse.csv")
    write_csv(cpath, {"x1": np.repeat(x1, x3.size),
                      "x3": np.tile(x3, x1.size),
                      "density": dens.reshape(-1)}, sc.hash)
    paths.append(cpath)
    write_json(os.path.join(out_dir, "fig3.json"),
               {"scenario": sc.raw, "scenario_hash": sc.hash,
                "derived": sc.derived,
                "comoving": {"vfstar": vf, "v1d": v1d}})
    paths.append(os.path.join(out_dir, "fig3.json"))
    return paths


def run_figure4(out_dir, workers=None) -> list:
    paths = []
    p3, energy = reference_kinematics(3.0)
    r = p3 / energy
    for panel in "abc":
        sc = preset(f"fig4{panel}")
        dist = sc.distribution()
        w = sc.w
        eta0 = sc.eta_center
        etas = np.linspace(eta0 - 2.5 * sc.spectrum_width,
                           eta0 + 2.5 * sc.spectrum_width, 121)
        p1s = np.linspace(-3.0 / w, 3.0 / w, 121)
        table = momentum_density_map(dist, sc.exi_star, etas, p1s)
        mpath = os.path.join(_out(out_dir), f"fig4{panel}_map.csv")
        write_csv(mpath, {k: table[k] for k in
                          ("eta", "p1", "q3_over_qminus", "weight")},
                  sc.hash)
        paths.append(mpath)

        v1d = drift_velocity_1d(r, sc.exi_star, sc.p_minus)
        approx = expectation_velocity_approx(sc.p_minus, w, sc.v_a,
                                             sc.exi_star)
        mom = distribution_moments(dist, n_eta=256, n_p1=256)
        full = mom["p3_over_pminus"] \
            + 0.25 * sc.exi_star ** 2 * mom["inv_pminus_sq"]
        jpath = os.path.join(out_dir, f"fig4{panel}.json")
        write_json(jpath, {
            "scenario": sc.raw, "scenario_hash": sc.hash,
            "derived": sc.derived,
            "velocities": {
                "one_dimensional": v1d / (1.0 - v1d),
                "expansion": approx,
                "full_quadrature": full,
            },
            "n_skipped": table["n_skipped"]})
        paths.append(jpath)
    return paths


def run_lifetime_report(scenario: Scenario, out_dir, stem="lifetime") -> str:
    field = scenario.plane_wave()
    res = peak_lifetime(scenario.v_a, scenario.p_minus,
                        scenario.eta_weight(), field)
    payload = res.as_dict()
    payload["scenario_hash"] = scenario.hash
    payload["scenario"] = scenario.raw
    payload["envelope_length_definition"] = (
        "half width at half maximum of the squared Fourier transform of "
        "the eta weight, mapped through |v_a - P3/E| / width")
    path = os.path.join(_out(out_dir), f"{stem}.json")
    write_json(path, payload)
    return path
