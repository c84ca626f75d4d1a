"""Command-line surface.

Subcommands: design, density, trajectories, lifetime, figure1..figure4,
selftest.  Exit codes: 0 success, 2 scenario-validation error,
3 numerical-guard error (singularity, resolution, evanescence), 4 I/O.

Worker count resolution order: --workers flag, VOLKOVWP_WORKERS
environment variable, available parallelism.  Outputs are byte-identical
for any worker count.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import figures, presets
from .datasets import write_csv, write_json, density_dataset
from .errors import (CacheRangeError, DesignerSingular, EvanescentMode,
                     ParaxialInvalid, ResolutionError, ScenarioError,
                     SingularSlice)
from .field import FieldIntegrals
from .momentum import design_va, peak_velocity_infield
from .scenario import Scenario, load, validate
from .synthesis import SpacetimeGrid, density_grid

NUMERICAL_ERRORS = (EvanescentMode, SingularSlice, DesignerSingular,
                    ResolutionError, ParaxialInvalid, CacheRangeError)


def resolve_workers(args) -> int | None:
    if getattr(args, "workers", None):
        return args.workers
    env = os.environ.get("VOLKOVWP_WORKERS")
    if env:
        return int(env)
    return None


def load_scenario(args) -> Scenario:
    if not args.scenario:
        raise ScenarioError(["--scenario PATH is required"])
    scenario = load(args.scenario)
    if args.quadrature:
        raw = dict(scenario.raw)
        raw["quadrature"] = {"n_eta": args.quadrature,
                             "n_p1": args.quadrature}
        scenario = validate(raw)
    if args.grid:
        raw = dict(scenario.raw)
        try:
            x3_part, xm_part = args.grid.split(",")
            x3 = [float(v) for v in x3_part.split(":")]
            xm = [float(v) for v in xm_part.split(":")]
        except ValueError as exc:
            raise ScenarioError([f"--grid: expected "
                                 f"'x3min:x3max:steps,xmmin:xmmax:steps'"
                                 f" ({exc})"])
        raw["grid"] = {"x_minus": [xm[0], xm[1], int(xm[2])],
                       "x3": [x3[0], x3[1], int(x3[2])],
                       "x1": (raw.get("grid") or {}).get("x1",
                                                         "follow_peak")}
        scenario = validate(raw)
    return scenario


def cmd_design(args) -> int:
    out = args.out or "."
    if args.scenario:
        sc = load_scenario(args)
        write_json(os.path.join(out, "design.json"),
                   {"scenario": sc.raw, "scenario_hash": sc.hash,
                    "derived": sc.derived})
        print(json.dumps(sc.derived, sort_keys=True, default=float,
                         indent=1))
        return 0
    # built-in designer table over the bundled figure targets
    rows = {"v_a_caption": [], "vf_star_target": [], "v_a_designed": [],
            "v_f_exact_at_caption_va": []}
    for panel in "abc":
        v_a = presets.FIG2_VA[panel]
        vf_star = presets.FIG2_VFSTAR[panel]
        rows["v_a_caption"].append(v_a)
        rows["vf_star_target"].append(vf_star)
        rows["v_a_designed"].append(design_va(vf_star, presets.EXI_STAR,
                                              presets.P_MINUS))
        rows["v_f_exact_at_caption_va"].append(
            peak_velocity_infield(v_a, presets.EXI_STAR, presets.P_MINUS))
    path = os.path.join(out, "design_table.csv")
    os.makedirs(out, exist_ok=True)
    write_csv(path, rows, "presets")
    for i in range(3):
        print(f"v_a={rows['v_a_caption'][i]:g} -> "
              f"v_f={rows['v_f_exact_at_caption_va'][i]:.6g} "
              f"(designed v_a={rows['v_a_designed'][i]:.9g} for "
              f"vf*={rows['vf_star_target'][i]:g})")
    print(f"wrote {path}")
    return 0


def cmd_density(args) -> int:
    sc = load_scenario(args)
    grid = sc.grid()
    if grid is None:
        raise ScenarioError(["grid: required for the density command"])
    ctx = sc.context()
    field = density_grid(ctx, grid, workers=resolve_workers(args))
    out = args.out or "."
    cpath, jpath = density_dataset(out, f"{sc.name}_density", field, sc)
    print(f"wrote {cpath}\nwrote {jpath}")
    return 0


def cmd_trajectories(args) -> int:
    sc = load_scenario(args)
    if sc.grid_spec is not None:
        lo, hi, n = sc.grid_spec["x_minus"]
        x_minus = np.linspace(lo, hi, int(n))
    else:
        span = 3.0 * 2 * np.pi / (sc.omega or 0.01)
        x_minus = np.linspace(-span, span, 1201)
    cols = figures._trajectory_columns(sc, x_minus)
    out = args.out or "."
    os.makedirs(out, exist_ok=True)
    path = os.path.join(out, f"{sc.name}_trajectory.csv")
    write_csv(path, cols, sc.hash)
    print(f"wrote {path}")
    return 0


def cmd_lifetime(args) -> int:
    sc = load_scenario(args)
    path = figures.run_lifetime_report(sc, args.out or ".",
                                       stem=f"{sc.name}_lifetime")
    print(f"wrote {path}")
    return 0


def _figure_cmd(n):
    def run(args) -> int:
        out = args.out or "."
        runner = {1: figures.run_figure1, 2: figures.run_figure2,
                  3: figures.run_figure3, 4: figures.run_figure4}[n]
        paths = runner(out, workers=resolve_workers(args))
        for p in paths:
            print(f"wrote {p}")
        return 0
    return run


def cmd_selftest(args) -> int:
    """Fast re-derivation of the published constants; one line each."""
    from .momentum import (drift_velocity_1d, eta_for,
                           reference_kinematics)
    from .lifetime import lifetime_constant_field, lifetime_field_free
    checks = []
    v = design_va(0.2, 3.0, 3.0)
    checks.append(("designer vf*=0.2 -> v_a=0", abs(v) < 1e-12))
    checks.append(("designer vf*=0 -> v_a=-1/3",
                   abs(design_va(0.0, 3.0, 3.0) + 1 / 3) < 1e-12))
    checks.append(("designer vf*=-4.1 -> v_a=19.545",
                   abs(design_va(-4.1, 3.0, 3.0) - 19.545454545) < 1e-3))
    ok = True
    for vf in np.linspace(-5, 0.9, 50):
        if abs(1 - (1 - vf) * 0.25) < 0.05:
            continue
        ok &= abs(peak_velocity_infield(design_va(vf, 3., 3.), 3., 3.) - vf) \
            < 1e-10
    checks.append(("designer round trip 50 pts", bool(ok)))
    checks.append(("eta(v_a=0) = 1.6667",
                   abs(eta_for(0.0, 3.0) - 1.6667) < 5e-3))
    checks.append(("eta(v_a=-0.3) = 1.2667",
                   abs(eta_for(-0.3, 3.0) - 1.2667) < 5e-3))
    p3, energy = reference_kinematics(3.0)
    v1d = drift_velocity_1d(p3 / energy, 3.0, 3.0)
    checks.append(("v_1D(xi*) = -0.2414", abs(v1d + 0.2414) < 5e-3))
    checks.append(("v_1D(0) = -0.8", abs(p3 / energy + 0.8) < 5e-3))
    checks.append(("v_1D/(1-v_1D) = -0.1944",
                   abs(v1d / (1 - v1d) + 0.1944) < 5e-4))
    checks.append(("lifetime const-field ratio 0.3575",
                   abs(lifetime_constant_field(1., 3., 19.5, 3.) - 0.3575)
                   < 1e-3))
    checks.append(("lifetime field-free ratio 0.0985",
                   abs(lifetime_field_free(1., 3., 19.5) - 0.0985) < 1e-3))
    failed = 0
    for label, passed in checks:
        print(f"{'PASS' if passed else 'FAIL'}  {label}")
        failed += 0 if passed else 1
    return 0 if failed == 0 else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="volkovwp",
        description="wavepackets in a plane wave with designed peak "
                    "velocities: dataset generation")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", help="scenario JSON path")
    common.add_argument("--out", help="output directory (default .)")
    common.add_argument("--workers", type=int,
                        help="worker processes for grid evaluation")
    common.add_argument("--quadrature", type=int,
                        help="override both quadrature sizes")
    common.add_argument("--grid",
                        help="'x3min:x3max:steps,xmmin:xmmax:steps'")
    sub.add_parser("design", parents=[common]).set_defaults(fn=cmd_design)
    sub.add_parser("density", parents=[common]).set_defaults(fn=cmd_density)
    sub.add_parser("trajectories", parents=[common]).set_defaults(
        fn=cmd_trajectories)
    sub.add_parser("lifetime", parents=[common]).set_defaults(fn=cmd_lifetime)
    for n in (1, 2, 3, 4):
        sub.add_parser(f"figure{n}", parents=[common]).set_defaults(
            fn=_figure_cmd(n))
    sub.add_parser("selftest", parents=[common]).set_defaults(fn=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ScenarioError as exc:
        for entry in exc.errors:
            print(f"scenario error: {entry}", file=sys.stderr)
        return 2
    except NUMERICAL_ERRORS as exc:
        print(f"numerical guard: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
