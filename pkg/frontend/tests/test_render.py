"""Renderer tests against synthetic datasets in the documented schemas.

No physics package is imported: the renderer is exercised purely
through the CSV/JSON interfaces it consumes in production.
"""

import json
import os

import numpy as np
import pytest

from figrender import (HashMismatch, MissingColumns, RenderError,
                       RenderManifest, render)
from figrender.cli import main, standard_bundle

HASH = "abc123def456"


def write_csv(path, columns, sc_hash=HASH):
    names = list(columns)
    arrays = [np.asarray(columns[k]).reshape(-1) for k in names]
    with open(path, "w", newline="\n") as fh:
        fh.write(f"# scenario={sc_hash}\n")
        fh.write(",".join(names) + "\n")
        for i in range(arrays[0].size):
            fh.write(",".join(f"{a[i]:.9g}" for a in arrays) + "\n")


def density_fixture(tmp_path, sc_hash=HASH):
    xm = np.linspace(-50, 50, 21)
    x3 = np.linspace(-30, 30, 25)
    xx, yy = np.meshgrid(xm, x3, indexing="ij")
    rho = np.exp(-((yy - 0.2 * xx) / 8.0) ** 2) * (1 + 0.1 * np.cos(xx / 5))
    dpath = str(tmp_path / "dens.csv")
    write_csv(dpath, {"x_minus": xx.ravel(), "x3": yy.ravel(),
                      "density": rho.ravel()}, sc_hash)
    t = np.linspace(-50, 50, 41)
    tpath = str(tmp_path / "traj.csv")
    write_csv(tpath, {
        "x_minus": t, "xf1": np.sin(t / 9), "xf3": 0.2 * t,
        "xf3_tilde": 0.2 * t, "ex1": 0.5 * np.sin(t / 9),
        "ex3": -0.19 * t, "ex3_tilde": -0.19 * t,
        "exi": 3.0 * np.exp(-(t / 30) ** 4)}, sc_hash)
    return dpath, tpath


class TestDensity:
    def test_renders_with_overlays(self, tmp_path):
        dpath, tpath = density_fixture(tmp_path)
        m = RenderManifest(kind="density",
                           datasets={"density": dpath, "trajectory": tpath},
                           output=str(tmp_path / "out.png"),
                           scenario_hash=HASH)
        out = render(m)
        assert os.path.exists(out)
        assert os.path.getsize(out) > 5000

    def test_hash_mismatch_refused(self, tmp_path):
        dpath, tpath = density_fixture(tmp_path)
        m = RenderManifest(kind="density",
                           datasets={"density": dpath, "trajectory": tpath},
                           output=str(tmp_path / "out.png"),
                           scenario_hash="something_else")
        with pytest.raises(HashMismatch):
            render(m)

    def test_missing_column_reported(self, tmp_path):
        dpath, _ = density_fixture(tmp_path)
        bad = str(tmp_path / "badtraj.csv")
        write_csv(bad, {"x_minus": np.arange(5.0), "xf1": np.arange(5.0)})
        m = RenderManifest(kind="density",
                           datasets={"density": dpath, "trajectory": bad},
                           output=str(tmp_path / "out.png"),
                           scenario_hash=HASH)
        with pytest.raises(MissingColumns) as err:
            render(m)
        assert "xf3" in err.value.missing

    def test_empty_dataset_reports_row_count(self, tmp_path):
        empty = str(tmp_path / "empty.csv")
        with open(empty, "w") as fh:
            fh.write(f"# scenario={HASH}\nx_minus,x3,density\n")
        m = RenderManifest(kind="density",
                           datasets={"density": empty, "trajectory": empty},
                           output=str(tmp_path / "o.png"),
                           scenario_hash=HASH)
        with pytest.raises(RenderError, match="row count 0"):
            render(m)

    def test_idempotent_rerender(self, tmp_path):
        dpath, tpath = density_fixture(tmp_path)
        m = RenderManifest(kind="density",
                           datasets={"density": dpath, "trajectory": tpath},
                           output=str(tmp_path / "out.png"),
                           scenario_hash=HASH)
        a = open(render(m), "rb").read()
        b = open(render(m), "rb").read()
        assert a == b


class TestTrajectory3d:
    def _traj(self, tmp_path, with_comoving=True):
        t = np.linspace(-300, 300, 201)
        cols = {
            "x_minus": t, "xf1": 100 * np.sin(t / 100),
            "xf3": -0.8 * t, "xf3_tilde": -0.8 * t,
            "ex1": 50 * np.sin(t / 100), "ex3": -0.19 * t,
            "ex3_tilde": -0.19 * t, "exi": np.full_like(t, 3.0)}
        if with_comoving:
            cols["xf3_comoving_vfstar"] = 12.5 * np.sin(t / 50)
            cols["ex3_comoving_v1d"] = 6.0 * np.sin(t / 50 + 0.4)
        path = str(tmp_path / "traj3.csv")
        write_csv(path, cols)
        return path

    def test_renders_closed_loop(self, tmp_path):
        path = self._traj(tmp_path)
        m = RenderManifest(kind="trajectory3d",
                           datasets={"trajectory": path},
                           output=str(tmp_path / "f3.png"),
                           scenario_hash=HASH)
        assert os.path.getsize(render(m)) > 5000

    def test_absent_comoving_columns_error(self, tmp_path):
        path = self._traj(tmp_path, with_comoving=False)
        m = RenderManifest(kind="trajectory3d",
                           datasets={"trajectory": path},
                           output=str(tmp_path / "f3.png"),
                           scenario_hash=HASH)
        with pytest.raises(MissingColumns):
            render(m)


class TestMomentumMap:
    def test_three_panel_bundle(self, tmp_path):
        for p in "abc":
            eta = np.repeat(np.linspace(1.1, 1.3, 11), 15)
            p1 = np.tile(np.linspace(-0.2, 0.2, 15), 11)
            ratio = -0.19 + 0.1 * p1 ** 2 + 0.05 * (eta - 1.2)
            w = np.exp(-((eta - 1.2) / 0.05) ** 2 - (p1 / 0.1) ** 2)
            write_csv(str(tmp_path / f"fig4{p}_map.csv"),
                      {"eta": eta, "p1": p1, "q3_over_qminus": ratio,
                       "weight": w})
            (tmp_path / f"fig4{p}.json").write_text(json.dumps(
                {"velocities": {"one_dimensional": -0.1944,
                                "full_quadrature": -0.1930}}))
        m = RenderManifest(
            kind="momentum_map",
            datasets={"mapa": str(tmp_path / "fig4a_map.csv"),
                      "metaa": str(tmp_path / "fig4a.json")},
            output=str(tmp_path / "f4.png"), scenario_hash=HASH)
        assert os.path.getsize(render(m)) > 5000


class TestSnapshots:
    def test_renders_three_times(self, tmp_path):
        x1 = np.linspace(-5, 5, 11)
        x3 = np.linspace(-8, 8, 13)
        rows = {"x0": [], "x1": [], "x3": [], "density": []}
        for t in (-10.0, 0.0, 10.0):
            xx, yy = np.meshgrid(x1, x3, indexing="ij")
            rows["x0"].append(np.full(xx.size, t))
            rows["x1"].append(xx.ravel())
            rows["x3"].append(yy.ravel())
            rows["density"].append(
                np.exp(-(xx ** 2 + (yy + 0.3 * t) ** 2) / 8).ravel())
        path = str(tmp_path / "fig1a_density.csv")
        write_csv(path, {k: np.concatenate(v) for k, v in rows.items()})
        m = RenderManifest(kind="snapshots", datasets={"density": path},
                           output=str(tmp_path / "f1.png"),
                           scenario_hash=HASH)
        assert os.path.getsize(render(m)) > 5000


class TestCliBundle:
    def test_standard_bundle_and_cli(self, tmp_path):
        # assemble a full dataset directory in the documented layout
        dpath, tpath = density_fixture(tmp_path)
        os.rename(dpath, tmp_path / "fig2a_density.csv")
        os.rename(tpath, tmp_path / "fig2a_trajectory.csv")
        t = np.linspace(-300, 300, 101)
        write_csv(str(tmp_path / "fig3_trajectory.csv"), {
            "x_minus": t, "xf1": 100 * np.sin(t / 100), "xf3": -0.8 * t,
            "xf3_tilde": -0.8 * t, "ex1": 0.5 * t * 0, "ex3": -0.19 * t,
            "ex3_tilde": -0.19 * t, "exi": np.full_like(t, 3.0),
            "xf3_comoving_vfstar": 12.5 * np.sin(t / 48),
            "ex3_comoving_v1d": 6.0 * np.sin(t / 48)})
        eta = np.repeat(np.linspace(1.1, 1.3, 7), 9)
        p1 = np.tile(np.linspace(-0.2, 0.2, 9), 7)
        write_csv(str(tmp_path / "fig4a_map.csv"),
                  {"eta": eta, "p1": p1,
                   "q3_over_qminus": -0.19 + p1 ** 2,
                   "weight": np.exp(-p1 ** 2)})
        x1 = np.linspace(-5, 5, 7)
        x3 = np.linspace(-8, 8, 9)
        xx, yy = np.meshgrid(x1, x3, indexing="ij")
        write_csv(str(tmp_path / "fig1a_density.csv"),
                  {"x0": np.zeros(xx.size), "x1": xx.ravel(),
                   "x3": yy.ravel(),
                   "density": np.exp(-(xx ** 2 + yy ** 2)).ravel()})
        out = tmp_path / "img"
        rc = main(["--datasets", str(tmp_path), "--out", str(out)])
        assert rc == 0
        made = sorted(os.listdir(out))
        assert "figure1a.png" in made
        assert "figure2a.png" in made
        assert "figure3.png" in made
        assert "figure4a.png" in made
