"""Render manifests and dataset ingestion.

A manifest names the dataset files, the output image and the scenario
hash the datasets must carry.  Datasets whose embedded hash disagrees
with the manifest are refused: rendering never mixes runs.

Every plotted quantity comes from a dataset column; this package does
no physics.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np


class RenderError(Exception):
    """Problem with a manifest or a dataset."""


class HashMismatch(RenderError):
    """Dataset belongs to a different scenario than the manifest."""


class MissingColumns(RenderError):
    def __init__(self, path, missing):
        self.missing = list(missing)
        super().__init__(f"{path}: missing columns {self.missing}")


@dataclass(frozen=True)
class RenderManifest:
    kind: str                      # density | trajectory3d | momentum_map | snapshots
    datasets: dict                 # role -> path
    output: str
    scenario_hash: str | None = None
    options: dict = field(default_factory=dict)

    @classmethod
    def from_file(cls, path) -> "RenderManifest":
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        for key in ("kind", "datasets", "output"):
            if key not in raw:
                raise RenderError(f"manifest: missing key {key!r}")
        return cls(kind=raw["kind"], datasets=dict(raw["datasets"]),
                   output=raw["output"],
                   scenario_hash=raw.get("scenario_hash"),
                   options=raw.get("options", {}))


def read_table(path, manifest: RenderManifest | None = None,
               require=()) -> dict:
    """Read a dataset CSV; verify its hash against the manifest and the
    presence of required columns."""
    with open(path, "r", encoding="utf-8") as fh:
        first = fh.readline().strip()
        sc_hash = None
        if first.startswith("#"):
            for token in first[1:].strip().split():
                if token.startswith("scenario="):
                    sc_hash = token.split("=", 1)[1]
            header = fh.readline().strip()
        else:
            header = first
        names = header.split(",") if header else []
        rows = [line.strip().split(",") for line in fh if line.strip()]
    if not rows:
        raise RenderError(f"{path}: empty dataset (row count 0)")
    if manifest is not None and manifest.scenario_hash is not None:
        if sc_hash != manifest.scenario_hash:
            raise HashMismatch(
                f"{path}: dataset hash {sc_hash!r} does not match manifest "
                f"hash {manifest.scenario_hash!r}")
    missing = [c for c in require if c not in names]
    if missing:
        raise MissingColumns(path, missing)
    cols = {name: np.array([float(r[j]) for r in rows])
            for j, name in enumerate(names)}
    cols["__hash__"] = sc_hash
    return cols


def read_sidecar(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def pivot_grid(x, y, z) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Reshape flat row-major (x, y, z) columns into a 2D field."""
    xu = np.unique(x)
    yu = np.unique(y)
    if xu.size * yu.size != z.size:
        raise RenderError("dataset rows do not form a complete grid")
    order = np.lexsort((y, x))
    zz = np.asarray(z)[order].reshape(xu.size, yu.size)
    return xu, yu, zz
