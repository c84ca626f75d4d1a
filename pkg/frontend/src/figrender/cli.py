"""Render datasets produced by the volkovwp CLI into figure images.

    figrender --manifest m.json            render one manifest
    figrender --datasets DIR --out DIR     render the standard bundle
                                           (figure1..figure4) from a
                                           directory of CLI outputs
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .manifest import RenderError, RenderManifest
from .render import render


def _hash_of(path) -> str | None:
    with open(path, "r", encoding="utf-8") as fh:
        first = fh.readline()
    if first.startswith("#"):
        for token in first[1:].strip().split():
            if token.startswith("scenario="):
                return token.split("=", 1)[1]
    return None


def standard_bundle(dataset_dir: str, out_dir: str) -> list:
    """Manifests for the four bundled figures, hashes read from the
    datasets themselves (each figure is a single scenario run)."""
    d = lambda name: os.path.join(dataset_dir, name)
    o = lambda name: os.path.join(out_dir, name)
    manifests = []
    for panel in ("a", "c", "e"):
        path = d(f"fig1{panel}_density.csv")
        if os.path.exists(path):
            manifests.append(RenderManifest(
                kind="snapshots", datasets={"density": path},
                output=o(f"figure1{panel}.png"),
                scenario_hash=_hash_of(path),
                options={"title": f"partial wavepacket ({panel})"}))
    for panel in "abc":
        path = d(f"fig2{panel}_density.csv")
        if os.path.exists(path):
            manifests.append(RenderManifest(
                kind="density",
                datasets={"density": path,
                          "trajectory": d(f"fig2{panel}_trajectory.csv")},
                output=o(f"figure2{panel}.png"),
                scenario_hash=_hash_of(path),
                options={"title": f"density, panel {panel}"}))
    path = d("fig3_trajectory.csv")
    if os.path.exists(path):
        manifests.append(RenderManifest(
            kind="trajectory3d", datasets={"trajectory": path},
            output=o("figure3.png"), scenario_hash=_hash_of(path),
            options={"title": "co-moving trajectories"}))
    maps = {f"map{p}": d(f"fig4{p}_map.csv") for p in "abc"
            if os.path.exists(d(f"fig4{p}_map.csv"))}
    metas = {f"meta{p}": d(f"fig4{p}.json") for p in "abc"
             if os.path.exists(d(f"fig4{p}.json"))}
    if maps:
        # per-panel hashes differ; render panels separately
        for p in "abc":
            key = f"map{p}"
            if key not in maps:
                continue
            ds = {key: maps[key]}
            if f"meta{p}" in metas:
                ds[f"meta{p}"] = metas[f"meta{p}"]
            manifests.append(RenderManifest(
                kind="momentum_map", datasets=ds,
                output=o(f"figure4{p}.png"),
                scenario_hash=_hash_of(maps[key]),
                options={"title": f"momentum density ({p})"}))
    return manifests


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="figrender")
    parser.add_argument("--manifest", help="render a single manifest JSON")
    parser.add_argument("--datasets", help="directory of volkovwp outputs")
    parser.add_argument("--out", default=".", help="image output directory")
    args = parser.parse_args(argv)
    try:
        if args.manifest:
            path = render(RenderManifest.from_file(args.manifest))
            print(f"wrote {path}")
            return 0
        if not args.datasets:
            parser.error("need --manifest or --datasets")
        manifests = standard_bundle(args.datasets, args.out)
        if not manifests:
            print("no recognizable datasets found", file=sys.stderr)
            return 1
        for m in manifests:
            print(f"wrote {render(m)}")
        return 0
    except RenderError as exc:
        print(f"render error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
