"""Deterministic CSV/JSON dataset writers.

CSV format: one leading comment line ``# scenario=<hash>``, a mandatory
header row, decimal numbers at 9 significant digits with '.' radix,
newline-terminated rows.  Identical inputs produce identical bytes,
independent of worker counts.
"""

from __future__ import annotations

import json
import os

import numpy as np


def format_number(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if not np.isfinite(x):
        return {True: "inf", False: "-inf"}.get(x > 0, "nan") \
            if not np.isnan(x) else "nan"
    return f"{float(x):.9g}"


def write_csv(path, columns: dict, scenario_hash: str) -> None:
    names = list(columns)
    arrays = [np.asarray(columns[k]).reshape(-1) for k in names]
    n = arrays[0].size
    if any(a.size != n for a in arrays):
        raise ValueError("column length mismatch")
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# scenario={scenario_hash}\n")
        fh.write(",".join(names) + "\n")
        for i in range(n):
            fh.write(",".join(format_number(a[i]) for a in arrays) + "\n")


def write_json(path, obj: dict) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(obj, fh, sort_keys=True, indent=1, default=_coerce)
        fh.write("\n")


def _coerce(x):
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(f"not JSON-serializable: {type(x)}")


def read_csv(path) -> tuple[dict, str | None]:
    """Read a dataset CSV back into column arrays plus its scenario hash."""
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
        names = header.split(",")
        rows = [line.strip().split(",") for line in fh if line.strip()]
    cols = {name: np.array([float(r[j]) for r in rows])
            for j, name in enumerate(names)}
    return cols, sc_hash


def density_dataset(out_dir, stem, field, scenario) -> tuple[str, str]:
    """Write a density grid as CSV plus a JSON sidecar; returns paths."""
    grid = field.grid
    n, m = field.density.shape
    xm = np.repeat(grid.x_minus, m)
    x3 = np.tile(grid.x3, n)
    csv_path = os.path.join(out_dir, f"{stem}.csv")
    write_csv(csv_path, {"x_minus": xm, "x3": x3,
                         "density": field.density.reshape(-1)},
              scenario.hash)
    sidecar = {
        "scenario": scenario.raw,
        "scenario_hash": scenario.hash,
        "derived": scenario.derived,
        "grid": {"x_minus": [float(grid.x_minus[0]), float(grid.x_minus[-1]),
                             int(n)],
                 "x3": [float(grid.x3[0]), float(grid.x3[-1]), int(m)],
                 "x1_rule": grid.x1_rule if isinstance(grid.x1_rule, str)
                            else float(grid.x1_rule)},
        "x1_per_slice": field.x1,
        "line_norms": field.line_norms,
        "metadata": field.metadata,
    }
    json_path = os.path.join(out_dir, f"{stem}.json")
    write_json(json_path, sidecar)
    return csv_path, json_path
