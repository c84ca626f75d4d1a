"""Offline rendering of volkovwp datasets into figure images."""

from .manifest import (HashMismatch, MissingColumns, RenderError,
                       RenderManifest, read_table)
from .render import (render, render_density, render_momentum_map,
                     render_snapshots, render_trajectory3d)

__version__ = "0.1.0"
