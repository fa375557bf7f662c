"""Figure rendering from sweep CSV files.

Two styles:

* ``surface``: 3D surface of one quantity over the (mu12, mu23) plane,
  with cells belonging to the normal phase shaded dark gray.
* ``contour``: grayscale map of one quantity (fidelity columns use the
  fixed 0..1 white-to-black scale); for neighbor-fidelity columns the
  transition markers recorded in the CSV are drawn as black dots.

The grid is plotted exactly as sampled; nothing is interpolated or
smoothed, so a rendered feature always exists in the data.  Rendering is
a pure function of the CSV and the figure request: identical inputs give
identical image bytes for a fixed renderer version.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

NORMAL_SHADE = (0.35, 0.35, 0.35, 1.0)
FIDELITY_COLUMNS = {"f_coh_q", "f_qq_h", "f_qq_v"}
MARKER_COLUMN = {"f_qq_h": "qpt_h", "f_qq_v": "qpt_v"}


class RenderError(ValueError):
    """Bad figure request: missing column, empty selection, bad style."""


@dataclass(frozen=True)
class FigureSpec:
    csv_path: str
    quantity: str
    out_path: str
    style: str = "surface"  # "surface" | "contour"
    irrep: str | None = None  # filter, e.g. "4,0,0"
    shade_normal: bool = True
    dpi: int = 150

    def __post_init__(self):
        if self.style not in ("surface", "contour"):
            raise RenderError(f"unknown style {self.style!r}")


def _load_grid(spec: FigureSpec):
    frame = pd.read_csv(spec.csv_path)
    if spec.quantity not in frame.columns:
        raise RenderError(f"column {spec.quantity!r} not in {sorted(frame.columns)}")
    if spec.irrep is not None:
        frame = frame[frame["irrep"] == spec.irrep]
    if frame.empty:
        raise RenderError(f"no rows selected (irrep filter {spec.irrep!r})")
    irreps = frame["irrep"].unique()
    if len(irreps) > 1:
        raise RenderError(f"multiple irreps in selection {list(irreps)}; pass --irrep")

    mu12 = np.sort(frame["mu12"].unique())
    mu23 = np.sort(frame["mu23"].unique())

    def pivot(column, fill=np.nan):
        table = frame.pivot(index="mu23", columns="mu12", values=column)
        table = table.reindex(index=mu23, columns=mu12)
        return table.to_numpy()

    values = pivot(spec.quantity)
    if np.isnan(np.asarray(values, dtype=float)).all():
        raise RenderError(f"column {spec.quantity!r} is empty for this selection")
    phase = pivot("phase") if "phase" in frame.columns else None
    marker_col = MARKER_COLUMN.get(spec.quantity)
    markers = None
    if marker_col and marker_col in frame.columns:
        flags = frame.pivot(index="mu23", columns="mu12", values=marker_col)
        flags = flags.reindex(index=mu23, columns=mu12).to_numpy()
        markers = flags == True  # noqa: E712 - column may be bool or object
        if markers.dtype != bool:
            markers = np.array([[str(v).lower() == "true" for v in row] for row in flags])
    return mu12, mu23, np.asarray(values, dtype=float), phase, markers


def _render_surface(ax, mu12, mu23, values, phase, shade_normal):
    x, y = np.meshgrid(mu12, mu23)
    kwargs = {"linewidth": 0.2, "antialiased": True, "edgecolor": "k"}
    if shade_normal and phase is not None:
        # facecolors are per cell: shade cells whose corner point is Normal
        cmap = plt.get_cmap("viridis")
        span = np.nanmax(values) - np.nanmin(values)
        norm = (values - np.nanmin(values)) / (span if span > 0 else 1.0)
        colors = cmap(norm)
        colors[phase == "Normal"] = NORMAL_SHADE
        ax.plot_surface(x, y, values, facecolors=colors[:-1, :-1], shade=False, **kwargs)
    else:
        ax.plot_surface(x, y, values, cmap="viridis", **kwargs)
    ax.set_xlabel(r"$\mu_{12}$")
    ax.set_ylabel(r"$\mu_{23}$")


def _render_contour(ax, mu12, mu23, values, markers, quantity):
    if quantity in FIDELITY_COLUMNS:
        mesh = ax.pcolormesh(
            mu12, mu23, values, cmap="Greys", vmin=0.0, vmax=1.0, shading="nearest"
        )
    else:
        mesh = ax.pcolormesh(mu12, mu23, values, cmap="Greys", shading="nearest")
    plt.colorbar(mesh, ax=ax, label=quantity)
    if markers is not None and markers.any():
        jj, ii = np.nonzero(markers)
        ax.plot(mu12[ii], mu23[jj], "k.", markersize=6)
    ax.set_xlabel(r"$\mu_{12}$")
    ax.set_ylabel(r"$\mu_{23}$")


def render(spec: FigureSpec) -> Path:
    """Render one figure; returns the written path."""
    mu12, mu23, values, phase, markers = _load_grid(spec)
    fig = plt.figure(figsize=(6.0, 4.8))
    try:
        if spec.style == "surface":
            ax = fig.add_subplot(111, projection="3d")
            _render_surface(ax, mu12, mu23, values, phase, spec.shade_normal)
            ax.set_zlabel(spec.quantity)
        else:
            ax = fig.add_subplot(111)
            _render_contour(ax, mu12, mu23, values, markers, spec.quantity)
        title = spec.quantity if spec.irrep is None else f"{spec.quantity}  h=({spec.irrep})"
        ax.set_title(title)
        out = Path(spec.out_path)
        out.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(out, dpi=spec.dpi, metadata={"Software": None})
    finally:
        plt.close(fig)
    return Path(spec.out_path)
