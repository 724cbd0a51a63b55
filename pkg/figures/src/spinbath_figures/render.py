"""Figure assembly from tabulated trajectories.

A FigureSpec is a declarative description of one output image: which CSV
files feed it, which columns become which curves, and how the axes are
labelled. Three figure kinds cover the standard datasets:

``bloch3d``
    One or more 3D panels, each showing trajectories on the unit sphere.
    A curve names a vector prefix ``p`` and draws the columns ``px``,
    ``py``, ``pz``.

``lines``
    One or more 2D panels of column-versus-time curves sharing a common
    abscissa column.

``dual_axis``
    A single panel with two ordinate axes; each curve is routed to the
    left or right axis.

Rendering only reads the tables and draws them. Output files are derived
artifacts and are overwritten in place on every render.
"""

from __future__ import annotations

from dataclasses import dataclass

import matplotlib
import numpy as np

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .dataset import SchemaError, read_table, require_columns  # noqa: E402


@dataclass(frozen=True)
class Curve:
    """One plotted line: a column (or vector prefix) from one CSV file."""

    path: str
    column: str
    label: str = ""
    color: str = ""
    style: str = "-"
    axis: str = "left"


@dataclass(frozen=True)
class Panel:
    """A group of curves drawn into one set of axes."""

    curves: tuple
    title: str = ""


@dataclass(frozen=True)
class FigureSpec:
    """Everything needed to draw one image file."""

    kind: str
    panels: tuple
    output: str
    xlabel: str = ""
    ylabel: str = ""
    ylabel_right: str = ""
    x_column: str = "t"
    dpi: int = 150

    def input_paths(self) -> list:
        seen = []
        for panel in self.panels:
            for curve in panel.curves:
                if curve.path not in seen:
                    seen.append(curve.path)
        return seen


def _load_tables(spec: FigureSpec) -> dict:
    return {path: read_table(path) for path in spec.input_paths()}


def _plot_kwargs(curve: Curve) -> dict:
    kwargs = {"linestyle": curve.style}
    if curve.label:
        kwargs["label"] = curve.label
    if curve.color:
        kwargs["color"] = curve.color
    return kwargs


def _render_bloch3d(spec: FigureSpec, tables: dict):
    fig = plt.figure(figsize=(4.2 * len(spec.panels), 4.4))
    mesh_u, mesh_v = _sphere_mesh()
    for index, panel in enumerate(spec.panels, start=1):
        ax = fig.add_subplot(1, len(spec.panels), index, projection="3d")
        ax.plot_wireframe(mesh_u[0], mesh_u[1], mesh_u[2],
                          color="0.85", linewidth=0.4)
        ax.plot_wireframe(mesh_v[0], mesh_v[1], mesh_v[2],
                          color="0.85", linewidth=0.4)
        for curve in panel.curves:
            table = tables[curve.path]
            names = [curve.column + axis for axis in "xyz"]
            require_columns(table, names, curve.path)
            x, y, z = (table[name] for name in names)
            ax.plot(x, y, z, linewidth=1.2, **_plot_kwargs(curve))
            ax.scatter([x[0]], [y[0]], [z[0]], s=18, marker="o",
                       color=curve.color or "0.2")
            ax.scatter([x[-1]], [y[-1]], [z[-1]], s=18, marker="D",
                       color=curve.color or "0.2")
        ax.set_box_aspect((1.0, 1.0, 1.0))
        for setter in (ax.set_xlim, ax.set_ylim, ax.set_zlim):
            setter(-1.05, 1.05)
        for ticker in (ax.set_xticks, ax.set_yticks, ax.set_zticks):
            ticker([-1.0, 0.0, 1.0])
        ax.set_xlabel("x")
        ax.set_ylabel("y")
        ax.set_zlabel("z")
        if panel.title:
            ax.set_title(panel.title)
        if any(curve.label for curve in panel.curves):
            ax.legend(loc="upper left", fontsize="small")
    fig.subplots_adjust(left=0.02, right=0.98, wspace=0.08)
    return fig


def _sphere_mesh():
    theta = np.linspace(0.0, np.pi, 13)
    phi = np.linspace(0.0, 2.0 * np.pi, 25)
    t_grid, p_grid = np.meshgrid(theta, phi)
    longitudes = (np.sin(t_grid) * np.cos(p_grid),
                  np.sin(t_grid) * np.sin(p_grid),
                  np.cos(t_grid))
    latitudes = tuple(arr.T for arr in longitudes)
    return longitudes, latitudes


def _render_lines(spec: FigureSpec, tables: dict):
    count = len(spec.panels)
    fig, axes = plt.subplots(1, count, figsize=(4.6 * count, 3.4),
                             squeeze=False)
    for ax, panel in zip(axes[0], spec.panels):
        for curve in panel.curves:
            table = tables[curve.path]
            require_columns(table, [spec.x_column, curve.column], curve.path)
            ax.plot(table[spec.x_column], table[curve.column],
                    **_plot_kwargs(curve))
        ax.grid(alpha=0.3)
        ax.set_xlabel(spec.xlabel)
        ax.set_ylabel(spec.ylabel)
        if panel.title:
            ax.set_title(panel.title)
        if any(curve.label for curve in panel.curves):
            ax.legend(fontsize="small")
    fig.tight_layout()
    return fig


def _render_dual_axis(spec: FigureSpec, tables: dict):
    if len(spec.panels) != 1:
        raise SchemaError(
            f"{spec.output}: dual_axis figures take exactly one panel")
    fig, left = plt.subplots(figsize=(5.4, 3.6))
    right = left.twinx()
    handles = []
    for curve in spec.panels[0].curves:
        table = tables[curve.path]
        require_columns(table, [spec.x_column, curve.column], curve.path)
        ax = right if curve.axis == "right" else left
        lines = ax.plot(table[spec.x_column], table[curve.column],
                        **_plot_kwargs(curve))
        handles.extend(lines)
    left.grid(alpha=0.3)
    left.set_xlabel(spec.xlabel)
    left.set_ylabel(spec.ylabel)
    right.set_ylabel(spec.ylabel_right)
    if spec.panels[0].title:
        left.set_title(spec.panels[0].title)
    labels = [handle.get_label() for handle in handles]
    if any(not label.startswith("_") for label in labels):
        left.legend(handles, labels, fontsize="small")
    fig.tight_layout()
    return fig


_RENDERERS = {
    "bloch3d": _render_bloch3d,
    "lines": _render_lines,
    "dual_axis": _render_dual_axis,
}


def render(spec: FigureSpec) -> str:
    """Draw one figure and write its image file, returning the path."""
    if spec.kind not in _RENDERERS:
        raise SchemaError(f"unknown figure kind {spec.kind!r}")
    tables = _load_tables(spec)
    fig = _RENDERERS[spec.kind](spec, tables)
    try:
        fig.savefig(spec.output, dpi=spec.dpi)
    finally:
        plt.close(fig)
    return spec.output
