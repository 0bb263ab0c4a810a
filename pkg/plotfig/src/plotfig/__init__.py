"""Render the sweep CSV datasets as publication-style figures.

Four figure kinds mirror the reference datasets: entanglement versus band
half-width (fig1) and versus detuning (fig2) as multi-curve line plots with
a solid / dash-dot / dot / dash style cycle, the decay dynamics (fig3) as a
single curve, and the vacuum-fidelity map (fig4) as a heat map.  The only
input is the public CSV dialect ('#'-prefixed metadata lines, then a header
row); no physics is recomputed here.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
from matplotlib.figure import Figure

__version__ = "0.1.0"

__all__ = ["FigureSpec", "FIGURE_KINDS", "LINE_STYLES", "read_sweep_csv",
           "build_figure", "render"]

FIGURE_KINDS = ("fig1", "fig2", "fig3", "fig4")

#: Curve style cycle: solid, dash-dot, dot, dash.
LINE_STYLES = ("-", "-.", ":", "--")

_EXPECTED_AXIS = {
    "fig1": ("eps_tilde", "entanglement_delta_"),
    "fig2": ("delta_tilde", "entanglement_eps_"),
}
_EXPECTED_EXACT = {
    "fig3": ["gamma_t", "excited_population", "atom_field_entropy"],
    "fig4": ["eps_tilde", "delta_tilde", "vacuum_fidelity"],
}


@dataclass(frozen=True)
class FigureSpec:
    """One rendering job: which CSV, which figure kind, where to write."""

    input_path: str
    figure_kind: str
    output_image_path: str
    style: tuple[str, ...] = LINE_STYLES

    def __post_init__(self) -> None:
        if self.figure_kind not in FIGURE_KINDS:
            raise ValueError(f"figure_kind must be one of {FIGURE_KINDS}, "
                             f"got {self.figure_kind!r}")


def read_sweep_csv(path: str) -> tuple[list[str], np.ndarray, dict[str, str]]:
    """Parse the sweep CSV dialect into (header, row table, metadata)."""
    metadata: dict[str, str] = {}
    header: list[str] | None = None
    rows: list[list[float]] = []
    with open(path, newline="") as handle:
        for record in csv.reader(handle):
            if not record:
                continue
            if record[0].startswith("#"):
                text = ",".join(record).lstrip("#").strip()
                if "=" in text:
                    key, value = text.split("=", 1)
                    metadata[key.strip()] = value.strip()
                continue
            if header is None:
                header = [field.strip() for field in record]
                continue
            rows.append([float(field) for field in record])
    if header is None:
        raise ValueError(f"{path}: no header row found")
    if not rows:
        raise ValueError(f"{path}: no data rows")
    return header, np.array(rows), metadata


def _check_header(kind: str, header: list[str], path: str) -> None:
    if kind in _EXPECTED_EXACT:
        if header != _EXPECTED_EXACT[kind]:
            raise ValueError(
                f"{path}: header {header} does not match the {kind} dataset "
                f"(expected {_EXPECTED_EXACT[kind]})")
        return
    axis, prefix = _EXPECTED_AXIS[kind]
    if header[0] != axis or len(header) < 2 or not all(
            name.startswith(prefix) for name in header[1:]):
        raise ValueError(
            f"{path}: header {header} does not match the {kind} dataset "
            f"(expected first column {axis!r} and curve columns starting "
            f"with {prefix!r})")


def _curve_label(column_name: str) -> str:
    if column_name.startswith("entanglement_delta_"):
        return rf"$\tilde{{\Delta}} = {column_name.rsplit('_', 1)[1]}$"
    if column_name.startswith("entanglement_eps_"):
        return rf"$\tilde{{\epsilon}} = {column_name.rsplit('_', 1)[1]}$"
    return column_name


def _line_figure(table: np.ndarray, header: list[str], xlabel: str,
                 styles: tuple[str, ...]) -> Figure:
    fig = Figure(figsize=(6.4, 4.4))
    ax = fig.add_subplot()
    for index, name in enumerate(header[1:]):
        ax.plot(table[:, 0], table[:, index + 1], color="black",
                linestyle=styles[index % len(styles)], linewidth=1.2,
                label=_curve_label(name))
    ax.set_xlabel(xlabel)
    ax.set_ylabel("entanglement (bits)")
    ax.set_ylim(bottom=0.0)
    if len(header) > 2:
        ax.legend(frameon=False)
    fig.tight_layout()
    return fig


def _heatmap_figure(table: np.ndarray) -> Figure:
    eps_values = np.unique(table[:, 0])
    delta_values = np.unique(table[:, 1])
    grid = table[:, 2].reshape(eps_values.size, delta_values.size)
    fig = Figure(figsize=(6.4, 4.8))
    ax = fig.add_subplot()
    mesh = ax.pcolormesh(eps_values, delta_values, grid.T, cmap="viridis",
                         vmin=0.0, vmax=1.0, shading="nearest")
    ax.set_xlabel(r"$\tilde{\epsilon}$")
    ax.set_ylabel(r"$\tilde{\Delta}$")
    fig.colorbar(mesh, ax=ax, label="vacuum fidelity")
    fig.tight_layout()
    return fig


def build_figure(spec: FigureSpec) -> Figure:
    """Build the matplotlib figure for a spec without writing it."""
    header, table, _ = read_sweep_csv(spec.input_path)
    _check_header(spec.figure_kind, header, spec.input_path)
    if spec.figure_kind == "fig1":
        return _line_figure(table, header, r"$\tilde{\epsilon}$", spec.style)
    if spec.figure_kind == "fig2":
        return _line_figure(table, header, r"$\tilde{\Delta}$", spec.style)
    if spec.figure_kind == "fig3":
        fig = Figure(figsize=(6.4, 4.4))
        ax = fig.add_subplot()
        ax.plot(table[:, 0], table[:, 2], color="black", linestyle="-",
                linewidth=1.2)
        ax.set_xlabel(r"$\Gamma t$")
        ax.set_ylabel("atom-field entanglement (bits)")
        ax.set_ylim(0.0, 1.05)
        fig.tight_layout()
        return fig
    return _heatmap_figure(table)


def render(spec: FigureSpec) -> str:
    """Render the figure and write the image file; returns the output path."""
    fig = build_figure(spec)
    fig.savefig(spec.output_image_path, dpi=200)
    return spec.output_image_path
