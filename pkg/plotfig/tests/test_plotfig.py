"""Figure rendering from the default sweep CSVs, driven through the public CLIs.

The datasets are produced by invoking the wwentangle command line (the only
interface plotfig depends on); rendering is then checked for curve count,
line-style cycle, and the fig3 peak location read back from the plotted data.
"""

import math
import subprocess
import sys

import numpy as np
import pytest

from plotfig import FigureSpec, LINE_STYLES, build_figure, read_sweep_csv, render
from plotfig.cli import run_cli

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def run_wwentangle(*args) -> None:
    proc = subprocess.run([sys.executable, "-m", "wwentangle.cli", *args],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr


@pytest.fixture(scope="session")
def default_csvs(tmp_path_factory):
    root = tmp_path_factory.mktemp("sweeps")
    paths = {kind: root / f"{kind}.csv" for kind in ("fig1", "fig2", "fig3", "fig4")}
    run_wwentangle("sweep-epsilon", "--out", str(paths["fig1"]))
    run_wwentangle("sweep-delta", "--out", str(paths["fig2"]))
    run_wwentangle("sweep-time", "--out", str(paths["fig3"]))
    run_wwentangle("fidelity-grid", "--out", str(paths["fig4"]))
    return paths


def test_acceptance_all_four_figures_render(default_csvs, tmp_path):
    for kind, csv_path in default_csvs.items():
        out = tmp_path / f"{kind}.png"
        written = render(FigureSpec(input_path=str(csv_path), figure_kind=kind,
                                    output_image_path=str(out)))
        assert written == str(out)
        payload = out.read_bytes()
        assert payload.startswith(PNG_MAGIC) and len(payload) > 1000
    print("[PASS] plotfig renders all four default-sweep figures")


@pytest.mark.parametrize("kind", ["fig1", "fig2"])
def test_four_curves_with_caption_style_cycle(default_csvs, tmp_path, kind):
    fig = build_figure(FigureSpec(input_path=str(default_csvs[kind]),
                                  figure_kind=kind,
                                  output_image_path=str(tmp_path / "x.png")))
    lines = fig.axes[0].get_lines()
    assert len(lines) == 4
    assert tuple(line.get_linestyle() for line in lines) == LINE_STYLES


def test_fig1_curves_all_peak_at_one_ebit(default_csvs, tmp_path):
    fig = build_figure(FigureSpec(input_path=str(default_csvs["fig1"]),
                                  figure_kind="fig1",
                                  output_image_path=str(tmp_path / "x.png")))
    for line in fig.axes[0].get_lines():
        assert line.get_ydata().max() > 0.999


def test_fig3_peak_read_from_rendered_data(default_csvs, tmp_path):
    fig = build_figure(FigureSpec(input_path=str(default_csvs["fig3"]),
                                  figure_kind="fig3",
                                  output_image_path=str(tmp_path / "x.png")))
    lines = fig.axes[0].get_lines()
    assert len(lines) == 1
    x = lines[0].get_xdata()
    y = lines[0].get_ydata()
    step = x[1] - x[0]
    assert abs(x[int(np.argmax(y))] - math.log(2.0)) <= step
    print("[PASS] fig3 curve peaks within one grid step of 0.693")


def test_rendering_is_deterministic(default_csvs, tmp_path):
    spec_a = FigureSpec(input_path=str(default_csvs["fig3"]), figure_kind="fig3",
                        output_image_path=str(tmp_path / "a.png"))
    spec_b = FigureSpec(input_path=str(default_csvs["fig3"]), figure_kind="fig3",
                        output_image_path=str(tmp_path / "b.png"))
    assert (open(render(spec_a), "rb").read()
            == open(render(spec_b), "rb").read())


def test_header_mismatch_is_descriptive(default_csvs, tmp_path):
    out = tmp_path / "bad.png"
    with pytest.raises(ValueError, match="does not match the fig3 dataset"):
        render(FigureSpec(input_path=str(default_csvs["fig1"]),
                          figure_kind="fig3", output_image_path=str(out)))
    assert not out.exists()


def test_empty_rows_rejected_before_writing(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("# tool = wwentangle\ngamma_t,excited_population,"
                     "atom_field_entropy\n")
    out = tmp_path / "empty.png"
    with pytest.raises(ValueError, match="no data rows"):
        render(FigureSpec(input_path=str(empty), figure_kind="fig3",
                          output_image_path=str(out)))
    assert not out.exists()


def test_missing_file_is_io_error(tmp_path):
    with pytest.raises(OSError):
        read_sweep_csv(str(tmp_path / "nope.csv"))


def test_unknown_kind_rejected(tmp_path):
    with pytest.raises(ValueError, match="figure_kind"):
        FigureSpec(input_path="x.csv", figure_kind="fig9",
                   output_image_path="x.png")


class TestCli:
    def test_renders_via_cli(self, default_csvs, tmp_path):
        out = tmp_path / "fig1.png"
        assert run_cli(["fig1", str(default_csvs["fig1"]), str(out)]) == 0
        assert out.read_bytes().startswith(PNG_MAGIC)

    def test_missing_input_exits_nonzero(self, tmp_path, capsys):
        code = run_cli(["fig1", str(tmp_path / "absent.csv"),
                        str(tmp_path / "y.png")])
        assert code == 1
        assert "error" in capsys.readouterr().err

    def test_bad_kind_is_usage_error(self, tmp_path):
        assert run_cli(["fig9", "a.csv", "b.png"]) == 2
