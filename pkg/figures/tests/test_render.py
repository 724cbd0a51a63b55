"""Rendering the three figure kinds from synthetic tables."""

import os

import pytest

from spinbath_figures import Curve, FigureSpec, Panel, SchemaError, render

from conftest import angle_csv, trajectory_csv


def rendered_size(spec):
    path = render(spec)
    assert path == spec.output
    return os.path.getsize(path)


def bloch_spec(csv_path, out_path):
    panel = Panel(curves=(Curve(csv_path, "v1", color="black"),
                          Curve(csv_path, "v2", color="tab:blue")))
    return FigureSpec(kind="bloch3d", panels=(panel,), output=out_path)


def test_bloch3d_writes_an_image(tmp_path):
    csv_path = trajectory_csv(tmp_path / "fig1a.csv")
    spec = bloch_spec(csv_path, str(tmp_path / "fig1.png"))
    assert rendered_size(spec) > 0


def test_lines_multi_panel_writes_an_image(tmp_path):
    first = angle_csv(tmp_path / "a.csv")
    second = angle_csv(tmp_path / "b.csv", scale=0.5)
    panels = (Panel(curves=(Curve(first, "D_B", label="a"),)),
              Panel(curves=(Curve(second, "D_B", label="b"),)))
    spec = FigureSpec(kind="lines", panels=panels,
                      output=str(tmp_path / "fig2.png"),
                      xlabel="t", ylabel="D_B")
    assert rendered_size(spec) > 0


def test_dual_axis_writes_an_image(tmp_path):
    path = angle_csv(tmp_path / "c.csv")
    curves = (Curve(path, "D_B", label="left"),
              Curve(path, "D_B", label="right", axis="right", style="--"))
    spec = FigureSpec(kind="dual_axis", panels=(Panel(curves=curves),),
                      output=str(tmp_path / "fig4.png"),
                      ylabel="L", ylabel_right="R")
    assert rendered_size(spec) > 0


def test_rerender_overwrites_in_place(tmp_path):
    csv_path = angle_csv(tmp_path / "d.csv")
    spec = FigureSpec(kind="lines",
                      panels=(Panel(curves=(Curve(csv_path, "D_B"),)),),
                      output=str(tmp_path / "out.png"))
    first = rendered_size(spec)
    second = rendered_size(spec)
    assert first > 0 and second > 0


def test_missing_column_names_the_column(tmp_path):
    csv_path = angle_csv(tmp_path / "e.csv")
    spec = FigureSpec(kind="lines",
                      panels=(Panel(curves=(Curve(csv_path, "wrong"),)),),
                      output=str(tmp_path / "out.png"))
    with pytest.raises(SchemaError, match="missing column.*wrong"):
        render(spec)


def test_missing_vector_component_names_the_column(tmp_path):
    csv_path = angle_csv(tmp_path / "f.csv")
    spec = bloch_spec(csv_path, str(tmp_path / "out.png"))
    with pytest.raises(SchemaError, match="v1x"):
        render(spec)


def test_dual_axis_rejects_multiple_panels(tmp_path):
    path = angle_csv(tmp_path / "g.csv")
    panel = Panel(curves=(Curve(path, "D_B"),))
    spec = FigureSpec(kind="dual_axis", panels=(panel, panel),
                      output=str(tmp_path / "out.png"))
    with pytest.raises(SchemaError, match="exactly one panel"):
        render(spec)


def test_unknown_kind_rejected(tmp_path):
    path = angle_csv(tmp_path / "h.csv")
    spec = FigureSpec(kind="pie", panels=(Panel(curves=(Curve(path, "D_B"),)),),
                      output=str(tmp_path / "out.png"))
    with pytest.raises(SchemaError, match="unknown figure kind"):
        render(spec)
