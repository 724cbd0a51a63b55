"""Command line front end for the figure renderer.

The positional argument is a directory holding the standard dataset
files; images are written there too unless --output-dir points elsewhere.
Discovery expects the names the simulator's dataset commands produce:
fig1a.csv and fig1b.csv, fig2_*.csv and fig3_*.csv (one file per
parameter set), and fig4.csv. Any of those can be overridden per figure.

Exit codes: 0 success, 2 schema error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import glob
import os
import re
import sys

from .dataset import SchemaError
from .render import Curve, FigureSpec, Panel, render

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_IO = 4

FIGURES = ("fig1", "fig2", "fig3", "fig4")

_TAG = re.compile(r"^(?:fig\d+_)?eps(?P<eps>[^_]+)_T(?P<temp>.+)$")


def _tag_label(path: str) -> str:
    """Derive a curve label from a parameter-set file name."""
    stem = os.path.splitext(os.path.basename(path))[0]
    match = _TAG.match(stem)
    if not match:
        return stem
    eps, temp = match.group("eps"), match.group("temp")
    return rf"$\varepsilon={eps}J,\ T={temp}J$"


def _image_path(out_dir: str, name: str, fmt: str) -> str:
    return os.path.join(out_dir, f"{name}.{fmt}")


def _bloch_panel(path: str, title: str, labelled: bool) -> Panel:
    label_1 = r"$\vec{v}_1$" if labelled else ""
    label_2 = r"$\vec{v}_2$" if labelled else ""
    return Panel(curves=(Curve(path, "v1", label=label_1, color="black"),
                         Curve(path, "v2", label=label_2, color="tab:blue")),
                 title=title)


def _spec_fig1(args, out_dir: str) -> FigureSpec:
    path_a = args.fig1a or os.path.join(args.directory, "fig1a.csv")
    path_b = args.fig1b or os.path.join(args.directory, "fig1b.csv")
    panels = (_bloch_panel(path_a, "thermal spin bath", True),
              _bloch_panel(path_b, "amplitude damping", False))
    return FigureSpec(kind="bloch3d", panels=panels,
                      output=_image_path(out_dir, "fig1", args.format),
                      dpi=args.dpi)


def _glob_inputs(args, pattern: str) -> list:
    paths = sorted(glob.glob(os.path.join(args.directory, pattern)))
    if not paths:
        raise FileNotFoundError(f"no {pattern} files in {args.directory}")
    return paths


def _spec_fig2(args, out_dir: str) -> FigureSpec:
    paths = args.fig2 or _glob_inputs(args, "fig2_*.csv")
    curves = tuple(Curve(path, "D_B", label=_tag_label(path))
                   for path in paths)
    return FigureSpec(kind="lines", panels=(Panel(curves=curves),),
                      output=_image_path(out_dir, "fig2", args.format),
                      xlabel="$Jt$", ylabel="$D_B$", dpi=args.dpi)


def _spec_fig3(args, out_dir: str) -> FigureSpec:
    paths = args.fig3 or _glob_inputs(args, "fig3_*.csv")
    panels = tuple(
        Panel(curves=(
            Curve(path, "f_qc", label=r"$\mathcal{F}^{QC}$",
                  color="tab:blue"),
            Curve(path, "f_product", label=r"$\mathcal{F}^{Prod}$",
                  color="tab:orange", style="--"),
            Curve(path, "f_product_x2", label=r"$2\mathcal{F}^{Prod}$",
                  color="tab:green", style=":")),
              title=_tag_label(path))
        for path in paths)
    return FigureSpec(kind="lines", panels=panels,
                      output=_image_path(out_dir, "fig3", args.format),
                      xlabel="$Jt$", ylabel=r"$\mathcal{F}$", dpi=args.dpi)


def _spec_fig4(args, out_dir: str) -> FigureSpec:
    path = args.fig4 or os.path.join(args.directory, "fig4.csv")
    curves = (Curve(path, "dF_dt", label=r"$d\mathcal{F}^{QC}/dt$",
                    color="tab:blue"),
              Curve(path, "dDB_dt", label=r"$dD_B/dt$",
                    color="tab:red", style="--", axis="right"))
    return FigureSpec(kind="dual_axis", panels=(Panel(curves=curves),),
                      output=_image_path(out_dir, "fig4", args.format),
                      xlabel="$Jt$", ylabel=r"$d\mathcal{F}^{QC}/dt$",
                      ylabel_right="$dD_B/dt$", dpi=args.dpi)


_BUILDERS = {
    "fig1": _spec_fig1,
    "fig2": _spec_fig2,
    "fig3": _spec_fig3,
    "fig4": _spec_fig4,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="render-figures",
        description="Render the standard CSV datasets into figures")
    add = parser.add_argument
    add("directory",
        help="directory searched for the standard CSV names; images are "
             "written here unless --output-dir is given")
    add("--output-dir", dest="output_dir", metavar="PATH",
        help="write images to this directory instead")
    add("--only", action="append", choices=FIGURES, metavar="FIG",
        help="render a subset (repeatable): fig1, fig2, fig3, fig4")
    add("--dpi", type=int, default=150)
    add("--format", choices=["png", "svg", "pdf"], default="png",
        help="image file format")
    add("--fig1a", metavar="CSV", help="override the fig1a trajectory file")
    add("--fig1b", metavar="CSV", help="override the fig1b trajectory file")
    add("--fig2", action="append", metavar="CSV",
        help="override the fig2 inputs (repeatable, one curve per file)")
    add("--fig3", action="append", metavar="CSV",
        help="override the fig3 inputs (repeatable, one panel per file)")
    add("--fig4", metavar="CSV", help="override the fig4 file")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    wanted = tuple(dict.fromkeys(args.only)) if args.only else FIGURES
    out_dir = args.output_dir or args.directory
    try:
        os.makedirs(out_dir, exist_ok=True)
        specs = [_BUILDERS[name](args, out_dir) for name in FIGURES
                 if name in wanted]
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    for spec in specs:
        try:
            path = render(spec)
        except SchemaError as exc:
            print(f"schema error: {exc}", file=sys.stderr)
            return EXIT_SCHEMA
        except OSError as exc:
            print(f"i/o error: {exc}", file=sys.stderr)
            return EXIT_IO
        print(f"wrote {path}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
