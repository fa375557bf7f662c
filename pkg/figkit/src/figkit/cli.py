"""Command-line figure rendering.

    figkit render --csv sweep.csv --quantity var_energy --irrep 4,0,0 \
                  --style surface --out energy.png

Exit codes: 0 success, 2 bad request (missing column, empty selection),
3 unexpected failure.
"""

from __future__ import annotations

import argparse
import sys

from .render import FigureSpec, RenderError, render


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="figkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    r = sub.add_parser("render", help="render one figure from a sweep CSV")
    r.add_argument("--csv", required=True, help="sweep CSV file")
    r.add_argument("--quantity", required=True, help="CSV column to plot")
    r.add_argument("--irrep", help="filter rows to one irrep, e.g. 4,0,0")
    r.add_argument("--style", choices=("surface", "contour"), default="surface")
    r.add_argument("--out", required=True, help="output image path")
    r.add_argument("--no-shade", action="store_true", help="disable normal-region shading")
    r.add_argument("--dpi", type=int, default=150)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        spec = FigureSpec(
            csv_path=args.csv,
            quantity=args.quantity,
            out_path=args.out,
            style=args.style,
            irrep=args.irrep,
            shade_normal=not args.no_shade,
            dpi=args.dpi,
        )
        path = render(spec)
    except RenderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"runtime failure: {exc}", file=sys.stderr)
        return 3
    print(path)
    return 0


def app() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
