import argparse
import sys

from .render import FIGURE_KINDS, FigureJob, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plots",
                                     description="render figures from experiment CSVs")
    subs = parser.add_subparsers(dest="command", required=True)
    r = subs.add_parser("render")
    r.add_argument("--kind", required=True, choices=FIGURE_KINDS)
    r.add_argument("--csv", required=True, help="experiment CSV path")
    r.add_argument("--out", required=True, help="output image path")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    job = FigureJob(csv_path=args.csv, kind=args.kind, out_path=args.out)
    try:
        out = render(job)
    except (ValueError, FileNotFoundError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
