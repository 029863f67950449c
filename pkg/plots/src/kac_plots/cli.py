"""kac-plots --kind KIND --in FILE --out FILE

Exit codes mirror the solver CLI: 0 drawn, 1 input failed validation
(`FAIL,render,<detail>` on stdout), 2 usage errors or missing input.
"""

import argparse
import sys

from . import SERIES_PER_KIND, FigureSpec, SchemaError, __version__, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="kac-plots",
        description="Render a figure from a kac-spectral CSV file.")
    parser.add_argument("--kind", required=True,
                        choices=sorted(SERIES_PER_KIND))
    parser.add_argument("--in", dest="src", required=True,
                        help="input CSV (schema fixed by --kind)")
    parser.add_argument("--out", required=True,
                        help="output image; format by extension")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    args = parser.parse_args(argv)
    try:
        result = render(FigureSpec(kind=args.kind, src=args.src,
                                   out=args.out))
    except FileNotFoundError as exc:
        print(f"input not found: {exc}", file=sys.stderr)
        return 2
    except SchemaError as exc:
        print(f"FAIL,render,{exc}")
        return 1
    print(f"wrote {result.out} ({result.series} series)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
