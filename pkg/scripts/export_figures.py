"""Write ball-model figure data (boundary circles and geodesic arcs) as JSON."""

import argparse
import pathlib

from nkahler.export import torus_figure, write_export
from nkahler.geodesics import BetaParamsH3


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="figures", help="output directory")
    ap.add_argument("--C1", type=float, default=1.0)
    ap.add_argument("--geodesics", type=int, default=24)
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    jobs = {
        "torus_beta.json": BetaParamsH3("torus", C1=args.C1),
        "torus_printed.json": BetaParamsH3("torus", C1=args.C1, variant="printed"),
        "lh2.json": BetaParamsH3("lh2", C0=0.3),
    }
    for fname, params in jobs.items():
        doc = torus_figure(params, n_geodesics=args.geodesics)
        write_export(doc, out / fname)
        print(f"wrote {out / fname}: {len(doc.objects)} objects")


if __name__ == "__main__":
    main()
