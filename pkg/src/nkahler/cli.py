"""``nk``: classify planes, build beta-surfaces, run the check suites.

Exit codes: 0 success, 1 a verification check failed, 2 malformed input
(argparse), 3 domain, rank or immersion violation.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys

import numpy as np

from . import flat, geodesics as gs, tn, verify
from .config import RunConfig
from .curvature import flat_metric_field, riemann_report
from .errors import NKError
from .export import torus_figure, write_export
from .linalg import BASES, COORDINATE, Plane22, Vec4
from .surfaces import tensor_grid

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3

TN_SPACES = {"tn-flat": "flat", "tn-sphere": "sphere", "tn-hyperbolic": "hyperbolic"}
BETA_SPACES = (*TN_SPACES, "lh3-torus", "lh3-lh2")
CURVATURE_SPACES = ("r22", *TN_SPACES, "tn-custom", "lh3")


def _sci(x):
    return f"{x:.5e}"


def _finite_float(text):
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return x


def _finite_complex(text):
    try:
        z = complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return z


def _positive_int(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _positive_float(text):
    x = _finite_float(text)
    if x <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # stock argparse reads "-1e-3" as an option flag; accept any float literal
        self._negative_number_matcher = re.compile(r"^-(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?$")

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True, default=verify._clean)


# -- commands ---------------------------------------------------------------


def cmd_classify_plane(args, out):
    v = Vec4(np.array(args.components[:4]), args.basis)
    w = Vec4(np.array(args.components[4:]), args.basis)
    p = Plane22(v, w)
    tol = args.null_tol if args.null_tol is not None else flat.NULL_TOL
    cls = flat.plane_duality_class(p, tol)
    sd, asd = flat.duality_residuals(p)
    report = {
        "totally_null": bool(flat.is_totally_null(p, tol)),
        "class": cls.value,
        "residuals": {"null": flat.null_residual(p), "sd": sd, "asd": asd},
    }
    if args.json:
        out.write(_dump(report) + "\n")
    else:
        r = report["residuals"]
        out.write(
            f"class: {cls.value}\ntotally_null: {str(report['totally_null']).lower()}\n"
            f"null_residual: {_sci(r['null'])}\nsd_residual: {_sci(sd)}\nasd_residual: {_sci(asd)}\n"
        )
    return EXIT_OK


def _range(vals, default):
    return tuple(vals) if vals is not None else default


def _beta_surface(args):
    """Return (surface, grid, residual function, lh3 params or None)."""
    n = args.grid
    if args.space in TN_SPACES:
        geom = tn.ConformalGeometry.by_name(TN_SPACES[args.space])
        params = tn.BetaParamsTN(args.C0, args.xi0, args.eta0)
        s0, s1 = _range(args.s_range, (-0.5, 0.5))
        t0, t1 = _range(args.t_range, (-1.0, 1.0))
        S = tn.beta_surface_tn(geom, params)
        grid = tensor_grid(np.linspace(s0, s1, n), np.linspace(t0, t1, n))
        return S, grid, lambda: tn.surface_grid_residuals(geom, S, grid), None
    if args.space == "lh3-torus":
        params = gs.BetaParamsH3("torus", C1=args.C1, variant=args.variant)
        s0, s1 = _range(args.s_range, (0.2, 1.2))
        t0, t1 = _range(args.t_range, (1.6, 2.9))
    else:
        params = gs.BetaParamsH3("lh2", C0=args.C0)
        s0, s1 = _range(args.s_range, (0.1, 2.0))
        t0, t1 = _range(args.t_range, (0.1, 2.0))
    S = gs.beta_surface_h3(params)
    grid = tensor_grid(np.linspace(s0, s1, n), np.linspace(t0, t1, n))
    return S, grid, lambda: gs.surface_grid_residuals_h3(S, grid), params


def cmd_beta(args, out):
    if args.space == "lh3-torus" and args.C1 == 0:
        raise NKError("lh3-torus requires C1 != 0")
    S, grid, residuals, params = _beta_surface(args)
    r = residuals()
    verdict = r.verdict(args.class_tol)
    report = {
        "space": args.space,
        "surface": S.name,
        "grid": args.grid,
        "max_sd": r.max_sd,
        "max_asd": r.max_asd,
        "min_sd": r.min_sd,
        "min_asd": r.min_asd,
        "verdict": verdict.value,
    }
    if args.export is not None:
        if params is None:
            raise NKError("--export is only available for lh3 spaces")
        doc = torus_figure(params, n_geodesics=args.geodesics)
        write_export(doc, args.export)
        report["export"] = args.export
    if args.json:
        out.write(_dump(report) + "\n")
    else:
        out.write(
            f"surface: {S.name} on {args.grid}x{args.grid} grid\n"
            f"max_sd: {_sci(r.max_sd)}\nmax_asd: {_sci(r.max_asd)}\n"
            f"min_sd: {_sci(r.min_sd)}\nmin_asd: {_sci(r.min_asd)}\nverdict: {verdict.value}\n"
        )
    return EXIT_OK


def cmd_export_figure(args, out):
    args.space = "lh3-torus" if args.case == "torus" else "lh3-lh2"
    args.xi0 = args.eta0 = 0j
    args.s_range = args.t_range = None
    args.class_tol = RunConfig().class_tol
    args.json = True
    return cmd_beta(args, out)


def _config(args):
    return RunConfig.load(
        args.config,
        seed=args.seed,
        null_tol=args.null_tol,
        grid=args.grid,
        samples=args.samples,
        out=args.out,
    )


def cmd_verify(args, out):
    try:
        cfg = _config(args)
    except (OSError, ValueError, TypeError) as exc:  # unreadable or malformed config
        print(f"nk: error: bad config: {exc}", file=sys.stderr)
        return EXIT_USAGE
    groups = verify.run_suite(args.suite, cfg)
    text = verify.report_json(args.suite, cfg, groups)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.human:
        out.write("\n".join(verify.format_group(g) for g in groups) + "\n")
    else:
        out.write(text)
    failed = [f"{g.id}:{c.name}" for g in groups for c in g.checks if c.counts and not c.passed]
    if failed:
        print(f"{len(failed)} failing checks: {', '.join(failed)}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _curvature_field(space):
    if space == "r22":
        return flat_metric_field()
    if space == "lh3":
        return gs.lh3_metric_field()
    geom = tn.sample_custom_geometry() if space == "tn-custom" else tn.ConformalGeometry.by_name(TN_SPACES[space])
    return tn.metric_field(geom)


def cmd_curvature(args, out):
    m = _curvature_field(args.space)
    x = np.array(args.point)
    if args.space == "lh3":
        gs.GeodesicH3.from_chart(x)  # anti-diagonal and chart-limit checks
    rep = riemann_report(m, x)
    summary = {"space": args.space, "point": list(map(float, x)), **rep.summary()}
    if args.json:
        out.write(_dump(summary) + "\n")
    else:
        out.write(
            f"weyl_plus_norm: {_sci(rep.weyl_plus_norm)}\n"
            f"weyl_minus_norm: {_sci(rep.weyl_minus_norm)}\n"
            f"scalar: {_sci(rep.scalar)}\n"
        )
    return EXIT_OK


# -- parser -----------------------------------------------------------------


def build_parser():
    p = _Parser(prog="nk", description="Neutral Kaehler geometry checks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify-plane", help="classify the plane spanned by two 4-vectors")
    c.add_argument("components", nargs=8, type=_finite_float, metavar="X", help="v1..v4 w1..w4")
    c.add_argument("--basis", choices=[b for b in BASES if b != "chart"], default=COORDINATE)
    c.add_argument("--null-tol", type=_positive_float)
    c.add_argument("--json", action="store_true")
    c.set_defaults(run=cmd_classify_plane)

    def surface_opts(q):
        q.add_argument("--C0", type=_finite_float, default=0.0)
        q.add_argument("--C1", type=_finite_float, default=1.0)
        q.add_argument("--grid", type=_positive_int, default=RunConfig().grid)
        q.add_argument("--variant", choices=gs.TORUS_VARIANTS, default="beta")
        q.add_argument("--geodesics", type=_positive_int, default=16)

    b = sub.add_parser("beta", help="pullback residuals of a beta-surface family")
    b.add_argument("space", choices=BETA_SPACES)
    surface_opts(b)
    b.add_argument("--xi0", type=_finite_complex, default=0j)
    b.add_argument("--eta0", type=_finite_complex, default=0j)
    b.add_argument("--s-range", nargs=2, type=_finite_float, metavar=("LO", "HI"))
    b.add_argument("--t-range", nargs=2, type=_finite_float, metavar=("LO", "HI"))
    b.add_argument("--class-tol", type=_positive_float, default=RunConfig().class_tol)
    b.add_argument("--export", metavar="PATH")
    b.add_argument("--json", action="store_true")
    b.set_defaults(run=cmd_beta)

    e = sub.add_parser("export-figure", help="write the ball-model figure of an L(H^3) family")
    e.add_argument("case", choices=("torus", "lh2"), nargs="?", default="torus")
    surface_opts(e)
    e.add_argument("--export", metavar="PATH", required=True)
    e.set_defaults(run=cmd_export_figure)

    v = sub.add_parser("verify", help="run a check suite and print a JSON report")
    v.add_argument("suite", choices=tuple(verify.SUITES))
    v.add_argument("--config", metavar="PATH")
    v.add_argument("--seed", type=int)
    v.add_argument("--null-tol", type=_positive_float)
    v.add_argument("--grid", type=_positive_int)
    v.add_argument("--samples", type=_positive_int)
    v.add_argument("--out", metavar="PATH")
    v.add_argument("--human", action="store_true", help="text summary instead of JSON on stdout")
    v.set_defaults(run=cmd_verify)

    k = sub.add_parser("curvature", help="Weyl and scalar curvature at a chart point")
    k.add_argument("space", choices=CURVATURE_SPACES)
    k.add_argument("--point", nargs=4, type=_finite_float, required=True, metavar="X")
    k.add_argument("--json", action="store_true")
    k.set_defaults(run=cmd_curvature)
    return p


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.run(args, out)
    except (NKError, ValueError) as exc:
        print(f"nk: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"nk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
