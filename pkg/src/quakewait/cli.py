"""Command-line front end.

Subcommands: ``simulate`` (write a sample path), ``gof`` (the conditional
vs limit-law experiment), ``analyze`` (catalog slope series, CDF
comparisons, confidence bands), ``verify`` (Monte Carlo checks of the
asymptotic results).  Exit codes: 0 success, 1 internal failure, 2 usage
or input error.
"""
from __future__ import annotations

import argparse
import csv
import json
import secrets
import sys

from . import catalog as cat
from . import gof as gofmod
from . import inference
from .intensity import IntensityModel, ModelSpecError
from .limitlaw import ValidityError
from .nhpp import simulate_path, write_events_csv


def _sig12(x: float) -> float:
    return float(f"{x:.12g}")


def _resolve_seed(seed):
    """Explicit seed, or a fresh one recorded in the output metadata."""
    return int(seed) if seed is not None else secrets.randbits(32)


def _load_model(spec: str) -> IntensityModel:
    if spec.lstrip().startswith("{"):
        return IntensityModel.from_json(spec)
    with open(spec) as fp:
        return IntensityModel.from_json(fp.read())


# -- simulate ---------------------------------------------------------

def _cmd_simulate(args) -> int:
    model = _load_model(args.model)
    seed = _resolve_seed(args.seed)
    events = simulate_path(model, args.horizon, seed)
    with open(args.out, "w") as fp:
        write_events_csv(events, fp)
    print(json.dumps({"count": len(events), "horizon": _sig12(args.horizon),
                      "seed": seed, "out": args.out}))
    return 0


# -- gof --------------------------------------------------------------

def _report_dict(rep) -> dict:
    return {"t": _sig12(rep.t),
            "percentages": [_sig12(p) for p in rep.percentages],
            "chi2": _sig12(rep.chi2), "p_value": _sig12(rep.p_value)}


def _score_percentage_rows(path) -> list[dict]:
    out = []
    with open(path) as fp:
        reader = csv.reader(fp)
        header = next(reader)
        if header[0].strip().lower() != "t" or len(header) != 11:
            raise ValueError("expected header 't,p1,...,p10'")
        for row in reader:
            if not row or all(not c.strip() for c in row):
                continue
            t = float(row[0])
            perc = [float(c) for c in row[1:]]
            stat = gofmod.chi_square_stat(perc)
            out.append({"t": _sig12(t), "percentages": [_sig12(p) for p in perc],
                        "chi2": _sig12(stat), "p_value": _sig12(gofmod.gof_pvalue(stat))})
    return out


def _cmd_gof(args) -> int:
    if args.from_percentages:
        rows = _score_percentage_rows(args.from_percentages)
    else:
        seed = _resolve_seed(args.seed)
        t_values = [float(t) for t in args.t.split(",")]
        reports = gofmod.table1_experiment(args.m, args.k, t_values, args.n,
                                           seed, r=args.r)
        rows = [_report_dict(r) for r in reports]
        rows = [{"seed": seed, **row} for row in rows]
    if args.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["t"] + [f"p{i}" for i in range(1, 11)] + ["chi2", "p_value"])
        for row in rows:
            writer.writerow([row["t"], *row["percentages"], row["chi2"], row["p_value"]])
    else:
        print(json.dumps(rows, indent=2))
    return 0


# -- analyze ----------------------------------------------------------

def _svg_bands(band, point_rate: float, h_max: float) -> str:
    """Hand-rolled SVG: lower band, upper band and the point-estimate
    curve on axes h in [0, h_max], probability in [0, 1]."""
    width, height, margin = 480, 360, 40

    def sx(h):
        return margin + (width - 2 * margin) * h / h_max

    def sy(p):
        return height - margin - (height - 2 * margin) * p

    def polyline(xs, ys, color, dash=""):
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, ys))
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        return (f'<polyline fill="none" stroke="{color}" stroke-width="1.5"'
                f'{extra} points="{pts}"/>')

    import numpy as np
    point = -np.expm1(-point_rate * band.grid)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}"'
        f' y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}"'
        f' y2="{height - margin}" stroke="black"/>',
        polyline(band.grid, band.lower, "#1f77b4", dash="4 3"),
        polyline(band.grid, band.upper, "#1f77b4", dash="4 3"),
        polyline(band.grid, point, "#d62728"),
        f'<text x="{width // 2}" y="{height - 8}" font-size="12"'
        f' text-anchor="middle">waiting time h (years)</text>',
        f'<text x="12" y="{height // 2}" font-size="12" text-anchor="middle"'
        f' transform="rotate(-90 12 {height // 2})">probability</text>',
        "</svg>",
    ]
    return "\n".join(parts)


def _cmd_analyze(args) -> int:
    if args.catalog:
        with open(args.catalog) as fp:
            events = cat.parse_catalog(fp)
    else:
        events = cat.load_reference_catalog()
    segments = cat.segment_by_major(events, args.major_threshold)
    out = {"segments": []}
    for seg in segments:
        rows = [{"t": t, "m_hat_num": mh.numerator, "m_hat_den": mh.denominator}
                for t, mh in cat.slope_series(seg)]
        out["segments"].append({
            "anchor_year": seg.anchor_year,
            "closed": seg.closed,
            "insufficient_data": len(seg.relative_times) < 3,
            "rows": rows,
        })
    if args.compare_t:
        seg = segments[args.segment - 1]
        comparisons = []
        notes = {n.t: n for n in cat.reproducibility_report(seg)}
        for t in (int(v) for v in args.compare_t.split(",")):
            rows = [{"h": r.h, "empirical": _sig12(r.empirical),
                     "estimated": _sig12(r.estimated),
                     "abs_diff": _sig12(r.abs_diff)}
                    for r in cat.compare_cdfs(seg, t)]
            note = notes.get(t)
            comparisons.append({
                "t": t, "rows": rows,
                "published_row_reproducible": None if note is None else note.reproducible,
            })
        out["comparisons"] = comparisons
    if args.bands:
        open_segments = [s for s in segments if not s.closed] or segments
        seg = open_segments[-1]
        t = seg.relative_times[-1]
        m_hat = float(cat.slope_at(seg, t))
        low, high = inference.slope_ci(m_hat, 0.0, float(t), args.alpha)
        import numpy as np
        grid = np.arange(0.0, args.h_max + args.h_step / 2, args.h_step)
        band = inference.confidence_bands((low, high), grid)
        out["bands"] = {"anchor_year": seg.anchor_year, "t": t,
                        "m_hat": _sig12(m_hat), "alpha": args.alpha,
                        "ci_low": _sig12(low), "ci_high": _sig12(high)}
        if args.out_bands:
            with open(args.out_bands, "w") as fp:
                inference.write_bands_csv(band, fp)
        if args.out_svg:
            with open(args.out_svg, "w") as fp:
                fp.write(_svg_bands(band, m_hat, args.h_max))
    print(json.dumps(out, indent=2))
    return 0


# -- verify -----------------------------------------------------------

def _cmd_verify(args) -> int:
    seed = _resolve_seed(args.seed)
    if args.kind == "clt":
        check = inference.verify_clt(args.m, float(args.t), args.reps, seed)
        result = {"kind": "clt", "seed": seed,
                  "statistic": _sig12(check.ks.statistic),
                  "p_value": _sig12(check.ks.p_value)}
    elif args.kind == "gc":
        taus = [float(v) for v in args.t.split(",")]
        check = inference.verify_glivenko_cantelli(args.m, taus, args.reps, seed)
        result = {"kind": "gc", "seed": seed,
                  "taus": [_sig12(t) for t in check.taus],
                  "medians": [_sig12(m) for m in check.medians]}
    else:
        check = inference.verify_kolmogorov_limit(args.m, float(args.t),
                                                  args.reps, seed)
        result = {"kind": "kolmogorov", "seed": seed,
                  "statistic": _sig12(check.ks.statistic),
                  "p_value": _sig12(check.ks.p_value)}
    print(json.dumps(result))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quakewait")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="simulate a sample path")
    sim.add_argument("--model", required=True,
                     help="model spec file, or inline JSON")
    sim.add_argument("--horizon", type=float, required=True)
    sim.add_argument("--seed", type=int)
    sim.add_argument("--out", required=True)
    sim.set_defaults(func=_cmd_simulate)

    gof = sub.add_parser("gof", help="goodness-of-fit experiment")
    gof.add_argument("--m", type=float, default=1.0)
    gof.add_argument("--k", type=int, default=10)
    gof.add_argument("--t", default="10,20,25,30,40,50",
                     help="comma-separated elapsed times")
    gof.add_argument("--n", type=int, default=1000)
    gof.add_argument("--r", type=int, default=10)
    gof.add_argument("--seed", type=int)
    gof.add_argument("--from-percentages",
                     help="score a 't,p1..p10' CSV instead of simulating")
    gof.add_argument("--format", choices=("json", "csv"), default="json")
    gof.set_defaults(func=_cmd_gof)

    ana = sub.add_parser("analyze", help="catalog recurrence analysis")
    ana.add_argument("--catalog", help="year,magnitude CSV (default: embedded)")
    ana.add_argument("--major-threshold", type=float, default=cat.MAJOR_THRESHOLD)
    ana.add_argument("--compare-t", help="comma-separated elapsed times")
    ana.add_argument("--segment", type=int, default=2,
                     help="1-based segment for --compare-t")
    ana.add_argument("--bands", action="store_true")
    ana.add_argument("--alpha", type=float, default=0.05)
    ana.add_argument("--h-max", type=float, default=20.0)
    ana.add_argument("--h-step", type=float, default=0.25)
    ana.add_argument("--out-svg")
    ana.add_argument("--out-bands")
    ana.set_defaults(func=_cmd_analyze)

    ver = sub.add_parser("verify", help="Monte Carlo asymptotics checks")
    ver.add_argument("kind", choices=("clt", "gc", "kolmogorov"))
    ver.add_argument("--m", type=float, default=1.0)
    ver.add_argument("--t", required=True,
                     help="window length (comma-separated list for gc)")
    ver.add_argument("--reps", type=int, default=2000)
    ver.add_argument("--seed", type=int)
    ver.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ModelSpecError, ValidityError, cat.CatalogFormatError, ValueError,
            OSError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
