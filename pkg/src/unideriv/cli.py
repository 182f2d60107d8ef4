"""Command-line entry point: radial, perturb, special, toy, and gaps runs.

Every subcommand writes its data files plus a summary.json echoing the
fully resolved configuration; identical invocations produce byte-identical
files.  Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import experiments, spectrum, stats_io, toymodel
from .errors import UniderivError
from .linalg import SeedStream, eigenvalues_unitary, haar_unitary
from .polyroot import critical_points

OUT_ENV_VAR = "UNIDERIV_OUT"


def _add_common(p, n_default=20, matrices_default=1000):
    p.add_argument("--n", type=int, default=n_default, help="matrix dimension")
    p.add_argument("--matrices", type=int, default=matrices_default)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--precision-bits", type=int, default=53)
    p.add_argument("--bins", type=int, default=80)
    p.add_argument("--out", default=None,
                   help=f"output directory (default ${OUT_ENV_VAR} or cwd)")


def _out_dir(args) -> str:
    out = args.out or os.environ.get(OUT_ENV_VAR) or "."
    os.makedirs(out, exist_ok=True)
    return out


def _config_echo(args, **extra) -> dict:
    # shards is an execution detail, not part of the experiment definition;
    # leaving it out keeps output files byte-identical across shard counts
    cfg = {
        "N": args.n,
        "matrices": getattr(args, "matrices", None),
        "seed": args.seed,
        "precision_bits": getattr(args, "precision_bits", 53),
        "bins": getattr(args, "bins", 80),
    }
    cfg.update(extra)
    return cfg


def cmd_radial(args) -> int:
    out = _out_dir(args)
    cfg = experiments.ExperimentConfig(
        N=args.n, num_matrices=args.matrices, master_seed=args.seed,
        shards=args.shards, precision_bits=args.precision_bits, bins=args.bins,
    )
    result = experiments.run_radial(cfg)
    fractions = experiments.classify_regions(result)
    in_range, overflow = stats_io.split_overflow(result.values, 8.0)
    edges = np.linspace(0.0, 8.0, args.bins + 1)
    hist = stats_io.histogram_pdf(in_range, edges)
    octs = stats_io.octiles(result.values) if result.values.size >= 8 else None
    echo = _config_echo(args)
    stats_io.write_report(
        stats_io.ReportFile(kind="radial", config=echo,
                            columns={"value": result.values.tolist()},
                            column_order=["value"]),
        os.path.join(out, f"radial_N{args.n}.csv"),
    )
    stats_io.write_report(
        stats_io.histogram_report(hist, "radial_hist", echo, overflow=overflow),
        os.path.join(out, f"radial_N{args.n}_hist.csv"),
    )
    stats_io.write_summary({
        "kind": "radial",
        "seed": args.seed,
        "config": echo,
        "counts": {"values": int(result.values.size), "overflow": overflow},
        "fractions": {"lt2": fractions[0], "2to4": fractions[1],
                      "gt4": fractions[2]},
        "octiles": [float(x) for x in octs] if octs is not None else None,
    }, os.path.join(out, "summary.json"))
    print(f"radial: N={args.n} matrices={args.matrices} "
          f"values={result.values.size} deep_fraction={fractions[2]:.4f}")
    return 0


def cmd_perturb(args) -> int:
    out = _out_dir(args)
    report = experiments.run_perturbation(
        N=args.n, trials=args.trials, seed=args.seed,
    )
    echo = _config_echo(args, trials=args.trials)
    trials_col = [t for t, _ in report.points]
    stats_io.write_report(
        stats_io.ReportFile(
            kind="perturb", config=echo,
            columns={
                "trial": trials_col,
                "re": [z.real for _, z in report.points],
                "im": [z.imag for _, z in report.points],
            },
            column_order=["trial", "re", "im"],
        ),
        os.path.join(out, "perturb_points.csv"),
    )
    base = report.base_spectrum.points()
    stats_io.write_report(
        stats_io.ReportFile(
            kind="perturb_base", config=echo,
            columns={"re": base.real.tolist(), "im": base.imag.tolist()},
            column_order=["re", "im"],
        ),
        os.path.join(out, "perturb_base.csv"),
    )
    stats_io.write_summary({
        "kind": "perturb",
        "seed": args.seed,
        "config": echo,
        "counts": {"points": len(report.points)},
    }, os.path.join(out, "summary.json"))
    print(f"perturb: N={args.n} trials={args.trials} points={len(report.points)}")
    return 0


def cmd_special(args) -> int:
    out = _out_dir(args)
    echo = _config_echo(args, demo=args.demo)
    if args.demo == "equal-spaced":
        report = experiments.run_special_on_spectra(
            [experiments.equally_spaced_spectrum(args.n)], args.n)
    elif args.demo == "one-triple":
        report = experiments.run_special_on_spectra(
            [experiments.one_wide_triple_spectrum(args.n)], args.n)
    else:
        cfg = experiments.ExperimentConfig(
            N=args.n, num_matrices=args.matrices, master_seed=args.seed,
            shards=args.shards, precision_bits=args.precision_bits,
            bins=args.bins,
        )
        report = experiments.run_special(cfg)
    stats_io.write_report(
        stats_io.ReportFile(
            kind="special_rotated", config=echo,
            columns={
                "re": [z.real for z in report.rotated_points],
                "im": [z.imag for z in report.rotated_points],
            },
            column_order=["re", "im"],
        ),
        os.path.join(out, "special_rotated.csv"),
    )
    if report.radial_values:
        in_range, overflow = stats_io.split_overflow(report.radial_values, 8.0)
        hist = stats_io.histogram_pdf(in_range, np.linspace(0.0, 8.0, args.bins + 1))
        stats_io.write_report(
            stats_io.histogram_report(hist, "special_hist", echo, overflow=overflow),
            os.path.join(out, "special_hist.csv"),
        )
    snapshot_cols = {"kind_code": [], "re": [], "im": []}
    snap = report.snapshot
    if snap:
        for a in snap["angles"]:
            snapshot_cols["kind_code"].append(0)  # 0 = zero of p
            snapshot_cols["re"].append(np.cos(a))
            snapshot_cols["im"].append(np.sin(a))
        for re_, im_ in snap["dzeros"]:
            snapshot_cols["kind_code"].append(1)  # 1 = zero of p'
            snapshot_cols["re"].append(re_)
            snapshot_cols["im"].append(im_)
        for re_, im_ in snap["disc_centers"]:
            snapshot_cols["kind_code"].append(2)  # 2 = target disc center
            snapshot_cols["re"].append(re_)
            snapshot_cols["im"].append(im_)
    stats_io.write_report(
        stats_io.ReportFile(kind="special_snapshot", config=echo,
                            columns=snapshot_cols,
                            column_order=["kind_code", "re", "im"]),
        os.path.join(out, "special_snapshot.csv"),
    )
    counts = {str(k): v for k, v in sorted(report.counts.items())}
    fractions = {str(k): v for k, v in report.fractions().items()}
    stats_io.write_summary({
        "kind": "special",
        "seed": args.seed,
        "config": echo,
        "counts": {"matrices": report.num_matrices,
                   "triples": report.num_triples,
                   "by_zeros_in_disc": counts},
        "fractions": fractions,
        "triples_per_matrix": report.num_triples / max(report.num_matrices, 1),
    }, os.path.join(out, "summary.json"))
    print(f"special: N={args.n} triples={report.num_triples} "
          f"fractions={fractions}")
    return 0


def cmd_toy(args) -> int:
    out = _out_dir(args)
    did_something = False
    summary = {"kind": "toy", "seed": args.seed, "config": {"n": args.n}}
    if args.b0:
        b0 = toymodel.solve_b0()
        print(f"b0 = {b0:.12f}")
        summary["b0"] = b0
        did_something = True
    if args.sweep:
        ns = [int(tok) for tok in args.sweep.split(",")]
        results = [toymodel.verify_proposition(n) for n in ns]
        stats_io.write_report(
            stats_io.ReportFile(
                kind="toy_sweep", config={"n_list": ns},
                columns={
                    "n": [r.n for r in results],
                    "root": [r.root for r in results],
                    "predicted": [r.predicted for r in results],
                    "error": [r.error for r in results],
                    "n2_error": [r.error * r.n ** 2 for r in results],
                },
                column_order=["n", "root", "predicted", "error", "n2_error"],
            ),
            os.path.join(out, "toy_sweep.csv"),
        )
        for r in results:
            print(f"n={r.n:4d}  root={r.root:.10f}  predicted={r.predicted:.10f}"
                  f"  n^2*error={r.error * r.n ** 2:.4f}")
        summary["sweep"] = {str(r.n): r.error for r in results}
        did_something = True
    if args.grid:
        results = toymodel.grid_sweep(args.n, args.grid)
        stats_io.write_report(
            stats_io.ReportFile(
                kind="toy_grid", config={"n": args.n, "grid": args.grid},
                columns={
                    "c_plus": [r.c_plus for r in results],
                    "c_minus": [r.c_minus for r in results],
                    "root_re": [r.root.real for r in results],
                    "root_im": [r.root.imag for r in results],
                    "distance": [r.distance for r in results],
                    "within": [int(r.within) for r in results],
                },
                column_order=["c_plus", "c_minus", "root_re", "root_im",
                              "distance", "within"],
            ),
            os.path.join(out, "toy_grid.csv"),
        )
        n_ok = sum(r.within for r in results)
        print(f"grid n={args.n}: {n_ok}/{len(results)} roots within 0.8/n "
              f"of 1-2.6/n")
        summary["grid"] = {"n": args.n, "passed": n_ok, "total": len(results)}
        did_something = True
    if args.zeros:
        ns = [int(tok) for tok in args.zeros.split(",")]
        cols = {"n": [], "kind_code": [], "re": [], "im": []}
        for n in ns:
            keep = [k for k in range(n) if k not in (1, n - 1)]
            roots = np.exp(2j * np.pi * np.asarray(keep) / n)
            dz, _ = critical_points(roots)
            for z in roots:
                cols["n"].append(n)
                cols["kind_code"].append(0)
                cols["re"].append(z.real)
                cols["im"].append(z.imag)
            for z in dz:
                cols["n"].append(n)
                cols["kind_code"].append(1)
                cols["re"].append(z.real)
                cols["im"].append(z.imag)
        stats_io.write_report(
            stats_io.ReportFile(kind="toy_zeros", config={"n_list": ns},
                                columns=cols,
                                column_order=["n", "kind_code", "re", "im"]),
            os.path.join(out, "toy_zeros.csv"),
        )
        did_something = True
    if not did_something:
        raise UniderivError(
            "toy: choose at least one of --b0 / --sweep / --grid / --zeros"
        )
    stats_io.write_summary(summary, os.path.join(out, "summary.json"))
    return 0


def cmd_gaps(args) -> int:
    out = _out_dir(args)
    all_gaps = []
    from .spectrum import k_gaps, normalized_gaps
    for i in range(args.matrices):
        u = haar_unitary(args.n, SeedStream(args.seed, i))
        spec = eigenvalues_unitary(u)
        all_gaps.append(k_gaps(normalized_gaps(spec), args.k))
    samples = np.concatenate(all_gaps)
    hist, overflow = spectrum.estimate_gap_pdf(
        samples, bins=args.bins, hi=float(args.k + 4))
    echo = _config_echo(args, k=args.k)
    stats_io.write_report(
        stats_io.histogram_report(hist, "gaps_hist", echo, overflow=overflow),
        os.path.join(out, "gaps_hist.csv"),
    )
    stats_io.write_summary({
        "kind": "gaps",
        "seed": args.seed,
        "config": echo,
        "counts": {"gaps": int(samples.size), "overflow": overflow},
        "mean_gap": float(np.mean(samples)),
    }, os.path.join(out, "summary.json"))
    print(f"gaps: N={args.n} k={args.k} samples={samples.size} "
          f"mean={np.mean(samples):.6f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unideriv",
        description="Numerical experiments on zeros of derivatives of "
                    "unitary polynomials",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("radial", help="radial distribution of N(1-|z'|)")
    _add_common(p, n_default=20, matrices_default=100000)
    p.set_defaults(func=cmd_radial)

    p = sub.add_parser("perturb", help="sensitivity to distant zeros")
    _add_common(p, n_default=40)
    p.add_argument("--trials", type=int, default=250)
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("special", help="zeros in wide-triple target discs")
    _add_common(p, n_default=20, matrices_default=10000)
    p.add_argument("--demo", choices=["equal-spaced", "one-triple"],
                   default=None, help="deterministic synthetic spectrum")
    p.set_defaults(func=cmd_special)

    p = sub.add_parser("toy", help="excised-roots-of-unity model")
    p.add_argument("--n", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--b0", action="store_true")
    p.add_argument("--sweep", default=None, help="comma-separated n values")
    p.add_argument("--grid", type=int, default=0,
                   help="grid size per axis for the c+- sweep")
    p.add_argument("--zeros", default=None,
                   help="comma-separated n values for zero-cloud output")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_toy)

    p = sub.add_parser("gaps", help="normalized k-neighbor gap PDF")
    _add_common(p, n_default=20, matrices_default=2000)
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(func=cmd_gaps)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UniderivError as err:
        print(f"error kind={type(err).__name__} msg={str(err)!r}",
              file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
