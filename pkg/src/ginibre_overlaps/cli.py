"""Command-line interface: sample, theory, figure, and verify subcommands.

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 verification failure.
Every command echoes its fully-resolved configuration as JSON on stderr;
re-running that configuration reproduces the outputs byte-for-byte.
"""

import argparse
import json
import sys

import numpy as np

from . import __version__, distributions, figures, mc, records, theory, verify
from .errors import DomainError

USAGE_EXIT = 1
IO_EXIT = 2
VERIFY_EXIT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _echo_config(command, params):
    resolved = {"command": command, "version": __version__, **params}
    print(json.dumps({"config": resolved}, sort_keys=True), file=sys.stderr)
    return resolved


def _write_text(path, text):
    try:
        if path is None or path == "-":
            sys.stdout.write(text)
        else:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        raise SystemExit(IO_EXIT)


def _csv_text(rows, meta, columns=None):
    if not rows:
        raise DomainError("no rows to serialize")
    columns = columns or list(rows[0].keys())
    lines = [f"# {k}: {json.dumps(v, sort_keys=True)}" for k, v in meta.items()]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_cell(row.get(c)) for c in columns))
    return "\n".join(lines) + "\n"


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


# --------------------------------------------------------------------- sample

def cmd_sample(args):
    params = {"ensemble": args.ensemble, "n": args.n, "samples": args.samples,
              "seed": args.seed, "out": args.out, "workers": args.workers,
              "reject_threshold": args.reject_threshold}
    _echo_config("sample", params)
    cfg = mc.EnsembleConfig(kind=args.ensemble, n=args.n, samples=args.samples,
                            master_seed=args.seed,
                            reject_threshold=args.reject_threshold)
    result = mc.run_campaign(cfg, workers=args.workers)
    try:
        records.write_records(args.out, result)
        with open(args.out + ".config.json", "w", encoding="ascii") as fh:
            json.dump(params, fh, sort_keys=True, indent=1)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return IO_EXIT
    if result.summary["rejection_warning"]:
        print(f"warning: rejection rate {result.summary['rejection_rate']:.2%} "
              f"exceeds 0.1% ({result.summary['rejected']} samples)",
              file=sys.stderr)
    print(f"wrote {result.records.size} records "
          f"({result.summary['rejected']} samples rejected) to {args.out}")
    return 0


# --------------------------------------------------------------------- theory

def _grid(spec):
    try:
        start, stop, count = spec.split(":")
        grid = np.linspace(float(start), float(stop), int(count))
    except ValueError:
        raise SystemExit(USAGE_EXIT)
    return grid


CURVES = {
    "ginue-density": lambda n, v, a: theory.density_ginue(n, v),
    "ginoe-density": lambda n, v, a: theory.density_ginoe_complex(n, a + 1j * v),
    "ginue-overlap": lambda n, v, a: theory.overlap_ginue(n, v),
    "ginoe-overlap": lambda n, v, a: theory.overlap_ginoe(n, a + 1j * v),
    "ginue-conditional": lambda n, v, a: theory.conditional_mean(n, 1j * v, theory.GINUE),
    "ginoe-conditional": lambda n, v, a: theory.conditional_mean(
        n, a + 1j * v, theory.GINOE),
    "bulk-limit": lambda n, v, a: theory.overlap_limit_bulk(v),
    "edge-limit": lambda n, v, a: theory.overlap_limit_edge(v),
    "depletion-limit": lambda n, v, a: theory.overlap_limit_depletion(
        v, a if a else None),
    "edge-conditional-limit": lambda n, v, a: (
        theory.overlap_limit_edge(v) / theory.density_limit("edge", eta=v)),
    "depletion-conditional-limit": lambda n, v, a: (
        theory.overlap_limit_depletion(v) / theory.density_limit("depletion", xi=v)),
    "jpdf-bulk": lambda n, v, a: distributions.jpdf_limit_bulk_ginue(v, a),
    "jpdf-edge": lambda n, v, a: distributions.jpdf_limit_edge_ginue(v, a),
    "jpdf-realbulk": lambda n, v, a: distributions.jpdf_limit_realbulk_ginoe(v, a),
}


def cmd_theory(args):
    params = {"curve": args.curve, "n": args.n, "grid": args.grid,
              "parameter": args.parameter, "out": args.out}
    _echo_config("theory", params)
    fn = CURVES[args.curve]
    rows = []
    for v in _grid(args.grid):
        try:
            val = fn(args.n, float(v), args.parameter)
        except DomainError:
            val = None
        rows.append({"abscissa": float(v), "value": val})
    meta = {"formula": args.curve, "n": args.n, "parameter": args.parameter,
            "package": f"ginibre-overlaps {__version__}"}
    _write_text(args.out, _csv_text(rows, meta))
    return 0


# --------------------------------------------------------------------- figure

def cmd_figure(args):
    params = {"figure": args.figure, "n": args.n, "samples": args.samples,
              "seed": args.seed, "out_prefix": args.out_prefix,
              "workers": args.workers}
    _echo_config("figure", params)
    kwargs = {}
    if args.n is not None:
        kwargs["n"] = args.n
    if args.samples is not None:
        kwargs["samples"] = args.samples
    kwargs["seed"] = args.seed
    kwargs["workers"] = args.workers
    empirical, curves, meta = figures.figure_data(args.figure, **kwargs)
    prefix = args.out_prefix or args.figure
    emp_csv = f"{prefix}_empirical.csv"
    th_csv = f"{prefix}_theory.csv"
    _write_text(emp_csv, _csv_text(empirical, meta))
    _write_text(th_csv, _csv_text(curves, meta))
    script = figures.gnuplot_script(args.figure, emp_csv, th_csv, f"{prefix}.png")
    _write_text(f"{prefix}.gp", script)
    print(f"wrote {emp_csv}, {th_csv}, {prefix}.gp")
    return 0


# --------------------------------------------------------------------- verify

def cmd_verify(args):
    params = {"suite": args.suite, "seed": args.seed, "trials": args.trials,
              "samples_fine": args.samples_fine,
              "samples_regime": args.samples_regime,
              "samples_tail": args.samples_tail,
              "workers": args.workers, "out": args.out}
    _echo_config("verify", params)
    if args.suite == "specfun":
        results = verify.specfun_checks()
    elif args.suite == "theory":
        results = verify.theory_checks()
    elif args.suite == "distributions":
        results = verify.distributions_checks()
    elif args.suite == "mc":
        results = verify.mc_checks(schur_trials=args.trials, seed=args.seed)
    else:
        n_fine, m_fine = verify.FINITE_N_SCALE
        n_reg, m_reg = verify.REGIME_SCALE
        m_fine = args.samples_fine or m_fine
        m_reg = args.samples_regime or m_reg
        m_tail = args.samples_tail or verify.GINUE_TAIL_SAMPLES
        results = verify.statistical_checks(
            ginoe_fine=mc.run_campaign(mc.EnsembleConfig(
                theory.GINOE, n_fine, m_fine, args.seed), workers=args.workers),
            ginue_fine=mc.run_campaign(mc.EnsembleConfig(
                theory.GINUE, n_fine, m_fine, args.seed + 1), workers=args.workers),
            ginoe_regime=mc.run_campaign(mc.EnsembleConfig(
                theory.GINOE, n_reg, m_reg, args.seed + 2), workers=args.workers),
            ginue_tail=mc.run_campaign(mc.EnsembleConfig(
                theory.GINUE, n_reg, m_tail, args.seed + 3), workers=args.workers),
            seed=args.seed, workers=args.workers)
    rep = verify.report(results)
    text = json.dumps(rep, indent=1, sort_keys=True)
    _write_text(args.out, text + ("\n" if args.out not in (None, "-") else ""))
    for r in results:
        print(r.line(), file=sys.stderr)
    return 0 if rep["passed"] else VERIFY_EXIT


# ----------------------------------------------------------------------- main

def build_parser():
    parser = _Parser(prog="ginibre-overlaps",
                     description="Eigenvector self-overlap statistics of "
                                 "Ginibre ensembles")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="run a Monte Carlo campaign to a record file")
    p.add_argument("--ensemble", choices=[theory.GINOE, theory.GINUE], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--reject-threshold", type=float,
                   default=mc.DEFAULT_REJECT_THRESHOLD)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("theory", help="emit a theory curve as CSV")
    p.add_argument("--curve", choices=sorted(CURVES), required=True)
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--grid", required=True, metavar="START:STOP:COUNT")
    p.add_argument("--parameter", type=float, default=0.0,
                   help="secondary argument (Re z, |w|, eta, x, or strip delta,"
                        " depending on the curve)")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_theory)

    p = sub.add_parser("figure", help="emit figure data (empirical + theory CSVs"
                                      " and a gnuplot script)")
    p.add_argument("figure", choices=sorted(figures.FIGURES))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    p.add_argument("--out-prefix", default=None)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("verify", help="run a verification suite, emit JSON report")
    p.add_argument("suite", choices=["specfun", "theory", "distributions",
                                     "mc", "statistical"])
    p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--samples-fine", type=int, default=None)
    p.add_argument("--samples-regime", type=int, default=None)
    p.add_argument("--samples-tail", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return IO_EXIT
    return code


if __name__ == "__main__":
    sys.exit(main())
