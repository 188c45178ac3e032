"""Command-line surface: truth, errors, roc, estimate, simulate, convert.

Conventions shared by every subcommand:

* actor ids are 1-based on the command line and in all outputs;
* results go to stdout unless ``-o`` is given; diagnostics go to stderr;
* exit codes: 0 success, 1 user error, 2 internal error;
* outputs are written only after the whole computation succeeded, each via
  a temp-file rename, so failures leave no partial files behind.

``CSS_TOOLS_SEED`` provides the default simulation seed when ``--seed`` is
not passed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import io as cssio
from .errors import CellScope, error_breakdown_table, error_summary
from .estimate import EstimateReport, atm, ftm, roc_table, rtm
from .model import DiagonalPolicy, SampleDesign, derive_truth
from .simulate import (
    QUANTILE_METHOD,
    ExperimentConfig,
    MethodSpec,
    run_experiment,
    summarize,
)
from .svg import boxplot_svg, stacked_bar_svg

__all__ = ["main"]


class UserError(Exception):
    """Invalid invocation or invalid input data; exits with code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route argparse failures to exit code 1
        raise UserError(message)


def _policy(value: str) -> DiagonalPolicy:
    if value == "include":
        return DiagonalPolicy.INCLUDE_STRUCTURAL_ZEROS
    if value == "exclude":
        return DiagonalPolicy.EXCLUDE
    raise UserError(f"--diagonal must be 'include' or 'exclude', got {value!r}")


def _parse_sample(text: str) -> SampleDesign:
    try:
        ids = tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise UserError(f"bad --sample {text!r}: expected comma-separated actor ids")
    if not ids:
        raise UserError("--sample must list at least one actor id")
    try:
        return SampleDesign(actor_ids=tuple(sorted(ids)), seed="manual")
    except ValueError as exc:
        raise UserError(str(exc))


def _parse_sizes(text: str, n_actors: int) -> tuple[int, ...]:
    text = text.strip()
    try:
        if ".." in text:
            lo_txt, hi_txt = text.split("..", 1)
            lo = int(lo_txt)
            hi = n_actors if hi_txt in ("N", "n", "") else int(hi_txt)
            if lo > hi:
                raise UserError(f"empty size range {text!r}")
            return tuple(range(lo, hi + 1))
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise UserError(f"bad --sizes {text!r}: expected like '4..21' or '4,8,12'")


def _parse_methods(text: str) -> tuple[MethodSpec, ...]:
    try:
        return tuple(MethodSpec.parse(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise UserError(str(exc))


def _load(path: str):
    try:
        return cssio.parse_css(path)
    except cssio.CssFormatError as exc:
        raise UserError(str(exc))


def _emit(outputs: list[tuple[Path | None, str]]) -> None:
    """Write (path, text) pairs; path None means stdout."""
    for path, text in outputs:
        if path is None:
            sys.stdout.write(text)
        else:
            cssio.write_file_atomic(path, text)


def _default_seed() -> int:
    env = os.environ.get("CSS_TOOLS_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UserError(f"CSS_TOOLS_SEED must be an integer, got {env!r}")


# ---------------------------------------------------------------------------
# Subcommand implementations


def _cmd_truth(args) -> None:
    css = _load(args.data)
    truth = derive_truth(css)
    out = Path(args.output) if args.output else None
    _emit([(out, cssio.matrix_csv(truth.adjacency))])


def _cmd_errors(args) -> None:
    css = _load(args.data)
    scope = CellScope(args.scope)
    profiles = error_breakdown_table(css, cell_scope=scope)
    summary = error_summary(profiles)
    digits = args.round
    summary_text = cssio.summary_csv(summary, digits)
    table_text = cssio.actor_table_csv(profiles, digits)
    outputs: list[tuple[Path | None, str]] = []
    if args.output:
        prefix = Path(args.output)
        outputs.append((prefix.with_name(prefix.name + "_summary.csv"), summary_text))
        outputs.append((prefix.with_name(prefix.name + "_actors.csv"), table_text))
        if args.format == "svg":
            svg = stacked_bar_svg(profiles, title=f"{css.relation_name}: error counts")
            outputs.append((prefix.with_name(prefix.name + "_bars.svg"), svg))
    else:
        if args.format == "svg":
            raise UserError("--format svg requires -o PREFIX")
        outputs.append((None, summary_text + "\n" + table_text))
    _emit(outputs)


def _sample_for(css, args) -> SampleDesign:
    sample = _parse_sample(args.sample)
    try:
        sample.validate_for(css.n_actors)
    except ValueError as exc:
        raise UserError(str(exc))
    return sample


def _cmd_roc(args) -> None:
    css = _load(args.data)
    sample = _sample_for(css, args)
    policy = _policy(args.diagonal)
    if args.weight == "auto":
        from .model import average_sample_density

        d_bar = average_sample_density(css, sample)
        if d_bar == 0.0:
            raise UserError(
                "all sampled slices are empty; no density-derived weight exists "
                "(pass an explicit --weight)"
            )
        w = 1.0 / d_bar
    else:
        try:
            w = float(args.weight)
        except ValueError:
            raise UserError(f"--weight must be a number or 'auto', got {args.weight!r}")
        if not w > 0:
            raise UserError("--weight must be positive")
    table = roc_table(css, sample, w=w, diagonal_policy=policy)
    out = Path(args.output) if args.output else None
    _emit([(out, cssio.roc_csv(table, args.round))])


def _cmd_estimate(args) -> None:
    css = _load(args.data)
    sample = _sample_for(css, args)
    policy = _policy(args.diagonal)
    try:
        if args.method == "ftm":
            if args.k is None:
                raise UserError("--method ftm requires --k")
            network = ftm(css, sample, args.k)
            table = roc_table(css, sample, w=1.0, diagonal_policy=policy)
            report = EstimateReport(
                method="ftm",
                k_star=args.k,
                params={"k": args.k},
                network=network,
                sample=sample,
                roc=table if args.k in [r.k for r in table.rows] else None,
            )
        elif args.method == "atm":
            if args.alpha is None:
                raise UserError("--method atm requires --alpha")
            report = atm(css, sample, args.alpha, diagonal_policy=policy)
        elif args.method == "rtm":
            w = None
            if args.weight != "auto":
                try:
                    w = float(args.weight)
                except ValueError:
                    raise UserError(
                        f"--weight must be a number or 'auto', got {args.weight!r}"
                    )
            report = rtm(css, sample, w=w, diagonal_policy=policy)
        else:
            raise UserError(f"unknown method {args.method!r}")
    except ValueError as exc:
        raise UserError(str(exc))
    report_text = cssio.estimate_report_json(report)
    network_text = cssio.matrix_csv(report.network.adjacency)
    if args.output:
        prefix = Path(args.output)
        _emit(
            [
                (prefix.with_name(prefix.name + "_network.csv"), network_text),
                (prefix.with_name(prefix.name + "_report.json"), report_text),
            ]
        )
    else:
        _emit([(None, report_text)])


def _cmd_simulate(args) -> None:
    css = _load(args.data)
    seed = args.seed if args.seed is not None else _default_seed()
    try:
        cfg = ExperimentConfig(
            dataset_id=args.dataset_id or Path(args.data).stem,
            methods=_parse_methods(args.methods),
            sizes=_parse_sizes(args.sizes, css.n_actors),
            replications=args.reps,
            base_seed=seed,
            diagonal_policy=_policy(args.diagonal),
            worker_count=args.workers,
        )
        result = run_experiment(css, cfg)
    except ValueError as exc:
        raise UserError(str(exc))
    rows = summarize(result)
    meta = {
        "dataset": cfg.dataset_id,
        "methods": [m.label for m in cfg.methods],
        "sizes": list(cfg.sizes),
        "replications": cfg.replications,
        "base_seed": cfg.base_seed,
        "diagonal_policy": cfg.diagonal_policy.value,
        "quantile_method": QUANTILE_METHOD,
        "seed_mixing": "SeedSequence(base_seed, spawn_key=(n, replication))",
    }
    prefix = Path(args.output)
    outputs = [
        (prefix.with_name(prefix.name + "_long.csv"), cssio.long_csv(result)),
        (prefix.with_name(prefix.name + "_summary.csv"), cssio.experiment_summary_csv(rows)),
        (prefix.with_name(prefix.name + "_meta.json"), json.dumps(meta, indent=2) + "\n"),
    ]
    if args.svg:
        outputs.append(
            (
                prefix.with_name(prefix.name + "_boxplot.svg"),
                boxplot_svg(rows, title=f"{cfg.dataset_id}: similarity by sample size"),
            )
        )
    _emit(outputs)


def _cmd_convert(args) -> None:
    try:
        css = cssio.parse_css(args.input, force_zero_diagonal=args.force_zero_diagonal)
        cssio.write_css(css, args.output, fmt=args.to)
    except ValueError as exc:
        raise UserError(str(exc))


# ---------------------------------------------------------------------------
# Parser wiring


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="cssnet",
        description=(
            "Derive true networks from cognitive social structure data, "
            "profile respondent errors, and estimate networks from sampled "
            "slices with threshold calibration."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("truth", help="derive the intersection-rule true network")
    p.add_argument("data", help="CSS file or slice directory")
    p.add_argument("-o", "--output", help="output CSV path (default stdout)")
    p.set_defaults(func=_cmd_truth)

    p = sub.add_parser("errors", help="per-actor error profiles and summary")
    p.add_argument("data")
    p.add_argument(
        "--scope",
        choices=[s.value for s in CellScope],
        default=CellScope.ALL_OFF_DIAGONAL.value,
    )
    p.add_argument("--format", choices=["csv", "svg"], default="csv")
    p.add_argument("--round", type=int, default=None, metavar="DIGITS")
    p.add_argument("-o", "--output", help="output prefix (default stdout)")
    p.set_defaults(func=_cmd_errors)

    p = sub.add_parser("roc", help="threshold calibration table over a sample")
    p.add_argument("data")
    p.add_argument("--sample", required=True, help="comma-separated 1-based actor ids")
    p.add_argument("--weight", default="auto", help="positive weight or 'auto' (= 1/d_bar)")
    p.add_argument("--diagonal", choices=["include", "exclude"], default="include")
    p.add_argument("--round", type=int, default=None, metavar="DIGITS")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_roc)

    p = sub.add_parser("estimate", help="estimate the network from sampled slices")
    p.add_argument("data")
    p.add_argument("--sample", required=True)
    p.add_argument("--method", choices=["ftm", "atm", "rtm"], required=True)
    p.add_argument("--k", type=int, default=None, help="threshold for ftm")
    p.add_argument("--alpha", type=float, default=None, help="tolerable type 1 rate for atm")
    p.add_argument("--weight", default="auto", help="rtm weight or 'auto' (= 1/d_bar)")
    p.add_argument("--diagonal", choices=["include", "exclude"], default="include")
    p.add_argument(
        "-o", "--output",
        help="prefix for _network.csv and _report.json (default: report to stdout)",
    )
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("simulate", help="Monte Carlo: estimation quality vs sample size")
    p.add_argument("data")
    p.add_argument(
        "--methods",
        default="rtm,atm:0.01,atm:0.05,atm:0.10,atm:0.15",
        help="comma-separated method specs: rtm, rtm:w=W, atm:ALPHA, ftm:K",
    )
    p.add_argument("--sizes", default="4..N", help="'LO..HI' (HI may be N) or comma list")
    p.add_argument("--reps", type=int, default=1000)
    p.add_argument("--seed", type=int, default=None,
                   help="base seed (default: CSS_TOOLS_SEED or 0)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--diagonal", choices=["include", "exclude"], default="include")
    p.add_argument("--svg", action="store_true", help="also emit a boxplot SVG")
    p.add_argument("--dataset-id", default=None)
    p.add_argument("-o", "--output", required=True, help="output prefix")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser(
        "convert",
        help="convert between CSS file formats (reads .css, slice dirs, UCINET DL)",
    )
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--to", choices=["css", "dir"], default=None,
                   help="target format (default: by output name)")
    p.add_argument("--force-zero-diagonal", action="store_true",
                   help="zero nonzero diagonal cells when importing DL files")
    p.set_defaults(func=_cmd_convert)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        args.func(args)
        return 0
    except UserError as exc:
        print(f"cssnet: error: {exc}", file=sys.stderr)
        return 1
    except (OSError, FileNotFoundError) as exc:
        print(f"cssnet: error: {exc}", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        return 1
    except Exception as exc:  # pragma: no cover - internal failure path
        print(f"cssnet: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
