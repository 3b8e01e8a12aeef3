"""Command-line interface.

Subcommands map one-to-one onto the library workflows:

* ``spaces``    counts CSV -> per-study search spaces and five-number summary
* ``pplot``     p-value CSV + endpoint -> ranked series, SVG, shape diagnostics
* ``volcano``   effects CSV -> volcano coordinates and SVG
* ``pool``      effects CSV -> fixed-effect or DerSimonian-Laird pooled result
* ``pfromci``   effects CSV -> back-calculated z and p per row
* ``simulate``  config flags or key=value file -> simulated p-values + shape stats
* ``report``    bundled case-study fixtures -> the full audit bundle

Every command is non-interactive, reads only the named inputs, and writes
only beneath the output directory (default ``./out/<command>/``). Outputs
are byte-identical across re-runs on unchanged inputs; the only randomness
anywhere is in ``simulate`` and is pinned by its required ``--seed``.

Exit codes: 0 success, 2 invalid data or arguments, 1 I/O failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import datasets, diagnostics, pooling, simulate, svgplot
from .errors import InsufficientDataError, ValidationError
from .searchspace import compute_space, summarize_spaces
from .statcore import p_from_estimate

__all__ = ["main"]


def _out_dir(args: argparse.Namespace, command: str) -> Path:
    out = Path(args.out) if args.out else Path("out") / command
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write(path: Path, text: str) -> None:
    path.write_text(text, encoding="utf-8")
    print(f"# wrote {path}")


def _text_table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip(),
        "  ".join("-" * widths[i] for i in range(len(headers))),
    ]
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return "\n".join(lines)


def _round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


# ---------------------------------------------------------------- spaces


def cmd_spaces(args: argparse.Namespace) -> int:
    records = datasets.load_counts(args.infile)
    if not records:
        raise ValidationError(f"{args.infile}: no rows")
    out = _out_dir(args, "spaces")
    spaces = [compute_space(r) for r in records]

    lines = ["citation,author,outcomes,predictors,covariates,lags,space1,space2,space3"]
    for r, s in zip(records, spaces):
        lines.append(
            f"{r.citation},{r.author},{r.outcomes},{r.predictors},"
            f"{r.covariates},{r.lags},{s.space1},{s.space2},{s.space3}"
        )
    _write(out / "spaces.csv", "\n".join(lines) + "\n")

    summary = summarize_spaces(spaces)
    stat_names = ["min", "q1", "median", "q3", "max"]
    summary_lines = ["statistic,space1,space2,space3"]
    for i, stat in enumerate(stat_names):
        summary_lines.append(
            f"{stat},{summary.space1[i]!r},{summary.space2[i]!r},{summary.space3[i]!r}"
        )
    summary_csv = "\n".join(summary_lines) + "\n"
    _write(out / "space_summary.csv", summary_csv)

    print(summary_csv, end="")
    rows = [
        [stat]
        + [
            f"{_round_half_up(getattr(summary, f'space{j}')[i]):,}"
            for j in (1, 2, 3)
        ]
        for i, stat in enumerate(stat_names)
    ]
    print(_text_table(["statistic", "space1", "space2", "space3"], rows))
    return 0


# ----------------------------------------------------------------- pplot


def _diagnostics_row(series: diagnostics.PValuePlotSeries) -> dict[str, str]:
    row = {
        "endpoint": series.endpoint,
        "m": str(series.m),
        "frac_le_alpha": repr(series.frac_le_alpha),
        "ks_d": "",
        "ks_p": "",
        "breakpoint_rank": "",
        "sse_two_segment": "",
        "sse_one_segment": "",
        "ratio": "",
    }
    try:
        ks = diagnostics.uniformity_ks(series)
        row["ks_d"] = repr(ks.d_stat)
        row["ks_p"] = repr(ks.p_ks)
    except InsufficientDataError:
        pass
    try:
        fit = diagnostics.bilinearity_fit(series)
        row["breakpoint_rank"] = str(fit.breakpoint_rank)
        row["sse_two_segment"] = repr(fit.sse_two_segment)
        row["sse_one_segment"] = repr(fit.sse_one_segment)
        row["ratio"] = repr(fit.ratio)
    except InsufficientDataError:
        pass
    return row


_DIAG_COLUMNS = [
    "endpoint",
    "m",
    "frac_le_alpha",
    "ks_d",
    "ks_p",
    "breakpoint_rank",
    "sse_two_segment",
    "sse_one_segment",
    "ratio",
]


def _diagnostics_csv(rows: list[dict[str, str]]) -> str:
    lines = [",".join(_DIAG_COLUMNS)]
    for row in rows:
        lines.append(",".join(row[c] for c in _DIAG_COLUMNS))
    return "\n".join(lines) + "\n"


def _series_csv(series: diagnostics.PValuePlotSeries) -> str:
    lines = ["rank,p"]
    for rank, p in series.points:
        lines.append(f"{rank},{p!r}")
    return "\n".join(lines) + "\n"


def cmd_pplot(args: argparse.Namespace) -> int:
    records = datasets.load_pvalues(args.infile)
    series = diagnostics.build_pplot(records, endpoint=args.endpoint, alpha=args.alpha)
    out = _out_dir(args, "pplot")
    _write(out / f"pplot_{series.endpoint}.csv", _series_csv(series))
    svg = svgplot.render_pplot_svg(
        series, svgplot.PlotOptions(comment=f"p-value plot, endpoint {series.endpoint}")
    )
    _write(out / f"pplot_{series.endpoint}.svg", svg)
    diag_csv = _diagnostics_csv([_diagnostics_row(series)])
    _write(out / "diagnostics.csv", diag_csv)
    print(diag_csv, end="")
    print(
        f"endpoint {series.endpoint}: m={series.m}, "
        f"fraction of p <= {series.alpha:g}: {series.frac_le_alpha:.3f}"
    )
    return 0


# --------------------------------------------------------------- volcano


def cmd_volcano(args: argparse.Namespace) -> int:
    estimates = datasets.load_effects(args.infile)
    if not estimates:
        raise ValidationError(f"{args.infile}: no rows")
    m_tests = args.m_tests if args.m_tests is not None else len(estimates)
    points, bonferroni_y = diagnostics.build_volcano(estimates, args.alpha, m_tests)
    out = _out_dir(args, "volcano")

    lines = ["label,effect,neg_log10_p"]
    for point in points:
        lines.append(f"{point.label},{point.effect!r},{point.neg_log10_p!r}")
    csv_text = "\n".join(lines) + "\n"
    _write(out / "volcano.csv", csv_text)
    svg = svgplot.render_volcano_svg(
        points,
        bonferroni_y,
        svgplot.PlotOptions(
            comment=f"volcano plot, alpha {args.alpha:g}, m_tests {m_tests}"
        ),
    )
    _write(out / "volcano.svg", svg)

    print(csv_text, end="")
    rows = [[p.label, f"{p.effect:.4f}", f"{p.neg_log10_p:.3f}"] for p in points]
    print(_text_table(["label", "log_rr", "-log10(p)"], rows))
    print(f"reference line -log10({args.alpha:g}/{m_tests}) = {bonferroni_y:.3f}")
    return 0


# ------------------------------------------------------------------ pool


def cmd_pool(args: argparse.Namespace) -> int:
    estimates = datasets.load_effects(args.infile)
    if not estimates:
        raise ValidationError(f"{args.infile}: no rows")
    if args.method == "fixed":
        result = pooling.pool_fixed(estimates)
    else:
        result = pooling.pool_random_dl(estimates)
    out = _out_dir(args, "pool")

    columns = [
        "method",
        "k",
        "pooled_log",
        "pooled_se",
        "ci_low",
        "ci_high",
        "pooled_rr",
        "rr_ci_low",
        "rr_ci_high",
        "q_stat",
        "tau2",
        "i2_percent",
    ]
    values = [
        result.method,
        str(result.k),
        repr(result.pooled_log),
        repr(result.pooled_se),
        repr(result.ci_low),
        repr(result.ci_high),
        repr(math.exp(result.pooled_log)),
        repr(math.exp(result.ci_low)),
        repr(math.exp(result.ci_high)),
        repr(result.q_stat),
        repr(result.tau2),
        repr(result.i2_percent),
    ]
    csv_text = ",".join(columns) + "\n" + ",".join(values) + "\n"
    _write(out / "pooled.csv", csv_text)

    print(csv_text, end="")
    print(
        f"{result.method}: k={result.k}, pooled RR {math.exp(result.pooled_log):.4f} "
        f"({math.exp(result.ci_low):.4f} to {math.exp(result.ci_high):.4f}), "
        f"Q={result.q_stat:.3f}, tau2={result.tau2:.5f}, I2={result.i2_percent:.1f}%"
    )
    return 0


# --------------------------------------------------------------- pfromci


def cmd_pfromci(args: argparse.Namespace) -> int:
    estimates = datasets.load_effects(args.infile)
    if not estimates:
        raise ValidationError(f"{args.infile}: no rows")
    out = _out_dir(args, "pfromci")

    lines = ["label,log_effect,se,z,p"]
    table_rows = []
    for estimate in estimates:
        back = p_from_estimate(estimate)
        lines.append(f"{estimate.label},{back.log_effect!r},{back.se!r},{back.z!r},{back.p!r}")
        table_rows.append(
            [estimate.label, f"{back.log_effect:.5f}", f"{back.se:.5f}",
             f"{back.z:.3f}", f"{back.p:.3g}"]
        )
    csv_text = "\n".join(lines) + "\n"
    _write(out / "backcalc.csv", csv_text)

    print(csv_text, end="")
    print(_text_table(["label", "log_rr", "se", "z", "p"], table_rows))
    return 0


# -------------------------------------------------------------- simulate

_CONFIG_KEYS = ("regime", "m", "delta", "s_tests", "pi", "seed", "replicates", "mix_component")


def _read_config(path: Path) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValidationError(f"{path}: line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise ValidationError(f"{path}: line {lineno}: unknown key {key!r}")
        values[key] = value.strip()
    return values


def _config_int(source: str, key: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"{source}: key '{key}': not an integer: {raw!r}") from None


def _config_float(source: str, key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ValidationError(f"{source}: key '{key}': not a number: {raw!r}") from None


def _build_sim_config(args: argparse.Namespace) -> simulate.SimConfig:
    file_values: dict[str, str] = {}
    if args.infile:
        file_values = _read_config(Path(args.infile))
    source = str(args.infile)

    def pick(flag_value, key: str, cast, default):
        if flag_value is not None:
            return flag_value
        if key in file_values:
            return cast(source, key, file_values[key])
        return default

    regime = args.regime if args.regime else file_values.get("regime")
    if regime is None:
        raise ValidationError("simulate needs a regime (--regime or config file)")
    m = pick(args.m, "m", _config_int, None)
    if m is None:
        raise ValidationError("simulate needs m (--m or config file)")
    seed = pick(args.seed, "seed", _config_int, None)
    if seed is None:
        raise ValidationError("simulate needs a seed (--seed or config file)")
    return simulate.SimConfig(
        regime=regime,
        m=m,
        seed=seed,
        delta=pick(args.delta, "delta", _config_float, 0.0),
        s_tests=pick(args.s_tests, "s_tests", _config_int, 1),
        pi_mix=pick(args.pi, "pi", _config_float, 0.0),
        replicates=pick(args.replicates, "replicates", _config_int, 1),
        mix_component=file_values.get("mix_component", "phack"),
    )


def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = _build_sim_config(args)
    out = _out_dir(args, "simulate")

    replicated = simulate.simulate_pvalues(cfg)
    lines = ["replicate,citation,author,endpoint,p"]
    for index, records in enumerate(replicated):
        for record in records:
            lines.append(
                f"{index},{record.citation},{record.author},{record.endpoint},{record.p!r}"
            )
    _write(out / "pvalues.csv", "\n".join(lines) + "\n")

    if cfg.replicates >= 100 and cfg.m >= 6:
        stats = simulate.shape_check(cfg)
        csv_text = (
            "mean_frac_le_005,mean_ks_d,mean_bilinearity_ratio\n"
            f"{stats.mean_frac_le_005!r},{stats.mean_ks_d!r},{stats.mean_bilinearity_ratio!r}\n"
        )
        _write(out / "shape_stats.csv", csv_text)
        print(csv_text, end="")
        print(
            f"regime {cfg.regime}: mean frac p<=0.05 {stats.mean_frac_le_005:.4f}, "
            f"mean KS D {stats.mean_ks_d:.4f}, "
            f"mean bilinearity ratio {stats.mean_bilinearity_ratio:.4f}"
        )
    else:
        print(
            f"regime {cfg.regime}: wrote {cfg.replicates} replicate(s) of m={cfg.m} "
            "p-values (shape statistics need replicates >= 100 and m >= 6)"
        )
    return 0


# ---------------------------------------------------------------- report


def cmd_report(args: argparse.Namespace) -> int:
    if not args.fixtures:
        raise ValidationError(
            "report runs on the bundled case-study dataset; pass --fixtures"
        )
    out = _out_dir(args, "report")
    dataset = datasets.load_case_dataset()

    spaces = [compute_space(r) for r in dataset.counts]
    lines = ["citation,author,outcomes,predictors,covariates,lags,space1,space2,space3"]
    for r, s in zip(dataset.counts, spaces):
        lines.append(
            f"{r.citation},{r.author},{r.outcomes},{r.predictors},"
            f"{r.covariates},{r.lags},{s.space1},{s.space2},{s.space3}"
        )
    _write(out / "spaces.csv", "\n".join(lines) + "\n")

    summary = summarize_spaces(spaces)
    stat_names = ["min", "q1", "median", "q3", "max"]
    summary_lines = ["statistic,space1,space2,space3"]
    for i, stat in enumerate(stat_names):
        summary_lines.append(
            f"{stat},{summary.space1[i]!r},{summary.space2[i]!r},{summary.space3[i]!r}"
        )
    _write(out / "space_summary.csv", "\n".join(summary_lines) + "\n")

    described = diagnostics.descriptives(dataset.pvalues)
    desc_lines = ["endpoint,count,min_p,max_p"]
    for endpoint, stats in described.items():
        desc_lines.append(f"{endpoint},{stats.count},{stats.min_p!r},{stats.max_p!r}")
    _write(out / "descriptives.csv", "\n".join(desc_lines) + "\n")

    diag_rows = []
    for endpoint in described:
        series = diagnostics.build_pplot(dataset.pvalues, endpoint=endpoint, alpha=args.alpha)
        _write(out / f"pplot_{endpoint}.csv", _series_csv(series))
        svg = svgplot.render_pplot_svg(
            series,
            svgplot.PlotOptions(comment=f"p-value plot, endpoint {endpoint}, case-study dataset"),
        )
        _write(out / f"pplot_{endpoint}.svg", svg)
        diag_rows.append(_diagnostics_row(series))
    _write(out / "diagnostics.csv", _diagnostics_csv(diag_rows))

    back_lines = ["label,log_effect,se,z,p"]
    for estimate in dataset.effects:
        back = p_from_estimate(estimate)
        back_lines.append(
            f"{estimate.label},{back.log_effect!r},{back.se!r},{back.z!r},{back.p!r}"
        )
    _write(out / "backcalc.csv", "\n".join(back_lines) + "\n")

    m_tests = len(dataset.effects)
    points, bonferroni_y = diagnostics.build_volcano(dataset.effects, args.alpha, m_tests)
    volcano_lines = ["label,effect,neg_log10_p"]
    for point in points:
        volcano_lines.append(f"{point.label},{point.effect!r},{point.neg_log10_p!r}")
    _write(out / "volcano.csv", "\n".join(volcano_lines) + "\n")
    svg = svgplot.render_volcano_svg(
        points,
        bonferroni_y,
        svgplot.PlotOptions(
            title="pooled risk ratios",
            comment=f"volcano plot, case-study dataset, alpha {args.alpha:g}, m_tests {m_tests}",
        ),
    )
    _write(out / "volcano.svg", svg)

    total = sum(stats.count for stats in described.values())
    rows = [
        [endpoint, str(stats.count), repr(stats.min_p), repr(stats.max_p)]
        for endpoint, stats in described.items()
    ]
    print(_text_table(["endpoint", "count", "min_p", "max_p"], rows))
    print(f"total reported p-values: {total}")
    return 0


# ------------------------------------------------------------------ main


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="metaaudit",
        description="Reliability auditing of meta-analyses: search spaces, "
        "p-value plots, volcano plots, pooling, and p-value simulations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--out", help="output directory (default ./out/%s/)" % name)
        return p

    p = add("spaces", cmd_spaces, "compute analysis search spaces from a counts CSV")
    p.add_argument("--in", dest="infile", required=True, help="counts CSV")

    p = add("pplot", cmd_pplot, "rank-ordered p-value plot for one endpoint")
    p.add_argument("--in", dest="infile", required=True, help="p-values CSV")
    p.add_argument("--endpoint", required=True, help="endpoint label to plot")
    p.add_argument("--alpha", type=float, default=0.05, help="significance level")

    p = add("volcano", cmd_volcano, "volcano plot from an effects CSV")
    p.add_argument("--in", dest="infile", required=True, help="effects CSV")
    p.add_argument("--alpha", type=float, default=0.05, help="significance level")
    p.add_argument(
        "--m-tests", dest="m_tests", type=int, default=None,
        help="tests for the Bonferroni line (default: number of rows)",
    )

    p = add("pool", cmd_pool, "pool an effects CSV")
    p.add_argument("--in", dest="infile", required=True, help="effects CSV")
    p.add_argument(
        "--method", required=True, choices=("fixed", "dl"),
        help="fixed-effect or DerSimonian-Laird random effects",
    )

    p = add("pfromci", cmd_pfromci, "back-calculate z and p from each CI")
    p.add_argument("--in", dest="infile", required=True, help="effects CSV")

    p = add("simulate", cmd_simulate, "simulate p-value populations")
    p.add_argument("--in", dest="infile", default=None, help="key=value config file")
    p.add_argument("--regime", choices=simulate.REGIMES, default=None)
    p.add_argument("--m", type=int, default=None, help="p-values per replicate")
    p.add_argument("--delta", type=float, default=None, help="effect-regime mean shift")
    p.add_argument("--s-tests", dest="s_tests", type=int, default=None,
                   help="candidate tests per study under phack")
    p.add_argument("--pi", type=float, default=None, help="mixture fraction")
    p.add_argument("--seed", type=int, default=None, help="RNG seed (required)")
    p.add_argument("--replicates", type=int, default=None)

    p = add("report", cmd_report, "full audit bundle for the bundled dataset")
    p.add_argument("--fixtures", action="store_true",
                   help="run on the bundled case-study fixtures")
    p.add_argument("--alpha", type=float, default=0.05, help="significance level")

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
