"""Draw rank-ordered p-value plots for each pollutant endpoint.

P-values testing a true null spread uniformly on (0, 1), so sorting them
and plotting value against rank gives a rough 45-degree line.  A sharp
bend, with a pile of small values ahead of a straight null-looking tail,
is the signature of a mixture of real effects or selective reporting with
honest nulls.  This script renders one plot per endpoint in the bundled
dataset and prints the uniformity and bilinearity diagnostics beside it.
"""

from pathlib import Path

from metaaudit import (
    InsufficientDataError,
    bilinearity_fit,
    build_pplot,
    load_case_dataset,
    render_pplot_svg,
    uniformity_ks,
)

out_dir = Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

data = load_case_dataset()
endpoints = []
for record in data.pvalues:
    if record.endpoint not in endpoints:
        endpoints.append(record.endpoint)

print(f"{'endpoint':<9} {'m':>3} {'frac<=.05':>9} {'KS D':>7} {'KS p':>8} "
      f"{'bend':>4} {'ratio':>6}")
for endpoint in endpoints:
    series = build_pplot(data.pvalues, endpoint=endpoint)
    ks = uniformity_ks(series)
    try:
        fit = bilinearity_fit(series)
        bend, ratio = str(fit.breakpoint_rank), f"{fit.ratio:.3f}"
    except InsufficientDataError:
        bend, ratio = "-", "-"
    svg_path = out_dir / f"pplot_{endpoint}.svg"
    svg_path.write_text(render_pplot_svg(series), encoding="utf-8")
    print(f"{endpoint:<9} {series.m:>3} {series.frac_le_alpha:>9.3f} "
          f"{ks.d_stat:>7.3f} {ks.p_ks:>8.5f} {bend:>4} {ratio:>6}")

print(f"\nwrote {len(endpoints)} plots to {out_dir}/")
