"""Back-calculate p-values from summary risk ratios and draw a volcano plot.

A risk ratio with its confidence interval implies a z statistic, and the
z statistic implies a two-sided p-value; no raw data needed.  Plotting
log risk ratio against -log10(p) puts precise, strong effects high up and
weak ones near the floor.  The dashed horizontal line is the Bonferroni
threshold for the number of tests searched, here 66 candidate analyses,
so a point clearing the unadjusted 0.05 bar can still sit well below it.
"""

from pathlib import Path

from metaaudit import (
    build_volcano,
    load_case_dataset,
    p_from_estimate,
    render_volcano_svg,
)

out_dir = Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

data = load_case_dataset()

print(f"{'endpoint':<9} {'RR':>6} {'95% CI':>16} {'p':>10}")
for est in data.effects:
    back = p_from_estimate(est)
    interval = f"({est.ci_low:.3f}, {est.ci_high:.3f})"
    print(f"{est.label:<9} {est.rr:>6.3f} {interval:>16} {back.p:>10.2e}")

points, line_y = build_volcano(data.effects, alpha=0.05, m_tests=66)
svg_path = out_dir / "volcano.svg"
svg_path.write_text(render_volcano_svg(points, line_y), encoding="utf-8")

print(f"\nBonferroni line at -log10(0.05/66) = {line_y:.3f}")
above = [point.label for point in points if point.neg_log10_p > line_y]
print("points above the line:", ", ".join(above) if above else "none")
print(f"wrote {svg_path}")
