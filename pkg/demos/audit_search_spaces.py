"""Survey the analysis search spaces of the bundled air-pollution studies.

Each study in the bundled dataset reports how many health outcomes,
pollutant predictors, exposure lags, and adjustable covariates it
considered.  Multiplying outcomes by predictors by lags counts the
distinct tests available (space1); doubling once per covariate counts the
model variants (space2); their product is the full search space (space3).
The script prints the per-study numbers and the five-number summary, then
shows how fast the family-wise error rate saturates at that scale.
"""

from metaaudit import compute_space, fwer, load_case_dataset, summarize_spaces

data = load_case_dataset()

print(f"{'cit':>4} {'author':<12} {'space1':>7} {'space2':>7} {'space3':>10}")
spaces = []
for counts in data.counts:
    space = compute_space(counts)
    spaces.append(space)
    print(f"{counts.citation:>4} {counts.author:<12} "
          f"{space.space1:>7,} {space.space2:>7,} {space.space3:>10,}")

summary = summarize_spaces(spaces)
print()
print("five-number summaries (min / q1 / median / q3 / max):")
for name in ("space1", "space2", "space3"):
    values = getattr(summary, name)
    print(f"  {name}: " + " / ".join(f"{v:,.0f}" for v in values))

# With hundreds of candidate analyses per study, at least one false
# positive somewhere is near certain even at a stricter per-test alpha.
print()
for alpha in (0.05, 0.005):
    print(f"P(at least one false positive | 500 tests, alpha={alpha}) "
          f"= {fwer(500, alpha):.4f}")
