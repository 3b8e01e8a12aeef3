"""Pool the six endpoint risk ratios and examine their heterogeneity.

Fixed-effect pooling weights each estimate by its inverse variance and
assumes a single common effect.  The DerSimonian-Laird random-effects
model adds a between-study variance estimated from Cochran's Q, which
widens the interval when the inputs disagree.  Pooling across different
pollutants is deliberately rough; the point here is the contrast between
the two models once I-squared is large.
"""

import math

from metaaudit import i2, load_case_dataset, pool_fixed, pool_random_dl

data = load_case_dataset()

for pool in (pool_fixed, pool_random_dl):
    result = pool(data.effects)
    rr = math.exp(result.pooled_log)
    low = math.exp(result.ci_low)
    high = math.exp(result.ci_high)
    print(f"{result.method:<10} RR {rr:.4f} (95% CI {low:.4f} to {high:.4f})")

result = pool_random_dl(data.effects)
print()
print(f"Cochran Q = {result.q_stat:.2f} on {result.k - 1} df")
print(f"tau^2     = {result.tau2:.6f}")
print(f"I^2       = {result.i2_percent:.1f}%")
print(f"I^2 recomputed from Q and k: {i2(result.q_stat, result.k):.1f}%")
