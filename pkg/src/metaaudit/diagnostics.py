"""Shape diagnostics for collections of reported p-values.

The central construction is the rank-ordered p-value plot (Schweder &
Spjotvoll 1982, Biometrika 69:493-502): p-values sorted smallest to largest
and plotted against their ranks. Under a single null hypothesis in play the
points fall near a 45-degree line; a sharp bend ("hockey stick") suggests a
mix of real effects or selective analysis. Two statistics quantify the
visual judgement: a one-sample Kolmogorov-Smirnov test of uniformity, and
the SSE ratio of a free two-segment fit against a single line.

Volcano plots (effect size against -log10 p, Cui & Churchill 2003, Nature
Reviews Genetics 4:210) are built from published risk ratios through the
back-calculation in :mod:`metaaudit.statcore`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import kolmogorov

from .errors import EmptySeriesError, InsufficientDataError, ValidationError
from .statcore import EffectEstimate, bonferroni_line, p_from_estimate

__all__ = [
    "BilinearityFit",
    "EndpointDescriptives",
    "KsResult",
    "PValuePlotSeries",
    "PValueRecord",
    "VolcanoPoint",
    "bilinearity_fit",
    "build_pplot",
    "build_volcano",
    "descriptives",
    "uniformity_ks",
]


@dataclass(frozen=True)
class PValueRecord:
    """One reported p-value from one study.

    Attributes
    ----------
    citation : int
        Citation number of the source study.
    author : str
        First author, for labelling.
    endpoint : str
        What was tested (e.g. a pollutant name, or a simulation regime).
    p : float
        Reported p-value in (0, 1].
    direction_negative : bool
        True when the underlying risk ratio was below 1.
    truncated : bool
        True when the source reported an upper bound (e.g. "<0.001")
        rather than an exact value.
    """

    citation: int
    author: str
    endpoint: str
    p: float
    direction_negative: bool = False
    truncated: bool = False

    def __post_init__(self) -> None:
        if not isinstance(self.citation, int) or isinstance(self.citation, bool):
            raise ValidationError(f"citation must be an integer, got {self.citation!r}")
        if not self.endpoint:
            raise ValidationError("endpoint must be a non-empty string")
        p = float(self.p)
        if not math.isfinite(p) or not 0.0 < p <= 1.0:
            raise ValidationError(
                f"p must lie in (0, 1], got {self.p!r} (citation {self.citation})"
            )


@dataclass(frozen=True)
class PValuePlotSeries:
    """Rank-ordered p-values for one endpoint.

    ``points`` holds ``(rank, p)`` pairs with ranks 1..m and p sorted
    ascending; ``frac_le_alpha`` is the fraction of p-values at or below
    ``alpha``.
    """

    endpoint: str
    points: tuple[tuple[int, float], ...]
    m: int
    frac_le_alpha: float
    alpha: float

    def __post_init__(self) -> None:
        if self.m != len(self.points):
            raise ValidationError(
                f"m={self.m} does not match the {len(self.points)} points supplied"
            )
        for index, (rank, p) in enumerate(self.points, start=1):
            if rank != index:
                raise ValidationError(f"rank {rank} at position {index}; expected {index}")
            if index > 1 and p < self.points[index - 2][1]:
                raise ValidationError("points must be sorted non-decreasing in p")


class KsResult(NamedTuple):
    """Kolmogorov-Smirnov distance from Uniform(0,1), with asymptotic p-value."""

    d_stat: float
    p_ks: float


class BilinearityFit(NamedTuple):
    """Best two-segment least-squares fit versus a single line.

    ``ratio`` is ``sse_two_segment / sse_one_segment`` in [0, 1]; values
    well below 1 indicate a bend (hockey-stick shape).
    """

    breakpoint_rank: int
    sse_two_segment: float
    sse_one_segment: float
    ratio: float


@dataclass(frozen=True)
class VolcanoPoint:
    """One study on the volcano plot: log effect size against -log10 p."""

    label: str
    effect: float
    neg_log10_p: float


def build_pplot(
    records: list[PValueRecord], endpoint: str, alpha: float = 0.05
) -> PValuePlotSeries:
    """Rank-ordered p-value series for one endpoint.

    Filters ``records`` to the endpoint, sorts ascending in p (ties broken
    by citation number, so the order is reproducible), and assigns ranks
    1..m.

    Parameters
    ----------
    records : list of PValueRecord
    endpoint : str
        Label to select on; exact match.
    alpha : float
        Significance threshold used for ``frac_le_alpha`` (default 0.05).

    Returns
    -------
    PValuePlotSeries

    Raises
    ------
    EmptySeriesError
        If no record matches the endpoint.
    """
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise ValidationError(f"alpha must lie strictly between 0 and 1, got {alpha!r}")
    matching = [r for r in records if r.endpoint == endpoint]
    if not matching:
        raise EmptySeriesError(f"no p-value records for endpoint {endpoint!r}")
    matching.sort(key=lambda r: (r.p, r.citation))
    points = tuple((rank, r.p) for rank, r in enumerate(matching, start=1))
    m = len(points)
    frac = sum(1 for _, p in points if p <= alpha) / m
    return PValuePlotSeries(
        endpoint=endpoint, points=points, m=m, frac_le_alpha=frac, alpha=alpha
    )


def uniformity_ks(series: PValuePlotSeries) -> KsResult:
    """One-sample Kolmogorov-Smirnov test of the series against Uniform(0,1).

    The p-value uses the asymptotic Kolmogorov distribution of
    ``sqrt(m) * D``, adequate for the series sizes this package deals in.

    Parameters
    ----------
    series : PValuePlotSeries
        At least 5 points.

    Returns
    -------
    KsResult

    Raises
    ------
    InsufficientDataError
        If the series has fewer than 5 points.
    """
    m = series.m
    if m < 5:
        raise InsufficientDataError(f"KS uniformity test needs m >= 5, got m={m}")
    sorted_p = np.array([p for _, p in series.points], dtype=float)
    i = np.arange(1, m + 1, dtype=float)
    d_plus = np.max(i / m - sorted_p)
    d_minus = np.max(sorted_p - (i - 1.0) / m)
    d_stat = float(max(d_plus, d_minus, 0.0))
    p_ks = float(kolmogorov(math.sqrt(m) * d_stat))
    return KsResult(d_stat=d_stat, p_ks=p_ks)


# SSE below this is treated as an exact straight line; covers accumulated
# roundoff without masking any real lack of fit (p-values live in [0, 1]).
_SSE_LINEAR_EPS = 1e-13


def _segment_sse(pref, i: int, j: int) -> float:
    """SSE of a least-squares line over the half-open index range [i, j)."""
    cx, cy, cxx, cyy, cxy = pref
    n = j - i
    sx = cx[j] - cx[i]
    sy = cy[j] - cy[i]
    sxx = (cxx[j] - cxx[i]) - sx * sx / n
    syy = (cyy[j] - cyy[i]) - sy * sy / n
    sxy = (cxy[j] - cxy[i]) - sx * sy / n
    if sxx <= 0.0:
        return max(0.0, float(syy))
    return max(0.0, float(syy - sxy * sxy / sxx))


def bilinearity_fit(series: PValuePlotSeries) -> BilinearityFit:
    """Best free two-segment line fit of the rank/p series versus one line.

    Every breakpoint from rank 2 to rank m-2 is tried; at each, separate
    least-squares lines are fit to the left and right segments (each at
    least two points) and the breakpoint with the smallest total SSE wins.
    Ties go to the smallest rank. A series that is already collinear gets
    ratio 1.0 by convention.

    Parameters
    ----------
    series : PValuePlotSeries
        At least 6 points.

    Returns
    -------
    BilinearityFit

    Raises
    ------
    InsufficientDataError
        If the series has fewer than 6 points.
    """
    m = series.m
    if m < 6:
        raise InsufficientDataError(f"two-segment fit needs m >= 6, got m={m}")
    x = np.arange(1, m + 1, dtype=float)
    y = np.array([p for _, p in series.points], dtype=float)

    def cum(values):
        out = np.zeros(m + 1)
        np.cumsum(values, out=out[1:])
        return out

    pref = (cum(x), cum(y), cum(x * x), cum(y * y), cum(x * y))
    sse_one = _segment_sse(pref, 0, m)
    best_rank = 2
    best_sse = math.inf
    for rank in range(2, m - 1):
        total = _segment_sse(pref, 0, rank) + _segment_sse(pref, rank, m)
        if total < best_sse:
            best_sse = total
            best_rank = rank
    if sse_one <= _SSE_LINEAR_EPS:
        ratio = 1.0
    else:
        ratio = min(1.0, best_sse / sse_one)
    return BilinearityFit(
        breakpoint_rank=best_rank,
        sse_two_segment=best_sse,
        sse_one_segment=sse_one,
        ratio=ratio,
    )


def build_volcano(
    estimates: list[EffectEstimate], alpha: float, m_tests: int
) -> tuple[list[VolcanoPoint], float]:
    """Volcano-plot coordinates for a set of risk ratios.

    Each estimate becomes a point at (log risk ratio, -log10 p) with the
    p-value back-calculated from its interval. The returned ``bonferroni_y``
    is the height of the multiplicity-adjusted reference line,
    ``-log10(alpha / m_tests)``.

    Parameters
    ----------
    estimates : list of EffectEstimate
        At least one estimate.
    alpha : float
        Unadjusted significance level.
    m_tests : int
        Number of tests the Bonferroni correction accounts for.

    Returns
    -------
    (list of VolcanoPoint, float)
    """
    if not estimates:
        raise ValidationError("cannot build a volcano plot from no estimates")
    line = bonferroni_line(alpha, m_tests)
    points = []
    for estimate in estimates:
        back = p_from_estimate(estimate)
        points.append(
            VolcanoPoint(
                label=estimate.label,
                effect=back.log_effect,
                neg_log10_p=-math.log10(back.p),
            )
        )
    return points, line.neg_log10


class EndpointDescriptives(NamedTuple):
    """Count and p-value range for one endpoint."""

    count: int
    min_p: float
    max_p: float


def descriptives(records: list[PValueRecord]) -> dict[str, EndpointDescriptives]:
    """Per-endpoint count and exact min/max of reported p-values.

    Endpoints appear in first-appearance order of the input, so output is
    deterministic for a given record list.

    Parameters
    ----------
    records : list of PValueRecord
        At least one record.

    Returns
    -------
    dict mapping endpoint to EndpointDescriptives
    """
    if not records:
        raise ValidationError("cannot describe an empty record list")
    grouped: dict[str, list[float]] = {}
    for record in records:
        grouped.setdefault(record.endpoint, []).append(record.p)
    return {
        endpoint: EndpointDescriptives(
            count=len(ps), min_p=min(ps), max_p=max(ps)
        )
        for endpoint, ps in grouped.items()
    }
