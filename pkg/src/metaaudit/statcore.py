"""Core statistical primitives.

Normal distribution helpers, sample quantiles, multiplicity arithmetic, and
back-calculation of a two-sided p-value from a risk ratio and its confidence
interval. The back-calculation follows the standard log-scale normal
approximation (Altman & Bland 2011, BMJ 343:d2304): the standard error of the
log risk ratio is recovered from the interval width and the normal critical
value for the interval's coverage level.

All functions are deterministic and operate on plain floats, so results are
reproducible bit-for-bit across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from scipy.special import ndtri

from .errors import DegenerateIntervalError, InsufficientDataError, ValidationError

__all__ = [
    "BackCalcResult",
    "BonferroniLine",
    "EffectEstimate",
    "P_FLOOR",
    "bonferroni_line",
    "fwer",
    "normal_cdf",
    "normal_quantile",
    "p_from_estimate",
    "quantile_type6",
    "z_crit",
]

# Smallest p-value ever reported by the back-calculation; keeps -log10(p)
# finite for plotting while staying far below anything data can produce.
P_FLOOR = 1e-300


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValidationError(f"{name} must be finite, got {value!r}")
    return value


def normal_cdf(x: float) -> float:
    """Standard normal cumulative distribution function.

    Evaluated through the complementary error function so that deep
    tail values (|x| ~ 8 and beyond) keep full relative accuracy rather
    than rounding to 0 or 1.

    Parameters
    ----------
    x : float
        Evaluation point; must be finite.

    Returns
    -------
    float
        P(Z <= x) for Z ~ N(0, 1).
    """
    x = _require_finite("x", x)
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def normal_quantile(q: float) -> float:
    """Inverse of :func:`normal_cdf`.

    Parameters
    ----------
    q : float
        Probability strictly between 0 and 1.

    Returns
    -------
    float
        The value x with ``normal_cdf(x) == q``.
    """
    q = _require_finite("q", q)
    if not 0.0 < q < 1.0:
        raise ValidationError(f"q must lie strictly between 0 and 1, got {q!r}")
    return float(ndtri(q))


def z_crit(level: float = 0.95) -> float:
    """Two-sided normal critical value for a confidence level.

    ``z_crit(0.95)`` is 1.959964..., the familiar "1.96" at full precision.
    """
    level = _require_finite("level", level)
    if not 0.0 < level < 1.0:
        raise ValidationError(f"level must lie strictly between 0 and 1, got {level!r}")
    return normal_quantile(1.0 - (1.0 - level) / 2.0)


def quantile_type6(values, q: float) -> float:
    """Sample quantile with type-6 interpolation (the SAS/Minitab default).

    The plotting position is ``h = (n + 1) * q``; the result interpolates
    linearly between the floor(h)-th and next order statistics, clamping to
    the extremes when h falls outside [1, n].

    Parameters
    ----------
    values : sequence of float
        At least one finite value; order does not matter.
    q : float
        Quantile level in [0, 1].

    Returns
    -------
    float
        The interpolated sample quantile.
    """
    data = sorted(float(v) for v in values)
    if not data:
        raise InsufficientDataError("quantile of an empty sequence")
    for v in data:
        _require_finite("values", v)
    q = _require_finite("q", q)
    if not 0.0 <= q <= 1.0:
        raise ValidationError(f"q must lie in [0, 1], got {q!r}")
    n = len(data)
    h = (n + 1) * q
    if h <= 1.0:
        return data[0]
    if h >= n:
        return data[-1]
    j = int(math.floor(h))
    g = h - j
    return data[j - 1] + g * (data[j] - data[j - 1])


def fwer(n_tests: int, alpha: float = 0.05) -> float:
    """Family-wise error rate for n independent tests at level alpha.

    Probability of at least one false positive: ``1 - (1 - alpha)**n``.
    """
    if not isinstance(n_tests, int) or isinstance(n_tests, bool):
        raise ValidationError(f"n_tests must be an integer, got {n_tests!r}")
    if n_tests < 1:
        raise ValidationError(f"n_tests must be at least 1, got {n_tests}")
    alpha = _require_finite("alpha", alpha)
    if not 0.0 < alpha < 1.0:
        raise ValidationError(f"alpha must lie strictly between 0 and 1, got {alpha!r}")
    return 1.0 - (1.0 - alpha) ** n_tests


class BonferroniLine(NamedTuple):
    """Multiplicity-adjusted significance threshold, on both scales."""

    threshold: float
    neg_log10: float


def bonferroni_line(alpha: float, m_tests: int) -> BonferroniLine:
    """Bonferroni-adjusted threshold ``alpha / m`` and its -log10.

    The ``neg_log10`` value is where the horizontal reference line sits on
    a volcano plot's y axis.
    """
    alpha = _require_finite("alpha", alpha)
    if not 0.0 < alpha < 1.0:
        raise ValidationError(f"alpha must lie strictly between 0 and 1, got {alpha!r}")
    if not isinstance(m_tests, int) or isinstance(m_tests, bool):
        raise ValidationError(f"m_tests must be an integer, got {m_tests!r}")
    if m_tests < 1:
        raise ValidationError(f"m_tests must be at least 1, got {m_tests}")
    threshold = alpha / m_tests
    return BonferroniLine(threshold=threshold, neg_log10=-math.log10(threshold))


@dataclass(frozen=True)
class EffectEstimate:
    """A published risk ratio with its confidence interval.

    Attributes
    ----------
    label : str
        Name of the exposure or endpoint the estimate belongs to.
    rr : float
        Point estimate of the risk ratio; must be positive.
    ci_low, ci_high : float
        Confidence limits bracketing ``rr``; both positive.
    level : float
        Coverage of the interval, strictly between 0 and 1 (default 0.95).
    """

    label: str
    rr: float
    ci_low: float
    ci_high: float
    level: float = 0.95

    def __post_init__(self) -> None:
        for name in ("rr", "ci_low", "ci_high"):
            value = _require_finite(name, getattr(self, name))
            if value <= 0.0:
                raise ValidationError(
                    f"{name} must be positive for a ratio estimate, got {value!r}"
                )
        level = _require_finite("level", self.level)
        if not 0.0 < level < 1.0:
            raise ValidationError(
                f"level must lie strictly between 0 and 1, got {level!r}"
            )
        if not self.ci_low <= self.rr <= self.ci_high:
            raise ValidationError(
                f"interval [{self.ci_low}, {self.ci_high}] does not bracket rr={self.rr}"
            )


@dataclass(frozen=True)
class BackCalcResult:
    """Log-scale summary recovered from an :class:`EffectEstimate`.

    Attributes
    ----------
    log_effect : float
        Natural log of the risk ratio.
    se : float
        Standard error of ``log_effect`` implied by the interval width.
    z : float
        Test statistic ``log_effect / se``.
    p : float
        Two-sided p-value, clamped to (``P_FLOOR``, 1].
    """

    log_effect: float
    se: float
    z: float
    p: float


def p_from_estimate(estimate: EffectEstimate) -> BackCalcResult:
    """Back-calculate the two-sided p-value implied by a risk ratio and CI.

    On the log scale the interval is ``log_effect +- z_crit(level) * se``,
    so ``se = (ln ci_high - ln ci_low) / (2 * z_crit(level))`` and the
    two-sided p-value is ``2 * (1 - Phi(|z|))``.

    Parameters
    ----------
    estimate : EffectEstimate
        Validated risk ratio with a non-degenerate interval.

    Returns
    -------
    BackCalcResult

    Raises
    ------
    DegenerateIntervalError
        If ``ci_low == ci_high`` (zero width, no recoverable standard error).
    """
    if estimate.ci_low == estimate.ci_high:
        raise DegenerateIntervalError(
            f"{estimate.label}: interval has zero width, cannot recover a standard error"
        )
    log_effect = math.log(estimate.rr)
    se = (math.log(estimate.ci_high) - math.log(estimate.ci_low)) / (
        2.0 * z_crit(estimate.level)
    )
    z = log_effect / se
    # 2 * Phi(-|z|) equals 2 * (1 - Phi(|z|)) but keeps tail accuracy.
    p = 2.0 * normal_cdf(-abs(z))
    p = min(1.0, max(p, P_FLOOR))
    return BackCalcResult(log_effect=log_effect, se=se, z=z, p=p)
