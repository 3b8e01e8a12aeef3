"""Monte-Carlo p-value populations under null, effect, and selection regimes.

Generates the p-value collections whose rank-ordered plots illustrate the
shapes the diagnostics are built to detect: a 45-degree line under the null,
a shallow slope under a common real effect, and a bilinear hockey stick when
some studies report the minimum p-value found across a search of many
candidate tests ("phack"), or when such studies are mixed with null ones.

Candidate tests within a study are simulated as independent, so the chance
of at least one p <= alpha across S candidates is the familiar
``1 - (1 - alpha)**S``. Real search spaces are correlated; independence is
the upper bound and keeps the arithmetic transparent.

Determinism: every replicate draws from its own substream, derived from
(seed, replicate index) by NumPy's SeedSequence spawning. Serial and
parallel execution therefore produce identical output for the same config.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import ndtr

from .diagnostics import PValueRecord, bilinearity_fit, build_pplot, uniformity_ks
from .errors import InsufficientDataError, ValidationError
from .statcore import P_FLOOR

__all__ = ["REGIMES", "ShapeStats", "SimConfig", "shape_check", "simulate_pvalues"]

REGIMES = ("null", "effect", "phack", "mixture")

_MIX_COMPONENTS = ("phack", "effect")

_SEED_MAX = 2**64 - 1


@dataclass(frozen=True)
class SimConfig:
    """Configuration of one simulation run.

    Attributes
    ----------
    regime : str
        One of ``"null"``, ``"effect"``, ``"phack"``, ``"mixture"``.
    m : int
        Number of reported p-values per replicate; at least 1.
    seed : int
        RNG seed in [0, 2**64).
    delta : float
        Mean of the test statistic under the effect regime.
    s_tests : int
        Candidate tests searched per study under phack; at least 1.
    pi_mix : float
        Fraction of non-null studies under the mixture regime, in [0, 1].
    replicates : int
        Number of independent replicates; at least 1.
    mix_component : str
        What the non-null fraction of a mixture consists of:
        ``"phack"`` (default) or ``"effect"``.
    """

    regime: str
    m: int
    seed: int
    delta: float = 0.0
    s_tests: int = 1
    pi_mix: float = 0.0
    replicates: int = 1
    mix_component: str = "phack"

    def __post_init__(self) -> None:
        if self.regime not in REGIMES:
            raise ValidationError(
                f"regime must be one of {', '.join(REGIMES)}; got {self.regime!r}"
            )
        for name, minimum in (("m", 1), ("s_tests", 1), ("replicates", 1)):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValidationError(f"{name} must be an integer, got {value!r}")
            if value < minimum:
                raise ValidationError(f"{name} must be at least {minimum}, got {value}")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ValidationError(f"seed must be an integer, got {self.seed!r}")
        if not 0 <= self.seed <= _SEED_MAX:
            raise ValidationError(f"seed must lie in [0, 2**64), got {self.seed}")
        if not math.isfinite(float(self.delta)):
            raise ValidationError(f"delta must be finite, got {self.delta!r}")
        if not 0.0 <= float(self.pi_mix) <= 1.0:
            raise ValidationError(f"pi_mix must lie in [0, 1], got {self.pi_mix!r}")
        if self.mix_component not in _MIX_COMPONENTS:
            raise ValidationError(
                f"mix_component must be one of {', '.join(_MIX_COMPONENTS)}; "
                f"got {self.mix_component!r}"
            )


def _two_sided_p(z: np.ndarray) -> np.ndarray:
    return 2.0 * ndtr(-np.abs(z))


def _min_of_candidates(rng: np.random.Generator, n: int, s_tests: int) -> np.ndarray:
    # A two-sided null p-value is Uniform(0,1), so candidate p-values are
    # drawn directly as uniforms; the study reports the minimum.
    if n == 0:
        return np.empty(0)
    return rng.random((n, s_tests)).min(axis=1)


def _replicate_p(cfg: SimConfig, index: int) -> np.ndarray:
    seq = np.random.SeedSequence(entropy=cfg.seed, spawn_key=(index,))
    rng = np.random.default_rng(seq)
    if cfg.regime == "null":
        p = _two_sided_p(rng.standard_normal(cfg.m))
    elif cfg.regime == "effect":
        p = _two_sided_p(cfg.delta + rng.standard_normal(cfg.m))
    elif cfg.regime == "phack":
        p = _min_of_candidates(rng, cfg.m, cfg.s_tests)
    else:  # mixture
        selected = rng.random(cfg.m) < cfg.pi_mix
        p = np.empty(cfg.m)
        n_selected = int(selected.sum())
        if cfg.mix_component == "phack":
            p[selected] = _min_of_candidates(rng, n_selected, cfg.s_tests)
        else:
            p[selected] = _two_sided_p(cfg.delta + rng.standard_normal(n_selected))
        p[~selected] = _two_sided_p(rng.standard_normal(cfg.m - n_selected))
    return np.clip(p, P_FLOOR, 1.0)


def simulate_pvalues(cfg: SimConfig) -> list[list[PValueRecord]]:
    """Simulated p-value records, one inner list of length m per replicate.

    Records carry the study index as citation and the regime name as
    endpoint, so they feed straight into the diagnostics functions.

    Parameters
    ----------
    cfg : SimConfig

    Returns
    -------
    list of list of PValueRecord
        ``cfg.replicates`` inner lists, each of length ``cfg.m``.
    """
    out: list[list[PValueRecord]] = []
    for index in range(cfg.replicates):
        p = _replicate_p(cfg, index)
        out.append(
            [
                PValueRecord(
                    citation=study + 1,
                    author="sim",
                    endpoint=cfg.regime,
                    p=float(p[study]),
                )
                for study in range(cfg.m)
            ]
        )
    return out


class ShapeStats(NamedTuple):
    """Replicate-averaged diagnostics of a simulated p-value population."""

    mean_frac_le_005: float
    mean_ks_d: float
    mean_bilinearity_ratio: float


def shape_check(cfg: SimConfig) -> ShapeStats:
    """Average the shape diagnostics over many simulated replicates.

    Per replicate: fraction of p <= 0.05, the KS distance from uniformity,
    and the two-segment/one-line SSE ratio, all via the diagnostics module;
    the three are then averaged across replicates.

    Parameters
    ----------
    cfg : SimConfig
        Needs ``replicates >= 100`` (anything fewer is too noisy to
        summarize by a mean) and ``m >= 6`` for the two-segment fit.

    Returns
    -------
    ShapeStats
    """
    if cfg.replicates < 100:
        raise InsufficientDataError(
            f"shape_check needs at least 100 replicates, got {cfg.replicates}"
        )
    if cfg.m < 6:
        raise InsufficientDataError(f"shape_check needs m >= 6, got m={cfg.m}")
    fracs = []
    ks_ds = []
    ratios = []
    for records in simulate_pvalues(cfg):
        series = build_pplot(records, endpoint=cfg.regime, alpha=0.05)
        fracs.append(series.frac_le_alpha)
        ks_ds.append(uniformity_ks(series).d_stat)
        ratios.append(bilinearity_fit(series).ratio)
    n = float(cfg.replicates)
    return ShapeStats(
        mean_frac_le_005=sum(fracs) / n,
        mean_ks_d=sum(ks_ds) / n,
        mean_bilinearity_ratio=sum(ratios) / n,
    )
