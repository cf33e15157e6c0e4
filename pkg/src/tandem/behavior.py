"""Confidence-gated reliance: how the simulated human uses AI advice.

The human holds a private threshold tau for their own confidence. Above
the threshold they keep their own answer; at or below it they defer to
the AI with probability r (their learned trust) and otherwise keep
their own answer anyway. The threshold is modeled as a random variable,
so region membership enters training objectives through its CDF as soft
instance weights rather than hard masks.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, EmptyAlignmentRegionError


@dataclass(frozen=True)
class ThresholdDist:
    """Distribution of the reliance threshold tau.

    kind 'point' puts all mass at tau; kind 'uniform' spreads it over
    [lo, hi]. Use the classmethod constructors rather than __init__.
    """

    kind: str
    tau: float | None = None
    lo: float | None = None
    hi: float | None = None

    def __post_init__(self):
        if self.kind == "point":
            if self.tau is None or not np.isfinite(self.tau):
                raise ConfigError("tau", f"point threshold needs a finite tau, got {self.tau!r}")
            if not 0.0 <= self.tau <= 1.0:
                raise ConfigError("tau", f"expected a value in [0, 1], got {self.tau!r}")
        elif self.kind == "uniform":
            if self.lo is None or self.hi is None:
                raise ConfigError("lo/hi", "uniform threshold needs both endpoints")
            if not (np.isfinite(self.lo) and np.isfinite(self.hi)):
                raise ConfigError("lo/hi", f"endpoints must be finite, got {self.lo!r}, {self.hi!r}")
            if not (0.0 <= self.lo < self.hi <= 1.0):
                raise ConfigError("lo/hi", f"need 0 <= lo < hi <= 1, got lo={self.lo!r} hi={self.hi!r}")
        else:
            raise ConfigError("kind", f"unknown threshold kind {self.kind!r}")

    @classmethod
    def point(cls, tau: float) -> "ThresholdDist":
        return cls(kind="point", tau=float(tau))

    @classmethod
    def uniform(cls, lo: float, hi: float) -> "ThresholdDist":
        return cls(kind="uniform", lo=float(lo), hi=float(hi))

    def weight_low(self, conf) -> np.ndarray:
        """P[tau >= conf]: probability the human falls below threshold.

        This is the complementarity-region weight of an instance with
        the given confidence. A point mass reduces it to the indicator
        of conf <= tau.
        """
        conf = np.asarray(conf, dtype=float)
        if self.kind == "point":
            return (conf <= self.tau).astype(float)
        return np.clip((self.hi - conf) / (self.hi - self.lo), 0.0, 1.0)

    def weight_high(self, conf) -> np.ndarray:
        """P[tau < conf]: the alignment-region weight, 1 - weight_low."""
        return 1.0 - self.weight_low(conf)

    def sample(self, rng: np.random.Generator, size=None) -> np.ndarray:
        if self.kind == "point":
            return np.full(size if size is not None else (), self.tau)
        return rng.uniform(self.lo, self.hi, size=size)

    def to_dict(self) -> dict:
        if self.kind == "point":
            return {"kind": "point", "tau": self.tau}
        return {"kind": "uniform", "lo": self.lo, "hi": self.hi}

    @classmethod
    def from_dict(cls, d: dict) -> "ThresholdDist":
        kind = d.get("kind")
        if kind == "point":
            return cls.point(d["tau"])
        if kind == "uniform":
            return cls.uniform(d["lo"], d["hi"])
        raise ConfigError("kind", f"unknown threshold kind {kind!r}")


def region_weights(conf_h, ft: ThresholdDist):
    """(alignment weight, complementarity weight) per instance."""
    w_low = ft.weight_low(conf_h)
    return 1.0 - w_low, w_low


def cgr_decide(y_h, y_m, conf_h, tau):
    """Deterministic gate: keep own answer iff conf_h > tau, else take the AI's."""
    return np.where(np.asarray(conf_h) > tau, y_h, y_m)


def cgpr_decide(y_h, y_m, conf_h, tau, r, rng: np.random.Generator):
    """One probabilistic-reliance decision.

    Above threshold the human keeps their own answer and consumes no
    randomness. At or below it, exactly one uniform draw decides: take
    the AI answer with probability r, otherwise keep their own.
    """
    if conf_h > tau:
        return y_h
    return y_m if rng.random() < r else y_h


def simulate_team_choices(conf_h, ft: ThresholdDist, r, draws,
                          rng: np.random.Generator) -> np.ndarray:
    """Vectorized reliance sampling: (draws, n) booleans, True = take the AI.

    Each row draws a fresh threshold and a fresh reliance coin per
    instance, matching repeated independent decisions by the same team.
    """
    conf_h = np.asarray(conf_h, dtype=float)
    n = conf_h.shape[0]
    taus = ft.sample(rng, (draws, n))
    coins = rng.random((draws, n)) < r
    return (conf_h[None, :] <= taus) & coins


def simulate_team_decisions(y_h, y_m, conf_h, ft: ThresholdDist, r, draws,
                            rng: np.random.Generator) -> np.ndarray:
    """Sampled CGPR answers as a (draws, n) array of labels."""
    y_h = np.asarray(y_h)
    take_ai = simulate_team_choices(conf_h, ft, r, draws, rng)
    return np.where(take_ai, np.asarray(y_m), y_h[None, :])


@dataclass(frozen=True)
class RelianceState:
    """Trust level r in [0, 1]; degenerate marks the empty-region fallback."""

    r: float
    degenerate: bool = False


def alignment_disagreement(model_preds, human_preds, alignment_mask) -> float:
    """Mean 0-1 disagreement between model and human over a hard subset."""
    mask = np.asarray(alignment_mask, dtype=bool)
    if not mask.any():
        raise EmptyAlignmentRegionError("alignment subset is empty")
    m = np.asarray(model_preds)[mask]
    h = np.asarray(human_preds)[mask]
    return float(np.mean(m != h))


def reliance(model_preds, human_preds, alignment_mask, *,
             on_empty: str = "trust") -> RelianceState:
    """Trust r = 1 - disagreement on the alignment subset.

    on_empty controls the empty-subset case: 'trust' falls back to full
    trust r=1 with a warning, 'raise' propagates the error.
    """
    try:
        d = alignment_disagreement(model_preds, human_preds, alignment_mask)
    except EmptyAlignmentRegionError:
        if on_empty == "raise":
            raise
        warnings.warn("empty alignment region; defaulting to full trust r=1",
                      stacklevel=2)
        return RelianceState(r=1.0, degenerate=True)
    return RelianceState(r=1.0 - d)


def reliance_weighted(model_preds, human_preds, alignment_weights, *,
                      on_empty: str = "trust") -> RelianceState:
    """Soft-weighted trust for a random threshold.

    Weights are per-instance alignment probabilities P[tau < conf];
    disagreement is their normalized weighted mean.
    """
    w = np.asarray(alignment_weights, dtype=float)
    total = w.sum()
    if total <= 0.0:
        if on_empty == "raise":
            raise EmptyAlignmentRegionError("alignment weights sum to zero")
        warnings.warn("zero alignment mass; defaulting to full trust r=1",
                      stacklevel=2)
        return RelianceState(r=1.0, degenerate=True)
    disagree = (np.asarray(model_preds) != np.asarray(human_preds)).astype(float)
    return RelianceState(r=1.0 - float(np.dot(w, disagree) / total))


def expected_team_loss(y, y_h, y_m, conf_h, ft: ThresholdDist, r) -> float:
    """Closed-form expected 0-1 team loss under the reliance model.

    Averages, per instance, the threshold-weighted mix of the human's
    own error and the r-blend used below threshold. Equals the Monte
    Carlo mean of simulate_team_decisions errors as draws grow.
    """
    y = np.asarray(y)
    loss_h = (np.asarray(y_h) != y).astype(float)
    loss_m = (np.asarray(y_m) != y).astype(float)
    w_high, w_low = region_weights(conf_h, ft)
    per = w_high * loss_h + w_low * (r * loss_m + (1.0 - r) * loss_h)
    return float(per.mean())


def team_loss_decomposition(y, y_h, y_m, conf_h, ft: ThresholdDist, r) -> dict:
    """Split the expected team loss into its structural pieces.

    Returns mass-weighted human loss above threshold (own_region_human),
    mass-weighted model and human losses below it, and the identity
    total: own_region_human + low_model + (low_human - low_model) * (1 - r).
    """
    y = np.asarray(y)
    loss_h = (np.asarray(y_h) != y).astype(float)
    loss_m = (np.asarray(y_m) != y).astype(float)
    w_high, w_low = region_weights(conf_h, ft)
    n = y.shape[0]
    own = float(np.dot(w_high, loss_h) / n)
    low_m = float(np.dot(w_low, loss_m) / n)
    low_h = float(np.dot(w_low, loss_h) / n)
    total = own + low_m + (low_h - low_m) * (1.0 - r)
    return {"own_region_human": own, "low_model": low_m, "low_human": low_h,
            "total": total}
