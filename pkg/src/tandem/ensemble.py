"""Specialist routing and its reliability diagnostics.

A routing policy holds one specialist per region and picks which model
answers each instance. The oracle policy follows the reported region
tag; the rrs policy needs no tags and routes to whichever specialist
reports higher confidence. Diagnostics quantify how far confidence
routing can fall below oracle routing: specialist calibration error,
confidence dominance violations, and the cost of disputed instances,
whose maximum certifies an accuracy slack.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import BoundViolationError, ConfigError, MissingRegionInfoError
from .learn import LinearModel

POLICY_KINDS = ("oracle", "rrs")


@dataclass(frozen=True)
class RoutingPolicy:
    kind: str
    aligned: LinearModel
    complementary: LinearModel

    def __post_init__(self):
        if self.kind not in POLICY_KINDS:
            raise ConfigError("kind", f"expected one of {POLICY_KINDS}, got {self.kind!r}")


@dataclass(frozen=True)
class RoutingResult:
    chose_aligned: np.ndarray
    y_m: np.ndarray
    conf_aligned: np.ndarray
    conf_complementary: np.ndarray


def route(policy: RoutingPolicy, data) -> RoutingResult:
    """Pick a specialist per instance and return the presented answers.

    Confidence ties under rrs go to the aligned specialist.
    """
    X = data.features
    conf_a = policy.aligned.confidence(X)
    conf_c = policy.complementary.confidence(X)
    if policy.kind == "oracle":
        reported = getattr(data, "reported_a", None)
        if reported is None:
            raise MissingRegionInfoError("oracle routing needs reported region tags")
        chose = np.asarray(reported, dtype=bool)
    else:
        chose = conf_a >= conf_c
    preds_a = policy.aligned.predict(X)
    preds_c = policy.complementary.predict(X)
    y_m = np.where(chose, preds_a, preds_c).astype(np.int8)
    return RoutingResult(chose, y_m, conf_a, conf_c)


def write_routing_trace(path, result: RoutingResult):
    """Per-instance routing trace: instance_id,chosen,conf_a,conf_c,y_m."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["instance_id", "chosen", "conf_a", "conf_c", "y_m"])
        for i in range(result.y_m.shape[0]):
            writer.writerow([
                i,
                "a" if result.chose_aligned[i] else "c",
                repr(float(result.conf_aligned[i])),
                repr(float(result.conf_complementary[i])),
                f"{int(result.y_m[i]):+d}",
            ])


def binary_entropy(p) -> np.ndarray:
    """Elementwise entropy in nats; 0 log 0 counts as 0."""
    p = np.asarray(p, dtype=float)
    q = 1.0 - p
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -np.where(p > 0.0, p * np.log(p), 0.0) \
            - np.where(q > 0.0, q * np.log(q), 0.0)
    return h


def misroute_entropy(posteriors):
    """Expected misroute rate and mean entropy of region posteriors.

    Hard routing by the larger posterior misroutes with probability
    min(p, 1-p) per instance. Returns (mean misroute rate, mean entropy)
    and refuses to return values violating rate <= entropy / (2 log 2),
    which holds for every p.
    """
    p = np.asarray(posteriors, dtype=float)
    if p.size == 0 or np.any(p < 0.0) or np.any(p > 1.0):
        raise ConfigError("posteriors", "expected nonempty probabilities in [0, 1]")
    rho = float(np.minimum(p, 1.0 - p).mean())
    h_bar = float(binary_entropy(p).mean())
    if rho > h_bar / (2.0 * np.log(2.0)) + 1e-12:
        raise BoundViolationError(
            f"misroute rate {rho} exceeds entropy cap {h_bar / (2 * np.log(2))}")
    return rho, h_bar


@dataclass(frozen=True)
class RouteDiagnostics:
    """Certifiable slack between confidence routing and oracle routing.

    certified_eps is the max of the three premise defects; confidence
    routing's team accuracy should trail oracle routing by at most this
    much (plus sampling noise).
    """

    eps_calibration: float
    dominance_rate: float
    suboptimality_eps: float
    certified_eps: float
    misroute_rate: float
    avg_entropy: float
    bins: int


def _equal_mass_bins(order_values, bins, min_count):
    n = order_values.shape[0]
    if n < bins * min_count:
        merged = max(1, n // min_count)
        warnings.warn(
            f"only {n} instances for {bins} bins; merging down to {merged}",
            stacklevel=3)
        bins = merged
    order = np.argsort(order_values, kind="stable")
    return np.array_split(order, bins), bins


def _calibration_gap(conf, agree, bins, min_count):
    groups, used = _equal_mass_bins(conf, bins, min_count)
    gap = 0.0
    for g in groups:
        gap = max(gap, abs(float(conf[g].mean()) - float(agree[g].mean())))
    return gap, used


def routing_diagnostics(policy: RoutingPolicy, data, *, region_posterior=None,
                        bins: int = 20, min_bin_count: int = 5) -> RouteDiagnostics:
    """Measure how well the premises behind confidence routing hold.

    Calibration compares each specialist's confidence to its empirical
    agreement with its own target (ground truth for the complementary
    model, the judge for the aligned model) over equal-mass confidence
    bins. Dominance asks the aligned model to be the more confident one
    on true alignment instances. Suboptimality prices the disputed
    complementarity instances the confidence rule hands to the aligned
    model. region_posterior, when given, supplies P[region = a | x] for
    the entropy summary.
    """
    X = data.features
    result = route(policy, data)
    in_a = np.asarray(data.region_a, dtype=bool)

    agree_c = (policy.complementary.predict(X) == data.y).astype(float)
    agree_a = (policy.aligned.predict(X) == data.y_h).astype(float)
    gap_c, used = _calibration_gap(result.conf_complementary, agree_c,
                                   bins, min_bin_count)
    gap_a, _ = _calibration_gap(result.conf_aligned, agree_a, bins, min_bin_count)
    eps_cal = max(gap_a, gap_c)

    if in_a.any():
        dominance_rate = float(
            (result.conf_aligned[in_a] < result.conf_complementary[in_a]).mean())
    else:
        dominance_rate = 0.0

    disputed = ~in_a & (result.conf_aligned >= result.conf_complementary)
    if disputed.any():
        acc_a = float((policy.aligned.predict(X)[disputed] == data.y[disputed]).mean())
        acc_c = float(
            (policy.complementary.predict(X)[disputed] == data.y[disputed]).mean())
        eps_sub = max(0.0, acc_c - acc_a)
    else:
        eps_sub = 0.0

    if policy.kind == "oracle":
        chose = np.asarray(data.reported_a, dtype=bool)
    else:
        chose = result.chose_aligned
    misroute = float((chose != in_a).mean())

    avg_entropy = 0.0
    if region_posterior is not None:
        avg_entropy = float(binary_entropy(region_posterior).mean())

    return RouteDiagnostics(
        eps_calibration=eps_cal,
        dominance_rate=dominance_rate,
        suboptimality_eps=eps_sub,
        certified_eps=max(eps_cal, dominance_rate, eps_sub),
        misroute_rate=misroute,
        avg_entropy=avg_entropy,
        bins=used,
    )
