"""Regularized logistic specialists and the team-aware trainer.

All models are linear scorers with an unregularized bias trained by
full-batch gradient descent with Armijo backtracking. Region membership
enters as per-instance threshold weights, never as hard data splits, so
every trainer sees the full sample.

Labels are +1/-1 throughout. Objectives normalize by total instance
weight unless stated otherwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import behavior
from .errors import (ConfigError, DegenerateObjectiveError,
                     OptimizationDivergedError)

TARGET_KINDS = ("ground_truth", "human_pseudo_labels")


def sigmoid(z):
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def logistic_loss(margins):
    """Elementwise log(1 + exp(-m)), stable for any finite margin."""
    return np.logaddexp(0.0, -np.asarray(margins, dtype=float))


@dataclass
class LinearModel:
    """Linear scorer over (gpa, score) features."""

    weights: np.ndarray
    bias: float
    meta: dict = field(default_factory=dict)

    def logits(self, X) -> np.ndarray:
        return np.asarray(X, dtype=float) @ self.weights + self.bias

    def predict_proba(self, X) -> np.ndarray:
        """P[y = +1 | x]."""
        return sigmoid(self.logits(X))

    def predict(self, X) -> np.ndarray:
        # ties at the boundary go to +1
        return np.where(self.logits(X) >= 0.0, 1, -1).astype(np.int8)

    def confidence(self, X) -> np.ndarray:
        """Confidence in the predicted class, max(p, 1-p) in [0.5, 1]."""
        p = self.predict_proba(X)
        return np.maximum(p, 1.0 - p)

    def to_dict(self) -> dict:
        return {"weights": [float(w) for w in self.weights],
                "bias": float(self.bias), "meta": dict(self.meta)}

    @classmethod
    def from_dict(cls, d: dict) -> "LinearModel":
        return cls(weights=np.asarray(d["weights"], dtype=float),
                   bias=float(d["bias"]), meta=dict(d.get("meta", {})))

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "LinearModel":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


@dataclass(frozen=True)
class TrainSpec:
    """Options for the generic trainer."""

    l2: float = 1e-3
    max_iters: int = 10_000
    tol: float = 1e-8
    targets: str = "ground_truth"
    weights: np.ndarray | None = None
    restarts: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.l2 < 0:
            raise ConfigError("l2", f"expected a nonnegative value, got {self.l2!r}")
        if self.tol <= 0:
            raise ConfigError("tol", f"expected a positive value, got {self.tol!r}")
        if self.max_iters < 1:
            raise ConfigError("max_iters", f"expected >= 1, got {self.max_iters!r}")
        if self.targets not in TARGET_KINDS:
            raise ConfigError("targets", f"expected one of {TARGET_KINDS}, got {self.targets!r}")
        if self.restarts < 1:
            raise ConfigError("restarts", f"expected >= 1, got {self.restarts!r}")


@dataclass(frozen=True)
class Objective:
    """Smooth objective exposed as value-only and value-with-gradient."""

    value: callable
    value_and_grad: callable


@dataclass(frozen=True)
class MinimizeInfo:
    value: float
    grad_norm: float
    iterations: int
    converged: bool
    # why iteration stopped: gradient | stall | no_step | max_iters
    reason: str = "gradient"


def _check_weights(weights, n):
    w = np.asarray(weights, dtype=float)
    if w.shape != (n,):
        raise ConfigError("weights", f"expected shape ({n},), got {w.shape}")
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        raise ConfigError("weights", "expected finite nonnegative weights")
    if w.sum() <= 0.0:
        raise DegenerateObjectiveError("all instance weights are zero")
    return w


def weighted_objective(X, targets, weights, l2, *, denom=None) -> Objective:
    """Weighted logistic loss with an l2 penalty on the feature weights.

    Normalizes by total weight unless denom overrides it. The bias is
    the last coordinate of theta and is left unregularized.
    """
    X = np.asarray(X, dtype=float)
    t = np.asarray(targets, dtype=float)
    w = _check_weights(weights, X.shape[0])
    scale = float(w.sum()) if denom is None else float(denom)
    tw = t * w

    def value(theta):
        wt, b = theta[:-1], theta[-1]
        m = t * (X @ wt + b)
        return float(np.dot(w, np.logaddexp(0.0, -m)) / scale
                     + 0.5 * l2 * np.dot(wt, wt))

    def value_and_grad(theta):
        wt, b = theta[:-1], theta[-1]
        m = t * (X @ wt + b)
        val = float(np.dot(w, np.logaddexp(0.0, -m)) / scale
                    + 0.5 * l2 * np.dot(wt, wt))
        dm = -sigmoid(-m) * tw / scale
        grad = np.empty_like(theta)
        grad[:-1] = X.T @ dm + l2 * wt
        grad[-1] = dm.sum()
        return val, grad

    return Objective(value, value_and_grad)


def weighted_logistic_loss(model: LinearModel, X, targets, weights,
                           l2: float = 0.0) -> float:
    """Objective value of a fitted model under given targets and weights."""
    obj = weighted_objective(X, targets, weights, l2)
    return obj.value(np.append(model.weights, model.bias))


def minimize_gd(obj: Objective, theta0, *, max_iters=10_000, tol=1e-8,
                armijo=1e-4, shrink=0.5, grow=2.0):
    """Gradient descent with backtracking line search.

    Converged means the gradient norm fell to tol or below. Raises on a
    non-finite value or gradient at an accepted iterate.
    """
    theta = np.asarray(theta0, dtype=float).copy()
    val, grad = obj.value_and_grad(theta)
    if not (np.isfinite(val) and np.all(np.isfinite(grad))):
        raise OptimizationDivergedError(0)
    step = 1.0
    iterations = 0
    stalled = 0
    reason = "max_iters"
    gnorm = float(np.linalg.norm(grad))
    for iterations in range(1, max_iters + 1):
        if gnorm <= tol:
            iterations -= 1
            reason = "gradient"
            break
        gg = gnorm * gnorm
        step = min(step * grow, 1e12)
        accepted = False
        for _ in range(100):
            cand = theta - step * grad
            cval = obj.value(cand)
            if np.isfinite(cval) and cval <= val - armijo * step * gg:
                accepted = True
                break
            step *= shrink
        if not accepted:
            # no representable step decreases the objective; stop here
            reason = "no_step"
            break
        # one parabolic refinement along the ray; exact line search on
        # quadratics, and it tightens the step memory everywhere else
        denom = 2.0 * (cval - (val - step * gg))
        if denom > 0.0:
            t_star = gg * step * step / denom
            if 0.0 < t_star <= 8.0 * step:
                t_cand = theta - t_star * grad
                t_val = obj.value(t_cand)
                if np.isfinite(t_val) and t_val < cval:
                    cand, cval, step = t_cand, t_val, t_star
        # once decreases fall to fp resolution the Armijo test stops
        # discriminating, so repeated no-progress accepts mean we are done
        if val - cval <= 4.0 * np.finfo(float).eps * max(1.0, abs(val)):
            stalled += 1
            if stalled >= 3:
                reason = "stall"
                break
        else:
            stalled = 0
        theta = cand
        val, grad = obj.value_and_grad(theta)
        if not (np.isfinite(val) and np.all(np.isfinite(grad))):
            raise OptimizationDivergedError(iterations)
        gnorm = float(np.linalg.norm(grad))
    if gnorm <= tol:
        reason = "gradient"
    return theta, MinimizeInfo(value=float(val), grad_norm=gnorm,
                               iterations=iterations, converged=gnorm <= tol,
                               reason=reason)


def _restart_inits(dim, restarts, seed):
    inits = [np.zeros(dim)]
    if restarts > 1:
        children = np.random.SeedSequence(seed).spawn(restarts - 1)
        inits.extend(np.random.default_rng(c).normal(size=dim) for c in children)
    return inits


def _fit(obj: Objective, dim, *, restarts, seed, max_iters, tol):
    results = [minimize_gd(obj, t0, max_iters=max_iters, tol=tol)
               for t0 in _restart_inits(dim, restarts, seed)]
    best = int(np.argmin([info.value for _, info in results]))
    theta, info = results[best]
    return theta, info, best


def _to_model(theta, info: MinimizeInfo, *, paradigm, seed, l2, extra=None):
    meta = {"paradigm": paradigm, "seed": int(seed), "l2": float(l2),
            "objective": info.value, "grad_norm": info.grad_norm,
            "iterations": info.iterations, "converged": info.converged,
            "stop_reason": info.reason}
    if extra:
        meta.update(extra)
    return LinearModel(weights=theta[:-1].copy(), bias=float(theta[-1]), meta=meta)


def train(data, spec: TrainSpec = TrainSpec()) -> LinearModel:
    """Fit a plain weighted classifier; targets and weights come from spec."""
    X = data.features
    t = data.y if spec.targets == "ground_truth" else data.y_h
    w = np.ones(len(data)) if spec.weights is None else spec.weights
    obj = weighted_objective(X, t, w, spec.l2)
    theta, info, best = _fit(obj, X.shape[1] + 1, restarts=spec.restarts,
                             seed=spec.seed, max_iters=spec.max_iters,
                             tol=spec.tol)
    return _to_model(theta, info, paradigm="custom", seed=spec.seed, l2=spec.l2,
                     extra={"targets": spec.targets, "best_restart": best})


def _region_weight_arrays(data, ft):
    w_high, w_low = behavior.region_weights(data.conf_h, ft)
    return w_high, w_low


def train_aligned(data, ft, *, l2=1e-3, max_iters=10_000, tol=1e-8,
                  seed=0) -> LinearModel:
    """Specialist that imitates the judge where the judge is trusted.

    Targets are the judge's answers, weighted by the probability the
    instance lands above the reliance threshold.
    """
    w_high, _ = _region_weight_arrays(data, ft)
    if w_high.sum() <= 0.0:
        raise DegenerateObjectiveError("no alignment-region mass to train on")
    obj = weighted_objective(data.features, data.y_h, w_high, l2)
    theta, info, _ = _fit(obj, data.features.shape[1] + 1, restarts=1,
                          seed=seed, max_iters=max_iters, tol=tol)
    return _to_model(theta, info, paradigm="aligned", seed=seed, l2=l2)


def train_complementary(data, ft, *, l2=1e-3, max_iters=10_000, tol=1e-8,
                        seed=0) -> LinearModel:
    """Specialist for the low-confidence region, trained on ground truth."""
    _, w_low = _region_weight_arrays(data, ft)
    if w_low.sum() <= 0.0:
        raise DegenerateObjectiveError("no complementarity-region mass to train on")
    obj = weighted_objective(data.features, data.y, w_low, l2)
    theta, info, _ = _fit(obj, data.features.shape[1] + 1, restarts=1,
                          seed=seed, max_iters=max_iters, tol=tol)
    return _to_model(theta, info, paradigm="complementary", seed=seed, l2=l2)


def fixed_weight_objective(data, ft, w: float, l2: float) -> Objective:
    """Convex blend w * aligned surrogate + (1-w) * complementary surrogate."""
    if not 0.0 <= w <= 1.0:
        raise ConfigError("w", f"expected a value in [0, 1], got {w!r}")
    w_high, w_low = _region_weight_arrays(data, ft)
    X = data.features
    parts = []
    if w > 0.0:
        if w_high.sum() <= 0.0:
            raise DegenerateObjectiveError("aligned term has zero weight mass")
        parts.append((w, weighted_objective(X, data.y_h, w_high, 0.0)))
    if w < 1.0:
        if w_low.sum() <= 0.0:
            raise DegenerateObjectiveError("complementary term has zero weight mass")
        parts.append((1.0 - w, weighted_objective(X, data.y, w_low, 0.0)))

    def value(theta):
        v = sum(c * o.value(theta) for c, o in parts)
        return v + 0.5 * l2 * np.dot(theta[:-1], theta[:-1])

    def value_and_grad(theta):
        v, g = 0.0, np.zeros_like(theta)
        for c, o in parts:
            pv, pg = o.value_and_grad(theta)
            v += c * pv
            g += c * pg
        v += 0.5 * l2 * np.dot(theta[:-1], theta[:-1])
        g[:-1] += l2 * theta[:-1]
        return v, g

    return Objective(value, value_and_grad)


def train_fixed_weight(data, ft, w: float, *, l2=1e-3, max_iters=10_000,
                       tol=1e-8, seed=0) -> LinearModel:
    """Single model minimizing a fixed blend of the two surrogates."""
    obj = fixed_weight_objective(data, ft, w, l2)
    theta, info, _ = _fit(obj, data.features.shape[1] + 1, restarts=1,
                          seed=seed, max_iters=max_iters, tol=tol)
    return _to_model(theta, info, paradigm="fixed_weight", seed=seed, l2=l2,
                     extra={"w": float(w)})


def train_standard(data, ft, *, l2=1e-3, max_iters=10_000, tol=1e-8,
                   seed=0) -> LinearModel:
    """Pooled baseline: blend weight equals the empirical alignment mass.

    With that choice the blended objective collapses to a single
    threshold-weighted average over all instances, i.e. ordinary ERM on
    the pooled surrogate targets.
    """
    w_high, _ = _region_weight_arrays(data, ft)
    w = float(w_high.mean())
    model = train_fixed_weight(data, ft, w, l2=l2, max_iters=max_iters,
                               tol=tol, seed=seed)
    model.meta["paradigm"] = "standard"
    return model


def _expected_error_terms(X, targets, weights, denom):
    """Smooth stand-in for a weighted 0-1 error: the weighted mean of
    P[sign error] under the logistic link. Returns (value, value_and_grad)."""
    Xb = np.hstack([X, np.ones((X.shape[0], 1))])
    t = np.asarray(targets, dtype=float)

    def value(theta):
        s = sigmoid(-t * (Xb @ theta))
        return float(np.dot(weights, s) / denom)

    def value_and_grad(theta):
        s = sigmoid(-t * (Xb @ theta))
        coef = weights * s * (1.0 - s) * (-t) / denom
        return float(np.dot(weights, s) / denom), Xb.T @ coef

    return value, value_and_grad


def behavior_aware_objective(data, ft, l2: float) -> Objective:
    """Smooth surrogate for the expected team loss.

    Structure: complementary expected error + (judge low-region error -
    complementary expected error) * expected alignment disagreement. All
    three factors live on the probability scale, which keeps the coupling
    coefficient's sign honest: agreeing with the judge pays off exactly
    when the model is the better answerer below threshold, and costs when
    it is not.
    """
    w_high, w_low = _region_weight_arrays(data, ft)
    sw_high, sw_low = float(w_high.sum()), float(w_low.sum())
    if sw_high <= 0.0 or sw_low <= 0.0:
        raise DegenerateObjectiveError("both regions need nonzero weight mass")
    X = data.features
    n = float(len(data))
    # judge's 0-1 loss mass below threshold; a constant of the data
    l_ch = float(np.dot(w_low, (data.y_h != data.y).astype(float)) / n)
    comp_v, comp_vg = _expected_error_terms(X, data.y, w_low, n)
    dis_v, dis_vg = _expected_error_terms(X, data.y_h, w_high, sw_high)

    def value(theta):
        c = comp_v(theta)
        d = dis_v(theta)
        return c + (l_ch - c) * d + 0.5 * l2 * np.dot(theta[:-1], theta[:-1])

    def value_and_grad(theta):
        c, c_grad = comp_vg(theta)
        d, d_grad = dis_vg(theta)
        v = c + (l_ch - c) * d + 0.5 * l2 * np.dot(theta[:-1], theta[:-1])
        g = (1.0 - d) * c_grad + (l_ch - c) * d_grad
        g[:-1] += l2 * theta[:-1]
        return v, g

    return Objective(value, value_and_grad)


def train_behavior_aware(data, ft, *, l2=1e-3, max_iters=10_000, tol=1e-8,
                         restarts=5, seed=0) -> LinearModel:
    """Minimize the team-loss surrogate from random restarts.

    The objective is non-convex (a product of model-dependent factors),
    so at least three restarts are required; the best final value wins,
    ties going to the lowest restart index.
    """
    if restarts < 3:
        raise ConfigError("restarts", f"behavior-aware training needs >= 3, got {restarts}")
    obj = behavior_aware_objective(data, ft, l2)
    theta, info, best = _fit(obj, data.features.shape[1] + 1, restarts=restarts,
                             seed=seed, max_iters=max_iters, tol=tol)
    return _to_model(theta, info, paradigm="behavior_aware", seed=seed, l2=l2,
                     extra={"restarts": restarts, "best_restart": best})
