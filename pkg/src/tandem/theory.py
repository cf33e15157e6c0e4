"""Numerical verification of the framework's guarantees.

Everything here treats a bound as a falsifiable prediction: build a
fixture where the hypotheses hold with certified constants, measure the
quantity, and compare. Curvature constants for logistic objectives are
certified rather than estimated; per-instance logits are linear in the
parameters, so their absolute maximum over a convex hull of parameter
points is attained at the hull's vertices, which makes the reported
strong-convexity constants exact over the probed region.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import behavior, synthdata
from .errors import AtOptimumError, BoundViolationError, ConfigError
from .learn import Objective, minimize_gd, sigmoid

TWO_LOG_2 = 2.0 * np.log(2.0)


def alignment_sensitivity(alpha: float) -> float:
    """Slope of human-model disagreement in model prediction loss.

    Under conditional independence of human and model errors, the
    disagreement rate is alpha * L + (1 - alpha) * (1 - L), linear in
    the model loss L with slope 2 * alpha - 1.
    """
    return 2.0 * float(alpha) - 1.0


def scalar_curvature(z):
    """Second derivative of the logistic loss at margin z: s(z) s(-z)."""
    s = sigmoid(z)
    return s * (1.0 - s)


@dataclass(frozen=True)
class CurvatureBounds:
    """Certified eigenvalue range for a logistic objective's Hessian.

    Valid at every parameter point in the convex hull of the probe
    points used to compute the max absolute logit.
    """

    b_max: float
    gamma: float
    max_logit: float
    lam: float
    lambda_max: float
    lambda_min: float


def curvature_bounds(X, lam: float, probe_thetas, weights=None) -> CurvatureBounds:
    """Hessian eigenvalue bounds for a weight-normalized logistic loss.

    X must already contain any intercept column; the l2 term lam is
    assumed uniform over all coordinates. probe_thetas are parameter
    points whose convex hull delimits where the bounds are claimed.
    """
    X = np.asarray(X, dtype=float)
    n = X.shape[0]
    w = np.ones(n) if weights is None else np.asarray(weights, dtype=float)
    if w.shape != (n,) or np.any(w < 0) or w.sum() <= 0:
        raise ConfigError("weights", "expected nonnegative weights with positive sum")
    support = w > 0
    wn = w / w.sum()
    second_moment = (X * wn[:, None]).T @ X
    gamma = float(np.linalg.eigvalsh(second_moment)[0])
    b_max = float(np.sqrt((X[support] ** 2).sum(axis=1).max()))
    m = 0.0
    for theta in probe_thetas:
        m = max(m, float(np.abs(X[support] @ np.asarray(theta, dtype=float)).max()))
    lam = float(lam)
    return CurvatureBounds(
        b_max=b_max, gamma=gamma, max_logit=m, lam=lam,
        lambda_max=b_max * b_max / 4.0 + lam,
        lambda_min=float(scalar_curvature(m)) * gamma + lam,
    )


def logistic_objective(X, targets, lam: float, weights=None, denom=None) -> Objective:
    """Weight-normalized logistic loss with uniform l2 on all coordinates.

    Unlike the production trainer this regularizes every coordinate, so
    its Hessian is exactly the data curvature plus lam * I and the
    certified bounds above apply without correction. Append a ones
    column to X to model an intercept.
    """
    X = np.asarray(X, dtype=float)
    t = np.asarray(targets, dtype=float)
    n = X.shape[0]
    w = np.ones(n) if weights is None else np.asarray(weights, dtype=float)
    scale = float(w.sum()) if denom is None else float(denom)
    if scale <= 0:
        raise ConfigError("weights", "normalization mass must be positive")
    tw = t * w

    def value(theta):
        m = t * (X @ theta)
        return float(np.dot(w, np.logaddexp(0.0, -m)) / scale
                     + 0.5 * lam * np.dot(theta, theta))

    def value_and_grad(theta):
        m = t * (X @ theta)
        val = float(np.dot(w, np.logaddexp(0.0, -m)) / scale
                    + 0.5 * lam * np.dot(theta, theta))
        dm = -sigmoid(-m) * tw / scale
        return val, X.T @ dm + lam * theta

    return Objective(value, value_and_grad)


def quadratic_objective(center, hess) -> Objective:
    """0.5 (theta - c)^T H (theta - c); hess may be a scalar multiple of I."""
    c = np.asarray(center, dtype=float)
    H = np.asarray(hess, dtype=float)
    if H.ndim == 0:
        H = float(H) * np.eye(c.size)

    def value(theta):
        d = theta - c
        return 0.5 * float(d @ H @ d)

    def value_and_grad(theta):
        d = theta - c
        return 0.5 * float(d @ H @ d), H @ d

    return Objective(value, value_and_grad)


def combine_objectives(terms) -> Objective:
    """Fixed linear combination sum_k c_k * objective_k."""
    terms = [(float(c), o) for c, o in terms]

    def value(theta):
        return float(sum(c * o.value(theta) for c, o in terms))

    def value_and_grad(theta):
        total, grad = 0.0, np.zeros_like(np.asarray(theta, dtype=float))
        for c, o in terms:
            v, g = o.value_and_grad(theta)
            total += c * v
            grad += c * g
        return float(total), grad

    return Objective(value, value_and_grad)


def two_center_min(w1: float, w2: float, a, b):
    """Minimizer and value of w1 ||t - a||^2 + w2 ||t - b||^2.

    The minimizer is the weighted average of the centers and the value
    is w1 w2 / (w1 + w2) times the squared center separation.
    """
    if w1 < 0 or w2 < 0 or w1 + w2 <= 0:
        raise ConfigError("w1/w2", "weights must be nonnegative with positive sum")
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ConfigError("a/b", f"center shapes differ: {a.shape} vs {b.shape}")
    theta = (w1 * a + w2 * b) / (w1 + w2)
    value = w1 * w2 / (w1 + w2) * float(np.dot(a - b, a - b))
    return theta, value


@dataclass(frozen=True)
class TradeoffReport:
    """Unit tradeoff at one parameter point versus its certified floor.

    t_unit is the analytic ratio (complementarity loss increase per
    unit alignment loss decrease along steepest alignment descent);
    t_finite is the same ratio measured by finite steps and
    extrapolated to zero step. The floor only binds when
    hypotheses_ok, i.e. when the gradients actually oppose.
    """

    theta: np.ndarray
    t_unit: float
    t_finite: float
    cos_phi: float
    d_align: float
    d_comp: float
    lambda_ratio: float
    kappa: float
    lower_bound: float
    hypotheses_ok: bool
    margin: float


def unit_tradeoff(loss_align: Objective, loss_comp: Objective, theta, *,
                  theta_star_align, theta_star_comp, lambda_min_comp: float,
                  lambda_max_align: float, kappa: float = 1.0,
                  eps_sequence=(1e-3, 5e-4, 2.5e-4),
                  grad_tol: float = 1e-10) -> TradeoffReport:
    """Measure the local alignment-complementarity exchange rate.

    lambda_min_comp / lambda_max_align are curvature constants of the
    two losses (certified elsewhere); kappa rescales the floor when
    loss_align is a disagreement loss rather than a prediction loss.
    Raises AtOptimumError when the alignment gradient vanishes, where
    the ratio is undefined.
    """
    theta = np.asarray(theta, dtype=float)
    if not 0.0 < kappa <= 1.0:
        raise ConfigError("kappa", f"expected a value in (0, 1], got {kappa!r}")
    va, ga = loss_align.value_and_grad(theta)
    vc, gc = loss_comp.value_and_grad(theta)
    ga_norm = float(np.linalg.norm(ga))
    gc_norm = float(np.linalg.norm(gc))
    if ga_norm <= grad_tol:
        raise AtOptimumError("alignment gradient vanishes; tradeoff undefined")
    t_unit = -float(np.dot(gc, ga)) / (ga_norm * ga_norm)

    u = ga / ga_norm
    eps = sorted(eps_sequence, reverse=True)
    ratios = []
    for e in eps:
        shifted = theta - e * u
        dc = loss_comp.value(shifted) - vc
        da = loss_align.value(shifted) - va
        if da >= 0:
            continue
        ratios.append((e, dc / (-da)))
    if len(ratios) >= 2:
        (e1, r1), (e2, r2) = ratios[-2], ratios[-1]
        slope = (r1 - r2) / (e1 - e2)
        t_finite = r2 - slope * e2
    elif ratios:
        t_finite = ratios[-1][1]
    else:
        t_finite = float("nan")

    cos_phi = float(np.dot(ga, gc)) / (ga_norm * gc_norm) if gc_norm > 0 else 0.0
    d_align = float(np.linalg.norm(theta - np.asarray(theta_star_align, dtype=float)))
    d_comp = float(np.linalg.norm(theta - np.asarray(theta_star_comp, dtype=float)))
    lambda_ratio = lambda_min_comp / lambda_max_align
    hypotheses_ok = (-cos_phi > 0.0 and d_align > 0.0
                     and np.isfinite(lambda_ratio) and lambda_ratio > 0.0)
    lower_bound = (lambda_ratio / kappa) * (d_comp / d_align) * (-cos_phi) \
        if d_align > 0 else float("inf")
    return TradeoffReport(
        theta=theta, t_unit=t_unit, t_finite=t_finite, cos_phi=cos_phi,
        d_align=d_align, d_comp=d_comp, lambda_ratio=lambda_ratio, kappa=kappa,
        lower_bound=lower_bound, hypotheses_ok=hypotheses_ok,
        margin=t_unit - lower_bound,
    )


@dataclass(frozen=True)
class GainReport:
    """Adaptive-over-single gain against its curvature floor."""

    single_loss: float
    adaptive_loss: float
    gain: float
    bound: float
    margin: float
    separation: float
    p: float
    mu: float
    kappa: float
    theta_align: np.ndarray
    theta_comp: np.ndarray
    theta_single: np.ndarray


def adaptive_gain(loss_align: Objective, loss_comp: Objective, p: float, *,
                  mu: float, kappa: float = 1.0, theta0, tol: float = 1e-12,
                  max_iters: int = 200_000, check: bool = True) -> GainReport:
    """Gain of per-region minimizers over the best population-weighted model.

    mu is the strong-convexity modulus of the underlying prediction
    losses and kappa the human-accuracy factor; the floor is
    kappa * mu * p * (1 - p) * D^2 / 2 with D the separation between
    the two specialist optima. With check=True a floor violation beyond
    1e-8 raises, since it would falsify the convexity certification.
    """
    if not 0.0 <= p <= 1.0:
        raise ConfigError("p", f"expected a value in [0, 1], got {p!r}")
    if mu <= 0:
        raise ConfigError("mu", f"expected a positive value, got {mu!r}")
    theta0 = np.asarray(theta0, dtype=float)
    mixture = combine_objectives([(p, loss_align), (1.0 - p, loss_comp)])
    theta_a, info_a = minimize_gd(loss_align, theta0, max_iters=max_iters, tol=tol)
    theta_c, info_c = minimize_gd(loss_comp, theta0, max_iters=max_iters, tol=tol)
    theta_s, info_s = minimize_gd(mixture, theta0, max_iters=max_iters, tol=tol)
    adaptive = p * info_a.value + (1.0 - p) * info_c.value
    gain = info_s.value - adaptive
    d = float(np.linalg.norm(theta_a - theta_c))
    bound = kappa * mu * p * (1.0 - p) * d * d / 2.0
    margin = gain - bound
    if check and margin < -1e-8:
        raise BoundViolationError(
            f"adaptive gain {gain} fell below its floor {bound} by {-margin}")
    return GainReport(single_loss=info_s.value, adaptive_loss=adaptive,
                      gain=gain, bound=bound, margin=margin, separation=d,
                      p=p, mu=mu, kappa=kappa, theta_align=theta_a,
                      theta_comp=theta_c, theta_single=theta_s)


@dataclass(frozen=True)
class UncertainGain:
    """Gain floors degraded by region uncertainty.

    The additive floor assumes losses rescaled into [0, 1]; the
    multiplicative floor applies when the swap penalty (extra loss from
    evaluating each specialist on the other region) does not exceed the
    ideal measured gain.
    """

    rho_cap: float
    additive_bound: float
    multiplicative_bound: float
    applicable: bool


def gain_under_uncertainty(report: GainReport, avg_entropy: float,
                           swap_penalty: float) -> UncertainGain:
    """Degrade an ideal gain floor by an entropy cap on misrouting."""
    if avg_entropy < 0:
        raise ConfigError("avg_entropy", f"expected >= 0, got {avg_entropy!r}")
    rho_cap = avg_entropy / TWO_LOG_2
    return UncertainGain(
        rho_cap=rho_cap,
        additive_bound=report.bound - rho_cap,
        multiplicative_bound=(1.0 - rho_cap) * report.bound,
        applicable=bool(swap_penalty <= report.gain),
    )


# ---------------------------------------------------------------------------
# Bound suite: one deterministic, self-certifying check per guarantee.


@dataclass(frozen=True)
class BoundCheck:
    name: str
    passed: bool
    measured: float
    bound: float
    margin: float
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": bool(self.passed),
                "measured": float(self.measured), "bound": float(self.bound),
                "margin": float(self.margin), "detail": self.detail}


def _check_reliance_linearity(rng) -> BoundCheck:
    """Disagreement rate vs its linear form under independent errors."""
    n = 400_000
    worst = None
    for alpha, loss in ((0.8, 0.3), (0.6, 0.45), (0.95, 0.1)):
        human_correct = rng.random(n) < alpha
        model_correct = rng.random(n) < 1.0 - loss
        emp = float((human_correct != model_correct).mean())
        pred = alpha * loss + (1.0 - alpha) * (1.0 - loss)
        spread = 3.0 * float(np.sqrt(pred * (1.0 - pred) / n))
        slack = spread - abs(emp - pred)
        if worst is None or slack < worst[0]:
            worst = (slack, emp, pred, alpha, loss)
    slack, emp, pred, alpha, loss = worst
    return BoundCheck(
        name="reliance-linearity-mc", passed=slack >= 0.0, measured=emp,
        bound=pred, margin=slack,
        detail=f"worst pair alpha={alpha} loss={loss}; |diff| vs 3 sigma window")


def _tradeoff_margin_over_probes(loss_a, loss_c, probes, *, theta_a, theta_c,
                                 lam_min_fn, lam_max):
    margins = []
    for theta in probes:
        try:
            rep = unit_tradeoff(loss_a, loss_c, theta,
                                theta_star_align=theta_a, theta_star_comp=theta_c,
                                lambda_min_comp=lam_min_fn(theta),
                                lambda_max_align=lam_max)
        except AtOptimumError:
            continue
        if rep.hypotheses_ok:
            margins.append(rep.margin)
    return margins


def _check_tradeoff_quadratic(rng) -> BoundCheck:
    """Floor at random points of random strongly convex quadratic pairs."""
    margins = []
    for _ in range(6):
        d = int(rng.integers(2, 5))
        a, b = rng.normal(size=d), rng.normal(size=d)
        qa = rng.normal(size=(d, d))
        qc = rng.normal(size=(d, d))
        A = qa.T @ qa + 0.3 * np.eye(d)
        C = qc.T @ qc + 0.3 * np.eye(d)
        loss_a = quadratic_objective(a, A)
        loss_c = quadratic_objective(b, C)
        lam_max = float(np.linalg.eigvalsh(A)[-1])
        lam_min = float(np.linalg.eigvalsh(C)[0])
        probes = [a + t * (b - a) + rng.normal(scale=0.2, size=d)
                  for t in np.linspace(0.05, 0.95, 40)]
        margins += _tradeoff_margin_over_probes(
            loss_a, loss_c, probes, theta_a=a, theta_c=b,
            lam_min_fn=lambda theta: lam_min, lam_max=lam_max)
    worst = min(margins)
    return BoundCheck(
        name="tradeoff-bound-quadratic", passed=(worst >= -1e-8
                                                 and len(margins) >= 100),
        measured=worst, bound=0.0, margin=worst,
        detail=f"{len(margins)} probe points with opposing gradients")


def _college_theory_objectives(seed, *, n=400, lam=0.05):
    data = synthdata.generate(synthdata.GenConfig(n=n, seed=seed))
    ft = behavior.ThresholdDist.uniform(0.0, 1.0)
    w_high, w_low = behavior.region_weights(data.conf_h, ft)
    X = np.column_stack([data.x_gpa, data.x_score, np.ones(n)])
    loss_a = logistic_objective(X, data.y_h, lam, weights=w_high)
    loss_c = logistic_objective(X, data.y, lam, weights=w_low)
    return data, ft, X, w_high, w_low, loss_a, loss_c, lam


def _check_tradeoff_logistic(rng) -> BoundCheck:
    """Floor along the path between trained logistic specialists."""
    _, _, X, w_high, w_low, loss_a, loss_c, lam = _college_theory_objectives(11)
    theta_a, _ = minimize_gd(loss_a, np.zeros(3), max_iters=200_000, tol=1e-11)
    theta_c, _ = minimize_gd(loss_c, np.zeros(3), max_iters=200_000, tol=1e-11)
    lam_max = curvature_bounds(X, lam, [theta_a], weights=w_high).lambda_max

    def lam_min_at(theta):
        # strong convexity certified on the segment to the comp optimum
        return curvature_bounds(X, lam, [theta, theta_c], weights=w_low).lambda_min

    probes = [theta_a + t * (theta_c - theta_a)
              for t in np.linspace(0.08, 0.98, 80)]
    probes += [theta_a + t * (theta_c - theta_a) + rng.normal(scale=0.15, size=3)
               for t in rng.uniform(0.1, 0.95, size=80)]
    margins = _tradeoff_margin_over_probes(
        loss_a, loss_c, probes, theta_a=theta_a, theta_c=theta_c,
        lam_min_fn=lam_min_at, lam_max=lam_max)
    worst = min(margins)
    return BoundCheck(
        name="tradeoff-bound-logistic", passed=(worst >= -1e-8
                                                and len(margins) >= 100),
        measured=worst, bound=0.0, margin=worst,
        detail=f"{len(margins)} valid probes on admissions fixtures")


def _check_gain_quadratic_equality(rng) -> BoundCheck:
    """Isotropic equal-curvature quadratics make the gain floor exact."""
    mu, p = 0.7, 0.35
    a, b = rng.normal(size=3), rng.normal(size=3)
    rep = adaptive_gain(quadratic_objective(a, mu), quadratic_objective(b, mu),
                        p, mu=mu, theta0=np.zeros(3), tol=1e-13)
    gap = abs(rep.gain - rep.bound)
    return BoundCheck(
        name="gain-quadratic-equality", passed=gap <= 1e-10,
        measured=rep.gain, bound=rep.bound, margin=1e-10 - gap,
        detail="kappa=1 equal isotropic curvature; floor must be tight")


def _check_gain_quadratic_kappa(rng) -> BoundCheck:
    """Scaled alignment loss: floor slack must match the exact two-center value."""
    mu, p, kappa = 0.9, 0.4, 0.55
    a, b = rng.normal(size=3), rng.normal(size=3)
    rep = adaptive_gain(quadratic_objective(a, kappa * mu),
                        quadratic_objective(b, mu),
                        p, mu=mu, kappa=kappa, theta0=np.zeros(3), tol=1e-13)
    d2 = float(np.dot(a - b, a - b))
    exact = 0.5 * mu * p * kappa * (1.0 - p) * d2 / (p * kappa + 1.0 - p)
    formula_gap = abs(rep.gain - exact)
    return BoundCheck(
        name="gain-bound-quadratic-kappa",
        passed=rep.margin >= -1e-8 and formula_gap <= 1e-10,
        measured=rep.gain, bound=rep.bound, margin=rep.margin,
        detail=f"exact two-center gain {exact:.12f}, measured gap {formula_gap:.2e}")


def _check_gain_logistic(rng) -> BoundCheck:
    """Floor on trained admissions specialists with certified curvature."""
    data, ft, X, w_high, w_low, loss_a, loss_c, lam = _college_theory_objectives(29)
    theta0 = np.zeros(3)
    p = float(w_high.mean())
    mixture = combine_objectives([(p, loss_a), (1.0 - p, loss_c)])
    theta_a, _ = minimize_gd(loss_a, theta0, max_iters=200_000, tol=1e-11)
    theta_c, _ = minimize_gd(loss_c, theta0, max_iters=200_000, tol=1e-11)
    theta_s, _ = minimize_gd(mixture, theta0, max_iters=200_000, tol=1e-11)
    hull = [theta_a, theta_c, theta_s]
    mu = min(curvature_bounds(X, lam, hull, weights=w_high).lambda_min,
             curvature_bounds(X, lam, hull, weights=w_low).lambda_min)
    rep = adaptive_gain(loss_a, loss_c, p, mu=mu, theta0=theta0, tol=1e-11)
    return BoundCheck(
        name="gain-bound-logistic", passed=rep.margin >= -1e-8,
        measured=rep.gain, bound=rep.bound, margin=rep.margin,
        detail=f"certified mu={mu:.6f}, p={p:.4f}, D={rep.separation:.4f}")


def _check_misroute_entropy_grid() -> BoundCheck:
    """rho(p) <= H(p) / (2 log 2) over a dense grid, tight only at 1/2."""
    from .ensemble import binary_entropy
    p = np.linspace(0.0, 1.0, 1_000_001)
    rho = np.minimum(p, 1.0 - p)
    cap = binary_entropy(p) / TWO_LOG_2
    slack = cap - rho
    worst = float(slack.min())
    ties = np.flatnonzero(np.abs(slack) < 1e-9)
    interior_ties = ties[(p[ties] > 0.0) & (p[ties] < 1.0)]
    tight_only_at_half = (interior_ties.size == 1
                          and abs(p[interior_ties[0]] - 0.5) < 1e-12)
    return BoundCheck(
        name="misroute-entropy-grid",
        passed=worst >= -1e-12 and tight_only_at_half,
        measured=worst, bound=0.0, margin=worst,
        detail="1e6+1 grid; interior equality exactly at p=0.5")


def _check_two_center_grid(rng) -> BoundCheck:
    """Closed-form weighted two-center minimum versus brute-force search."""
    worst = np.inf
    for _ in range(3):
        w1, w2 = rng.uniform(0.2, 3.0, size=2)
        a, b = rng.normal(size=2), rng.normal(size=2)
        theta_hat, val = two_center_min(w1, w2, a, b)
        lo = np.minimum(a, b) - 0.5
        hi = np.maximum(a, b) + 0.5
        gx = np.linspace(lo[0], hi[0], 401)
        gy = np.linspace(lo[1], hi[1], 401)
        GX, GY = np.meshgrid(gx, gy)
        vals = (w1 * ((GX - a[0]) ** 2 + (GY - a[1]) ** 2)
                + w2 * ((GX - b[0]) ** 2 + (GY - b[1]) ** 2))
        grid_min = float(vals.min())
        # the analytic value can undercut the grid by at most the cell curvature
        h = max((hi[0] - lo[0]) / 400, (hi[1] - lo[1]) / 400)
        resolution = (w1 + w2) * h * h
        slack = min(grid_min - val + 1e-12, resolution - (grid_min - val))
        worst = min(worst, slack)
    return BoundCheck(
        name="two-center-grid", passed=worst >= 0.0, measured=worst, bound=0.0,
        margin=worst, detail="analytic min below every grid value, gap within resolution")


def _check_team_loss_identity(rng) -> BoundCheck:
    """Closed-form expected team loss vs Monte Carlo decision sampling."""
    draws, n = 100_000, 32
    worst = None
    for k in range(200):
        y = np.where(rng.random(n) < 0.5, 1, -1).astype(np.int8)
        y_h = np.where(rng.random(n) < 0.3, -y, y).astype(np.int8)
        y_m = np.where(rng.random(n) < 0.4, -y, y).astype(np.int8)
        conf = rng.random(n)
        if k % 2 == 0:
            ft = behavior.ThresholdDist.point(float(rng.uniform(0.1, 0.9)))
        else:
            lo, hi = np.sort(rng.uniform(0.0, 1.0, size=2))
            ft = behavior.ThresholdDist.uniform(float(lo), float(hi) + 1e-3)
        r = float(rng.random())
        analytic = behavior.expected_team_loss(y, y_h, y_m, conf, ft, r)
        decisions = behavior.simulate_team_decisions(y_h, y_m, conf, ft, r,
                                                     draws, rng)
        per_draw = (decisions != y[None, :]).mean(axis=1)
        mc = float(per_draw.mean())
        stderr = float(per_draw.std(ddof=1) / np.sqrt(draws))
        slack = 3.0 * stderr - abs(mc - analytic)
        if worst is None or slack < worst[0]:
            worst = (slack, mc, analytic)
    slack, mc, analytic = worst
    return BoundCheck(
        name="team-loss-identity-mc", passed=slack >= 0.0, measured=mc,
        bound=analytic, margin=slack,
        detail="200 random tuples, 1e5 decision draws each, 3 sigma windows")


def run_bound_suite(seed: int = 0) -> list[BoundCheck]:
    """Run every guarantee check; deterministic for a fixed seed."""
    root = np.random.SeedSequence(seed)
    rngs = [np.random.default_rng(s) for s in root.spawn(8)]
    return [
        _check_reliance_linearity(rngs[0]),
        _check_tradeoff_quadratic(rngs[1]),
        _check_tradeoff_logistic(rngs[2]),
        _check_gain_quadratic_equality(rngs[3]),
        _check_gain_quadratic_kappa(rngs[4]),
        _check_gain_logistic(rngs[5]),
        _check_misroute_entropy_grid(),
        _check_two_center_grid(rngs[6]),
        _check_team_loss_identity(rngs[7]),
    ]
