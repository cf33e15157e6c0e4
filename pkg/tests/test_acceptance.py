"""End-to-end acceptance gate.

Each test is one falsifiable claim about the whole system, run at the
full study protocol (n=5000, 10 trials per grid value). The suite is
deliberately slow-ish (a few minutes); everything else in tests/ gives
fast feedback, this file decides whether the package does what it says.
"""

import hashlib
import math

import numpy as np
import pytest
from scipy.stats import spearmanr

from tandem import numdiff, theory
from tandem.behavior import ThresholdDist
from tandem.ensemble import binary_entropy
from tandem.harness import ExperimentConfig, run_paradigm_comparison, sweep, \
    tradeoff_sweep, verify_all
from tandem.learn import (
    behavior_aware_objective,
    fixed_weight_objective,
    weighted_objective,
)
from tandem.synthdata import GenConfig, generate

SWEEP_PARADIGMS = ("standard", "aligned", "complementary",
                   "adaptive_oracle", "adaptive_rrs")
STUDY = ExperimentConfig(gen=GenConfig(n=5000), trials=10,
                         paradigms=SWEEP_PARADIGMS)


def mean_oracle_gain(result):
    """Grid-value means of the adaptive ensemble's gain over the best single."""
    means = []
    for value in result.grid:
        gains = [c.gains["adaptive_oracle"] for c in result.cells
                 if c.value == value]
        means.append(float(np.mean(gains)))
    return np.asarray(means)


@pytest.fixture(scope="module")
def bound_report():
    return verify_all(seed=0)


@pytest.fixture(scope="module")
def delta_sweep():
    return sweep(STUDY, "delta", (0.0, 0.1, 0.2, 0.3, 0.4, 0.5))


@pytest.fixture(scope="module")
def alpha_sweep():
    return sweep(STUDY, "alpha", (0.5, 0.6, 0.7, 0.8, 0.9, 1.0))


@pytest.fixture(scope="module")
def p_sweep():
    return sweep(STUDY, "p", (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9))


@pytest.fixture(scope="module")
def certainty_sweep():
    return sweep(STUDY, "certainty", (0.5, 0.6, 0.7, 0.8, 0.9, 1.0))


@pytest.fixture(scope="module")
def tradeoff_curves():
    return tradeoff_sweep(ExperimentConfig(gen=GenConfig(n=5000)),
                          p_grid=(0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99),
                          alphas=(1.0, 0.75), rel_step=0.25, trials=5)


@pytest.fixture(scope="module")
def comparison():
    return run_paradigm_comparison(ExperimentConfig())


def test_criterion_01_every_bound_holds(bound_report):
    for check in bound_report.checks:
        assert check.passed, f"{check.name} failed: margin {check.margin}"
    assert len(bound_report.checks) == 9
    assert bound_report.all_passed
    assert bound_report.runtime_s < 300.0


def test_criterion_02_gain_rises_with_rule_divergence(delta_sweep):
    grid = np.asarray(delta_sweep.grid)
    means = mean_oracle_gain(delta_sweep)
    rho = float(spearmanr(grid, means)[0])
    assert rho >= 0.9, f"spearman {rho:.4f}, means {means.round(4)}"
    assert abs(means[0]) <= 0.01, f"gain at zero divergence {means[0]:.4f}"


def test_criterion_03_gain_rises_with_judge_accuracy(alpha_sweep):
    grid = np.asarray(alpha_sweep.grid)
    means = mean_oracle_gain(alpha_sweep)
    rho = float(spearmanr(grid, means)[0])
    assert rho >= 0.9, f"spearman {rho:.4f}, means {means.round(4)}"


def test_criterion_04_gain_peaks_at_balanced_mixture(p_sweep):
    grid = np.asarray(p_sweep.grid)
    means = mean_oracle_gain(p_sweep)
    peak = float(grid[int(np.argmax(means))])
    assert 0.4 <= peak <= 0.6, f"peak at p={peak}, means {means.round(4)}"


def test_criterion_05_gain_tracks_region_certainty(certainty_sweep):
    grid = np.asarray(certainty_sweep.grid)
    means = mean_oracle_gain(certainty_sweep)
    x = 1.0 - binary_entropy(grid) / (2.0 * np.log(2.0))
    slope, intercept = np.polyfit(x, means, 1)
    pred = slope * x + intercept
    ss_res = float(np.sum((means - pred) ** 2))
    ss_tot = float(np.sum((means - means.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot
    assert slope > 0.0, f"slope {slope:.4f}"
    assert r2 >= 0.8, f"r2 {r2:.4f}, means {means.round(4)}"


def test_criterion_06_specialization_pressure_curves(tradeoff_curves):
    curve = {(r["p"], r["alpha"]): r["tradeoff"] for r in tradeoff_curves.rows}
    ratio = curve[(0.99, 1.0)] / curve[(0.5, 1.0)]
    assert ratio >= 3.0, f"pressure ratio {ratio:.2f}"
    for p in (0.9, 0.95, 0.99):
        assert curve[(p, 0.75)] > curve[(p, 1.0)], (
            f"imperfect-judge curve fell below at p={p}: "
            f"{curve[(p, 0.75)]:.3f} vs {curve[(p, 1.0)]:.3f}")


def test_criterion_07_paradigm_ordering(comparison):
    rows = {r["paradigm"]: r for r in comparison.rows}
    team = {name: rows[name]["team_accuracy"] for name in rows}
    eps = float(np.mean([c.diagnostics.certified_eps for c in comparison.cells]))
    assert team["adaptive_rrs"] >= team["adaptive_oracle"] - eps, (
        f"rrs {team['adaptive_rrs']:.4f} vs oracle {team['adaptive_oracle']:.4f}"
        f" - eps {eps:.4f}")
    assert team["adaptive_oracle"] > team["behavior_aware"] > team["standard"], (
        f"ordering broken: {team}")
    assert team["adaptive_oracle"] >= team["standard"] + 0.02, (
        f"adaptive edge {team['adaptive_oracle'] - team['standard']:.4f}")


def test_criterion_08_confidence_routing_stays_near_oracle(
        delta_sweep, alpha_sweep, p_sweep, certainty_sweep):
    worst = math.inf
    for result in (delta_sweep, alpha_sweep, p_sweep, certainty_sweep):
        for cell in result.cells:
            rrs = cell.metrics["adaptive_rrs"]
            oracle = cell.metrics["adaptive_oracle"]
            noise = 3.0 * math.hypot(rrs.team_stderr, oracle.team_stderr)
            slack = cell.diagnostics.certified_eps + noise
            margin = rrs.team_accuracy - (oracle.team_accuracy - slack)
            worst = min(worst, margin)
            assert margin >= 0.0, (
                f"{result.axis}={cell.value} trial {cell.trial}: rrs "
                f"{rrs.team_accuracy:.4f} below oracle {oracle.team_accuracy:.4f}"
                f" - {slack:.4f}")
    assert worst < math.inf


def test_criterion_09_sweeps_are_bit_reproducible(tmp_path):
    cfg = ExperimentConfig(gen=GenConfig(n=1200), trials=2,
                           paradigms=("standard", "aligned",
                                      "adaptive_oracle", "adaptive_rrs"))

    def digest(cfg, name):
        path = tmp_path / name
        sweep(cfg, "delta", (0.1, 0.3)).to_csv(path)
        return hashlib.sha256(path.read_bytes()).hexdigest()

    first = digest(cfg, "a.csv")
    second = digest(cfg, "b.csv")
    assert first == second
    pooled = digest(cfg.with_updates(workers=2), "c.csv")
    assert pooled == first


def test_criterion_10_derivatives_match_finite_differences():
    ft = ThresholdDist.uniform(0.0, 1.0)
    data = generate(GenConfig(n=300, seed=13))
    X = data.features
    rng = np.random.default_rng(99)
    w = rng.uniform(0.1, 2.0, size=len(data))
    objectives = [
        weighted_objective(X, data.y, w, 0.02),
        weighted_objective(X, data.y_h, np.ones(len(data)), 0.0),
        fixed_weight_objective(data, ft, 0.4, 0.01),
        behavior_aware_objective(data, ft, 0.01),
        theory.logistic_objective(np.hstack([X, np.ones((len(data), 1))]),
                                  data.y, 0.05),
    ]
    for i in range(20):
        obj = objectives[i % len(objectives)]
        theta = rng.normal(size=X.shape[1] + 1)
        _, g = obj.value_and_grad(theta)
        g_num = numdiff.gradient(obj.value, theta)
        rel = float(np.linalg.norm(g - g_num)) / max(1.0, float(np.linalg.norm(g)))
        assert rel <= 1e-6, f"objective {i % len(objectives)}: rel err {rel:.2e}"

    Xb = np.hstack([X[:80], np.ones((80, 1))])
    t = data.y[:80]
    lam = 0.05
    obj = theory.logistic_objective(Xb, t, lam)
    for _ in range(10):
        theta = rng.normal(size=Xb.shape[1]) * 0.5  # keeps logits in a sane range
        cb = theory.curvature_bounds(Xb, lam, [theta])
        eigs = np.linalg.eigvalsh(numdiff.hessian(obj.value, theta))
        assert eigs[0] >= cb.lambda_min - 1e-8, f"{eigs[0]} < {cb.lambda_min}"
        assert eigs[-1] <= cb.lambda_max + 1e-8, f"{eigs[-1]} > {cb.lambda_max}"
