"""Experiment drivers: configs, team evaluation, sweeps, ingestion, checks.

Everything here is deterministic given the experiment seed. Per-cell
seeds are derived from (seed, axis, value, trial) so rerunning a sweep
with the same config reproduces every byte of its output, and adding a
paradigm to the list does not disturb the seeds of the others.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import time
from dataclasses import dataclass, field

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # 3.10
    import tomli as tomllib

from . import behavior, ensemble, learn, synthdata, theory
from .behavior import ThresholdDist
from .ensemble import RouteDiagnostics, RoutingPolicy
from .errors import ConfigError, DegenerateObjectiveError, PredictionTableError
from .learn import LinearModel
from .synthdata import Dataset, GenConfig

PARADIGMS = ("standard", "aligned", "complementary", "fixed_weight",
             "behavior_aware", "adaptive_oracle", "adaptive_rrs")
SINGLE_PARADIGMS = ("standard", "aligned", "complementary", "fixed_weight",
                    "behavior_aware")
SWEEP_AXES = ("delta", "alpha", "p", "certainty", "w")
# sweep axes that map straight onto a generator field
_AXIS_FIELD = {"delta": "delta", "alpha": "alpha", "p": "p",
               "certainty": "label_flip_certainty"}

SWEEP_CSV_HEADER = ("axis", "value", "trial", "paradigm", "ai_acc",
                    "team_acc", "gain_vs_single")
COMPARISON_CSV_HEADER = ("paradigm", "ai_accuracy", "team_accuracy",
                         "team_stderr", "reliance", "gain_vs_single", "trials")
TRADEOFF_CSV_HEADER = ("p", "alpha", "tradeoff")

_DEFAULT_PARADIGMS = ("standard", "aligned", "complementary",
                      "behavior_aware", "adaptive_oracle", "adaptive_rrs")


def _default_ft() -> ThresholdDist:
    return ThresholdDist.uniform(0.0, 1.0)


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment: a generator, a threshold model, and run options."""

    gen: GenConfig = field(default_factory=lambda: GenConfig(n=5000))
    ft: ThresholdDist = field(default_factory=_default_ft)
    paradigms: tuple[str, ...] = _DEFAULT_PARADIGMS
    trials: int = 10
    eval_draws: int = 100
    train_frac: float = 0.7
    seed: int = 0
    l2: float = 1e-3
    tol: float = 1e-8
    max_iters: int = 10_000
    restarts: int = 5
    reliance_split: str = "train"
    fixed_w: float | None = None
    output_path: str | None = None
    workers: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError("trials", f"expected >= 1, got {self.trials!r}")
        if self.workers < 1:
            raise ConfigError("workers", f"expected >= 1, got {self.workers!r}")
        if self.eval_draws < 1:
            raise ConfigError("eval_draws", f"expected >= 1, got {self.eval_draws!r}")
        if not 0.0 < self.train_frac < 1.0:
            raise ConfigError("train_frac",
                              f"expected a value in (0, 1), got {self.train_frac!r}")
        if not self.paradigms:
            raise ConfigError("paradigms", "expected at least one paradigm")
        for name in self.paradigms:
            if name not in PARADIGMS:
                raise ConfigError("paradigms",
                                  f"unknown paradigm {name!r}; known: {PARADIGMS}")
        if len(set(self.paradigms)) != len(self.paradigms):
            raise ConfigError("paradigms", "paradigms listed more than once")
        if self.reliance_split not in ("train", "test"):
            raise ConfigError("reliance_split",
                              f"expected 'train' or 'test', got {self.reliance_split!r}")
        if "fixed_weight" in self.paradigms and self.fixed_w is None:
            raise ConfigError("fixed_w",
                              "the fixed_weight paradigm needs an explicit blend weight")
        if self.fixed_w is not None and not 0.0 <= self.fixed_w <= 1.0:
            raise ConfigError("fixed_w",
                              f"expected a value in [0, 1], got {self.fixed_w!r}")
        if self.l2 < 0:
            raise ConfigError("l2", f"expected a nonnegative value, got {self.l2!r}")
        if self.restarts < 1:
            raise ConfigError("restarts", f"expected >= 1, got {self.restarts!r}")

    def with_updates(self, **kwargs) -> "ExperimentConfig":
        return dataclasses.replace(self, **kwargs)


_TOP_LEVEL_KEYS = {"gen", "ft", "paradigms", "trials", "eval_draws",
                   "train_frac", "seed", "l2", "tol", "max_iters", "restarts",
                   "reliance_split", "fixed_w", "output_path", "workers",
                   "sweep", "tradeoff"}
_GEN_KEYS = {"n", "p", "delta", "alpha", "conf_noise",
             "label_flip_certainty", "seed"}
_FT_KEYS = {"kind", "tau", "lo", "hi"}


def _ft_from_dict(d: dict) -> ThresholdDist:
    for key in d:
        if key not in _FT_KEYS:
            raise ConfigError(f"ft.{key}", "unknown threshold field")
    try:
        return ThresholdDist.from_dict(d)
    except KeyError as exc:
        raise ConfigError(f"ft.{exc.args[0]}", "missing threshold field") from None


def config_from_dict(raw: dict) -> ExperimentConfig:
    """Build a validated config from a parsed TOML document."""
    for key in raw:
        if key not in _TOP_LEVEL_KEYS:
            raise ConfigError(key, "unknown configuration field")
    gen_raw = dict(raw.get("gen", {}))
    for key in gen_raw:
        if key not in _GEN_KEYS:
            raise ConfigError(f"gen.{key}", "unknown generator field")
    gen_raw.setdefault("n", 5000)
    gen = GenConfig(**gen_raw)
    ft = _ft_from_dict(raw["ft"]) if "ft" in raw else _default_ft()
    kwargs = {}
    for name in ("trials", "eval_draws", "train_frac", "seed", "l2", "tol",
                 "max_iters", "restarts", "reliance_split", "fixed_w",
                 "output_path", "workers"):
        if name in raw:
            kwargs[name] = raw[name]
    if "paradigms" in raw:
        kwargs["paradigms"] = tuple(raw["paradigms"])
    return ExperimentConfig(gen=gen, ft=ft, **kwargs)


def _parse_override_value(text: str):
    try:
        return tomllib.loads(f"v = {text}")["v"]
    except tomllib.TOMLDecodeError:
        return text


def apply_override(raw: dict, item: str):
    """Apply one 'section.key=value' override to a parsed document."""
    key, sep, value = item.partition("=")
    if not sep or not key.strip():
        raise ConfigError("override", f"expected key=value, got {item!r}")
    node = raw
    parts = key.strip().split(".")
    for part in parts[:-1]:
        node = node.setdefault(part, {})
        if not isinstance(node, dict):
            raise ConfigError(key.strip(), "override path crosses a scalar value")
    node[parts[-1]] = _parse_override_value(value.strip())


def load_config(path=None, overrides=()) -> tuple[ExperimentConfig, dict]:
    """Read a TOML config file and apply key=value overrides.

    Returns the validated config plus the raw document, which keeps the
    optional [sweep] and [tradeoff] sections for the callers that want
    them.
    """
    raw: dict = {}
    if path is not None:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    for item in overrides:
        apply_override(raw, item)
    return config_from_dict(raw), raw


# ---------------------------------------------------------------------------
# seed derivation


def _spawn_seed(*parts) -> int:
    mask = (1 << 64) - 1
    ss = np.random.SeedSequence(tuple(int(p) & mask for p in parts))
    return int(ss.generate_state(1, np.uint64)[0])


def _float_bits(value) -> int:
    return int(np.float64(value).view(np.uint64))


def _cell_root(cfg_seed, axis, value, trial) -> int:
    axis_code = 0 if axis is None else SWEEP_AXES.index(axis) + 1
    value_bits = 0 if value is None else _float_bits(value)
    return _spawn_seed(cfg_seed, axis_code, value_bits, trial)


# ---------------------------------------------------------------------------
# evaluation


def split_indices(n, train_frac, seed) -> tuple[np.ndarray, np.ndarray]:
    """Random train/test index split; both sides are always nonempty."""
    if n < 2:
        raise ConfigError("n", f"need at least 2 instances to split, got {n}")
    if not 0.0 < train_frac < 1.0:
        raise ConfigError("train_frac",
                          f"expected a value in (0, 1), got {train_frac!r}")
    perm = np.random.default_rng(seed).permutation(n)
    n_train = min(max(int(round(train_frac * n)), 1), n - 1)
    return np.sort(perm[:n_train]), np.sort(perm[n_train:])


@dataclass(frozen=True)
class TeamMetrics:
    """Monte Carlo summary of one predictor working with the judge."""

    paradigm: str
    ai_accuracy: float
    team_accuracy: float
    team_stderr: float
    reliance_r: float
    accuracy_region_a: float
    accuracy_region_c: float
    eval_draws: int


def evaluate_answers(y, y_h, conf_h, y_m, ft: ThresholdDist, r, *,
                     draws=100, seed=0, region_a=None,
                     paradigm="custom") -> TeamMetrics:
    """Sample repeated team decisions and score them against the truth.

    Labels only need equality comparisons, so any dtype works. The
    standard error covers reliance sampling noise, instances fixed.
    """
    y = np.asarray(y)
    if y.shape[0] == 0:
        raise ConfigError("dataset", "expected at least one instance")
    correct_h = y_h == y
    correct_m = np.asarray(y_m) == y
    rng = np.random.default_rng(seed)
    take_ai = behavior.simulate_team_choices(conf_h, ft, r, draws, rng)
    correct = np.where(take_ai, correct_m[None, :], correct_h[None, :])
    per_draw = correct.mean(axis=1)
    stderr = float(per_draw.std(ddof=1) / np.sqrt(draws)) if draws > 1 else 0.0

    acc_a = acc_c = float("nan")
    if region_a is not None:
        in_a = np.asarray(region_a, dtype=bool)
        if in_a.any():
            acc_a = float(correct[:, in_a].mean())
        if (~in_a).any():
            acc_c = float(correct[:, ~in_a].mean())

    return TeamMetrics(
        paradigm=paradigm,
        ai_accuracy=float(correct_m.mean()),
        team_accuracy=float(per_draw.mean()),
        team_stderr=stderr,
        reliance_r=float(r),
        accuracy_region_a=acc_a,
        accuracy_region_c=acc_c,
        eval_draws=int(draws),
    )


def evaluate_team(data: Dataset, predictor, ft: ThresholdDist, *, r=None,
                  eval_draws=100, seed=0, paradigm=None) -> TeamMetrics:
    """Score a model or routing policy working with the simulated judge.

    When r is not given it is estimated on this same dataset; callers
    holding out a test split should pass the training-split value
    instead (run_cell does).
    """
    if len(data) == 0:
        raise ConfigError("dataset", "expected at least one instance")
    y_m = paradigm_answers(predictor, data)
    if r is None:
        w_high, _ = behavior.region_weights(data.conf_h, ft)
        r = behavior.reliance_weighted(y_m, data.y_h, w_high).r
    if paradigm is None:
        if isinstance(predictor, RoutingPolicy):
            paradigm = f"adaptive_{predictor.kind}"
        else:
            paradigm = predictor.meta.get("paradigm", "custom")
    return evaluate_answers(data.y, data.y_h, data.conf_h, y_m, ft, r,
                            draws=eval_draws, seed=seed,
                            region_a=data.region_a, paradigm=paradigm)


# ---------------------------------------------------------------------------
# paradigm training


def train_paradigm(name, data: Dataset, ft: ThresholdDist, *, l2=1e-3,
                   max_iters=10_000, tol=1e-8, restarts=5, seed=0,
                   fixed_w=None, specialists=None):
    """Fit one paradigm; returns a LinearModel or a RoutingPolicy.

    Adaptive paradigms reuse pre-trained specialists when given,
    otherwise they train their own pair on the spot.
    """
    if name == "standard":
        return learn.train_standard(data, ft, l2=l2, max_iters=max_iters,
                                    tol=tol, seed=seed)
    if name == "aligned":
        return learn.train_aligned(data, ft, l2=l2, max_iters=max_iters,
                                   tol=tol, seed=seed)
    if name == "complementary":
        return learn.train_complementary(data, ft, l2=l2, max_iters=max_iters,
                                         tol=tol, seed=seed)
    if name == "fixed_weight":
        if fixed_w is None:
            raise ConfigError("fixed_w", "fixed_weight training needs a blend weight")
        return learn.train_fixed_weight(data, ft, fixed_w, l2=l2,
                                        max_iters=max_iters, tol=tol, seed=seed)
    if name == "behavior_aware":
        return learn.train_behavior_aware(data, ft, l2=l2, max_iters=max_iters,
                                          tol=tol, restarts=restarts, seed=seed)
    if name in ("adaptive_oracle", "adaptive_rrs"):
        if specialists is None:
            aligned = learn.train_aligned(data, ft, l2=l2, max_iters=max_iters,
                                          tol=tol, seed=_spawn_seed(seed, 1))
            comp = learn.train_complementary(data, ft, l2=l2,
                                             max_iters=max_iters, tol=tol,
                                             seed=_spawn_seed(seed, 2))
            specialists = (aligned, comp)
        kind = "oracle" if name == "adaptive_oracle" else "rrs"
        return RoutingPolicy(kind=kind, aligned=specialists[0],
                             complementary=specialists[1])
    raise ConfigError("paradigm", f"unknown paradigm {name!r}; known: {PARADIGMS}")


def paradigm_answers(predictor, data: Dataset) -> np.ndarray:
    """Model answers on a dataset, routing through specialists if needed."""
    if isinstance(predictor, RoutingPolicy):
        return ensemble.route(predictor, data).y_m
    return predictor.predict(data.features)


@dataclass(frozen=True)
class CellResult:
    """Everything measured for one (axis value, trial) experiment cell."""

    axis: str | None
    value: float | None
    trial: int
    metrics: dict
    gains: dict
    diagnostics: RouteDiagnostics | None
    predictors: dict
    train_indices: np.ndarray
    test_indices: np.ndarray


def run_cell(cfg: ExperimentConfig, *, axis=None, value=None,
             trial=0) -> CellResult:
    """Generate data, train the configured paradigms, and score them all.

    gain_vs_single is each paradigm's team accuracy minus the best team
    accuracy among the single-model paradigms in the same cell, NaN when
    no single-model paradigm was configured.
    """
    gen_cfg = cfg.gen
    fixed_w = cfg.fixed_w
    if axis is not None:
        if axis not in SWEEP_AXES:
            raise ConfigError("axis", f"unknown sweep axis {axis!r}; known: {SWEEP_AXES}")
        if axis == "w":
            fixed_w = float(value)
            if not 0.0 <= fixed_w <= 1.0:
                raise ConfigError("w", f"expected a value in [0, 1], got {value!r}")
        else:
            gen_cfg = gen_cfg.with_updates(**{_AXIS_FIELD[axis]: float(value)})

    root = _cell_root(cfg.seed, axis, value, trial)
    gen_cfg = gen_cfg.with_updates(seed=_spawn_seed(root, 0))
    data = synthdata.generate(gen_cfg)
    tr_idx, te_idx = split_indices(len(data), cfg.train_frac, _spawn_seed(root, 1))
    train_data, test_data = data.subset(tr_idx), data.subset(te_idx)
    rel_data = train_data if cfg.reliance_split == "train" else test_data

    need_specialists = any(p.startswith("adaptive") for p in cfg.paradigms)
    specialists = None
    if need_specialists:
        aligned = learn.train_aligned(train_data, cfg.ft, l2=cfg.l2,
                                      max_iters=cfg.max_iters, tol=cfg.tol,
                                      seed=_spawn_seed(root, 2))
        comp = learn.train_complementary(train_data, cfg.ft, l2=cfg.l2,
                                         max_iters=cfg.max_iters, tol=cfg.tol,
                                         seed=_spawn_seed(root, 3))
        specialists = (aligned, comp)

    w_high_rel, _ = behavior.region_weights(rel_data.conf_h, cfg.ft)
    metrics, gains, predictors = {}, {}, {}
    for name in cfg.paradigms:
        idx = PARADIGMS.index(name)
        if name in ("aligned", "complementary") and specialists is not None:
            predictor = specialists[0] if name == "aligned" else specialists[1]
        else:
            predictor = train_paradigm(
                name, train_data, cfg.ft, l2=cfg.l2, max_iters=cfg.max_iters,
                tol=cfg.tol, restarts=cfg.restarts,
                seed=_spawn_seed(root, 10 + idx), fixed_w=fixed_w,
                specialists=specialists)
        predictors[name] = predictor
        r = behavior.reliance_weighted(paradigm_answers(predictor, rel_data),
                                       rel_data.y_h, w_high_rel).r
        metrics[name] = evaluate_team(
            test_data, predictor, cfg.ft, r=r, eval_draws=cfg.eval_draws,
            seed=_spawn_seed(root, 100 + idx), paradigm=name)

    singles = [m.team_accuracy for name, m in metrics.items()
               if name in SINGLE_PARADIGMS]
    best_single = max(singles) if singles else None
    for name, m in metrics.items():
        gains[name] = (m.team_accuracy - best_single
                       if best_single is not None else float("nan"))

    diagnostics = None
    if specialists is not None:
        certainty = gen_cfg.label_flip_certainty
        posterior = np.where(test_data.reported_a, certainty, 1.0 - certainty)
        policy = RoutingPolicy(kind="rrs", aligned=specialists[0],
                               complementary=specialists[1])
        diagnostics = ensemble.routing_diagnostics(policy, test_data,
                                                   region_posterior=posterior)

    return CellResult(axis=axis, value=value, trial=trial, metrics=metrics,
                      gains=gains, diagnostics=diagnostics,
                      predictors=predictors, train_indices=tr_idx,
                      test_indices=te_idx)


# ---------------------------------------------------------------------------
# comparisons and sweeps


def _run_cell_job(args) -> CellResult:
    cfg, axis, value, trial = args
    return run_cell(cfg, axis=axis, value=value, trial=trial)


def _run_cells(cfg: ExperimentConfig, jobs) -> list:
    """Execute independent cells, in a process pool when workers > 1.

    Every cell derives its own seed, so the results (and their order,
    which follows the job list) do not depend on the worker count.
    """
    if cfg.workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            return list(pool.map(_run_cell_job, jobs))
    return [_run_cell_job(job) for job in jobs]


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _fmt(x) -> str:
    return repr(float(x))


@dataclass(frozen=True)
class ComparisonResult:
    """Per-paradigm means over independent trials at one setting."""

    rows: list
    cells: list

    def to_csv(self, path):
        _write_csv(path, COMPARISON_CSV_HEADER,
                   [(r["paradigm"], _fmt(r["ai_accuracy"]),
                     _fmt(r["team_accuracy"]), _fmt(r["team_stderr"]),
                     _fmt(r["reliance"]), _fmt(r["gain_vs_single"]),
                     str(r["trials"])) for r in self.rows])


def run_paradigm_comparison(cfg: ExperimentConfig) -> ComparisonResult:
    """Average every configured paradigm over cfg.trials fresh datasets.

    The standard error is across trials (regeneration plus training),
    which dominates the within-cell reliance sampling noise.
    """
    cells = _run_cells(cfg, [(cfg, None, None, t) for t in range(cfg.trials)])
    rows = []
    for name in cfg.paradigms:
        team = np.array([c.metrics[name].team_accuracy for c in cells])
        ai = np.array([c.metrics[name].ai_accuracy for c in cells])
        rel = np.array([c.metrics[name].reliance_r for c in cells])
        gain = np.array([c.gains[name] for c in cells])
        stderr = float(team.std(ddof=1) / np.sqrt(len(team))) if len(team) > 1 else 0.0
        rows.append({
            "paradigm": name,
            "ai_accuracy": float(ai.mean()),
            "team_accuracy": float(team.mean()),
            "team_stderr": stderr,
            "reliance": float(rel.mean()),
            "gain_vs_single": float(gain.mean()),
            "trials": len(cells),
        })
    result = ComparisonResult(rows=rows, cells=cells)
    if cfg.output_path:
        result.to_csv(cfg.output_path)
    return result


@dataclass(frozen=True)
class SweepResult:
    """Flat per-cell records for one swept parameter."""

    axis: str
    grid: tuple
    rows: list
    cells: list

    def to_csv(self, path):
        _write_csv(path, SWEEP_CSV_HEADER,
                   [(r["axis"], _fmt(r["value"]), str(r["trial"]), r["paradigm"],
                     _fmt(r["ai_acc"]), _fmt(r["team_acc"]),
                     _fmt(r["gain_vs_single"])) for r in self.rows])


def sweep(cfg: ExperimentConfig, axis: str, grid) -> SweepResult:
    """Run cfg.trials cells at every grid value of one swept axis."""
    if axis not in SWEEP_AXES:
        raise ConfigError("axis", f"unknown sweep axis {axis!r}; known: {SWEEP_AXES}")
    if axis == "w" and "fixed_weight" not in cfg.paradigms:
        raise ConfigError("paradigms",
                          "sweeping w requires the fixed_weight paradigm")
    grid = tuple(float(v) for v in grid)
    if not grid:
        raise ConfigError("grid", "expected at least one sweep value")
    jobs = [(cfg, axis, value, trial)
            for value in grid for trial in range(cfg.trials)]
    cells = _run_cells(cfg, jobs)
    rows = []
    for cell in cells:
        for name in cfg.paradigms:
            m = cell.metrics[name]
            rows.append({
                "axis": axis, "value": cell.value, "trial": cell.trial,
                "paradigm": name, "ai_acc": m.ai_accuracy,
                "team_acc": m.team_accuracy,
                "gain_vs_single": cell.gains[name],
            })
    result = SweepResult(axis=axis, grid=grid, rows=rows, cells=cells)
    if cfg.output_path:
        result.to_csv(cfg.output_path)
    return result


# ---------------------------------------------------------------------------
# specialization pressure measurement


@dataclass(frozen=True)
class TradeoffResult:
    """Exchange-rate curve rows, one per (p, alpha) pair."""

    rows: list

    def to_csv(self, path):
        _write_csv(path, TRADEOFF_CSV_HEADER,
                   [(_fmt(r["p"]), _fmt(r["alpha"]), _fmt(r["tradeoff"]))
                    for r in self.rows])


def _ridge_objective(base, l2) -> learn.Objective:
    def value_and_grad(theta):
        v, g = base.value_and_grad(theta)
        v += 0.5 * l2 * np.dot(theta[:-1], theta[:-1])
        g = g.copy()
        g[:-1] += l2 * theta[:-1]
        return v, g

    return learn.Objective(lambda t: value_and_grad(t)[0], value_and_grad)


def _region_mixture_objective(align, comp, p_weight, l2) -> learn.Objective:
    def value_and_grad(theta):
        av, ag = align.value_and_grad(theta)
        cv, cg = comp.value_and_grad(theta)
        v = p_weight * av + (1.0 - p_weight) * cv
        g = p_weight * ag + (1.0 - p_weight) * cg
        v += 0.5 * l2 * np.dot(theta[:-1], theta[:-1])
        g[:-1] += l2 * theta[:-1]
        return v, g

    return learn.Objective(lambda t: value_and_grad(t)[0], value_and_grad)


def measure_tradeoff(data: Dataset, *, rel_step=0.25, l2=1e-3, tol=1e-8,
                     max_iters=10_000) -> float:
    """Price of nudging a pooled model toward the alignment specialist.

    The pooled model minimizes the region-mass-weighted mixture of two
    conditional surrogates: judge imitation on alignment instances and
    ground-truth loss on complementarity instances. Stepping a fraction
    of the way toward the alignment-only optimum always lowers the
    (strictly convex) alignment objective, so the measurement is the
    loss increase on complementarity instances per unit of alignment
    objective removed. NaN only when the two optima already coincide.
    """
    mask_a = np.asarray(data.region_a, dtype=bool)
    if not mask_a.any() or mask_a.all():
        raise DegenerateObjectiveError("both regions need instances")
    X = data.features
    in_a = mask_a.astype(float)
    p_hat = float(mask_a.mean())
    dim = X.shape[1] + 1

    align = learn.weighted_objective(X, data.y_h, in_a, 0.0)
    comp = learn.weighted_objective(X, data.y, 1.0 - in_a, 0.0)
    mix = _region_mixture_objective(align, comp, p_hat, l2)
    align_reg = _ridge_objective(align, l2)

    theta_mix, _, _ = learn._fit(mix, dim, restarts=1, seed=0,
                                 max_iters=max_iters, tol=tol)
    theta_a, _, _ = learn._fit(align_reg, dim, restarts=1, seed=0,
                               max_iters=max_iters, tol=tol)

    gap = theta_a - theta_mix
    if float(np.linalg.norm(gap)) < 1e-9:
        return float("nan")
    theta_step = theta_mix + rel_step * gap

    d_align = align_reg.value(theta_step) - align_reg.value(theta_mix)
    d_comp = comp.value(theta_step) - comp.value(theta_mix)
    if d_align >= 0.0:
        return float("nan")
    return d_comp / (-d_align)


def tradeoff_sweep(cfg: ExperimentConfig, p_grid=None, alphas=(1.0, 0.75), *,
                   rel_step=0.25, trials=5) -> TradeoffResult:
    """Exchange-rate curves over alignment mass, one per judge accuracy.

    Each (p, alpha) entry averages measure_tradeoff over independent
    datasets, skipping degenerate trials where the step buys nothing.
    """
    if p_grid is None:
        p_grid = (0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99)
    rows = []
    for p in p_grid:
        for alpha in alphas:
            values = []
            for trial in range(trials):
                root = _spawn_seed(cfg.seed, 9, _float_bits(p),
                                   _float_bits(alpha), trial)
                gen_cfg = cfg.gen.with_updates(p=float(p), alpha=float(alpha),
                                               seed=_spawn_seed(root, 0))
                data = synthdata.generate(gen_cfg)
                if not data.region_a.any() or data.region_a.all():
                    continue
                ratio = measure_tradeoff(data, rel_step=rel_step, l2=cfg.l2,
                                         tol=cfg.tol, max_iters=cfg.max_iters)
                if np.isfinite(ratio):
                    values.append(ratio)
            mean = float(np.mean(values)) if values else float("nan")
            rows.append({"p": float(p), "alpha": float(alpha), "tradeoff": mean})
    result = TradeoffResult(rows=rows)
    if cfg.output_path:
        result.to_csv(cfg.output_path)
    return result


# ---------------------------------------------------------------------------
# external prediction tables


PREDICTION_FIXED_COLUMNS = ("instance_id", "y_true", "y_human", "conf_human")


@dataclass(frozen=True)
class PredictionTable:
    """Frozen predictions from outside systems, one row per instance."""

    instance_ids: tuple
    y_true: np.ndarray
    y_human: np.ndarray
    conf_human: np.ndarray
    model_names: tuple
    y_model: dict
    conf_model: dict

    def __len__(self):
        return len(self.instance_ids)


def _parse_model_columns(header) -> tuple:
    names, seen = [], set()
    rest = header[len(PREDICTION_FIXED_COLUMNS):]
    y_cols = {c[len("y_model_"):] for c in rest if c.startswith("y_model_")}
    conf_cols = {c[len("conf_model_"):] for c in rest if c.startswith("conf_model_")}
    for col in rest:
        if col.startswith("y_model_"):
            name = col[len("y_model_"):]
            if not name:
                raise PredictionTableError("empty model name", column=col)
            if name in seen:
                raise PredictionTableError("duplicate model column", column=col)
            if name not in conf_cols:
                raise PredictionTableError(
                    f"missing paired column conf_model_{name}", column=col)
            seen.add(name)
            names.append(name)
        elif col.startswith("conf_model_"):
            if col[len("conf_model_"):] not in y_cols:
                raise PredictionTableError(
                    f"missing paired column y_model_{col[len('conf_model_'):]}",
                    column=col)
        else:
            raise PredictionTableError("unrecognized column", column=col)
    if not names:
        raise PredictionTableError("no model prediction columns found")
    return tuple(names)


def ingest_predictions(path) -> PredictionTable:
    """Load an external prediction table from CSV.

    Errors carry the 1-based file row (header is row 1) and the column
    name, so a bad cell can be found without a debugger. Labels stay as
    strings; only the confidences are parsed, and they must sit in
    [0, 1].
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = tuple(next(reader))
        except StopIteration:
            raise PredictionTableError("empty file", row=1) from None
        if tuple(header[:len(PREDICTION_FIXED_COLUMNS)]) != PREDICTION_FIXED_COLUMNS:
            raise PredictionTableError(
                f"header must start with {','.join(PREDICTION_FIXED_COLUMNS)}",
                row=1)
        names = _parse_model_columns(header)
        col_index = {c: i for i, c in enumerate(header)}

        ids, y_true, y_human, conf_human = [], [], [], []
        y_model = {m: [] for m in names}
        conf_model = {m: [] for m in names}
        seen_ids = {}
        for row_no, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise PredictionTableError(
                    f"expected {len(header)} fields, got {len(row)}", row=row_no)

            def cell(col):
                value = row[col_index[col]].strip()
                if not value:
                    raise PredictionTableError("empty value", row=row_no,
                                               column=col)
                return value

            def conf_cell(col):
                text = cell(col)
                try:
                    value = float(text)
                except ValueError:
                    raise PredictionTableError(
                        f"confidence {text!r} is not a number", row=row_no,
                        column=col) from None
                if not 0.0 <= value <= 1.0:
                    raise PredictionTableError(
                        f"confidence {value!r} outside [0, 1]", row=row_no,
                        column=col)
                return value

            instance = cell("instance_id")
            if instance in seen_ids:
                raise PredictionTableError(
                    f"duplicate instance_id {instance!r} (first seen at row "
                    f"{seen_ids[instance]})", row=row_no, column="instance_id")
            seen_ids[instance] = row_no
            ids.append(instance)
            y_true.append(cell("y_true"))
            y_human.append(cell("y_human"))
            conf_human.append(conf_cell("conf_human"))
            for m in names:
                y_model[m].append(cell(f"y_model_{m}"))
                conf_model[m].append(conf_cell(f"conf_model_{m}"))

    if not ids:
        raise PredictionTableError("no data rows", row=2)
    return PredictionTable(
        instance_ids=tuple(ids),
        y_true=np.array(y_true),
        y_human=np.array(y_human),
        conf_human=np.array(conf_human, dtype=float),
        model_names=names,
        y_model={m: np.array(v) for m, v in y_model.items()},
        conf_model={m: np.array(v, dtype=float) for m, v in conf_model.items()},
    )


def evaluate_table(table: PredictionTable, ft: ThresholdDist, *,
                   eval_draws=1000, seed=0) -> dict:
    """Score every model column as the judge's AI under the threshold model.

    Reliance is estimated on the same rows it is evaluated on; external
    tables arrive as one frozen split.
    """
    w_high, _ = behavior.region_weights(table.conf_human, ft)
    out = {}
    for idx, name in enumerate(table.model_names):
        y_m = table.y_model[name]
        r = behavior.reliance_weighted(y_m, table.y_human, w_high).r
        out[name] = evaluate_answers(table.y_true, table.y_human,
                                     table.conf_human, y_m, ft, r,
                                     draws=eval_draws,
                                     seed=_spawn_seed(seed, idx), paradigm=name)
    return out


# ---------------------------------------------------------------------------
# bound verification


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of the numerical bound suite."""

    checks: list
    all_passed: bool
    runtime_s: float
    seed: int

    def to_dict(self) -> dict:
        return {"seed": self.seed, "runtime_s": self.runtime_s,
                "all_passed": self.all_passed,
                "checks": [c.to_dict() for c in self.checks]}

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")


def verify_all(*, seed=0, path=None) -> VerifyReport:
    """Run every theoretical guarantee check and optionally save a report."""
    start = time.perf_counter()
    checks = theory.run_bound_suite(seed=seed)
    report = VerifyReport(checks=checks,
                          all_passed=all(c.passed for c in checks),
                          runtime_s=time.perf_counter() - start,
                          seed=int(seed))
    if path is not None:
        report.save(path)
    return report
