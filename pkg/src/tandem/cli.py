"""Command line front end.

Every subcommand reads the same TOML config (all fields optional) and
accepts repeated --set key=value overrides, so a config file plus a few
flags fully determines a run. Outputs are CSV or JSON files plus a short
stdout summary.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import ensemble, harness, learn, synthdata
from .errors import ConfigError
from .harness import ExperimentConfig
from .learn import LinearModel

_SINGLE_CHOICES = harness.SINGLE_PARADIGMS


def _add_common(parser):
    parser.add_argument("--config", metavar="PATH",
                        help="TOML experiment config")
    parser.add_argument("--set", dest="overrides", action="append",
                        default=[], metavar="KEY=VALUE",
                        help="override one config field (repeatable)")


def _load(args) -> tuple[ExperimentConfig, dict]:
    return harness.load_config(args.config, args.overrides)


def _print_metrics(rows):
    header = f"{'paradigm':16s} {'ai_acc':>8s} {'team_acc':>9s} {'stderr':>8s} {'reliance':>9s}"
    print(header)
    for m in rows:
        print(f"{m.paradigm:16s} {m.ai_accuracy:8.4f} {m.team_accuracy:9.4f} "
              f"{m.team_stderr:8.4f} {m.reliance_r:9.4f}")


def _metrics_csv(path, rows):
    harness._write_csv(path, ("paradigm", "ai_accuracy", "team_accuracy",
                              "team_stderr", "reliance"),
                       [(m.paradigm, repr(m.ai_accuracy), repr(m.team_accuracy),
                         repr(m.team_stderr), repr(m.reliance_r))
                        for m in rows])


def _cmd_generate(args) -> int:
    cfg, _ = _load(args)
    data = synthdata.generate(cfg.gen)
    data.to_csv(args.output)
    print(f"wrote {len(data)} instances to {args.output}")
    return 0


def _cmd_train(args) -> int:
    cfg, _ = _load(args)
    if args.data:
        data = synthdata.Dataset.from_csv(args.data)
    else:
        data = synthdata.generate(cfg.gen)
    model = harness.train_paradigm(
        args.paradigm, data, cfg.ft, l2=cfg.l2, max_iters=cfg.max_iters,
        tol=cfg.tol, restarts=cfg.restarts, seed=cfg.seed,
        fixed_w=cfg.fixed_w)
    model.save(args.output)
    meta = model.meta
    print(f"trained {args.paradigm} on {len(data)} instances: "
          f"objective {meta['objective']:.6f}, "
          f"{meta['iterations']} iterations, converged={meta['converged']}")
    print(f"wrote {args.output}")
    return 0


def _build_predictors(args):
    predictors = []
    for path in args.model or []:
        predictors.append(LinearModel.load(path))
    if args.aligned or args.complementary:
        if not (args.aligned and args.complementary):
            raise ConfigError("routing",
                              "routing needs both --aligned and --complementary")
        predictors.append(ensemble.RoutingPolicy(
            kind=args.routing, aligned=LinearModel.load(args.aligned),
            complementary=LinearModel.load(args.complementary)))
    if not predictors:
        raise ConfigError("model", "nothing to evaluate; pass --model or a "
                          "specialist pair")
    return predictors


def _cmd_evaluate(args) -> int:
    cfg, _ = _load(args)
    data = synthdata.Dataset.from_csv(args.data)
    rows = []
    for idx, predictor in enumerate(_build_predictors(args)):
        rows.append(harness.evaluate_team(
            data, predictor, cfg.ft, eval_draws=cfg.eval_draws,
            seed=harness._spawn_seed(cfg.seed, idx)))
    _print_metrics(rows)
    if args.output:
        _metrics_csv(args.output, rows)
        print(f"wrote {args.output}")
    return 0


def _cmd_compare(args) -> int:
    cfg, _ = _load(args)
    if args.output:
        cfg = cfg.with_updates(output_path=args.output)
    result = harness.run_paradigm_comparison(cfg)
    print(f"{'paradigm':16s} {'ai_acc':>8s} {'team_acc':>9s} {'stderr':>8s} "
          f"{'gain':>8s}")
    for row in result.rows:
        print(f"{row['paradigm']:16s} {row['ai_accuracy']:8.4f} "
              f"{row['team_accuracy']:9.4f} {row['team_stderr']:8.4f} "
              f"{row['gain_vs_single']:+8.4f}")
    if cfg.output_path:
        print(f"wrote {cfg.output_path}")
    return 0


def _parse_grid(text):
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise ConfigError("grid", f"expected comma-separated numbers, got {text!r}")


def _cmd_sweep(args) -> int:
    cfg, raw = _load(args)
    section = raw.get("sweep", {})
    axis = args.axis or section.get("axis")
    grid = _parse_grid(args.grid) if args.grid else section.get("grid")
    if not axis or not grid:
        raise ConfigError("sweep", "need an axis and a grid (flags or [sweep] "
                          "config section)")
    if args.output:
        cfg = cfg.with_updates(output_path=args.output)
    result = harness.sweep(cfg, axis, grid)
    for value in result.grid:
        at_value = [c for c in result.cells if c.value == value]
        if "adaptive_oracle" in cfg.paradigms:
            gains = [c.gains["adaptive_oracle"] for c in at_value]
            print(f"{axis}={value:g}: mean oracle gain {np.mean(gains):+.4f} "
                  f"over {len(gains)} trials")
        else:
            best = max(cfg.paradigms, key=lambda p: np.mean(
                [c.metrics[p].team_accuracy for c in at_value]))
            acc = np.mean([c.metrics[best].team_accuracy for c in at_value])
            print(f"{axis}={value:g}: best paradigm {best} at {acc:.4f} "
                  f"over {len(at_value)} trials")
    if cfg.output_path:
        print(f"wrote {cfg.output_path}")
    return 0


def _cmd_tradeoff(args) -> int:
    cfg, raw = _load(args)
    section = raw.get("tradeoff", {})
    p_grid = _parse_grid(args.p_grid) if args.p_grid else section.get("p_grid")
    alphas = _parse_grid(args.alphas) if args.alphas else \
        section.get("alphas", (1.0, 0.75))
    rel_step = args.rel_step if args.rel_step is not None else \
        section.get("rel_step", 0.25)
    trials = args.trials if args.trials is not None else \
        section.get("trials", 5)
    if args.output:
        cfg = cfg.with_updates(output_path=args.output)
    result = harness.tradeoff_sweep(cfg, p_grid, tuple(alphas),
                                    rel_step=float(rel_step),
                                    trials=int(trials))
    for row in result.rows:
        print(f"p={row['p']:.2f} alpha={row['alpha']:.2f} "
              f"tradeoff={row['tradeoff']:.4f}")
    if cfg.output_path:
        print(f"wrote {cfg.output_path}")
    return 0


def _cmd_ingest(args) -> int:
    cfg, _ = _load(args)
    table = harness.ingest_predictions(args.table)
    print(f"ingested {len(table)} instances, "
          f"models: {', '.join(table.model_names)}")
    metrics = harness.evaluate_table(table, cfg.ft,
                                     eval_draws=cfg.eval_draws, seed=cfg.seed)
    rows = [metrics[name] for name in table.model_names]
    _print_metrics(rows)
    if args.output:
        _metrics_csv(args.output, rows)
        print(f"wrote {args.output}")
    return 0


def _cmd_verify(args) -> int:
    report = harness.verify_all(seed=args.seed, path=args.output)
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        print(f"[{status}] {check.name}: margin {check.margin:.3e} "
              f"({check.detail})")
    print(f"{len(report.checks)} checks in {report.runtime_s:.1f}s; "
          f"all_passed={report.all_passed}")
    if args.output:
        print(f"wrote {args.output}")
    return 0 if report.all_passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tandem",
        description="Simulate and evaluate human-AI decision teams.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic dataset CSV")
    _add_common(p)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(fn=_cmd_generate)

    p = sub.add_parser("train", help="fit one paradigm and save the model")
    _add_common(p)
    p.add_argument("--paradigm", required=True, choices=_SINGLE_CHOICES)
    p.add_argument("--data", help="dataset CSV (default: generate from config)")
    p.add_argument("-o", "--output", required=True, help="model JSON path")
    p.set_defaults(fn=_cmd_train)

    p = sub.add_parser("evaluate", help="score saved models on a dataset")
    _add_common(p)
    p.add_argument("--data", required=True)
    p.add_argument("--model", action="append", help="model JSON (repeatable)")
    p.add_argument("--aligned", help="aligned specialist JSON for routing")
    p.add_argument("--complementary", help="complementary specialist JSON")
    p.add_argument("--routing", choices=("oracle", "rrs"), default="rrs")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=_cmd_evaluate)

    p = sub.add_parser("compare", help="mean metrics per paradigm over trials")
    _add_common(p)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=_cmd_compare)

    p = sub.add_parser("sweep", help="vary one axis over a grid")
    _add_common(p)
    p.add_argument("--axis", choices=harness.SWEEP_AXES)
    p.add_argument("--grid", help="comma-separated values")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("tradeoff", help="specialization pressure curves")
    _add_common(p)
    p.add_argument("--p-grid", help="comma-separated alignment masses")
    p.add_argument("--alphas", help="comma-separated judge accuracies")
    p.add_argument("--rel-step", type=float)
    p.add_argument("--trials", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=_cmd_tradeoff)

    p = sub.add_parser("ingest", help="evaluate an external prediction table")
    _add_common(p)
    p.add_argument("--table", required=True, help="prediction CSV")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=_cmd_ingest)

    p = sub.add_parser("verify", help="run the bound-verification suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", help="JSON report path")
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
