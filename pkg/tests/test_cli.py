import csv
import json

import pytest

from tandem.cli import main

FAST = ["--set", "gen.n=400", "--set", "trials=2", "--set", "eval_draws=20"]


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_generate_train_evaluate_pipeline(tmp_path, capsys):
    data = tmp_path / "data.csv"
    model = tmp_path / "model.json"
    scores = tmp_path / "scores.csv"

    code, out, _ = run(capsys, "generate", *FAST, "-o", str(data))
    assert code == 0 and "400 instances" in out

    code, out, _ = run(capsys, "train", *FAST, "--paradigm", "standard",
                       "--data", str(data), "-o", str(model))
    assert code == 0 and "trained standard" in out
    meta = json.loads(model.read_text())["meta"]
    assert meta["paradigm"] == "standard"

    code, out, _ = run(capsys, "evaluate", *FAST, "--data", str(data),
                       "--model", str(model), "-o", str(scores))
    assert code == 0
    with open(scores, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0][0] == "paradigm"
    assert rows[1][0] == "standard"
    assert 0.0 <= float(rows[1][2]) <= 1.0


def test_evaluate_routing_pair(tmp_path, capsys):
    data = tmp_path / "data.csv"
    aligned = tmp_path / "aligned.json"
    comp = tmp_path / "comp.json"
    run(capsys, "generate", *FAST, "-o", str(data))
    run(capsys, "train", *FAST, "--paradigm", "aligned",
        "--data", str(data), "-o", str(aligned))
    run(capsys, "train", *FAST, "--paradigm", "complementary",
        "--data", str(data), "-o", str(comp))
    code, out, _ = run(capsys, "evaluate", *FAST, "--data", str(data),
                       "--aligned", str(aligned), "--complementary", str(comp),
                       "--routing", "rrs")
    assert code == 0 and "adaptive_rrs" in out

    code, _, err = run(capsys, "evaluate", *FAST, "--data", str(data),
                       "--aligned", str(aligned))
    assert code == 2 and "both --aligned and --complementary" in err


def test_compare_writes_csv(tmp_path, capsys):
    out_csv = tmp_path / "compare.csv"
    code, out, _ = run(capsys, "compare", *FAST,
                       "--set", 'paradigms=["standard", "adaptive_rrs"]',
                       "-o", str(out_csv))
    assert code == 0
    with open(out_csv, newline="") as fh:
        rows = list(csv.reader(fh))
    assert [r[0] for r in rows[1:]] == ["standard", "adaptive_rrs"]


def test_sweep_flags_and_config_section(tmp_path, capsys):
    out_csv = tmp_path / "sweep.csv"
    code, out, _ = run(capsys, "sweep", *FAST,
                       "--set", 'paradigms=["standard", "adaptive_oracle"]',
                       "--axis", "delta", "--grid", "0.1,0.3",
                       "-o", str(out_csv))
    assert code == 0 and "delta=0.1" in out and "delta=0.3" in out
    with open(out_csv, newline="") as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 1 + 2 * 2 * 2  # header + values x trials x paradigms

    config = tmp_path / "exp.toml"
    config.write_text(
        'trials = 1\neval_draws = 10\nparadigms = ["standard"]\n'
        "[gen]\nn = 300\n"
        "[sweep]\naxis = \"alpha\"\ngrid = [0.7]\n")
    code, out, _ = run(capsys, "sweep", "--config", str(config))
    assert code == 0 and "alpha=0.7" in out

    code, _, err = run(capsys, "sweep", *FAST)
    assert code == 2 and "need an axis and a grid" in err


def test_tradeoff_subcommand(tmp_path, capsys):
    out_csv = tmp_path / "tradeoff.csv"
    code, out, _ = run(capsys, "tradeoff", "--set", "gen.n=800",
                       "--p-grid", "0.6", "--alphas", "1.0",
                       "--trials", "1", "-o", str(out_csv))
    assert code == 0 and "p=0.60" in out
    with open(out_csv, newline="") as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 2


def test_ingest_subcommand(tmp_path, capsys):
    table = tmp_path / "preds.csv"
    table.write_text(
        "instance_id,y_true,y_human,conf_human,y_model_ext,conf_model_ext\n"
        "a,+1,+1,0.9,+1,0.8\n"
        "b,-1,+1,0.4,-1,0.7\n")
    out_csv = tmp_path / "ingested.csv"
    code, out, _ = run(capsys, "ingest", "--table", str(table),
                       "-o", str(out_csv))
    assert code == 0 and "models: ext" in out
    assert out_csv.exists()

    bad = tmp_path / "bad.csv"
    bad.write_text("instance_id,y_true\n")
    code, _, err = run(capsys, "ingest", "--table", str(bad))
    assert code == 2 and "error:" in err


def test_missing_files_exit_cleanly(tmp_path, capsys):
    code, _, err = run(capsys, "evaluate", "--data",
                       str(tmp_path / "nothing.csv"), "--model",
                       str(tmp_path / "nobody.json"))
    assert code == 2 and "error:" in err


def test_train_only_offers_single_model_paradigms(capsys):
    with pytest.raises(SystemExit):
        main(["train", "--paradigm", "adaptive_rrs", "-o", "x.json"])
    capsys.readouterr()
