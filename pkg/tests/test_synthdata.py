import numpy as np
import pytest

from tandem.errors import ConfigError
from tandem.synthdata import (
    CSV_HEADER,
    Dataset,
    GenConfig,
    admission_labels,
    generate,
    simulate_human,
)


def test_config_rejects_bad_fields():
    with pytest.raises(ConfigError, match="'n'"):
        GenConfig(n=0)
    with pytest.raises(ConfigError, match="'p'"):
        GenConfig(n=10, p=1.5)
    with pytest.raises(ConfigError, match="'delta'"):
        GenConfig(n=10, delta=0.6)
    with pytest.raises(ConfigError, match="'alpha'"):
        GenConfig(n=10, alpha=-0.1)
    with pytest.raises(ConfigError, match="'conf_noise'"):
        GenConfig(n=10, conf_noise=0.7)
    with pytest.raises(ConfigError, match="'label_flip_certainty'"):
        GenConfig(n=10, label_flip_certainty=2.0)
    with pytest.raises(ConfigError, match="'seed'"):
        GenConfig(n=10, seed="zero")


def test_generate_is_deterministic_per_seed():
    a = generate(GenConfig(n=500, seed=4))
    b = generate(GenConfig(n=500, seed=4))
    c = generate(GenConfig(n=500, seed=5))
    assert np.array_equal(a.x_gpa, b.x_gpa)
    assert np.array_equal(a.y_h, b.y_h)
    assert not np.array_equal(a.x_gpa, c.x_gpa)


def test_labels_match_the_two_regime_rule():
    data = generate(GenConfig(n=2000, delta=0.3, seed=1))
    # recompute: score dominates in the alignment region, gpa outside
    hi, lo = 0.8, 0.2
    s = np.where(data.region_a,
                 hi * data.x_score + lo * data.x_gpa,
                 hi * data.x_gpa + lo * data.x_score)
    expected = np.where(s >= 0.5, 1, -1)
    assert np.array_equal(data.y, expected)
    assert np.array_equal(
        data.y, admission_labels(data.x_gpa, data.x_score, data.region_a, 0.3))


def test_region_frequency_matches_p():
    p = 0.3
    data = generate(GenConfig(n=20_000, p=p, seed=2))
    sigma = np.sqrt(p * (1 - p) / len(data))
    assert abs(data.region_a.mean() - p) <= 3 * sigma


def test_judge_accuracy_matches_alpha():
    data = generate(GenConfig(n=100_000, alpha=0.8, seed=3))
    in_a = data.region_a
    acc_a = (data.y_h[in_a] == data.y[in_a]).mean()
    acc_c = (data.y_h[~in_a] == data.y[~in_a]).mean()
    assert abs(acc_a - 0.8) < 0.01
    assert abs(acc_c - 0.5) < 0.01


def test_confidence_tracks_region_accuracy():
    noise = 0.1
    data = generate(GenConfig(n=5000, alpha=0.9, conf_noise=noise, seed=6))
    in_a = data.region_a
    assert np.all(data.conf_h >= 0.0) and np.all(data.conf_h <= 1.0)
    assert np.all(data.conf_h[in_a] >= 0.9 - noise - 1e-12)
    assert np.all(data.conf_h[~in_a] <= 0.5 + noise + 1e-12)


def test_reported_region_flip_rate():
    certainty = 0.7
    data = generate(GenConfig(n=50_000, label_flip_certainty=certainty, seed=7))
    match = (data.reported_a == data.region_a).mean()
    sigma = np.sqrt(certainty * (1 - certainty) / len(data))
    assert abs(match - certainty) <= 3 * sigma

    exact = generate(GenConfig(n=2000, label_flip_certainty=1.0, seed=7))
    assert np.array_equal(exact.reported_a, exact.region_a)


def test_csv_round_trip_is_exact(tmp_path):
    data = generate(GenConfig(n=300, alpha=0.75, seed=8))
    path = tmp_path / "data.csv"
    data.to_csv(path)
    back = Dataset.from_csv(path)
    for name in ("x_gpa", "x_score", "conf_h"):
        assert np.array_equal(getattr(data, name), getattr(back, name))
    for name in ("y", "region_a", "reported_a", "y_h"):
        assert np.array_equal(getattr(data, name), getattr(back, name))


def test_csv_rejects_wrong_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b,c\n1,2,3\n")
    with pytest.raises(ConfigError, match="header"):
        Dataset.from_csv(path)
    good = tmp_path / "good.csv"
    good.write_text(",".join(CSV_HEADER) + "\n")
    assert len(Dataset.from_csv(good)) == 0


def test_subset_keeps_rows_aligned():
    data = generate(GenConfig(n=100, seed=9))
    idx = np.array([3, 7, 50])
    sub = data.subset(idx)
    assert len(sub) == 3
    assert np.array_equal(sub.y, data.y[idx])
    assert np.array_equal(sub.conf_h, data.conf_h[idx])
    assert sub.features.shape == (3, 2)


def test_simulate_human_replaces_judge_fields_only():
    data = generate(GenConfig(n=30_000, alpha=1.0, seed=10))
    redone = simulate_human(data, alpha=0.6, conf_noise=0.05, seed=11)
    assert np.array_equal(redone.y, data.y)
    assert np.array_equal(redone.region_a, data.region_a)
    in_a = redone.region_a
    assert abs((redone.y_h[in_a] == redone.y[in_a]).mean() - 0.6) < 0.02
    assert not np.array_equal(redone.conf_h, data.conf_h)
