"""Synthetic college-admissions benchmark with a simulated human judge.

Instances live on the unit square (GPA and test score, both rescaled to
[0, 1]). The square is split into two regimes: in the alignment region
the admission rule is score-dominant, in the complementarity region the
same rule swaps to GPA-dominant. A simulated judge is accurate and
self-confident inside the alignment region and guesses at chance
outside it, with reported confidence drawn around the per-region
accuracy. Region membership is also reported with configurable
certainty, so downstream routing can be studied under misreporting.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError

CSV_HEADER = ("x_gpa", "x_score", "y", "region", "reported_region", "y_h", "conf_h")

_REGION_CODE = {True: "a", False: "c"}
_REGION_FLAG = {"a": True, "c": False}


def _check_interval(field, value, lo, hi):
    if not np.isfinite(value) or not (lo <= value <= hi):
        raise ConfigError(field, f"expected a value in [{lo}, {hi}], got {value!r}")


@dataclass(frozen=True)
class GenConfig:
    """Generator settings for one synthetic admissions dataset.

    n: number of instances.
    p: probability an instance falls in the alignment region.
    delta: rule contrast; the dominant feature gets weight 0.5 + delta.
    alpha: judge accuracy inside the alignment region (chance outside).
    conf_noise: half-width of the uniform confidence jitter.
    label_flip_certainty: probability the reported region is the true one.
    seed: root seed; every random stream below derives from it.
    """

    n: int
    p: float = 0.5
    delta: float = 0.25
    alpha: float = 1.0
    conf_noise: float = 0.1
    label_flip_certainty: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ConfigError("n", f"expected a positive integer, got {self.n!r}")
        _check_interval("p", self.p, 0.0, 1.0)
        _check_interval("delta", self.delta, 0.0, 0.5)
        _check_interval("alpha", self.alpha, 0.0, 1.0)
        _check_interval("conf_noise", self.conf_noise, 0.0, 0.5)
        _check_interval("label_flip_certainty", self.label_flip_certainty, 0.0, 1.0)
        if not isinstance(self.seed, (int, np.integer)):
            raise ConfigError("seed", f"expected an integer, got {self.seed!r}")

    def with_updates(self, **kwargs) -> "GenConfig":
        return replace(self, **kwargs)


@dataclass
class Dataset:
    """Column arrays for one dataset; labels are +1 (admit) / -1 (reject).

    region_a marks true alignment-region membership, reported_a the
    possibly flipped membership visible to a router.
    """

    x_gpa: np.ndarray
    x_score: np.ndarray
    y: np.ndarray
    region_a: np.ndarray
    reported_a: np.ndarray
    y_h: np.ndarray
    conf_h: np.ndarray

    def __len__(self):
        return self.x_gpa.shape[0]

    @property
    def features(self) -> np.ndarray:
        """Feature matrix with columns (gpa, score)."""
        return np.column_stack([self.x_gpa, self.x_score])

    def subset(self, index) -> "Dataset":
        return Dataset(*(getattr(self, f)[index] for f in
                         ("x_gpa", "x_score", "y", "region_a", "reported_a",
                          "y_h", "conf_h")))

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_HEADER)
            for i in range(len(self)):
                writer.writerow([
                    repr(float(self.x_gpa[i])),
                    repr(float(self.x_score[i])),
                    f"{int(self.y[i]):+d}",
                    _REGION_CODE[bool(self.region_a[i])],
                    _REGION_CODE[bool(self.reported_a[i])],
                    f"{int(self.y_h[i]):+d}",
                    repr(float(self.conf_h[i])),
                ])

    @classmethod
    def from_csv(cls, path) -> "Dataset":
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = tuple(next(reader))
            if header != CSV_HEADER:
                raise ConfigError("header",
                                  f"expected {','.join(CSV_HEADER)}, got {','.join(header)}")
            cols = {name: [] for name in CSV_HEADER}
            for row in reader:
                for name, value in zip(CSV_HEADER, row):
                    cols[name].append(value)
        labels = {"+1": 1, "-1": -1, "1": 1}
        return cls(
            x_gpa=np.array(cols["x_gpa"], dtype=float),
            x_score=np.array(cols["x_score"], dtype=float),
            y=np.array([labels[v] for v in cols["y"]], dtype=np.int8),
            region_a=np.array([_REGION_FLAG[v] for v in cols["region"]], dtype=bool),
            reported_a=np.array([_REGION_FLAG[v] for v in cols["reported_region"]],
                                dtype=bool),
            y_h=np.array([labels[v] for v in cols["y_h"]], dtype=np.int8),
            conf_h=np.array(cols["conf_h"], dtype=float),
        )


def admission_labels(x_gpa, x_score, region_a, delta) -> np.ndarray:
    """Ground-truth labels for the two-regime admission rule.

    Alignment region: (0.5 + delta) * score + (0.5 - delta) * gpa >= 0.5.
    Complementarity region: the same rule with the feature roles swapped.
    """
    x_gpa = np.asarray(x_gpa, dtype=float)
    x_score = np.asarray(x_score, dtype=float)
    region_a = np.asarray(region_a, dtype=bool)
    hi, lo = 0.5 + delta, 0.5 - delta
    s = np.where(region_a, hi * x_score + lo * x_gpa, hi * x_gpa + lo * x_score)
    return np.where(s >= 0.5, 1, -1).astype(np.int8)


def _simulate_judge(y, region_a, alpha, conf_noise, rng):
    n = y.shape[0]
    acc = np.where(region_a, alpha, 0.5)
    correct = rng.random(n) < acc
    y_h = np.where(correct, y, -y).astype(np.int8)
    conf_h = acc + rng.uniform(-conf_noise, conf_noise, size=n)
    np.clip(conf_h, 0.0, 1.0, out=conf_h)
    return y_h, conf_h


def generate(config: GenConfig) -> Dataset:
    """Draw one dataset. The same config always yields the same bits."""
    root = np.random.SeedSequence(config.seed)
    rng_feat, rng_region, rng_flip, rng_judge = (
        np.random.default_rng(s) for s in root.spawn(4))

    x = rng_feat.uniform(size=(config.n, 2))
    x_gpa, x_score = x[:, 0].copy(), x[:, 1].copy()
    region_a = rng_region.random(config.n) < config.p
    y = admission_labels(x_gpa, x_score, region_a, config.delta)
    keep = rng_flip.random(config.n) < config.label_flip_certainty
    reported_a = np.where(keep, region_a, ~region_a)
    y_h, conf_h = _simulate_judge(y, region_a, config.alpha, config.conf_noise,
                                  rng_judge)
    return Dataset(x_gpa, x_score, y, region_a, reported_a, y_h, conf_h)


def simulate_human(data: Dataset, alpha, conf_noise, seed) -> Dataset:
    """Re-draw the judge columns of an existing dataset.

    Useful for holding features and labels fixed while sweeping judge
    quality. Returns a new Dataset; the input is not modified.
    """
    _check_interval("alpha", alpha, 0.0, 1.0)
    _check_interval("conf_noise", conf_noise, 0.0, 0.5)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    y_h, conf_h = _simulate_judge(data.y, data.region_a, alpha, conf_noise, rng)
    return Dataset(data.x_gpa, data.x_score, data.y, data.region_a,
                   data.reported_a, y_h, conf_h)
