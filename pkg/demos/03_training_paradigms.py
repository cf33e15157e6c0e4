"""Train every single-model paradigm on the same data and score the teams.

Five ways to fit one linear model:

  standard         plain logistic regression on ground truth
  aligned          imitate the judge, weighted toward low-confidence mass
  complementary    ground truth, weighted toward high-confidence mass
  fixed_weight     interpolate the two specialist objectives at a chosen w
  behavior_aware   minimize a smooth stand-in for the team loss itself

The punchline: the model with the best solo accuracy is not the model
that makes the best teammate. Team accuracy depends on how the judge
routes, and the behavior-aware objective optimizes for that directly.
"""

import numpy as np

from tandem.behavior import ThresholdDist, expected_team_loss, reliance_weighted
from tandem.learn import (
    train_aligned,
    train_behavior_aware,
    train_complementary,
    train_fixed_weight,
    train_standard,
)
from tandem.synthdata import GenConfig, generate

train_data = generate(GenConfig(n=4000, seed=21))
test_data = generate(GenConfig(n=4000, seed=22))
ft = ThresholdDist.uniform(0.0, 1.0)

models = {
    "standard": train_standard(train_data, ft, seed=1),
    "aligned": train_aligned(train_data, ft, seed=2),
    "complementary": train_complementary(train_data, ft, seed=3),
    "fixed_weight(0.5)": train_fixed_weight(train_data, ft, 0.5, seed=4),
    "behavior_aware": train_behavior_aware(train_data, ft, seed=5, restarts=5),
}

# trust is set on the training split, frozen, then applied at test time
w_low = ft.weight_low(train_data.conf_h)
print(f"{'paradigm':<20} {'solo acc':>9} {'trust r':>8} {'team acc':>9}")
for name, model in models.items():
    y_m_train = model.predict(train_data.features)
    r = reliance_weighted(y_m_train, train_data.y_h, 1.0 - w_low).r

    y_m = model.predict(test_data.features)
    solo = float((y_m == test_data.y).mean())
    loss = expected_team_loss(test_data.y, test_data.y_h, y_m,
                              test_data.conf_h, ft, r)
    print(f"{name:<20} {solo:>9.4f} {r:>8.4f} {1.0 - loss:>9.4f}")

judge_solo = float((test_data.y_h == test_data.y).mean())
print(f"\njudge alone: {judge_solo:.4f}")

best = models["behavior_aware"]
print(f"\nbehavior_aware training: {best.meta['restarts']} restarts,"
      f" best was #{best.meta['best_restart']},"
      f" stop reason {best.meta['stop_reason']!r}")
