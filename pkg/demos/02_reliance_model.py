"""How the simulated decision maker uses (or ignores) the model.

The reliance model: the judge keeps their own answer whenever their
confidence clears a threshold tau drawn from a distribution; below it
they defer to the model with probability r, where r is one minus the
disagreement rate on the alignment region. One coin flip per instance
per draw, nothing else is random.

Two checks below: the closed-form expected team loss matches the Monte
Carlo simulation, and the loss decomposition identity holds exactly.
"""

import numpy as np

from tandem.behavior import (
    ThresholdDist,
    expected_team_loss,
    reliance,
    simulate_team_decisions,
    team_loss_decomposition,
)
from tandem.synthdata import GenConfig, generate

data = generate(GenConfig(n=3000, seed=11))
ft = ThresholdDist.uniform(0.0, 1.0)

# a deliberately mediocre model: right 75% of the time, wrong elsewhere
rng = np.random.default_rng(3)
flip = rng.random(len(data)) < 0.25
y_m = np.where(flip, -data.y, data.y)

state = reliance(y_m, data.y_h, data.region_a)
print(f"trust from alignment-region agreement: r = {state.r:.4f}")

closed = expected_team_loss(data.y, data.y_h, y_m, data.conf_h, ft, state.r)
print(f"closed-form expected team loss: {closed:.4f}")

for draws in (10, 100, 2000):
    sim = simulate_team_decisions(data.y_h, y_m, data.conf_h, ft, state.r,
                                  draws, rng=np.random.default_rng(0))
    err = float((sim != data.y[None, :]).mean())
    print(f"  simulated with {draws:>4} draws: {err:.4f}"
          f" (gap {abs(err - closed):.4f})")

parts = team_loss_decomposition(data.y, data.y_h, y_m, data.conf_h, ft, state.r)
print("\nloss decomposition:")
print(f"  judge above threshold: {parts['own_region_human']:.4f}")
print(f"  model below threshold: {parts['low_model']:.4f}")
print(f"  judge below threshold: {parts['low_human']:.4f}")
print(f"  identity total:        {parts['total']:.6f} vs closed {closed:.6f}")

# more trust helps exactly when the model beats the judge below threshold
print("\nteam loss as trust varies:")
for r in (0.0, 0.25, 0.5, 0.75, 1.0):
    loss = expected_team_loss(data.y, data.y_h, y_m, data.conf_h, ft, r)
    print(f"  r={r:.2f}: {loss:.4f}")
