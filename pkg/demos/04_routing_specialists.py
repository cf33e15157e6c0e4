"""Route each instance to a specialist, with and without region labels.

Two policies over the same pair of specialists. The oracle reads the
judge's reported region tag. The real deployment story is rrs: route to
whichever specialist is more confident, no tags needed. The diagnostics
certify how much team accuracy that convenience can cost.
"""

import numpy as np

from tandem.behavior import ThresholdDist, expected_team_loss, reliance_weighted
from tandem.ensemble import (
    RoutingPolicy,
    misroute_entropy,
    route,
    routing_diagnostics,
)
from tandem.learn import train_aligned, train_complementary
from tandem.synthdata import GenConfig, generate

cfg = GenConfig(n=4000, delta=0.35, seed=31)
train_data = generate(cfg)
test_data = generate(cfg.with_updates(seed=32))
ft = ThresholdDist.uniform(0.0, 1.0)

aligned = train_aligned(train_data, ft, seed=1)
complementary = train_complementary(train_data, ft, seed=2)

w_low = ft.weight_low(train_data.conf_h)
print(f"{'policy':<10} {'solo acc':>9} {'team acc':>9} {'aligned share':>14}")
for kind in ("oracle", "rrs"):
    policy = RoutingPolicy(kind, aligned, complementary)
    result = route(policy, test_data)
    r = reliance_weighted(route(policy, train_data).y_m,
                          train_data.y_h, 1.0 - w_low).r
    solo = float((result.y_m == test_data.y).mean())
    loss = expected_team_loss(test_data.y, test_data.y_h, result.y_m,
                              test_data.conf_h, ft, r)
    print(f"{kind:<10} {solo:>9.4f} {1.0 - loss:>9.4f}"
          f" {result.chose_aligned.mean():>14.3f}")

rrs = RoutingPolicy("rrs", aligned, complementary)
diag = routing_diagnostics(rrs, test_data)

print("\nhow much team accuracy confidence routing is certified to cost:")
print(f"  specialist calibration gap: {diag.eps_calibration:.4f}")
print(f"  dominance failures:         {diag.dominance_rate:.4f}")
print(f"  disputed-instance cost:     {diag.suboptimality_eps:.4f}")
print(f"  certified slack (max):      {diag.certified_eps:.4f}")
print("the certificate is worst-case: here the premises fail often, so the")
print("slack is loose, while the observed oracle-to-rrs gap stays small.")

# separate story: when routing by noisy region tags instead of confidence,
# the misroute rate is capped by the tag posterior's entropy
noisy = generate(cfg.with_updates(seed=33, label_flip_certainty=0.85))
posterior = np.where(noisy.reported_a, 0.85, 0.15)
rate, h_bar = misroute_entropy(posterior)
print(f"\ntag routing at 85% tag certainty: misroute rate {rate:.4f},"
      f" entropy cap {h_bar / (2 * np.log(2)):.4f}")
