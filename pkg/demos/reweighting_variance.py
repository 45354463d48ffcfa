"""Why not just feed reweighted data to an ordinary density SiZer?

Under censoring each event carries a weight of one over the censoring
survival curve, so late events can count for several observations. An
ordinary SiZer would treat a weight-3 point as three independent points
and understate its variability. The reweighted sd keeps it as one point.
"""

import numpy as np

from censored_sizer import Family, SyntheticSpec, direct_estimate, generate, observation_weights

sample = generate(SyntheticSpec(Family("exponential"), n=80, seed=5, censor_rate=1.0))
weights = observation_weights(sample, "censored-density").weights
heaviest = int(np.argmax(weights))
h = 0.05
x = sample.times[heaviest] + h  # the kernel slope vanishes at the point itself

reweighted_sd = direct_estimate(sample, "censored-density", x, h)[2]
naive_sd = direct_estimate(sample, "censored-density", x, h, weights=(weights > 0).astype(float))[2]

print(f"heaviest event at t={sample.times[heaviest]:.3f} has weight {weights[heaviest]:.2f}")
print(f"sd of the derivative there: reweighted {reweighted_sd:.3e}, unweighted {naive_sd:.3e}")
