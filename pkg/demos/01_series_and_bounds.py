# # Trigonometric series on the circle
#
# Everything in forcedosc lives on the circle [0, 2 pi). Functions are stored as
# finite Fourier series and sampled on uniform grids when we need values.

import numpy as np

from forcedosc import HarmonicSeries, analyze, certified_lower_bound, differentiate, synthesize
from forcedosc.trig import refined_lower_bound

# A small series: 1 + cos 2t - 0.3 sin 3t
f = HarmonicSeries.from_harmonics(1.0, [(2, 1.0, 0.0), (3, 0.0, -0.3)])
print(f)

# Sampling and the discrete Fourier transform are exact inverses as long as the
# grid resolves every harmonic.
g = synthesize(f, 64)
print("round trip error:", analyze(g, 3).distance(f))

# Derivatives act on the coefficients.
print("f'' =", differentiate(f, 2))

# ## Certified minima
#
# A grid minimum only bounds the true minimum from above. Subtracting a
# Lipschitz or curvature slack turns it into a lower bound we can trust.
cert = certified_lower_bound(f, m=256)
print("grid min %.6f, certified %.6f" % (cert.grid_min, cert.certified_lower_bound))

# Refinement tightens the slack until it falls under a tolerance.
tight = refined_lower_bound(f, tol=1e-12)
print("refined: %.12f (slack %.1e)" % (tight.certified_lower_bound, tight.grid_min - tight.certified_lower_bound))

# Compare with a brute force scan
t = np.linspace(0, 2 * np.pi, 2_000_001)
print("dense scan:", f(t).min())
