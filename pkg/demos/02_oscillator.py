# # Periodic solutions of u'' + omega^2 u = h
#
# A 2 pi periodic solution exists when h has no component along the kernel
# cos(omega t), sin(omega t). The spectral solve divides each harmonic by
# omega^2 - n^2.

import numpy as np

from forcedosc import HarmonicSeries, KernelCoeffs, particular_solution, resonance_check, voc_oracle
from forcedosc.errors import ResonanceError
from forcedosc.oscillator import apply_operator, kernel_distance, residual_sup, voc_closure

h = HarmonicSeries.from_harmonics(1.0, [(2, 1.0, 0.0), (3, 0.5, 0.2)])
print(resonance_check(h, 1))

u = particular_solution(h, 1)
print("u =", u)
print("sup |u'' + u - h| =", residual_sup(u, h, 1))

# ## A second opinion: variation of constants
#
# At omega = 1 the solution with u(0) = alpha, u'(0) = beta is
# alpha cos t + beta sin t + integral of sin(t - s) h(s) ds.
# It differs from the spectral solution only by a kernel element.
k = KernelCoeffs(0.7, -1.2)
oracle = voc_oracle(h, k)
print("distance modulo kernel:", kernel_distance(oracle, u, 1))

# ## Resonance
#
# Forcing with cos t pumps energy in at the natural frequency. The integral
# formula no longer closes up: the slope drifts by pi over one period.
print("closure defect for cos t:", voc_closure(np.cos))
try:
    particular_solution(HarmonicSeries.cos(1), 1)
except ResonanceError as err:
    print("spectral solve refuses:", err)

# Noninteger frequencies never resonate with a periodic forcing.
print(particular_solution(HarmonicSeries.cos(2), 2.5))
print(apply_operator(particular_solution(h, 2.5), 2.5).distance(h))
