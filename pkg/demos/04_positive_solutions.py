# # Positive forcing gives a positive solution at omega = 1
#
# If h >= 0 is not identically zero and has no first harmonic, some periodic
# solution of u'' + u = h is strictly positive. The construction solves the
# equation, lifts the solution to a convex homogeneous function and subtracts
# a supporting linear form, which is itself a kernel element.

import numpy as np

from forcedosc import HarmonicSeries, nonexistence_search, positive_solution, positivity_margin
from forcedosc.errors import PreconditionError

rng = np.random.default_rng(0)

# A nonnegative forcing: a square of an even-harmonic series has no first
# harmonic, so it is already nonresonant.
g = HarmonicSeries.from_harmonics(0.2, [(2, 0.8, 0.1), (4, -0.3, 0.4)])
h = g.product(g) + 0.05
print("h has first harmonic", h.coefficient(1))
result = positive_solution(h)
print("positive solution, min >= %.4f" % result.certificate.certified_lower_bound)
print("residual:", result.residual)

# The margin is the best achievable minimum over all kernel shifts. It is
# computed as a small max-min linear program on a grid.
report = positivity_margin(result.solution, 1)
print("margin %.4f, certified positive: %s" % (report.margin, report.certified_positive))
print("nonexistence certificate:", nonexistence_search(result.solution, 1))

# Random squares with the first harmonic removed. Removing it can push h
# below zero, and then the hypotheses fail and the solver says so.
for trial in range(6):
    c = 0.4 * rng.normal(size=(3, 2))
    g = HarmonicSeries.from_harmonics(1.0, [(n + 1, *c[n]) for n in range(3)])
    h = (g.product(g) + 1e-3).without(1)
    try:
        r = positive_solution(h)
        print(trial, "min u >= %.4f" % r.certificate.certified_lower_bound)
    except PreconditionError as err:
        print(trial, "rejected:", err)
