# # No positive solution for omega >= 3
#
# At higher frequencies a positive forcing no longer guarantees a positive
# periodic solution. The kernel now has period 2 pi / omega, and it takes
# opposite values at t = 0 and t = 3 pi / omega. If u(0) + u(3 pi / omega) < 0,
# every periodic solution is negative at one of these points.

import numpy as np

from forcedosc import build_counterexample, symmetry_and_open_question_report

# ## A trigonometric polynomial at omega = 3
#
# u = 1 - 2 cos 2t - cos 4t gives h = 9 - 10 cos 2t + 7 cos 4t, whose minimum
# is 3/14 > 0, while u(0) + u(pi) = -4.
b = build_counterexample(3)
print("h >= %.6f" % b.h_positivity.certified_lower_bound)
print("certificate:", b.nonexistence)
print("margin:", b.margin.margin)

# ## Piecewise construction, smoothed
#
# A C^1 piecewise function built from arcs of the kernel, convolved with a
# bump of width epsilon so that h becomes smooth and stays above omega^2 / 2.
for omega in (3, 4, 5, 6):
    b = build_counterexample(omega, np.pi / (4 * omega), 8192)
    u = b.u_star_function()
    print("omega %d: h >= %.4f (omega^2/2 = %.1f), u(0) + u(3pi/omega) = %.4f"
          % (omega, b.h_positivity.certified_lower_bound, omega**2 / 2,
             u(0.0) + u(3 * np.pi / omega)))

# Save the omega = 3 profile for plotting.
b = build_counterexample(3, np.pi / 12, 8192)
b.u_star.to_csv("u_star_omega3.csv")
print("wrote u_star_omega3.csv")

# The first harmonic of h vanishes for the symmetric constructions.
report = symmetry_and_open_question_report(b)
print(report["harmonic1"], report["harmonic2"])
