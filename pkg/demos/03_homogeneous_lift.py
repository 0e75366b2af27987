# # Degree-one homogeneous functions
#
# A function u on the circle lifts to rho(r cos t, r sin t) = r u(t) on the
# plane. The lift is convex exactly when u'' + u >= 0, and then it sits above
# a linear form a x + b y touching it along some direction.

import numpy as np

from forcedosc import HarmonicSeries, antipodal_gap, convexity_gap, lift, lift_eval, radial_hessian
from forcedosc.homogeneous import find_subadditivity_violation, is_convex, supporting_form_lemma3

u = HarmonicSeries.from_harmonics(1.0, [(2, -1 / 3, 0.0)])
gap = convexity_gap(u)
print("min of u'' + u >= %.2e, convex: %s" % (gap.certified_lower_bound, is_convex(gap)))

# The Hessian in polar frame has a single nonzero entry, (u'' + u) / r,
# in the tangential direction.
L = lift(u)
print("tangential Hessian at t = 0, r = 2:", radial_hessian(L, 0.0, 2.0))

# Convexity plus positivity on antipodal pairs gives a strictly positive
# residual after subtracting the best supporting form.
print("antipodal gap >=", antipodal_gap(u).certified_lower_bound)
form = supporting_form_lemma3(u)
print("form: %.4f x + %.4f y, residual min >= %.4f" % (form.a, form.b, form.margin.certified_lower_bound))

# ## When convexity fails
#
# For 1 + 0.5 cos 3t the quantity u'' + u dips to -3, and the lift breaks
# subadditivity somewhere: rho(z1 + z2) > rho(z1) + rho(z2).
bad = HarmonicSeries.from_harmonics(1.0, [(3, 0.5, 0.0)])
z1, z2, excess = find_subadditivity_violation(bad)
Lb = lift(bad)
print("z1 =", np.round(z1, 4), "z2 =", np.round(z2, 4), "excess = %.3e" % excess)
print("check:", lift_eval(Lb, *(z1 + z2)) - lift_eval(Lb, *z1) - lift_eval(Lb, *z2))
