"""
Degree-one positively homogeneous functions on the plane.

A periodic u determines rho(r e^{i theta}) = r u(theta). Convexity of rho is
read off from u'' + u, the condition rho(z) + rho(-z) > 0 from
u(theta) + u(theta + pi), and a strictly supporting linear form is built
coordinate by coordinate: first on the x-axis, then by choosing the
y-coefficient inside the interval left open by the x-axis choice.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import CertificationError, InconsistencyError, PreconditionError, StrictnessImpossible
from .trig import (BoundCertificate, HarmonicSeries, differentiate, refined_lower_bound)

CONVEXITY_TOL = 1e-9
ANTIPODAL_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class HomogeneousLift:
    restriction: HarmonicSeries

    def __call__(self, x, y):
        return lift_eval(self, x, y)


def lift(u: HarmonicSeries) -> HomogeneousLift:
    return HomogeneousLift(u)


def restrict(L: HomogeneousLift) -> HarmonicSeries:
    return L.restriction


def lift_eval(L: HomogeneousLift, x, y):
    """rho(x, y) = r u(atan2(y, x)); zero at the origin."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r = np.hypot(x, y)
    val = r * L.restriction(np.arctan2(y, x))
    val = np.where(r > 0, val, 0.0)
    return float(val) if val.ndim == 0 else val


def radial_hessian(L: HomogeneousLift, theta, r):
    """(u'' + u)(theta) / r.

    In the frame {e^{i theta}, i e^{i theta}} the Hessian of rho at
    r e^{i theta} is diag(0, this value).
    """
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("r must be positive")
    u = L.restriction
    k = differentiate(u, 2) + u
    val = k(theta) / r
    return float(val) if np.ndim(val) == 0 else val


def convexity_gap(u: HarmonicSeries, tol: float = 1e-10) -> BoundCertificate:
    """Certificate for min(u'' + u); rho is convex iff this is >= 0."""
    return refined_lower_bound(differentiate(u, 2) + u, tol=tol, threshold=-CONVEXITY_TOL)


def is_convex(cert: BoundCertificate, tol: float = CONVEXITY_TOL) -> bool:
    return cert.certified_lower_bound >= -tol


def antipodal_series(u: HarmonicSeries) -> HarmonicSeries:
    """u(theta) + u(theta + pi): odd harmonics cancel, even ones double."""
    odd = (u.n % 2) == 1
    return HarmonicSeries(2 * u.a0, np.where(odd, 0.0, 2 * u.a), np.where(odd, 0.0, 2 * u.b))


def antipodal_gap(u: HarmonicSeries, tol: float = 1e-10) -> BoundCertificate:
    """Certificate for min over theta of rho(z) + rho(-z) on the unit circle."""
    return refined_lower_bound(antipodal_series(u), tol=tol, threshold=ANTIPODAL_TOL)


def find_subadditivity_violation(u: HarmonicSeries, m: int = 4096):
    """Return (z1, z2, excess) with rho(z1 + z2) - rho(z1) - rho(z2) = excess > 0, or None.

    Looks around the minimizer of u'' + u: for z1, z2 = e^{i(theta0 -+ t)}
    the excess is about -t^2 (u'' + u)(theta0), so a negative value there
    yields a violation for small t.
    """
    k = differentiate(u, 2) + u
    theta = 2 * np.pi * np.arange(m) / m
    vals = k(theta)
    if vals.min() >= 0:
        return None
    L = lift(u)
    for idx in np.argsort(vals)[:8]:
        t0 = theta[idx]
        for t in (0.3, 0.1, 3e-2, 1e-2, 3e-3, 1e-3):
            z1 = np.array([np.cos(t0 - t), np.sin(t0 - t)])
            z2 = np.array([np.cos(t0 + t), np.sin(t0 + t)])
            s = z1 + z2
            excess = lift_eval(L, *s) - lift_eval(L, *z1) - lift_eval(L, *z2)
            if excess > 1e-12:
                return z1, z2, float(excess)
    return None


@dataclass(frozen=True, eq=False)
class SupportingForm:
    """(x, y) -> a x + b y, with a certificate for min of u - a cos - b sin."""

    a: float
    b: float
    margin: BoundCertificate

    @property
    def strict(self) -> bool:
        return self.margin.certified_lower_bound > 0

    def residual(self, u: HarmonicSeries) -> HarmonicSeries:
        return u - HarmonicSeries.from_harmonics(0.0, [(1, self.a, self.b)])

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "margin": self.margin.to_dict()}

    @classmethod
    def from_dict(cls, data: dict) -> "SupportingForm":
        from .schemas import validate

        validate(data, "supporting_form")
        return cls(data["a"], data["b"], BoundCertificate.from_dict(data["margin"]))


def _extremum(func, sign: float, z_start: float = 64.0, z_max: float = 2.0**40):
    """min over z of sign * func(z), bounded Brent search on a growing window."""
    z = z_start
    while True:
        res = minimize_scalar(lambda t: sign * func(t), bounds=(-z, z), method="bounded",
                              options={"xatol": 1e-12 * z})
        # coercive objective: an optimizer well inside the window is global
        if abs(res.x) < 0.5 * z or z >= z_max:
            return res.x, sign * res.fun
        z *= 8.0


def supporting_form_lemma3(u: HarmonicSeries, tol: float = 1e-9) -> SupportingForm:
    """Strictly supporting linear form for rho = lift of u (planar case).

    The x-coefficient is the midpoint of (-u(pi), u(0)), which is strictly
    supporting on the x-axis. Then with
        S1 = sup_z [a z - rho(z, -1)],  S2 = inf_z [rho(z, 1) - a z],
    any b in (S1, S2) makes a x + b y strictly supporting; the midpoint is used.
    """
    conv = convexity_gap(u)
    if not is_convex(conv):
        raise PreconditionError(f"lift is not convex: min(u''+u) >= {conv.certified_lower_bound:.3e} only")
    anti = antipodal_gap(u)
    if anti.certified_lower_bound <= ANTIPODAL_TOL:
        raise StrictnessImpossible(
            f"rho(z) + rho(-z) not certified positive (bound {anti.certified_lower_bound:.3e})")

    u0, upi = u(0.0), u(np.pi)
    a = 0.5 * (u0 - upi)

    def rho_up(z):
        return np.hypot(z, 1.0) * u(np.arctan2(1.0, z))

    def rho_down(z):
        return np.hypot(z, 1.0) * u(np.arctan2(-1.0, z))

    _, s1 = _extremum(lambda z: a * z - rho_down(z), -1.0)
    _, s2 = _extremum(lambda z: rho_up(z) - a * z, 1.0)
    if s1 >= s2 and s1 - s2 > tol:
        raise InconsistencyError(f"empty interval for b: S1={s1:.6g} > S2={s2:.6g}")
    b = 0.5 * (s1 + s2)

    residual = u - HarmonicSeries.from_harmonics(0.0, [(1, a, b)])
    margin = refined_lower_bound(residual, threshold=0.0)
    form = SupportingForm(float(a), float(b), margin)
    if not form.strict:
        raise CertificationError("supporting form could not be certified strict", margin)
    return form
