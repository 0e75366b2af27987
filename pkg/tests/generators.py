"""Seeded random instances shared by the test modules."""

import numpy as np

from forcedosc.trig import HarmonicSeries, differentiate, refined_lower_bound


def random_series(rng, degree, scale=1.0, decay=1.0):
    n = np.arange(1, degree + 1, dtype=float)
    return HarmonicSeries(rng.normal() * scale, rng.normal(size=degree) * scale / n**decay,
                          rng.normal(size=degree) * scale / n**decay)


def nonnegative_forcing(rng, degree=8, floor=1e-3):
    """h = g^2 + floor with the first harmonic removed, kept only if still >= 0.

    Removing harmonic 1 from a nonnegative function can make it negative;
    such draws are rejected and redrawn, so every returned h is nonnegative,
    nonresonant at omega = 1 and of degree <= ``degree``.
    """
    half = degree // 2
    while True:
        g = random_series(rng, int(rng.integers(1, half + 1)))
        h = (g.product(g) + floor).without(1)
        if refined_lower_bound(h, tol=1e-10, threshold=0.0).certified_lower_bound > 0:
            return h


def convexity_family(rng, degree=6):
    """A series u and the offset min(u'' + u) it was built to have.

    The shape of u'' + u is random; the constant term places its minimum at
    a signed offset spread over several decades, or exactly at 0, or u is a
    pure linear form a cos + b sin (for which u'' + u vanishes).
    """
    kind = rng.choice(["convex", "concave", "flat", "linear"], p=[0.4, 0.4, 0.1, 0.1])
    if kind == "linear":
        return HarmonicSeries.from_harmonics(0.0, [(1, *rng.normal(size=2))]), 0.0
    shape = random_series(rng, degree, decay=2.0).without(1)
    k = differentiate(shape, 2) + HarmonicSeries(0.0, shape.a, shape.b)
    kmin = refined_lower_bound(k, tol=1e-12).certified_lower_bound
    offset = {"convex": 10 ** rng.uniform(-3, 0), "concave": -(10 ** rng.uniform(-2, 0)),
              "flat": 0.0}[str(kind)]
    first = HarmonicSeries.from_harmonics(0.0, [(1, *rng.normal(size=2))])
    u = HarmonicSeries(offset - kmin, shape.a, shape.b) + first
    return u, offset
