"""
Periodic solutions of u'' + omega^2 u = h(theta) for 2 pi-periodic h.

The spectral solver divides termwise; the variation-of-constants grid solver
is an independent physical-space route used to cross-check it at omega = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ResonanceError
from .trig import (DEFAULT_GRID, TWO_PI, CircleGrid, HarmonicSeries, differentiate,
                   grid_points, synthesize)


@dataclass(frozen=True)
class Frequency:
    omega: float

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError("omega must be positive")
        object.__setattr__(self, "omega", float(self.omega))

    @property
    def is_integer(self) -> bool:
        return abs(self.omega - round(self.omega)) <= 1e-12

    @property
    def n(self) -> int:
        """The resonant harmonic index; only meaningful for integer omega."""
        return int(round(self.omega))


def as_frequency(w) -> Frequency:
    return w if isinstance(w, Frequency) else Frequency(w)


@dataclass(frozen=True)
class ResonanceReport:
    cos_coeff: float
    sin_coeff: float
    tolerance: float
    omega: float = 0.0

    @property
    def passes(self) -> bool:
        return max(abs(self.cos_coeff), abs(self.sin_coeff)) <= self.tolerance

    def to_dict(self) -> dict:
        return {"cos": self.cos_coeff, "sin": self.sin_coeff, "tolerance": self.tolerance,
                "omega": self.omega, "passes": self.passes}

    @classmethod
    def from_dict(cls, data: dict) -> "ResonanceReport":
        from .schemas import validate

        validate(data, "resonance_report")
        report = cls(data["cos"], data["sin"], data.get("tolerance", 0.0), data.get("omega", 0.0))
        if "tolerance" in data and report.passes != data["passes"]:
            raise ValueError("'passes' disagrees with the stored coefficients")
        return report


@dataclass(frozen=True)
class KernelCoeffs:
    """alpha sin(omega theta) + beta cos(omega theta)."""

    alpha: float = 0.0
    beta: float = 0.0


def default_tolerance(h: HarmonicSeries) -> float:
    sup = float(np.abs(synthesize(h, max(DEFAULT_GRID, 2 * h.degree + 2)).values).max())
    return 1e-9 * (1.0 + sup)


def resonance_check(h: HarmonicSeries, w, tol: float | None = None) -> ResonanceReport:
    """The integrals of h cos(omega theta), h sin(omega theta) over one period."""
    w = as_frequency(w)
    if tol is None:
        tol = default_tolerance(h)
    if not w.is_integer:
        return ResonanceReport(0.0, 0.0, tol, w.omega)
    a, b = h.coefficient(w.n)
    return ResonanceReport(np.pi * a, np.pi * b, tol, w.omega)


def particular_solution(h: HarmonicSeries, w, tol: float | None = None) -> HarmonicSeries:
    """Periodic solution with no component along the kernel.

    Raises ``ResonanceError`` if h has a harmonic at an integer omega above
    ``tol``; a sub-tolerance resonant harmonic is dropped.
    """
    w = as_frequency(w)
    if w.is_integer:
        report = resonance_check(h, w, tol)
        if not report.passes:
            raise ResonanceError(report)
        h = h.without(w.n)
    n = h.n.astype(float)
    denom = w.omega**2 - n**2
    if w.is_integer and w.n <= h.size:
        denom[w.n - 1] = 1.0  # that harmonic is already zero
    return HarmonicSeries(h.a0 / w.omega**2, h.a / denom, h.b / denom)


def attach_kernel(u_p: HarmonicSeries, w, k: KernelCoeffs) -> HarmonicSeries:
    w = as_frequency(w)
    if not w.is_integer:
        raise ValueError("the kernel is trivial for noninteger omega")
    return u_p + HarmonicSeries.from_harmonics(0.0, [(w.n, k.beta, k.alpha)])


def apply_operator(u: HarmonicSeries, w) -> HarmonicSeries:
    """u'' + omega^2 u."""
    w = as_frequency(w)
    return differentiate(u, 2) + w.omega**2 * u


def residual_sup(u: HarmonicSeries, h: HarmonicSeries, w, m: int = DEFAULT_GRID) -> float:
    r = apply_operator(u, w) - h
    return float(np.abs(synthesize(r, max(m, 2 * r.degree + 2)).values).max())


# --------------------------------------------------------------------------
# Variation of constants (omega = 1)

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(10)


def _cumulative_moments(h: Callable, m: int):
    """theta_0..theta_m and the running integrals of h cos, h sin from 0."""
    theta = TWO_PI * np.arange(m + 1) / m
    half = 0.5 * TWO_PI / m
    mid = 0.5 * (theta[:-1] + theta[1:])
    tau = mid[:, None] + half * _GL_NODES[None, :]
    ht = np.asarray(h(tau), dtype=float)
    wts = half * _GL_WEIGHTS
    ic = np.concatenate([[0.0], np.cumsum((ht * np.cos(tau)) @ wts)])
    is_ = np.concatenate([[0.0], np.cumsum((ht * np.sin(tau)) @ wts)])
    return theta, ic, is_


def voc_values(h: Callable, k: KernelCoeffs = KernelCoeffs(), m: int = DEFAULT_GRID):
    """Variation-of-constants solution on the closed grid theta_0..theta_m = 2 pi.

    u(theta) = (alpha + int_0^theta h cos) sin theta - (beta + int_0^theta h sin) cos theta

    Cell integrals use 10-point Gauss-Legendre, so for smooth h the cumulative
    integrals are exact to rounding.
    """
    theta, ic, is_ = _cumulative_moments(h, m)
    return theta, (k.alpha + ic) * np.sin(theta) - (k.beta + is_) * np.cos(theta)


def voc_oracle(h: Callable, k: KernelCoeffs = KernelCoeffs(), m: int = DEFAULT_GRID) -> CircleGrid:
    _, u = voc_values(h, k, m)
    return CircleGrid(m, u[:-1])


def voc_closure(h: Callable, k: KernelCoeffs = KernelCoeffs(), m: int = DEFAULT_GRID) -> tuple[float, float]:
    """(u(2 pi) - u(0), u'(2 pi) - u'(0)) for the variation-of-constants solution.

    Both vanish iff the solution is 2 pi-periodic. The value defect alone can
    miss resonance: for h = cos theta the secular term (theta/2) sin theta is
    zero at both ends.
    """
    theta, ic, is_ = _cumulative_moments(h, m)
    u = (k.alpha + ic) * np.sin(theta) - (k.beta + is_) * np.cos(theta)
    du = (k.alpha + ic) * np.cos(theta) + (k.beta + is_) * np.sin(theta)
    return float(u[-1] - u[0]), float(du[-1] - du[0])


def project_out_kernel(g: CircleGrid, w) -> tuple[CircleGrid, KernelCoeffs]:
    """Least-squares removal of alpha sin(omega theta) + beta cos(omega theta)."""
    w = as_frequency(w)
    theta = g.theta
    basis = np.column_stack([np.sin(w.omega * theta), np.cos(w.omega * theta)])
    coef, *_ = np.linalg.lstsq(basis, g.values, rcond=None)
    return CircleGrid(g.m, g.values - basis @ coef), KernelCoeffs(*map(float, coef))


def kernel_distance(u_grid: CircleGrid, u_series: HarmonicSeries, w) -> float:
    """sup |u_grid - u_series| after removing the best-fitting kernel element."""
    diff = CircleGrid(u_grid.m, u_grid.values - u_series(grid_points(u_grid.m)))
    resid, _ = project_out_kernel(diff, w)
    return float(np.abs(resid.values).max())
