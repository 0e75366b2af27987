"""
Existence of everywhere-positive periodic solutions.

Three tools: the omega = 1 construction through a strictly supporting form,
a max-min linear program over the kernel coefficients for integer omega, and
a nonexistence certificate from a pair of points where the kernel takes
opposite values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CertificationError, PreconditionError
from .homogeneous import SupportingForm, supporting_form_lemma3
from .oscillator import (KernelCoeffs, as_frequency, attach_kernel, particular_solution,
                         residual_sup)
from .simplex import maximin
from .trig import (DEFAULT_GRID, BoundCertificate, HarmonicSeries, certified_lower_bound,
                   grid_points, refined_lower_bound, synthesize)

NONNEG_TOL = 1e-9
RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class MarginReport:
    margin: float
    optimizer: KernelCoeffs
    grid_m: int
    certificate: BoundCertificate | None = None

    @property
    def certified_positive(self) -> bool:
        return self.certificate is not None and self.certificate.certified_lower_bound > 0

    def to_dict(self) -> dict:
        return {
            "margin": self.margin,
            "alpha": self.optimizer.alpha,
            "beta": self.optimizer.beta,
            "grid_m": self.grid_m,
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MarginReport":
        from .schemas import validate

        validate(data, "margin_report")
        cert = data.get("certificate")
        return cls(data["margin"], KernelCoeffs(data["alpha"], data["beta"]),
                   data.get("grid_m", DEFAULT_GRID),
                   None if cert is None else BoundCertificate.from_dict(cert))


@dataclass(frozen=True)
class NonexistenceCertificate:
    """u(j pi/omega) + u(k pi/omega) < 0 with j even, k odd.

    The kernel takes the values +beta and -beta at these two points, so the
    sum is the same for every periodic solution and one of the two values is
    always negative.
    """

    omega: int
    j: int
    k: int
    sum: float

    @property
    def theta1(self) -> float:
        return self.j * np.pi / self.omega

    @property
    def theta2(self) -> float:
        return self.k * np.pi / self.omega

    def to_dict(self) -> dict:
        return {"omega": self.omega, "j": self.j, "k": self.k, "sum": self.sum,
                "theta1": self.theta1, "theta2": self.theta2}

    @classmethod
    def from_dict(cls, data: dict) -> "NonexistenceCertificate":
        from .schemas import validate

        validate(data, "nonexistence_certificate")
        if data["k"] % 2 != 1:
            raise ValueError("k must be odd")
        return cls(data.get("omega", 1), data["j"], data["k"], data["sum"])

    def check(self, u: HarmonicSeries) -> float:
        """Recompute the sum for a solution ``u``."""
        return float(u(self.theta1) + u(self.theta2))


@dataclass(frozen=True)
class PositiveSolutionResult:
    solution: HarmonicSeries
    form: SupportingForm
    certificate: BoundCertificate
    residual: float

    def to_dict(self) -> dict:
        return {"solution": self.solution.to_dict(), "form": self.form.to_dict(),
                "certificate": self.certificate.to_dict(), "residual": self.residual}

    @classmethod
    def from_dict(cls, data: dict) -> "PositiveSolutionResult":
        from .schemas import validate

        validate(data, "positive_solution")
        return cls(HarmonicSeries.from_dict(data["solution"]), SupportingForm.from_dict(data["form"]),
                   BoundCertificate.from_dict(data["certificate"]), data.get("residual", 0.0))


def positivity_margin(u_p: HarmonicSeries, w, m: int = DEFAULT_GRID) -> MarginReport:
    """max over (alpha, beta) of min over the m-grid of u_p + alpha sin + beta cos.

    The reported certificate is a whole-circle lower bound for the solution
    at the optimizer.
    """
    w = as_frequency(w)
    m = max(m, 2 * u_p.degree + 2)
    if not w.is_integer:
        cert = refined_lower_bound(u_p, m=m)
        return MarginReport(cert.certified_lower_bound, KernelCoeffs(), m, cert)
    theta = grid_points(m)
    values = synthesize(u_p, m).values
    basis = np.column_stack([np.sin(w.n * theta), np.cos(w.n * theta)])
    _, (alpha, beta) = maximin(values, basis)
    k = KernelCoeffs(float(alpha), float(beta))
    margin = float((values + basis @ [alpha, beta]).min())
    cert = refined_lower_bound(attach_kernel(u_p, w, k), threshold=0.0, m=m)
    return MarginReport(margin, k, m, cert)


def nonexistence_search(u_p: HarmonicSeries, w) -> NonexistenceCertificate | None:
    """Most negative u_p(j pi/omega) + u_p(k pi/omega) over j even, k odd in [0, 2 omega)."""
    w = as_frequency(w)
    if not w.is_integer:
        raise ValueError("nonexistence pairs need integer omega")
    n = w.n
    idx = np.arange(2 * n)
    vals = u_p(idx * np.pi / n)
    even, odd = idx[0::2], idx[1::2]
    sums = vals[even][:, None] + vals[odd][None, :]
    i, j = np.unravel_index(int(np.argmin(sums)), sums.shape)
    best = float(sums[i, j])
    if best >= 0:
        return None
    return NonexistenceCertificate(n, int(even[i]), int(odd[j]), best)


def check_forcing(h: HarmonicSeries) -> BoundCertificate:
    """Hypotheses on h: nonnegative and not identically zero."""
    if h.mass() <= 1e-14:
        raise PreconditionError("h must not be identically zero")
    cert = refined_lower_bound(h, threshold=-NONNEG_TOL)
    if cert.certified_lower_bound < -NONNEG_TOL:
        raise PreconditionError(
            f"h takes negative values (certified min {cert.certified_lower_bound:.3e}, "
            f"grid min {cert.grid_min:.3e})")
    return cert


def positive_solution(h: HarmonicSeries, w=1.0, m: int = DEFAULT_GRID,
                      tol: float | None = None) -> PositiveSolutionResult:
    """Everywhere-positive periodic solution of u'' + u = h for h >= 0, h != 0.

    Takes the canonical solution f0, lifts it to the plane, and subtracts a
    strictly supporting linear form: u = f0 - a cos - b sin.
    """
    w = as_frequency(w)
    if not (w.is_integer and w.n == 1):
        raise PreconditionError("positive_solution requires omega = 1")
    check_forcing(h)
    f0 = particular_solution(h, w, tol)
    form = supporting_form_lemma3(f0)
    u = form.residual(f0)
    cert = certified_lower_bound(u, m)
    if cert.certified_lower_bound <= 0:
        cert = certified_lower_bound(u, 4 * m)
    if cert.certified_lower_bound <= 0:
        raise CertificationError("positive solution not certified at 4x resolution", cert)
    res = residual_sup(u, h, w)
    if res > RESIDUAL_TOL:
        raise CertificationError(f"residual {res:.3e} above {RESIDUAL_TOL}")
    return PositiveSolutionResult(u, form, cert, res)

