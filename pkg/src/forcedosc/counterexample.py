"""
Positive forcings without positive periodic solutions, omega >= 3.

u_star is built so that u_star'' + omega^2 u_star > 0 while u_star is negative
at 0 and 3 pi/omega. Every periodic solution for h = u_star'' + omega^2 u_star
differs from u_star by alpha sin(omega theta) + beta cos(omega theta), which
takes opposite values at those two points, so no solution is positive.

The piecewise u_star is C^1 only. It is smoothed by convolution with an even
bump; since the operator commutes with convolution, the smoothed pair still
solves the equation and h stays above omega^2 / 2.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .errors import CertificationError, PreconditionError
from .oscillator import ResonanceReport, apply_operator, particular_solution, resonance_check
from .positivity import (MarginReport, NonexistenceCertificate, nonexistence_search,
                         positivity_margin)
from .trig import (TWO_PI, BoundCertificate, CircleGrid, HarmonicSeries, MollifierSpec,
                   analyze, grid_points, refined_lower_bound, synthesize, trapezoid_mean)

DEFAULT_M = 8192


def _check_omega(omega) -> int:
    if int(omega) != omega or omega < 3:
        raise PreconditionError(f"construction needs an integer omega >= 3, got {omega}")
    return int(omega)


def _wrap(theta):
    """Representative in [-pi, pi)."""
    return np.mod(np.asarray(theta, dtype=float) + np.pi, TWO_PI) - np.pi


def u_star_value(theta, omega: int):
    """The C^1 piecewise function, evaluated exactly."""
    t = np.abs(_wrap(theta))
    p = np.pi / omega
    return np.where(t <= p, 0.5 - np.cos(omega * t),
                    np.where(t <= 2 * p, 1.5, 0.5 + np.cos(omega * t)))


def u_star_second_derivative(theta, omega: int):
    """u_star'' on the open pieces (one-sided values at the junctions)."""
    t = np.abs(_wrap(theta))
    p = np.pi / omega
    w2 = omega**2
    return np.where(t < p, w2 * np.cos(omega * t),
                    np.where(t <= 2 * p, 0.0, -w2 * np.cos(omega * t)))


def h_star_value(theta, omega: int):
    """u_star'' + omega^2 u_star: omega^2/2 on the cosine arcs, 3 omega^2/2 on the plateaus."""
    t = np.abs(_wrap(theta))
    p = np.pi / omega
    return np.where((t > p) & (t < 2 * p), 1.5 * omega**2, 0.5 * omega**2)


def junctions(omega: int) -> np.ndarray:
    p = np.pi / omega
    return np.array([p, 2 * p, TWO_PI - 2 * p, TWO_PI - p])


def u_star_piecewise(omega: int, m: int = DEFAULT_M) -> CircleGrid:
    omega = _check_omega(omega)
    if m < 1024:
        raise ValueError("m must be at least 1024")
    return CircleGrid(m, u_star_value(grid_points(m), omega))


def _int_cos(k, lo: float, hi: float):
    """integral of cos(k t) over [lo, hi], elementwise in k."""
    k = np.asarray(k, dtype=float)
    safe = np.where(k == 0, 1.0, k)
    return np.where(k == 0, hi - lo, (np.sin(safe * hi) - np.sin(safe * lo)) / safe)


def u_star_series(omega: int, n_max: int) -> HarmonicSeries:
    """Exact Fourier coefficients of the piecewise u_star up to ``n_max``.

    u_star is even, so only cosines appear:
    a_n = (2/pi) * integral over [0, pi] of u_star cos(n t).
    """
    omega = _check_omega(omega)
    p = np.pi / omega
    n = np.arange(n_max + 1)
    # arc [0, p]: 1/2 - cos(omega t); plateau [p, 2p]: 3/2; arc [2p, pi]: 1/2 + cos(omega t)
    total = 0.5 * _int_cos(n, 0, p) - 0.5 * (_int_cos(n - omega, 0, p) + _int_cos(n + omega, 0, p))
    total += 1.5 * _int_cos(n, p, 2 * p)
    total += 0.5 * _int_cos(n, 2 * p, np.pi) + 0.5 * (_int_cos(n - omega, 2 * p, np.pi)
                                                      + _int_cos(n + omega, 2 * p, np.pi))
    a0 = total[0] / np.pi
    return HarmonicSeries(a0, 2.0 * total[1:] / np.pi, np.zeros(n_max))


def u_star_trigpoly() -> HarmonicSeries:
    """1 - 2 cos 2 theta - cos 4 theta, a smooth alternative for omega = 3."""
    return HarmonicSeries.from_harmonics(1.0, [(2, -2.0, 0.0), (4, -1.0, 0.0)])


def default_epsilon(omega: int) -> float:
    return np.pi / (4 * omega)


def mollified_u_star(omega: int, phi: MollifierSpec, n_max: int) -> HarmonicSeries:
    mult = phi.fourier_multipliers(n_max)
    base = u_star_series(omega, n_max)
    return HarmonicSeries(base.a0 * mult[0], base.a * mult[1:], base.b)


def mollified_h_direct(theta, omega: int, phi: MollifierSpec) -> np.ndarray:
    """h_star * phi in physical space, through the cumulative distribution of phi.

    h_star = omega^2/2 + omega^2 * [indicator of the two plateaus], so the
    convolution is omega^2/2 + omega^2 * P(theta - s lands on a plateau).
    """
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    p = np.pi / omega
    out = np.full(theta.shape, 0.5 * omega**2)
    for center in (1.5 * p, -1.5 * p):
        # P(|x - s| <= p/2) = F(x + p/2) - F(x - p/2), x the offset from the plateau centre
        x = _wrap(theta - center)
        out += omega**2 * (phi.cdf(x + 0.5 * p) - phi.cdf(x - 0.5 * p))
    return out


@dataclass(frozen=True, eq=False)
class CounterexampleBundle:
    omega: int
    variant: str
    u_star: HarmonicSeries | CircleGrid
    h: HarmonicSeries
    h_positivity: BoundCertificate
    resonance: ResonanceReport
    nonexistence: NonexistenceCertificate
    margin: MarginReport
    mollifier: MollifierSpec | None = None
    grid_m: int = DEFAULT_M

    @property
    def epsilon(self) -> float | None:
        return None if self.mollifier is None else self.mollifier.epsilon

    def solution(self) -> HarmonicSeries:
        """Canonical periodic solution for the forcing h."""
        return particular_solution(self.h, self.omega)

    def u_star_function(self) -> HarmonicSeries:
        """u_star as a series (the stored grid is interpolated for the piecewise variant)."""
        if isinstance(self.u_star, HarmonicSeries):
            return self.u_star
        return analyze(self.u_star, self.u_star.m // 2 - 1)

    def to_dict(self) -> dict:
        return {
            "omega": self.omega,
            "variant": self.variant,
            "epsilon": self.epsilon,
            "grid_m": self.grid_m,
            "u_star": self.u_star.to_dict(),
            "h": self.h.to_dict(),
            "h_positivity": self.h_positivity.to_dict(),
            "resonance": self.resonance.to_dict(),
            "nonexistence": self.nonexistence.to_dict(),
            "margin": self.margin.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict, verify: bool = True) -> "CounterexampleBundle":
        """Load a bundle; by default its three certificates are recomputed from h."""
        from .schemas import validate

        validate(data, "counterexample_bundle")
        omega = _check_omega(data["omega"])
        u_raw = data["u_star"]
        u_star = CircleGrid.from_dict(u_raw) if "values" in u_raw else HarmonicSeries.from_dict(u_raw)
        h = HarmonicSeries.from_dict(data["h"])
        eps = data.get("epsilon")
        phi = None if eps is None else MollifierSpec(eps)
        grid_m = data.get("grid_m", DEFAULT_M)
        if verify:
            cert, resonance, nonex, margin = _certify(h, omega, grid_m)
            _require(cert, resonance, nonex, omega, data["variant"])
            stored = BoundCertificate.from_dict(data["h_positivity"])
            if not np.isclose(stored.certified_lower_bound, cert.certified_lower_bound,
                              rtol=1e-9, atol=1e-9):
                raise CertificationError("stored positivity certificate does not reproduce", cert)
        else:
            cert = BoundCertificate.from_dict(data["h_positivity"])
            resonance = ResonanceReport.from_dict(data["resonance"])
            nonex = NonexistenceCertificate.from_dict(data["nonexistence"])
            margin = MarginReport.from_dict(data["margin"]) if "margin" in data else None
        return cls(omega, data["variant"], u_star, h, cert, resonance, nonex, margin, phi, grid_m)

    def digest(self) -> str:
        text = json.dumps(self.to_dict(), sort_keys=True)
        return hashlib.sha256(text.encode()).hexdigest()


def _certify(h: HarmonicSeries, omega: int, m: int):
    cert = refined_lower_bound(h, tol=1e-10)
    resonance = resonance_check(h, omega)
    u_p = particular_solution(h, omega) if resonance.passes else None
    nonex = None if u_p is None else nonexistence_search(u_p, omega)
    margin = None if u_p is None else positivity_margin(u_p, omega, m)
    return cert, resonance, nonex, margin


def _require(cert, resonance, nonex, omega, variant):
    floor = 0.0 if variant == "trigpoly" else 0.5 * omega**2 - 1e-6
    if not cert.certified_lower_bound > 0 or cert.certified_lower_bound < floor:
        raise CertificationError(
            f"h not certified above {floor:.6g} (bound {cert.certified_lower_bound:.6g})", cert)
    if not resonance.passes:
        raise CertificationError("forcing is resonant", resonance)
    if nonex is None or nonex.sum >= -0.5:
        raise CertificationError("no nonexistence certificate with sum < -1/2", nonex)


def build_counterexample(omega: int, epsilon: float | None = None, m: int = DEFAULT_M,
                         variant: str | None = None) -> CounterexampleBundle:
    """Forcing h > 0, nonresonant at omega, for which no periodic solution is positive.

    ``variant`` is "trigpoly" (omega = 3 only; the default there when no
    epsilon is given) or "piecewise" (the mollified construction, default
    epsilon pi / (4 omega), required below pi / (3 omega)).
    """
    omega = _check_omega(omega)
    if variant is None:
        variant = "trigpoly" if (omega == 3 and epsilon is None) else "piecewise"
    if variant == "trigpoly":
        if omega != 3:
            raise PreconditionError("the trigonometric-polynomial u_star is for omega = 3 only")
        u_star = u_star_trigpoly()
        phi = None
        h = apply_operator(u_star, omega)
        u_field = u_star
    elif variant == "piecewise":
        if epsilon is None:
            epsilon = default_epsilon(omega)
        if not 0 < epsilon < np.pi / (3 * omega):
            raise PreconditionError(
                f"epsilon={epsilon:.4g} outside (0, pi/(3 omega)) = (0, {np.pi / (3 * omega):.4g})")
        phi = MollifierSpec(epsilon)
        n_max = m // 2 - 1
        smooth = mollified_u_star(omega, phi, n_max)
        h = apply_operator(smooth, omega)
        # strip rounding-level tail coefficients
        h = h.trimmed(1e-15 * h.mass())
        u_field = synthesize(smooth, m)
    else:
        raise ValueError(f"unknown variant {variant!r}")

    cert, resonance, nonex, margin = _certify(h, omega, m)
    _require(cert, resonance, nonex, omega, variant)
    return CounterexampleBundle(omega, variant, u_field, h, cert, resonance, nonex, margin, phi, m)


def _as_grid(u, m: int) -> CircleGrid:
    return u if isinstance(u, CircleGrid) else synthesize(u, m)


def symmetry_and_open_question_report(bundle: CounterexampleBundle) -> dict:
    """Symmetry defects of u_star and low-harmonic integrals of h.

    The harmonic-1 integrals are expected to vanish for omega = 3 (evenness
    plus the reflection about pi/2). The harmonic-2 integrals are reported
    without any expectation.
    """
    m = bundle.grid_m
    g = _as_grid(bundle.u_star, m)
    v = g.values
    evenness = float(np.abs(v[(-np.arange(m)) % m] - v).max())
    half_turn = None
    if bundle.omega == 3 and m % 4 == 0:
        q = m // 4
        k = np.arange(m)
        half_turn = float(np.abs(v[(q + k) % m] - v[(q - k) % m]).max())
    hv = synthesize(bundle.h, max(m, 2 * bundle.h.degree + 2))
    theta = hv.theta

    def moment(f):
        return TWO_PI * trapezoid_mean(hv.values * f(theta))

    h1 = (moment(lambda t: np.cos(t)), moment(lambda t: np.sin(t)))
    h2 = (moment(lambda t: np.cos(2 * t)), moment(lambda t: np.sin(2 * t)))
    return {
        "omega": bundle.omega,
        "variant": bundle.variant,
        "evenness_defect": evenness,
        "half_turn_defect": half_turn,
        "harmonic1": {"cos": h1[0], "sin": h1[1], "vanishing_expected": bundle.omega == 3},
        "harmonic2": {"cos": h2[0], "sin": h2[1],
                      "vanishes": bool(max(map(abs, h2)) <= 1e-9)},
    }


def commutation_defect(omega: int, phi: MollifierSpec, m: int = DEFAULT_M) -> float:
    """sup over the grid of |(u_star*phi)'' + omega^2 (u_star*phi) - h_star*phi|.

    Left side spectrally from exact Fourier data, right side in physical
    space; the two routes share only the mollifier.
    """
    smooth = mollified_u_star(omega, phi, m // 2 - 1)
    lhs = synthesize(apply_operator(smooth, omega), m).values
    rhs = mollified_h_direct(grid_points(m), omega, phi)
    return float(np.abs(lhs - rhs).max())


def _round(x, digits: int = 12):
    return None if x is None else float(f"{x:.{digits}g}")


def explore_omega2(seed: int, trials: int, degree: int = 8, m: int = 1024) -> dict:
    """Random search over even u with no cos 2 theta term and u'' + 4u > 0.

    Each trial draws cosine coefficients a_n ~ N(0, 1/n^2) for n != 2 and
    places the constant term so that min(u'' + 4u) lands at a random offset
    in [-1/4, 1); candidates whose forcing is not certified positive are
    recorded as rejected. For accepted ones the canonical solution's kernel
    margin at omega = 2 is computed on an m-grid. The report is evidence
    only: a negative grid margin is not a proof of anything.
    """
    if degree > 16:
        raise ValueError("degree must be at most 16")
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    ns = [n for n in range(1, degree + 1) if n != 2]
    children = np.random.SeedSequence(seed).spawn(trials)
    candidates = []
    for trial, child in enumerate(children):
        rng = np.random.default_rng(child)
        coeffs = rng.normal(size=len(ns)) / np.array(ns, dtype=float) if ns else np.zeros(0)
        offset = rng.uniform(-0.25, 1.0)
        rest = HarmonicSeries.from_harmonics(0.0, [(n, c, 0.0) for n, c in zip(ns, coeffs)])
        h_rest = apply_operator(rest, 2)
        floor = synthesize(h_rest, max(m, 2 * h_rest.degree + 2)).values.min() if ns else 0.0
        u_cand = rest + (offset - floor) / 4.0
        h = apply_operator(u_cand, 2)
        cert = refined_lower_bound(h, tol=1e-8, threshold=0.0, m=m)
        record = {
            "trial": trial,
            "accepted": bool(cert.certified_lower_bound > 0),
            "u_cand": {"a0": _round(u_cand.a0),
                       "harmonics": [[n, _round(a), 0.0] for n, a, _ in u_cand.harmonics]},
            "h_certified_min": _round(cert.certified_lower_bound),
            "margin": None, "alpha": None, "beta": None,
        }
        if record["accepted"]:
            rep = positivity_margin(particular_solution(h, 2), 2, m)
            record.update(margin=_round(rep.margin), alpha=_round(rep.optimizer.alpha),
                          beta=_round(rep.optimizer.beta))
        candidates.append(record)
    margins = [c["margin"] for c in candidates if c["accepted"]]
    return {
        "seed": int(seed),
        "trials": int(trials),
        "degree": int(degree),
        "grid_m": int(m),
        "accepted": len(margins),
        "most_negative_margin": min(margins) if margins else None,
        "candidates": candidates,
    }
