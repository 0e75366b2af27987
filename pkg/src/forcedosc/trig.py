"""
Finite trigonometric series on the circle.

Sampling, discrete Fourier analysis, termwise differentiation, circular
convolution with a smooth mollifier, and grid-based lower bounds that hold
on the whole circle.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy import integrate

from .errors import AliasingError

TWO_PI = 2.0 * np.pi
DEFAULT_GRID = 4096
MAX_GRID = 2**34  # finest refinement, as an equivalent uniform grid size
FFT_GRID_MAX = 2**22
DIRECT_EVAL_BUDGET = 2**24

_GL12_NODES, _GL12_WEIGHTS = np.polynomial.legendre.leggauss(12)


def _frozen(x) -> np.ndarray:
    arr = np.array(x, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class HarmonicSeries:
    """u(theta) = a0 + sum_n (a[n-1] cos n theta + b[n-1] sin n theta).

    Coefficients are stored densely; ``a[n-1]`` and ``b[n-1]`` belong to
    harmonic ``n``.
    """

    a0: float = 0.0
    a: np.ndarray = field(default_factory=lambda: _frozen([]))
    b: np.ndarray = field(default_factory=lambda: _frozen([]))

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float).ravel()
        b = np.asarray(self.b, dtype=float).ravel()
        n = max(a.size, b.size)
        a = np.pad(a, (0, n - a.size))
        b = np.pad(b, (0, n - b.size))
        if not (np.isfinite(a).all() and np.isfinite(b).all() and math.isfinite(self.a0)):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(self, "a", _frozen(a))
        object.__setattr__(self, "b", _frozen(b))

    @classmethod
    def from_harmonics(cls, a0: float, harmonics: Iterable[Sequence[float]] = ()) -> "HarmonicSeries":
        harmonics = [(int(n), float(an), float(bn)) for n, an, bn in harmonics]
        ns = [n for n, _, _ in harmonics]
        if any(n < 1 for n in ns):
            raise ValueError("harmonic indices must be >= 1")
        if len(set(ns)) != len(ns):
            raise ValueError("harmonic indices must be distinct")
        size = max(ns, default=0)
        a = np.zeros(size)
        b = np.zeros(size)
        for n, an, bn in harmonics:
            a[n - 1] = an
            b[n - 1] = bn
        return cls(a0, a, b)

    @classmethod
    def constant(cls, c: float) -> "HarmonicSeries":
        return cls(c)

    @classmethod
    def cos(cls, n: int, amplitude: float = 1.0) -> "HarmonicSeries":
        return cls.from_harmonics(0.0, [(n, amplitude, 0.0)])

    @classmethod
    def sin(cls, n: int, amplitude: float = 1.0) -> "HarmonicSeries":
        return cls.from_harmonics(0.0, [(n, 0.0, amplitude)])

    @property
    def size(self) -> int:
        return self.a.size

    @property
    def n(self) -> np.ndarray:
        return np.arange(1, self.size + 1)

    @property
    def degree(self) -> int:
        nz = np.flatnonzero((self.a != 0) | (self.b != 0))
        return int(nz[-1]) + 1 if nz.size else 0

    @property
    def harmonics(self) -> list[tuple[int, float, float]]:
        """Nonzero harmonics as ``(n, a_n, b_n)`` triples."""
        nz = np.flatnonzero((self.a != 0) | (self.b != 0))
        return [(int(k) + 1, float(self.a[k]), float(self.b[k])) for k in nz]

    def coefficient(self, n: int) -> tuple[float, float]:
        if n == 0:
            return self.a0, 0.0
        if n > self.size:
            return 0.0, 0.0
        return float(self.a[n - 1]), float(self.b[n - 1])

    def padded(self, size: int) -> tuple[np.ndarray, np.ndarray]:
        size = max(size, self.size)
        return np.pad(self.a, (0, size - self.size)), np.pad(self.b, (0, size - self.size))

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        flat = theta.ravel()
        out = np.full(flat.shape, self.a0)
        deg = self.degree
        if deg:
            n = np.arange(1, deg + 1)
            a, b = self.a[:deg], self.b[:deg]
            # chunked to bound the size of the outer product
            step = max(1, 2**22 // deg)
            for lo in range(0, flat.size, step):
                arg = np.outer(flat[lo:lo + step], n)
                out[lo:lo + step] += np.cos(arg) @ a + np.sin(arg) @ b
        return out.reshape(theta.shape) if theta.ndim else float(out[0])

    def __add__(self, other):
        if isinstance(other, (int, float)):
            return HarmonicSeries(self.a0 + other, self.a, self.b)
        size = max(self.size, other.size)
        a1, b1 = self.padded(size)
        a2, b2 = other.padded(size)
        return HarmonicSeries(self.a0 + other.a0, a1 + a2, b1 + b2)

    __radd__ = __add__

    def __neg__(self):
        return HarmonicSeries(-self.a0, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        c = float(c)
        return HarmonicSeries(c * self.a0, c * self.a, c * self.b)

    __rmul__ = __mul__

    def product(self, other: "HarmonicSeries") -> "HarmonicSeries":
        """Pointwise product, computed exactly on a grid fine enough to avoid aliasing."""
        deg = self.degree + other.degree
        m = 2 * deg + 2
        grid = CircleGrid(m, synthesize(self, m).values * synthesize(other, m).values)
        return analyze(grid, deg) if deg else HarmonicSeries(grid.values[0])

    def shifted(self, phase: float) -> "HarmonicSeries":
        """theta -> u(theta + phase)."""
        n = self.n
        c, s = np.cos(n * phase), np.sin(n * phase)
        return HarmonicSeries(self.a0, self.a * c + self.b * s, self.b * c - self.a * s)

    def without(self, n: int) -> "HarmonicSeries":
        if n < 1 or n > self.size:
            return self
        a, b = self.a.copy(), self.b.copy()
        a[n - 1] = b[n - 1] = 0.0
        return HarmonicSeries(self.a0, a, b)

    def trimmed(self, atol: float = 0.0) -> "HarmonicSeries":
        """Zero coefficients at or below ``atol`` and drop trailing zeros."""
        a = np.where(np.abs(self.a) > atol, self.a, 0.0)
        b = np.where(np.abs(self.b) > atol, self.b, 0.0)
        out = HarmonicSeries(self.a0, a, b)
        deg = out.degree
        return HarmonicSeries(out.a0, out.a[:deg], out.b[:deg])

    def mass(self) -> float:
        """a0 plus the l1 norm of the harmonic coefficients; bounds sup|u|."""
        return abs(self.a0) + float(np.abs(self.a).sum() + np.abs(self.b).sum())

    def distance(self, other: "HarmonicSeries") -> float:
        """Largest coefficient difference."""
        d = self - other
        return max(abs(d.a0), float(np.abs(d.a).max(initial=0.0)), float(np.abs(d.b).max(initial=0.0)))

    def to_dict(self) -> dict:
        return {"a0": self.a0, "harmonics": [list(h) for h in self.harmonics]}

    @classmethod
    def from_dict(cls, data: dict) -> "HarmonicSeries":
        from .schemas import validate

        validate(data, "harmonic_series")
        return cls.from_harmonics(data["a0"], data["harmonics"])

    def __repr__(self):
        terms = ", ".join(f"({n}, {an:.6g}, {bn:.6g})" for n, an, bn in self.harmonics[:6])
        more = ", ..." if len(self.harmonics) > 6 else ""
        return f"HarmonicSeries(a0={self.a0:.6g}, [{terms}{more}])"


@dataclass(frozen=True, eq=False)
class CircleGrid:
    """Samples at theta_k = 2 pi k / m, k = 0..m-1."""

    m: int
    values: np.ndarray

    def __post_init__(self):
        values = _frozen(np.asarray(self.values, dtype=float).ravel())
        if self.m < 4:
            raise ValueError("grid needs at least 4 samples")
        if values.size != self.m:
            raise ValueError(f"expected {self.m} values, got {values.size}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "values", values)

    @classmethod
    def sample(cls, func: Callable, m: int) -> "CircleGrid":
        return cls(m, func(grid_points(m)))

    @property
    def spacing(self) -> float:
        return TWO_PI / self.m

    @property
    def theta(self) -> np.ndarray:
        return grid_points(self.m)

    def mean(self) -> float:
        return float(self.values.mean())

    def __add__(self, other):
        if isinstance(other, CircleGrid):
            return CircleGrid(self.m, self.values + other.values)
        return CircleGrid(self.m, self.values + other)

    def __sub__(self, other):
        if isinstance(other, CircleGrid):
            return CircleGrid(self.m, self.values - other.values)
        return CircleGrid(self.m, self.values - other)

    def to_dict(self) -> dict:
        return {"m": self.m, "values": self.values.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "CircleGrid":
        from .schemas import validate

        validate(data, "circle_grid")
        return cls(data["m"], data["values"])

    def to_csv(self, path) -> None:
        """Write ``theta,value`` rows for plotting."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["theta", "value"])
            for t, v in zip(self.theta, self.values):
                writer.writerow([repr(float(t)), repr(float(v))])


def grid_points(m: int) -> np.ndarray:
    return TWO_PI * np.arange(m) / m


def synthesize(f: HarmonicSeries, m: int) -> CircleGrid:
    """Sample ``f`` on the uniform m-grid (inverse real FFT).

    Harmonics above m/2 alias and are rejected; at exactly n = m/2 only the
    cosine part survives sampling, so a nonzero sine part is rejected too.
    """
    deg = f.degree
    if 2 * deg > m or (2 * deg == m and f.b[deg - 1] != 0.0):
        raise AliasingError(f"m={m} cannot resolve degree {deg}; need m >= {2 * deg + 2}")
    spec = np.zeros(m // 2 + 1, dtype=complex)
    spec[0] = m * f.a0
    top = min(deg, (m - 1) // 2)
    spec[1:top + 1] = 0.5 * m * (f.a[:top] - 1j * f.b[:top])
    if top < deg:
        spec[deg] = m * f.a[deg - 1]
    return CircleGrid(m, np.fft.irfft(spec, n=m))


def analyze(g: CircleGrid, n_max: int) -> HarmonicSeries:
    """Trigonometric interpolation coefficients up to harmonic ``n_max``."""
    if n_max < 0 or 2 * n_max >= g.m:
        raise AliasingError(f"n_max={n_max} must be below m/2={g.m / 2}")
    spec = np.fft.rfft(g.values) / g.m
    c = spec[1:n_max + 1]
    return HarmonicSeries(spec[0].real, 2.0 * c.real, -2.0 * c.imag)


def differentiate(f: HarmonicSeries, order: int = 1) -> HarmonicSeries:
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    n = f.n
    if order == 1:
        return HarmonicSeries(0.0, n * f.b, -n * f.a)
    return HarmonicSeries(0.0, -(n**2) * f.a, -(n**2) * f.b)


def trapezoid_mean(values: np.ndarray) -> float:
    """(1/2pi) * integral over the circle, uniform trapezoid rule."""
    return float(np.mean(values))


# --------------------------------------------------------------------------
# Mollifier


def bump(s):
    """exp(-1/(1-s^2)) on (-1, 1), zero elsewhere."""
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    inside = np.abs(s) < 1.0
    out[inside] = np.exp(-1.0 / (1.0 - s[inside] ** 2))
    return out


@dataclass(frozen=True, eq=False)
class MollifierSpec:
    """Even, nonnegative, unit-mass bump supported in [-epsilon, epsilon].

    ``shape`` is an unnormalized profile on the reference interval (-1, 1);
    the density is ``shape(t / epsilon) / (epsilon * Z)``.
    """

    epsilon: float
    shape: Callable = bump
    name: str = "bump"
    _norm: float = field(init=False, repr=False)

    def __post_init__(self):
        if not 0.0 < self.epsilon < np.pi:
            raise ValueError("epsilon must lie in (0, pi)")
        z, _ = integrate.quad(lambda s: float(self.shape(np.array([s]))[0]), -1.0, 1.0,
                              epsabs=1e-15, epsrel=1e-13, limit=200)
        object.__setattr__(self, "_norm", z)

    def __call__(self, t):
        """Normalized density phi(t)."""
        t = np.asarray(t, dtype=float)
        return self.shape(t / self.epsilon) / (self.epsilon * self._norm)

    def mass(self) -> float:
        val, _ = integrate.quad(lambda t: float(self(np.array([t]))[0]), -self.epsilon, self.epsilon,
                                epsabs=1e-15, epsrel=1e-13, limit=200)
        return val

    def cdf(self, t) -> np.ndarray:
        """integral of phi over (-inf, t], composite Gauss-Legendre."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.where(t >= self.epsilon, 1.0, 0.0)
        inside = np.abs(t) < self.epsilon
        if inside.any():
            lo = -self.epsilon
            hi = t[inside]
            # 16 panels of 12 nodes each between -epsilon and t
            edges = lo + (hi[:, None] - lo) * np.linspace(0.0, 1.0, 17)[None, :]
            half = 0.5 * (edges[:, 1:] - edges[:, :-1])
            mid = 0.5 * (edges[:, 1:] + edges[:, :-1])
            nodes = mid[..., None] + half[..., None] * _GL12_NODES
            out[inside] = np.sum(self(nodes) * _GL12_WEIGHTS * half[..., None], axis=(1, 2))
        return out

    def fourier_multipliers(self, n_max: int) -> np.ndarray:
        """integral of phi(s) cos(n s) ds for n = 0..n_max.

        Trapezoid rule on a fine periodic grid, evaluated with one real FFT.
        The bump is flat to all orders at the ends of its support, so the
        rule converges faster than any power of the spacing.
        """
        size = max(2**16, 4 * (n_max + 1), int(2**12 * np.pi / self.epsilon))
        size = 1 << int(np.ceil(np.log2(size)))
        s = TWO_PI * np.arange(size) / size
        s = np.where(s > np.pi, s - TWO_PI, s)
        spec = np.fft.rfft(self(s)) * (TWO_PI / size)
        return spec.real[:n_max + 1]

    def weights(self, m: int) -> np.ndarray:
        """Discrete kernel on the m-grid, wrapped, summing to one."""
        delta = TWO_PI / m
        half = int(np.floor(self.epsilon / delta))
        offsets = np.arange(-half, half + 1)
        w = self(offsets * delta)
        kernel = np.zeros(m)
        np.add.at(kernel, offsets % m, w)
        return kernel / kernel.sum()


def circular_convolve(g: CircleGrid, phi: MollifierSpec) -> CircleGrid:
    """out[k] = sum_j g[k-j] w_j with w_j proportional to phi(theta_j), sum w = 1."""
    if phi.epsilon < 2 * g.spacing:
        raise ValueError(f"epsilon={phi.epsilon:.3g} under-resolved on spacing {g.spacing:.3g}")
    kernel = phi.weights(g.m)
    out = np.fft.irfft(np.fft.rfft(g.values) * np.fft.rfft(kernel), n=g.m)
    return CircleGrid(g.m, out)


def mollify_series(f: HarmonicSeries, phi: MollifierSpec) -> HarmonicSeries:
    """Continuous convolution f * phi, termwise (phi even)."""
    mult = phi.fourier_multipliers(f.size)
    return HarmonicSeries(f.a0 * mult[0], f.a * mult[1:], f.b * mult[1:])


# --------------------------------------------------------------------------
# Certified lower bounds


@dataclass(frozen=True)
class BoundCertificate:
    """Lower bound on a periodic function valid on the whole circle.

    ``grid_min - lipschitz * spacing / 2`` is always valid. When a curvature
    bound (sup |f''|) is supplied, ``grid_min - curvature * spacing**2 / 8``
    is valid too (linear-interpolation error), and the larger of the two is
    reported.
    """

    grid_min: float
    lipschitz: float
    spacing: float
    curvature: float | None = None
    argmin: float | None = None

    def __post_init__(self):
        if self.lipschitz < 0 or (self.curvature is not None and self.curvature < 0):
            raise ValueError("derivative bounds must be nonnegative")

    @property
    def certified_lower_bound(self) -> float:
        bound = self.grid_min - 0.5 * self.lipschitz * self.spacing
        if self.curvature is not None:
            bound = max(bound, self.grid_min - 0.125 * self.curvature * self.spacing**2)
        return bound

    @property
    def slack(self) -> float:
        return self.grid_min - self.certified_lower_bound

    def to_dict(self) -> dict:
        return {
            "grid_min": self.grid_min,
            "lipschitz": self.lipschitz,
            "spacing": self.spacing,
            "curvature": self.curvature,
            "argmin": self.argmin,
            "certified_lower_bound": self.certified_lower_bound,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BoundCertificate":
        from .schemas import validate

        validate(data, "bound_certificate")
        cert = cls(data["grid_min"], data["lipschitz"], data["spacing"],
                   data.get("curvature"), data.get("argmin"))
        if not math.isclose(cert.certified_lower_bound, data["certified_lower_bound"],
                            rel_tol=1e-12, abs_tol=1e-15):
            raise ValueError("certified_lower_bound inconsistent with its ingredients")
        return cert


def lipschitz_bound(f: HarmonicSeries) -> float:
    return float(np.sum(f.n * (np.abs(f.a) + np.abs(f.b))))


def curvature_bound(f: HarmonicSeries) -> float:
    return float(np.sum(f.n**2 * np.hypot(f.a, f.b)))


def certified_lower_bound(f: HarmonicSeries, m: int = DEFAULT_GRID,
                          second_order: bool = True) -> BoundCertificate:
    """Certificate from the minimum of ``f`` over an m-grid.

    Guarantees ``f(theta) >= certified_lower_bound`` for every real theta,
    up to floating-point rounding in the samples.
    """
    m = max(m, 2 * f.degree + 2)
    values = synthesize(f, m).values
    k = int(np.argmin(values))
    return BoundCertificate(
        grid_min=float(values[k]),
        lipschitz=lipschitz_bound(f),
        spacing=TWO_PI / m,
        curvature=curvature_bound(f) if second_order else None,
        argmin=TWO_PI * k / m,
    )


def refined_lower_bound(f: HarmonicSeries, tol: float = 1e-10, threshold: float | None = None,
                        m: int = DEFAULT_GRID, m_max: int = MAX_GRID) -> BoundCertificate:
    """Certificate whose slack is at most ``tol`` where the grid budget allows.

    Branch and bound on grid cells: a cell [t, t + d] satisfies
    f >= min(f(t), f(t + d)) - slack(d), so cells whose bound already clears
    the best sample minus the final slack are dropped and only the rest are
    bisected. The returned certificate reads as a uniform grid of the finest
    spacing reached; every dropped cell is covered by its bound.

    With ``threshold`` set, the first certificate whose bound exceeds the
    threshold is returned, and so is the first sample at or below it.
    """

    def settled(c):
        return threshold is not None and (c.certified_lower_bound > threshold or c.grid_min <= threshold)

    m = max(m, 2 * f.degree + 2)
    cert = certified_lower_bound(f, m)
    if cert.slack <= tol or settled(cert):
        return cert
    lip, curv = cert.lipschitz, cert.curvature

    def slack(d):
        return min(0.5 * lip * d, 0.125 * curv * d * d)

    # finest spacing at which either bound meets tol, as m * 2^j within budget
    need = min(np.pi * lip / tol, TWO_PI * math.sqrt(curv / (8 * tol)) if curv else np.inf)
    levels = max(1, int(math.ceil(math.log2(need / m))))
    while levels > 0 and m << levels > max(m_max, m):
        levels -= 1
    d_final = TWO_PI / (m << levels)
    s_final = slack(d_final)

    values = synthesize(f, m).values
    left, lv, rv = grid_points(m), values, np.roll(values, -1)
    best, arg = cert.grid_min, cert.argmin
    d = TWO_PI / m
    for _ in range(levels):
        keep = np.minimum(lv, rv) - slack(d) < best - s_final
        left, lv, rv = left[keep], lv[keep], rv[keep]
        if left.size == 0:
            break
        cur = BoundCertificate(best, lip, d, curv, arg)
        if settled(cur):
            return cur
        d *= 0.5
        mid = left + d
        if mid.size * max(f.size, 1) <= DIRECT_EVAL_BUDGET:
            mv = np.asarray(f(mid), dtype=float)
        else:
            # wide flat minima keep many cells alive; sample them by FFT instead
            m_fine = int(round(TWO_PI / d))
            if m_fine > FFT_GRID_MAX:
                return BoundCertificate(best, lip, 2 * d, curv, arg)
            fine = synthesize(f, m_fine).values
            mv = fine[np.rint(mid / d).astype(np.int64) % m_fine]
        k = int(np.argmin(mv))
        if mv[k] < best:
            best, arg = float(mv[k]), float(mid[k] % TWO_PI)
        left = np.concatenate([left, mid])
        lv, rv = np.concatenate([lv, mv]), np.concatenate([mv, rv])
    return BoundCertificate(best, lip, d_final, curv, arg)
