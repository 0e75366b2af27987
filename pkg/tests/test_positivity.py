import numpy as np
import pytest

from forcedosc.errors import PreconditionError, ResonanceError
from forcedosc.oscillator import KernelCoeffs, attach_kernel, particular_solution, residual_sup
from forcedosc.positivity import (MarginReport, NonexistenceCertificate, PositiveSolutionResult,
                                  nonexistence_search, positive_solution, positivity_margin)
from forcedosc.trig import HarmonicSeries, refined_lower_bound

from generators import random_series, nonnegative_forcing

U_STAR3 = HarmonicSeries.from_harmonics(1.0, [(2, -2.0, 0.0), (4, -1.0, 0.0)])
U_SMOOTH = HarmonicSeries.from_harmonics(1.0, [(2, -1 / 3, 0.0)])


class TestMargin:
    def test_constant(self):
        rep = positivity_margin(HarmonicSeries.constant(1.0), 1)
        assert rep.margin == pytest.approx(1.0, abs=1e-12)
        assert abs(rep.optimizer.alpha) < 1e-12 and abs(rep.optimizer.beta) < 1e-12
        assert rep.certified_positive

    def test_cancels_linear_term(self):
        rep = positivity_margin(U_SMOOTH + HarmonicSeries.cos(1, -5.0), 1)
        assert rep.margin == pytest.approx(2 / 3, abs=1e-9)
        assert rep.optimizer.beta == pytest.approx(5.0, abs=1e-6)

    def test_linear_perturbation_formula(self):
        # min over c of 4/3 - (2/3) c^2 + e c equals 2/3 - |e| for small e, before the kernel acts
        u = U_SMOOTH + HarmonicSeries.cos(1, 0.1)
        assert refined_lower_bound(u).certified_lower_bound == pytest.approx(2 / 3 - 0.1, abs=1e-9)
        assert positivity_margin(u, 1).margin == pytest.approx(2 / 3, abs=1e-9)

    def test_trig_poly_omega3(self):
        rep = positivity_margin(U_STAR3, 3, 8192)
        assert rep.margin == pytest.approx(-2.0, abs=1e-9)
        assert not rep.certified_positive

    def test_margin_at_least_canonical_min(self):
        rng = np.random.default_rng(0)
        for omega in (1, 2, 3):
            u = random_series(rng, 6).without(omega)
            rep = positivity_margin(u, omega, 1024)
            assert rep.margin >= u(2 * np.pi * np.arange(1024) / 1024).min() - 1e-12

    def test_kernel_invariance(self):
        rng = np.random.default_rng(1)
        for omega in (1, 2, 3):
            u = random_series(rng, 6).without(omega)
            base = positivity_margin(u, omega, 2048)
            shift = KernelCoeffs(*rng.normal(size=2))
            moved = positivity_margin(attach_kernel(u, omega, shift), omega, 2048)
            assert moved.margin == pytest.approx(base.margin, abs=1e-9)
            assert moved.optimizer.alpha == pytest.approx(base.optimizer.alpha - shift.alpha, abs=1e-6)
            assert moved.optimizer.beta == pytest.approx(base.optimizer.beta - shift.beta, abs=1e-6)

    def test_noninteger(self):
        rep = positivity_margin(U_SMOOTH, 2.5)
        assert rep.margin == pytest.approx(2 / 3, abs=1e-9)
        assert rep.optimizer == KernelCoeffs()

    def test_positive_margin_certifies(self):
        rng = np.random.default_rng(2)
        for _ in range(10):
            h = nonnegative_forcing(rng)
            rep = positivity_margin(particular_solution(h, 1), 1)
            assert rep.margin > 0 and rep.certified_positive

    def test_json(self):
        rep = positivity_margin(U_SMOOTH, 1)
        back = MarginReport.from_dict(rep.to_dict())
        assert back.margin == rep.margin and back.optimizer == rep.optimizer


class TestNonexistence:
    def test_trig_poly(self):
        cert = nonexistence_search(U_STAR3, 3)
        assert (cert.j, cert.k) == (0, 3) and cert.sum == pytest.approx(-4.0, abs=1e-12)
        assert cert.theta2 == pytest.approx(np.pi)

    def test_none_for_constant(self):
        assert nonexistence_search(HarmonicSeries.constant(1.0), 1) is None

    def test_kernel_invariance(self):
        cert = nonexistence_search(U_STAR3, 3)
        rng = np.random.default_rng(3)
        for _ in range(10):
            u = attach_kernel(U_STAR3, 3, KernelCoeffs(*rng.normal(scale=5, size=2)))
            assert cert.check(u) == pytest.approx(cert.sum, abs=1e-12)
            assert min(u(cert.theta1), u(cert.theta2)) < 0

    def test_pair_invariants(self):
        cert = nonexistence_search(U_STAR3, 3)
        w = cert.omega
        assert np.sin(w * cert.theta1) == pytest.approx(0, abs=1e-12)
        assert np.sin(w * cert.theta2) == pytest.approx(0, abs=1e-12)
        assert np.cos(w * cert.theta1) == pytest.approx(1.0)
        assert np.cos(w * cert.theta2) == pytest.approx(-1.0)

    def test_implies_margin_bound(self):
        rng = np.random.default_rng(4)
        hits = 0
        for _ in range(40):
            omega = int(rng.integers(2, 6))
            u = random_series(rng, 8).without(omega)
            cert = nonexistence_search(u, omega)
            if cert is None:
                continue
            hits += 1
            assert positivity_margin(u, omega, 4096).margin <= cert.sum / 2 + 1e-9
        assert hits > 5

    def test_json(self):
        cert = nonexistence_search(U_STAR3, 3)
        assert NonexistenceCertificate.from_dict(cert.to_dict()) == cert

    def test_even_k_rejected(self):
        data = nonexistence_search(U_STAR3, 3).to_dict()
        data["k"] = 2
        with pytest.raises(Exception):
            NonexistenceCertificate.from_dict(data)


class TestPositiveSolution:
    def test_constant(self):
        res = positive_solution(HarmonicSeries.constant(1.0))
        assert res.solution.distance(HarmonicSeries.constant(1.0)) < 1e-8
        assert res.certificate.certified_lower_bound == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("sign", [1.0, -1.0])
    def test_one_plus_minus_cos2(self, sign):
        h = HarmonicSeries.from_harmonics(1.0, [(2, sign, 0.0)])
        res = positive_solution(h)
        assert res.certificate.certified_lower_bound >= 2 / 3 - 1e-3
        assert res.residual <= 1e-9
        assert abs(res.form.a) < 1e-9 and abs(res.form.b) < 1e-6

    def test_negative_forcing_rejected(self):
        with pytest.raises(PreconditionError):
            positive_solution(HarmonicSeries.from_harmonics(0.5, [(2, 1.0, 0.0)]))

    def test_zero_forcing_rejected(self):
        with pytest.raises(PreconditionError, match="identically zero"):
            positive_solution(HarmonicSeries())

    def test_resonant_rejected(self):
        with pytest.raises(ResonanceError):
            positive_solution(HarmonicSeries.from_harmonics(2.0, [(1, 1.0, 0.0)]))

    def test_only_omega_one(self):
        with pytest.raises(PreconditionError):
            positive_solution(HarmonicSeries.constant(1.0), 2)

    def test_random_nonnegative_forcings(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            h = nonnegative_forcing(rng)
            res = positive_solution(h)
            assert res.certificate.certified_lower_bound > 0
            assert residual_sup(res.solution, h, 1) <= 1e-9
            t = rng.uniform(0, 2 * np.pi, 10_000)
            assert res.solution(t).min() >= res.certificate.certified_lower_bound
            assert nonexistence_search(particular_solution(h, 1), 1) is None

    def test_vanishing_on_arc(self):
        # h >= 0 with a double zero: still a positive solution
        g = HarmonicSeries.from_harmonics(0.0, [(2, 1.0, 0.0)])
        h = g.product(g)
        res = positive_solution(h)
        assert res.certificate.certified_lower_bound > 0

    def test_json(self):
        res = positive_solution(HarmonicSeries.from_harmonics(1.0, [(2, 1.0, 0.0)]))
        back = PositiveSolutionResult.from_dict(res.to_dict())
        assert back.solution.distance(res.solution) == 0
