import math

import mpmath as mp
import numpy as np
import pytest

from qed_decoherence.oracle import small_omega_series
from qed_decoherence.quadrature import (
    QuadratureError,
    QuadratureSpec,
    adaptive,
    kronrod_panel,
    oscillatory,
    trapezoid_weights,
    wynn_epsilon,
)

SPEC = QuadratureSpec()


class TestKronrodPanel:
    def test_exact_on_low_degree_polynomials(self):
        # K15 integrates degree <= 22 exactly
        v, e = kronrod_panel(lambda x: 3 * x**2, 0.0, 2.0)
        assert v == pytest.approx(8.0, rel=1e-14)
        v, e = kronrod_panel(lambda x: x**9 - x, -1.0, 3.0)
        assert v == pytest.approx(3**10 / 10 - 1 / 10 - (3**2 / 2 - 1 / 2), rel=1e-13)

    def test_error_estimate_bounds_true_error(self):
        v, e = kronrod_panel(np.exp, 0.0, 1.0)
        assert abs(v - (math.e - 1.0)) <= max(e, 1e-15)


class TestAdaptive:
    def test_exponential(self):
        r = adaptive(np.exp, 0.0, 5.0, SPEC)
        assert r.value == pytest.approx(math.e**5 - 1.0, rel=1e-12)
        assert r.error <= 1e-8 * r.value

    def test_against_mpmath_on_awkward_integrand(self):
        # steep 1/w envelope over four decades
        f = lambda w: np.exp(-w) / w
        r = adaptive(f, 1e-4, 50.0, SPEC, breakpoints=(1e-3, 1e-2, 0.1, 1.0, 10.0))
        ref = float(mp.quad(lambda w: mp.e ** (-w) / w, [1e-4, 1e-2, 1.0, 50.0]))
        assert r.value == pytest.approx(ref, rel=1e-11)

    def test_breakpoints_catch_narrow_feature(self):
        # spike of width 1e-6 at w = 1e-5 inside [0, 50]
        f = lambda w: np.exp(-((w - 1e-5) ** 2) / (2e-12))
        r = adaptive(f, 0.0, 50.0, SPEC, breakpoints=(1e-6, 1e-5, 1e-4, 1e-3))
        exact = math.sqrt(2 * math.pi * 1e-12)
        assert r.value == pytest.approx(exact, rel=1e-9)

    def test_panel_budget_error_is_diagnostic(self):
        tight = QuadratureSpec(rel_tol=1e-10, abs_tol=1e-16, max_subdivisions=3)
        with pytest.raises(QuadratureError, match="panels"):
            adaptive(lambda w: np.sin(50.0 * w) ** 2 / (1e-300 + w), 1e-8, 50.0, tight)

    def test_tighter_tolerance_reduces_error(self):
        # convergence monotonicity on a smooth integrand
        f = lambda w: np.exp(-w) * (1 - np.cos(3.0 * w)) / w
        exact = 0.5 * math.log(10.0)  # ln sqrt(1 + 9)
        loose = adaptive(f, 1e-9, 50.0, QuadratureSpec(rel_tol=1e-4, abs_tol=1e-8))
        tight = adaptive(f, 1e-9, 50.0, QuadratureSpec(rel_tol=1e-12, abs_tol=1e-16))
        assert abs(tight.value - exact) <= abs(loose.value - exact)
        assert abs(tight.value - exact) <= 1e-10 * exact

    def test_deterministic(self):
        f = lambda w: np.exp(-w) * np.cos(7.0 * w)
        a = adaptive(f, 0.0, 50.0, SPEC)
        b = adaptive(f, 0.0, 50.0, SPEC)
        assert a.value == b.value and a.panels == b.panels


class TestWynnEpsilon:
    def test_alternating_log_series(self):
        # sum (-1)^{k+1}/k = ln 2; partial sums converge like 1/n
        sums = np.cumsum([(-1) ** (k + 1) / k for k in range(1, 31)])
        limit, err = wynn_epsilon(sums)
        assert limit == pytest.approx(math.log(2.0), abs=1e-12)

    def test_geometric(self):
        sums = np.cumsum([0.7**k for k in range(25)])
        limit, _ = wynn_epsilon(sums)
        assert limit == pytest.approx(1.0 / 0.3, rel=1e-12)

    def test_short_sequences_fall_back(self):
        limit, err = wynn_epsilon([2.0])
        assert limit == 2.0


class TestOscillatory:
    def test_laplace_cosine(self):
        # int_0^inf e^-w cos(w tau) dw = 1/(1+tau^2)
        tau = 300.0
        r = oscillatory(lambda w: np.exp(-w), tau, 0.0, 50.0, "cos", SPEC)
        assert r.value == pytest.approx(1.0 / (1.0 + tau**2), abs=1e-12)

    def test_sine_with_one_over_w(self):
        # int_a^inf e^-w sin(w tau)/w dw for large tau approaches pi/2
        tau = 1e5
        a = 20.0 * math.pi / tau
        r = oscillatory(lambda w: np.exp(-w) / w, tau, a, 50.0, "sin", SPEC)
        ref = float(mp.quadosc(
            lambda w: mp.e ** (-w) * mp.sin(w * tau) / w,
            [a, mp.inf], period=2 * mp.pi / tau))
        assert r.value == pytest.approx(ref, abs=1e-9)

    def test_short_interval_delegates_to_adaptive(self):
        r = oscillatory(lambda w: np.exp(-w), 0.5, 0.0, 1.0, "cos", SPEC)
        ref = float(mp.quad(lambda w: mp.e ** (-w) * mp.cos(0.5 * w), [0, 1]))
        assert r.value == pytest.approx(ref, rel=1e-10)

    def test_unknown_kind_rejected(self):
        with pytest.raises(QuadratureError):
            oscillatory(lambda w: np.exp(-w), 100.0, 0.0, 50.0, "tan", SPEC)


class TestSmallOmegaSeries:
    """The stated endpoint series, checked in isolation against 30-digit
    quadrature of the raw integrands (references frozen from mpmath)."""

    def test_vac(self):
        # tau = 0.37, ell = 1e-6
        ref = 3.4224977183341694e-14
        assert small_omega_series("vac", 1e-6, 0.37) == pytest.approx(ref, rel=1e-9)

    def test_phase(self):
        ref = 2.8140534450147215e-21
        assert small_omega_series("phase", 1e-6, 0.37) == pytest.approx(ref, rel=1e-9)

    def test_thermal(self):
        # theta = 1e4, ell = 1e-10
        ref = 1.368999646908151e-15
        assert small_omega_series("thermal", 1e-10, 0.37, 1e4) == pytest.approx(ref, rel=1e-9)

    def test_field(self):
        ref = 2.2816649554173355e-20
        assert small_omega_series("field", 1e-6, 0.37) == pytest.approx(ref, rel=1e-9)

    def test_total_is_vac_plus_thermal(self):
        tot = small_omega_series("total", 1e-10, 0.37, 1e4)
        parts = small_omega_series("vac", 1e-10, 0.37) + small_omega_series(
            "thermal", 1e-10, 0.37, 1e4)
        assert tot == pytest.approx(parts, rel=1e-14)


def test_trapezoid_weights_integrate_linear_exactly():
    g = np.array([0.0, 0.5, 2.0, 3.0])
    w = trapezoid_weights(g)
    assert float(w @ (2 * g + 1)) == pytest.approx(np.trapezoid(2 * g + 1, g), rel=1e-15)
