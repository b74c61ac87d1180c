import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import solve_ivp

from couplings.errors import StepTooLarge
from couplings.resonator import (ResonatorParams, energy, energy_rate_exact,
                                 eom_exact_rhs, eom_rwa_rhs, integrate,
                                 lumped_energy, mode_from_vi, moving_average,
                                 vi_from_mode)

P = ResonatorParams(L=1e-9, C=1e-12)
positive = st.floats(1e-12, 1e-6)


def kirchhoff_rhs(params):
    """Oracle: capacitor voltage and inductor current of the lossy tank."""
    def f(t, y):
        v, i = y
        return [(-i - params.G * v) / params.C, (v - params.R * i) / params.L]
    return f


class TestParams:
    def test_derived(self):
        assert P.omega0 == pytest.approx(3.1622776601683795e10, rel=1e-15)
        assert P.Z == pytest.approx(31.622776601683793, rel=1e-15)
        p = ResonatorParams(1e-9, 1e-12, R=0.1, G=1e-5)
        assert p.kappa == pytest.approx(1e-5 / 1e-12 + 0.1 / 1e-9)

    def test_invalid(self):
        with pytest.raises(ValueError):
            ResonatorParams(0, 1)
        with pytest.raises(ValueError):
            ResonatorParams(1, 1, R=-1)


class TestModeAmplitudes:
    def test_zero(self):
        assert mode_from_vi(0, 0, P) == 0
        assert vi_from_mode(0, P) == (0.0, 0.0)

    def test_unit(self):
        v = np.sqrt(2 * P.omega0 * P.Z)
        assert mode_from_vi(v, 0, P) == pytest.approx(1, rel=1e-15)

    def test_arithmetic(self):
        expected = (1 + 1j * P.Z) / np.sqrt(2 * P.omega0 * P.Z)
        assert mode_from_vi(1, 1, P) == pytest.approx(expected, rel=1e-15)

    def test_real_amplitude_has_no_current(self):
        v, i = vi_from_mode(1.0, ResonatorParams(1.0, 1.0))
        assert v == pytest.approx(np.sqrt(2)) and i == 0

    @settings(max_examples=50, deadline=None)
    @given(L=positive, C=positive, re=st.floats(-1e3, 1e3), im=st.floats(-1e3, 1e3))
    def test_round_trip(self, L, C, re, im):
        p = ResonatorParams(L, C)
        a = complex(re, im)
        back = mode_from_vi(*vi_from_mode(a, p), p)
        assert abs(back - a) <= 1e-14 * max(abs(a), 1e-300) + 1e-300

    @settings(max_examples=50, deadline=None)
    @given(L=positive, C=positive, v=st.floats(-10, 10), i=st.floats(-1, 1))
    def test_energy_identity(self, L, C, v, i):
        p = ResonatorParams(L, C)
        w = lumped_energy(v, i, p)
        assert energy(mode_from_vi(v, i, p)) == pytest.approx(w, rel=1e-12, abs=1e-300)

    def test_energy(self):
        assert energy(0) == 0
        assert energy(3 + 4j) == pytest.approx(25)


class TestEquationsOfMotion:
    def test_lossless(self):
        assert eom_exact_rhs(1.0, P) == pytest.approx(1j * P.omega0)

    def test_decoupled_when_rc_equals_gl(self):
        p = ResonatorParams(1e-9, 1e-12, R=0.2, G=0.2 * 1e-12 / 1e-9)
        assert eom_exact_rhs(1.0, p) == pytest.approx(1j * p.omega0 - p.kappa / 2)
        a = 0.3 - 0.7j
        assert eom_exact_rhs(a, p) == pytest.approx(eom_rwa_rhs(a, p), rel=1e-15)

    def test_rwa_arithmetic(self):
        w0, k = 2 * np.pi * 5e9, 2 * np.pi * 1e6
        C = 1e-12
        L = 1 / (w0 ** 2 * C)
        p = ResonatorParams(L, C, G=k * C)
        assert eom_rwa_rhs(1.0, p) == pytest.approx(1j * w0 - np.pi * 1e6, rel=1e-12)

    def test_exact_matches_kirchhoff(self):
        # R/L = 2 G/C: the counter-rotating term is present
        p = ResonatorParams(1e-9, 1e-12, R=2e6 * 1e-9 * 2, G=2e6 * 1e-12)
        assert p.asymmetry != 0
        v0, i0 = 0.3, -0.01
        T = 2 * np.pi / p.omega0
        sol = solve_ivp(kirchhoff_rhs(p), (0, 3 * T), [v0, i0], rtol=1e-12,
                        atol=1e-16, dense_output=True)
        tr = integrate("exact", mode_from_vi(v0, i0, p), (0, 3 * T), p, dt=T / 2000)
        v, i = sol.sol(tr.axis)
        a_ref = mode_from_vi(v, i, p)
        assert np.max(np.abs(tr.values - a_ref)) / abs(a_ref[0]) < 1e-8

    def test_energy_rate_formula(self):
        p = ResonatorParams(1e-9, 1e-12, R=0.5, G=1e-4)
        a = 0.4 + 0.9j
        da = eom_exact_rhs(a, p)
        lhs = 2 * (np.conj(a) * da).real
        assert energy_rate_exact(a, p) == pytest.approx(lhs, rel=1e-12)


class TestIntegrate:
    def test_one_period(self):
        T = 2 * np.pi / P.omega0
        tr = integrate("exact", 1.0, (0, T), P, dt=T / 400)
        assert abs(tr.values[-1] - 1) < 1e-8
        assert tr.unit == "s"

    def test_rwa_decay(self):
        p = ResonatorParams(1e-9, 1e-12, G=1e-12 * 2e8)
        t_end = 3 / p.kappa
        tr = integrate("rwa", 1.0, (0, t_end), p)
        w = np.abs(tr.values) ** 2
        assert np.allclose(w, np.exp(-p.kappa * tr.axis), rtol=1e-6)

    def test_moving_average_decay(self):
        # R != G L / C: energy oscillates about an exponential
        p = ResonatorParams(1e-9, 1e-12, R=0.1)
        T = 2 * np.pi / p.omega0
        n_per = 200
        tr = integrate("exact", 1.0, (0, 300 * T), p, dt=T / n_per)
        w = np.abs(tr.values) ** 2
        wiggle = np.abs(w - np.exp(-p.kappa * tr.axis))
        assert wiggle.max() > 1e-4
        avg = moving_average(w, n_per)
        t_mid = moving_average(tr.axis, n_per)
        assert np.allclose(avg, np.exp(-p.kappa * t_mid), rtol=0.01)

    def test_step_too_large(self):
        with pytest.raises(StepTooLarge):
            integrate("exact", 1.0, (0, 1e-9), P, dt=1.1 / (50 * P.f0))

    def test_bad_rhs(self):
        with pytest.raises(ValueError):
            integrate("euler", 1.0, (0, 1e-9), P)

    def test_exact_vs_rwa_agree_when_decoupled(self):
        p = ResonatorParams(1e-9, 1e-12, R=0.2, G=0.2 * 1e-12 / 1e-9)
        span = (0, 50 * 2 * np.pi / p.omega0)
        a = integrate("exact", 1.0, span, p).values
        b = integrate("rwa", 1.0, span, p).values
        assert np.max(np.abs(a - b)) < 1e-10

    def test_energy_difference_term(self):
        p = ResonatorParams(1e-9, 1e-12, R=0.3, G=2e-4)
        T = 2 * np.pi / p.omega0
        tr = integrate("exact", 0.5 + 0.2j, (0, 5 * T), p, dt=T / 400)
        a = tr.values
        rate = energy_rate_exact(a, p)
        excess = rate + p.kappa * np.abs(a) ** 2
        expected = -0.5 * p.asymmetry * (a ** 2 + np.conj(a) ** 2).real
        assert np.allclose(excess, expected, rtol=1e-12, atol=1e-20)

    def test_energy_rate_matches_finite_difference(self):
        p = ResonatorParams(1e-9, 1e-12, R=0.3, G=2e-4)
        T = 2 * np.pi / p.omega0
        errs = []
        for n in (200, 400):
            h = T / n
            tr = integrate("exact", 1.0, (0, 2 * T), p, dt=h)
            w = np.abs(tr.values) ** 2
            fd = (w[2:] - w[:-2]) / (2 * h)
            exact = energy_rate_exact(tr.values[1:-1], p)
            errs.append(np.max(np.abs(fd - exact)))
        assert errs[0] / errs[1] == pytest.approx(4, rel=0.1)
