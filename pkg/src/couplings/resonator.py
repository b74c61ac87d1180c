"""Single lumped LC resonator with series resistance R (in series with L) and
shunt conductance G (across C), described by complex mode amplitudes.

Only the positive-frequency amplitude ``a_plus`` is stored; the negative
component is its complex conjugate.
"""

from dataclasses import dataclass
from math import ceil, pi, sqrt

import numpy as np

from .errors import StepTooLarge
from .numerics import ComplexTrace, rk4_linear


@dataclass(frozen=True)
class ResonatorParams:
    L: float
    C: float
    R: float = 0.0
    G: float = 0.0

    def __post_init__(self):
        if not (self.L > 0 and self.C > 0):
            raise ValueError("L and C must be positive")
        if self.R < 0 or self.G < 0:
            raise ValueError("R and G must be non-negative")

    @property
    def omega0(self):
        return 1.0 / sqrt(self.L * self.C)

    @property
    def f0(self):
        return self.omega0 / (2 * pi)

    @property
    def Z(self):
        return sqrt(self.L / self.C)

    @property
    def kappa(self):
        """Energy decay rate G/C + R/L."""
        return self.G / self.C + self.R / self.L

    @property
    def asymmetry(self):
        """G/C - R/L; zero when the exact equations decouple (RC = GL)."""
        return self.G / self.C - self.R / self.L


def mode_from_vi(v, i, params):
    """Positive-frequency amplitude ``(v + jZi)/sqrt(2 w0 Z)``."""
    return (v + 1j * params.Z * i) / sqrt(2 * params.omega0 * params.Z)


def vi_from_mode(a_plus, params):
    """Capacitor voltage and inductor current for an amplitude ``a_plus``."""
    a_plus = np.asarray(a_plus, dtype=complex)
    norm = sqrt(2 * params.omega0 * params.Z)
    v = norm * a_plus.real
    i = norm * a_plus.imag / params.Z
    if v.ndim == 0:
        return float(v), float(i)
    return v, i


def energy(a_plus):
    return np.abs(a_plus) ** 2


def lumped_energy(v, i, params):
    return 0.5 * params.C * v ** 2 + 0.5 * params.L * i ** 2


def eom_exact_rhs(a_plus, params):
    """da+/dt of the lossy resonator without the rotating-wave approximation."""
    a_minus = np.conj(a_plus)
    return (1j * params.omega0 * a_plus - 0.5 * params.kappa * a_plus
            - 0.5 * params.asymmetry * a_minus)


def eom_rwa_rhs(a_plus, params):
    return (1j * params.omega0 - 0.5 * params.kappa) * a_plus


def energy_rate_exact(a_plus, params):
    """dW/dt along the exact dynamics, including the fast oscillating term."""
    a_minus = np.conj(a_plus)
    return (-params.kappa * np.abs(a_plus) ** 2
            - 0.5 * params.asymmetry * (a_plus ** 2 + a_minus ** 2)).real


def generator(params, rhs="exact"):
    """2x2 generator acting on (a+, a-)."""
    w0, k, d = params.omega0, params.kappa, params.asymmetry
    if rhs == "rwa":
        d = 0.0
    elif rhs != "exact":
        raise ValueError(f"rhs must be 'exact' or 'rwa', got {rhs!r}")
    return np.array([[1j * w0 - k / 2, -d / 2],
                     [-d / 2, -1j * w0 - k / 2]])


def integrate(rhs, a0, t_span, params, dt=None):
    """Fixed-step RK4 trajectory of ``a_plus`` over ``t_span``.

    ``dt`` defaults to ``1/(200 f0)`` and is shrunk slightly so that an
    integer number of steps covers the span exactly.
    """
    t0, t1 = map(float, t_span)
    if not (np.isfinite(t0) and np.isfinite(t1)) or t1 <= t0:
        raise ValueError("t_span must be a finite increasing pair")
    if dt is None:
        dt = 1.0 / (200 * params.f0)
    if dt <= 0:
        raise ValueError("dt must be positive")
    if dt * params.omega0 > 2 * pi / 50:
        raise StepTooLarge(
            f"dt={dt:.3e} s exceeds 1/(50 f0) = {1 / (50 * params.f0):.3e} s")
    n = max(1, ceil((t1 - t0) / dt - 1e-9))
    h = (t1 - t0) / n
    y0 = np.array([a0, np.conj(a0)], dtype=complex)
    states = rk4_linear(generator(params, rhs), y0, h, n)
    t = t0 + h * np.arange(n + 1)
    return ComplexTrace(t, states[:, 0], unit="s")


def moving_average(values, window):
    """Centered running mean over ``window`` samples (valid part only)."""
    kernel = np.ones(window) / window
    return np.convolve(values, kernel, mode="valid")
