"""Quarter- and half-wave resonators described by circulating power waves,
and their decay rates when fed through a backward-wave coupler.

Decay rates are energy decay rates in rad/s; divide by 2*pi for the
figure usually quoted in Hz.
"""

import warnings
from dataclasses import dataclass
from math import pi, sin, sqrt

import numpy as np

from .coupled_lines import backward_s21
from .errors import CouplingOutOfRange, SingularAtResonantLength

SPEED_OF_LIGHT = 299_792_458.0
KINDS = ("quarter_wave", "half_wave")
FEEDS = ("transmissive", "reflective")


@dataclass(frozen=True)
class DistributedResonator:
    kind: str
    f0: float
    Z0_res: float = 50.0
    v_ph: float = SPEED_OF_LIGHT

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if self.f0 <= 0 or self.v_ph <= 0 or self.Z0_res <= 0:
            raise ValueError("f0, v_ph and Z0_res must be positive")

    @property
    def length(self):
        return self.v_ph / ((4 if self.kind == "quarter_wave" else 2) * self.f0)

    @property
    def omega0(self):
        return 2 * pi * self.f0


@dataclass(frozen=True)
class CouplerAttachment:
    """Coupler of physical length ``coupler_length`` placed on a resonator.

    ``position_theta`` is the electrical distance (rad) from the open end
    of the resonator to the coupler; ``ell_f`` is the open-stub length of
    the feed in the reflective geometry.
    """

    coupler_length: float
    position_theta: float = pi / 4
    feed: str = "reflective"
    ell_f: float = None

    def __post_init__(self):
        if self.feed not in FEEDS:
            raise ValueError(f"feed must be one of {FEEDS}")
        if self.coupler_length <= 0:
            raise ValueError("coupler_length must be positive")
        if not 0 < self.position_theta < pi / 2:
            raise ValueError("position_theta must lie in (0, pi/2)")


def mode_amp_from_powerwave(s_wave_mag, res):
    """|a+| of a resonator carrying a circulating wave of magnitude ``s``."""
    if np.any(np.asarray(s_wave_mag) < 0):
        raise ValueError("power-wave magnitude must be non-negative")
    scale = 1.0 if res.kind == "quarter_wave" else 2.0
    return scale * np.asarray(s_wave_mag) / sqrt(2 * res.f0)


def _check_s21(s21_mag):
    s21 = np.asarray(s21_mag, dtype=float)
    if np.any(s21 < 0) or np.any(s21 >= 1):
        raise ValueError("|S21| must lie in [0, 1)")
    return s21


def kappa_transmissive(s21_mag, f0):
    """4 f0 |S21|^2: rate into a through line (both directions)."""
    return 4 * f0 * _check_s21(s21_mag) ** 2


def kappa_reflective(s21_mag, f0):
    """8 f0 |S21|^2: rate into a phase-matched, open-terminated feed."""
    return 8 * f0 * _check_s21(s21_mag) ** 2


def coupler_kappa(zeta, theta, f0, feed="reflective"):
    """Closed-form decay rate of a quarter-wave resonator behind a coupler."""
    s21 = backward_s21(zeta, theta)
    if feed == "reflective":
        return kappa_reflective(s21, f0)
    if feed == "transmissive":
        return kappa_transmissive(s21, f0)
    raise ValueError(f"feed must be one of {FEEDS}")


def backward_coupler_resonator_mode(att, res, zeta):
    """Weak-coupling frequency and decay rate (omega_r, kappa_r) in rad/s.

    Assumes the reflective feed with ``ell_f = ell_1 + ell_r``.
    """
    if res.kind != "quarter_wave":
        raise ValueError("closed forms are for quarter-wave resonators")
    if abs(zeta) >= 1:
        raise CouplingOutOfRange("|zeta| must be < 1")
    if abs(zeta) > 0.2:
        warnings.warn("weak-coupling forms used with |zeta| > 0.2",
                      RuntimeWarning, stacklevel=2)
    lr, lc, v = res.length, att.coupler_length, res.v_ph
    if lc > lr:
        raise ValueError("coupler longer than the resonator")
    r = lc / lr
    omega_r = pi * v / (2 * lr) * (1 + zeta ** 2 * (r / 2 - sin(pi * r) / (2 * pi)))
    kappa_r = 2 * zeta ** 2 * v / lr * sin(pi * r / 2) ** 2
    return omega_r, kappa_r


def coupler_admittance(zeta, theta, Y0=1 / 50):
    """4x4 nodal admittance of a backward coupler of modal length ``theta``.

    ``theta`` may be complex, which is how the eigenmode search evaluates
    it off the real axis.
    """
    if abs(zeta) >= 1:
        raise CouplingOutOfRange("|zeta| must be < 1")
    s = np.sin(theta)
    if abs(s) < 1e-12:
        raise SingularAtResonantLength(f"sin(theta) vanishes at theta={theta}")
    line = np.array([[-np.cos(theta) / s, 1 / s], [1 / s, -np.cos(theta) / s]])
    mix = np.array([[1, -zeta], [-zeta, 1]])
    return 1j * Y0 / sqrt(1 - zeta ** 2) * np.kron(line, mix)


def y_to_s(Y, Z0=50.0):
    """Scattering matrix of an N-port given its admittance, common Z0."""
    Y = np.asarray(Y, dtype=complex)
    eye = np.eye(Y.shape[0])
    y = Y * Z0
    return np.linalg.solve(eye + y, eye - y)


def reflective_s11_near_resonance(omega, omega_r, kappa_r, beta, ell_c, ell_f):
    """Lorentzian reflection of the coupler-fed resonator near resonance.

    ``beta`` may be an array matching ``omega``.
    """
    x = 1j * (np.asarray(omega, dtype=float) - omega_r)
    delay = np.exp(-2j * np.asarray(beta) * (ell_c + ell_f))
    return delay * (kappa_r / 2 - x) / (kappa_r / 2 + x)
