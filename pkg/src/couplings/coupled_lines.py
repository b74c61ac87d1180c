"""Uniform symmetric coupled transmission lines.

Four-port matrices use the port order 1 = line 1 left, 2 = line 2 left,
3 = line 1 right, 4 = line 2 right (zero-based indices 0..3 in code).
Even (+) and odd (-) mode two-ports are ordered (left, right).
"""

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .errors import CouplingOutOfRange, SingularResponse

_HADAMARD_X = np.array([[0.0, 1.0], [1.0, 0.0]])


@dataclass(frozen=True)
class ModalParams:
    beta_plus: float
    beta_minus: float
    Z_plus: float
    Z_minus: float

    def __post_init__(self):
        if min(self.beta_plus, self.beta_minus, self.Z_plus, self.Z_minus) <= 0:
            raise ValueError("modal parameters must be positive")

    @property
    def zeta(self):
        """Voltage coupling coefficient (Z+ - Z-)/(Z+ + Z-)."""
        return (self.Z_plus - self.Z_minus) / (self.Z_plus + self.Z_minus)


@dataclass(frozen=True)
class CoupledLineParams:
    """Per-unit-length inductance and capacitance of a symmetric pair.

    ``c_mut`` is the line-to-line capacitance, entering the capacitance
    matrix with a minus sign off the diagonal.
    """

    l_self: float
    l_mut: float
    c_self: float
    c_mut: float
    length: float

    def __post_init__(self):
        if self.l_self <= 0 or self.c_self <= 0 or self.length <= 0:
            raise ValueError("l_self, c_self and length must be positive")
        if abs(self.zeta_L) >= 1 or abs(self.zeta_C) >= 1:
            raise CouplingOutOfRange("coupling coefficients must satisfy |zeta| < 1")

    @classmethod
    def from_modal(cls, Z_plus, Z_minus, beta_plus, length, omega,
                   beta_minus=None):
        if beta_minus is None:
            beta_minus = beta_plus
        return lc_from_modal(ModalParams(beta_plus, beta_minus, Z_plus, Z_minus),
                             omega, length)

    @property
    def zeta_L(self):
        return self.l_mut / self.l_self

    @property
    def zeta_C(self):
        return self.c_mut / self.c_self

    @property
    def Z0(self):
        """Impedance of one isolated line."""
        return sqrt(self.l_self / self.c_self)

    def beta(self, omega):
        return omega * sqrt(self.l_self * self.c_self)


def modal_from_lc(p, omega):
    """Even/odd propagation constants and impedances at ``omega``."""
    zl, zc = p.zeta_L, p.zeta_C
    b = p.beta(omega)
    return ModalParams(beta_plus=b * sqrt((1 - zc) * (1 + zl)),
                       beta_minus=b * sqrt((1 + zc) * (1 - zl)),
                       Z_plus=p.Z0 * sqrt((1 + zl) / (1 - zc)),
                       Z_minus=p.Z0 * sqrt((1 - zl) / (1 + zc)))


def lc_from_modal(m, omega, length=1.0):
    """Inverse of :func:`modal_from_lc`."""
    L_plus, L_minus = m.beta_plus * m.Z_plus / omega, m.beta_minus * m.Z_minus / omega
    C_plus, C_minus = m.beta_plus / (m.Z_plus * omega), m.beta_minus / (m.Z_minus * omega)
    return CoupledLineParams(l_self=(L_plus + L_minus) / 2,
                             l_mut=(L_plus - L_minus) / 2,
                             c_self=(C_plus + C_minus) / 2,
                             c_mut=(C_minus - C_plus) / 2,
                             length=length)


def line_section_smatrix(Z, theta, Z0_ref=50.0):
    """2x2 S-matrix of a uniform line of impedance ``Z`` and length ``theta``."""
    gamma = (Z - Z0_ref) / (Z + Z0_ref)
    den = np.exp(1j * theta) - gamma ** 2 * np.exp(-1j * theta)
    if abs(den) < 1e-12:
        raise SingularResponse(f"line section singular at theta={theta}")
    s11 = 2j * gamma * np.sin(theta) / den
    s21 = (1 - gamma ** 2) / den
    return np.array([[s11, s21], [s21, s11]])


def assemble_four_port(S_even, S_odd):
    """Combine even and odd mode two-ports into the 4-port matrix."""
    S_A, S_B, _, _ = even_odd_split(S_even, S_odd)
    return np.kron(S_A, np.eye(2)) + np.kron(S_B, _HADAMARD_X)


def even_odd_split(S_even, S_odd):
    """Same-line and cross-line halves plus the FC and RC coefficients."""
    S_even = np.asarray(S_even, dtype=complex)
    S_odd = np.asarray(S_odd, dtype=complex)
    if S_even.shape != (2, 2) or S_odd.shape != (2, 2):
        raise ValueError("mode matrices must be 2x2")
    S_A = (S_even + S_odd) / 2
    S_B = (S_even - S_odd) / 2
    fc = (S_even[1, 0] + S_odd[1, 0]) / 2
    rc = (S_even[1, 1] - S_odd[1, 1]) / 2
    return S_A, S_B, fc, rc


def four_port_smatrix(p, omega, Z0_ref=50.0):
    m = modal_from_lc(p, omega)
    S_even = line_section_smatrix(m.Z_plus, m.beta_plus * p.length, Z0_ref)
    S_odd = line_section_smatrix(m.Z_minus, m.beta_minus * p.length, Z0_ref)
    return assemble_four_port(S_even, S_odd)


def backward_coupler_smatrix(zeta, theta):
    """Matched backward-wave coupler; ``theta`` is the modal electrical length."""
    if abs(zeta) >= 1:
        raise CouplingOutOfRange("|zeta| must be < 1")
    root = sqrt(1 - zeta ** 2)
    den = root * np.cos(theta) + 1j * np.sin(theta)
    side = 1j * zeta * np.sin(theta) * _HADAMARD_X
    thru = root * np.eye(2)
    return np.block([[side, thru], [thru, side]]) / den


def forward_coupler_smatrix(zeta_C, theta):
    """Matched forward-wave coupler (Z+ = Z- = Z0, zeta_L = -zeta_C).

    ``theta`` is the uncoupled electrical length; the modes travel with
    ``theta (1 -+ zeta_C)``.
    """
    if abs(zeta_C) >= 1:
        raise CouplingOutOfRange("|zeta| must be < 1")
    t_even, t_odd = theta * (1 - zeta_C), theta * (1 + zeta_C)
    S_even = np.array([[0, np.exp(-1j * t_even)], [np.exp(-1j * t_even), 0]])
    S_odd = np.array([[0, np.exp(-1j * t_odd)], [np.exp(-1j * t_odd), 0]])
    return assemble_four_port(S_even, S_odd)


def backward_s21(zeta, theta):
    """Coupled-port magnitude of the backward coupler."""
    return abs(zeta * np.sin(theta)) / np.sqrt(1 - zeta ** 2 * np.cos(theta) ** 2)


def zeta_from_impedances(Z_even, Z_odd):
    return (Z_even - Z_odd) / (Z_even + Z_odd)


def weak_coupling_propagate(beta1, beta2, lam, z):
    """Voltages on two weakly coupled lines, starting from V1 = 1, V2 = 0.

    The lines obey dV1/dz = -j(beta1 V1 + lam V2) and
    dV2/dz = -j(beta2 V2 + lam V1); the solution beats between the slow and
    fast supermodes.
    """
    z = np.asarray(z, dtype=float)
    mean = (beta1 + beta2) / 2
    R = sqrt((beta1 - beta2) ** 2 + 4 * lam ** 2)
    if R == 0:
        e = np.exp(-1j * mean * z)
        return e, np.zeros_like(e)
    b_slow, b_fast = mean + R / 2, mean - R / 2
    e_slow, e_fast = np.exp(-1j * b_slow * z), np.exp(-1j * b_fast * z)
    # beta1 - b_fast and b_slow - beta1 without cancellation against the mean
    half = (beta1 - beta2) / 2
    V1 = ((half + R / 2) * e_slow + (R / 2 - half) * e_fast) / R
    V2 = lam / R * (e_slow - e_fast)
    return V1, V2
