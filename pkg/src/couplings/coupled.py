"""Two lumped resonators coupled through a mutual inductance Lm and a mutual
capacitance Cm.

The state vector of the exact dynamics is ordered (a1+, a1-, a2+, a2-).
"""

import warnings
from dataclasses import dataclass
from math import sqrt

import numpy as np

from .errors import CouplingOutOfRange, InvalidSplitting

RWA_ZETA_LIMIT = 0.1


@dataclass(frozen=True)
class CoupledLCParams:
    L1: float
    L2: float
    Lm: float
    C1: float
    C2: float
    Cm: float

    def __post_init__(self):
        if min(self.L1, self.L2, self.C1, self.C2) <= 0:
            raise ValueError("self inductances and capacitances must be positive")
        if abs(self.zeta_L) >= 1 or abs(self.zeta_C) >= 1:
            raise CouplingOutOfRange(
                f"|zeta| must be < 1 (zeta_L={self.zeta_L}, zeta_C={self.zeta_C})")

    @classmethod
    def from_zeta(cls, L1, C1, L2, C2, zeta_L=0.0, zeta_C=0.0):
        return cls(L1, L2, zeta_L * sqrt(L1 * L2), C1, C2, zeta_C * sqrt(C1 * C2))

    @property
    def zeta_L(self):
        return self.Lm / sqrt(self.L1 * self.L2)

    @property
    def zeta_C(self):
        return self.Cm / sqrt(self.C1 * self.C2)

    @property
    def dzeta(self):
        return self.zeta_C - self.zeta_L

    @property
    def omega01(self):
        return 1.0 / sqrt(self.L1 * self.C1)

    @property
    def omega02(self):
        return 1.0 / sqrt(self.L2 * self.C2)


@dataclass(frozen=True)
class CoupledModeState:
    a1_plus: complex
    a2_plus: complex
    t: float = 0.0

    def vector(self):
        """Full (a1+, a1-, a2+, a2-) vector."""
        a1, a2 = complex(self.a1_plus), complex(self.a2_plus)
        return np.array([a1, a1.conjugate(), a2, a2.conjugate()])


def coupling_constants(p):
    """The four coefficients (k1, k2, k3, k4) of the exact coupled equations."""
    zc, zl = p.zeta_C, p.zeta_L
    d = 2 * (1 - zc ** 2) * (1 - zl ** 2)
    return ((2 - zc ** 2 - zl ** 2) / d,
            (zc ** 2 - zl ** 2) / d,
            (1 + zc * zl) * (zc - zl) / d,
            (1 - zc * zl) * (zc + zl) / d)


def exact_system_matrix(p):
    """Real 4x4 matrix M with d/dt a = M diag(jw01, jw01, jw02, jw02) a."""
    k1, k2, k3, k4 = coupling_constants(p)
    U0 = np.array([[k1, -k2], [k2, -k1]])
    Ug = np.array([[k3, -k4], [k4, -k3]])
    return np.block([[U0, Ug], [Ug, U0]])


def exact_generator(p):
    w = np.array([p.omega01, p.omega01, p.omega02, p.omega02])
    return exact_system_matrix(p) * (1j * w)[None, :]


def _warn_rwa(p):
    if max(abs(p.zeta_C), abs(p.zeta_L)) > RWA_ZETA_LIMIT:
        warnings.warn(f"rotating-wave form used with |zeta| > {RWA_ZETA_LIMIT}",
                      RuntimeWarning, stacklevel=3)


def rwa_generator(p):
    """2x2 generator on (a1+, a2+) after dropping counter-rotating terms."""
    _warn_rwa(p)
    g = p.dzeta / 2
    return 1j * np.array([[p.omega01, p.omega02 * g],
                          [p.omega01 * g, p.omega02]])


def rwa_rhs(state, p):
    a = np.array([state.a1_plus, state.a2_plus], dtype=complex)
    d = rwa_generator(p) @ a
    return complex(d[0]), complex(d[1])


def total_energy(state, p):
    """Stored energy including the mutual-element cross terms."""
    if isinstance(state, CoupledModeState):
        a1, a2 = np.asarray(state.a1_plus), np.asarray(state.a2_plus)
    else:
        a = np.asarray(state)
        a1, a2 = a[..., 0], a[..., 2]
    return (np.abs(a1) ** 2 + np.abs(a2) ** 2
            - 2 * p.zeta_C * a1.real * a2.real
            + 2 * p.zeta_L * a1.imag * a2.imag)


def eigenfrequencies(p):
    """Normal-mode frequencies (w1, w2), w1 <= w2."""
    w01, w02 = p.omega01, p.omega02
    split = sqrt((w01 - w02) ** 2 + p.dzeta ** 2 * w01 * w02)
    mid = (w01 + w02) / 2
    return mid - split / 2, mid + split / 2


def coupling_rate(p):
    """g1 with w2 - w1 = 2 g1 at degeneracy."""
    return sqrt(p.omega01 * p.omega02) * p.dzeta / 2


def zeta_from_eigenfreqs(w01, w02, w1, w2):
    """|zeta_C - zeta_L| from bare and normal-mode frequencies.

    Inverse of :func:`eigenfrequencies` to first order in the normalized
    splittings.
    """
    w1, w2 = sorted((w1, w2))
    modes = (w2 ** 2 - w1 ** 2) / (w2 ** 2 + w1 ** 2)
    bare = (w02 ** 2 - w01 ** 2) / (w02 ** 2 + w01 ** 2)
    radicand = modes ** 2 - bare ** 2
    if radicand < 0:
        if radicand > -1e-15:
            radicand = 0.0
        else:
            raise InvalidSplitting(
                "normal modes are closer together than the bare resonances")
    return 0.5 * (w02 / w01 + w01 / w02) * sqrt(radicand)


# -- symmetric amplitudes b_k = sqrt(w0k) a_k ----------------------------------

def _scale(p):
    return np.sqrt(np.array([p.omega01, p.omega01, p.omega02, p.omega02]))


def symmetric_generator(p):
    """2x2 rotating-wave generator with equal off-diagonal couplings."""
    _warn_rwa(p)
    g = coupling_rate(p)
    return 1j * np.array([[p.omega01, g], [g, p.omega02]])


def symmetric_exact_generator(p):
    """Exact 4x4 generator in the symmetric amplitudes."""
    s = _scale(p)
    return (s[:, None] * exact_generator(p)) / s[None, :]


def symmetric_form_rhs(state, p):
    b = np.array([state.a1_plus, state.a2_plus], dtype=complex)
    d = symmetric_generator(p) @ b
    return complex(d[0]), complex(d[1])


def symmetric_total_energy(b, p):
    """Energy of a (b1+, b1-, b2+, b2-) trajectory in symmetric amplitudes."""
    b = np.asarray(b)
    b1, b2 = b[..., 0], b[..., 2]
    r = sqrt(p.omega01 * p.omega02)
    return (np.abs(b1) ** 2 / p.omega01 + np.abs(b2) ** 2 / p.omega02
            - 2 * p.zeta_C * b1.real * b2.real / r
            + 2 * p.zeta_L * b1.imag * b2.imag / r)


def to_symmetric(a, p):
    return np.asarray(a) * _scale(p)
