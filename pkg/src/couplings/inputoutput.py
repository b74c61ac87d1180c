"""Open resonators: a single mode coupled to transmission lines.

Covers the singly loaded resonator, the general reduction of an N-port
network with M ports terminated on the resonator, and the doubly loaded and
side-coupled (T-junction) special cases.
"""

from dataclasses import dataclass, field
from math import pi, sqrt

import numpy as np

from .errors import SingularJunction, SingularMatrix, ZeroKappa
from .numerics import as_matrix, rk4, solve_linear


@dataclass(frozen=True)
class SinglyLoaded:
    omega0: float
    kappa: float
    phi0: float = 0.0

    def __post_init__(self):
        if self.kappa < 0:
            raise ValueError("kappa must be non-negative")
        if not (-pi < self.phi0 <= pi):
            raise ValueError("phi0 must lie in (-pi, pi]")


def langevin_rhs(a_plus, s_in, sys):
    return ((1j * sys.omega0 - sys.kappa / 2) * a_plus
            + sqrt(sys.kappa) * s_in)


def input_output(s_in, a_plus, sys):
    """Outgoing wave ``exp(-j phi0) (s_in - sqrt(kappa) a)``."""
    return np.exp(-1j * sys.phi0) * (s_in - sqrt(sys.kappa) * a_plus)


def s11_singly_loaded(omega, sys):
    if sys.kappa <= 0:
        raise ZeroKappa("reflection undefined for an uncoupled resonator")
    x = 1j * (np.asarray(omega, dtype=float) - sys.omega0)
    return np.exp(-1j * sys.phi0) * (x - sys.kappa / 2) / (x + sys.kappa / 2)


def phase_slope(omega, sys):
    """d(arg S11)/d(omega), a Lorentzian of height -4/kappa."""
    if sys.kappa <= 0:
        raise ZeroKappa("phase slope undefined for kappa = 0")
    u = (np.asarray(omega, dtype=float) - sys.omega0) / (sys.kappa / 2)
    return -4.0 / sys.kappa / (1 + u ** 2)


def phase_slope_at_resonance(sys):
    return phase_slope(sys.omega0, sys)


def integrate_driven(sys, a0, drive, t_span, dt):
    """RK4 trajectory of the Langevin equation under a drive ``s_in(t)``.

    Returns times, amplitudes and the incident and outgoing waves sampled
    on the same grid.
    """
    t0, t1 = t_span
    n = max(1, int(round((t1 - t0) / dt)))
    h = (t1 - t0) / n
    t, a = rk4(lambda t, a: langevin_rhs(a, drive(t), sys), a0, t0, h, n)
    s_in = np.array([drive(tk) for tk in t], dtype=complex)
    return t, a, s_in, input_output(s_in, a, sys)


# -- resonator terminating M ports of an N-port network -------------------------

@dataclass(frozen=True)
class NPortCoupling:
    """Network scattering matrix with the ports that load the resonator.

    ``kappa_vec`` and ``phi0_vec`` give the coupling rate and the bare
    reflection phase of each coupled port, in ``coupled_ports`` order.
    """

    S: np.ndarray
    coupled_ports: tuple
    kappa_vec: np.ndarray
    phi0_vec: np.ndarray = None
    check_unitary: bool = True

    def __post_init__(self):
        S = as_matrix(self.S)
        n = S.shape[0]
        if S.shape != (n, n):
            raise ValueError("S must be square")
        ports = tuple(int(p) for p in self.coupled_ports)
        if len(set(ports)) != len(ports) or any(p < 0 or p >= n for p in ports):
            raise ValueError(f"invalid coupled ports {ports} for {n}-port")
        kappa = np.asarray(self.kappa_vec, dtype=float).reshape(len(ports))
        if np.any(kappa < 0):
            raise ValueError("coupling rates must be non-negative")
        phi0 = (np.zeros(len(ports)) if self.phi0_vec is None
                else np.asarray(self.phi0_vec, dtype=float).reshape(len(ports)))
        if self.check_unitary:
            if np.max(np.abs(S @ S.conj().T - np.eye(n))) > 1e-10:
                raise ValueError("network S-matrix is not unitary")
            if np.max(np.abs(S - S.T)) > 1e-10:
                raise ValueError("network S-matrix is not symmetric")
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "coupled_ports", ports)
        object.__setattr__(self, "kappa_vec", kappa)
        object.__setattr__(self, "phi0_vec", phi0)

    @property
    def independent_ports(self):
        return tuple(k for k in range(self.S.shape[0])
                     if k not in self.coupled_ports)

    def blocks(self):
        """(s_CC, s_CI, s_IC, s_II) partition of S."""
        c, i = list(self.coupled_ports), list(self.independent_ports)
        S = self.S
        return (S[np.ix_(c, c)], S[np.ix_(c, i)],
                S[np.ix_(i, c)], S[np.ix_(i, i)])


def _junction_solve(A, B):
    try:
        return solve_linear(A, B)
    except SingularMatrix as exc:
        raise SingularJunction(str(exc)) from exc


def _reduction(net):
    s_cc, s_ci, s_ic, s_ii = net.blocks()
    m = len(net.coupled_ports)
    E = np.diag(np.exp(-1j * net.phi0_vec))
    rk = np.sqrt(net.kappa_vec).astype(complex)
    eye = np.eye(m)
    # X = (I - s_CC E)^-1 acts on the waves leaving the network towards
    # the resonator; the loop closes through the resonator reflections.
    XT = _junction_solve((eye - s_cc @ E).T, np.column_stack([rk]))[:, 0]
    drive = XT @ s_ci                                   # sqrt(k)^t X s_CI
    decay = 0.5 * XT @ ((eye + s_cc @ E) @ rk)           # effective kappa/2
    Y = _junction_solve(eye - E @ s_cc, np.column_stack([E @ s_ci, E @ rk]))
    transfer = s_ii + s_ic @ Y[:, :-1]
    emission = -s_ic @ Y[:, -1]
    return drive, decay, transfer, emission


def nport_eom_rhs(a_plus, s_I_in, net, omega0):
    """da+/dt of a resonator closing the coupled ports of ``net``.

    The independent-port drive ``s_I_in`` enters through the multiple
    reflections between the network and the resonator.
    """
    drive, decay, _, _ = _reduction(net)
    s_I_in = np.asarray(s_I_in, dtype=complex).reshape(drive.shape)
    return 1j * omega0 * a_plus - decay * a_plus + drive @ s_I_in


@dataclass(frozen=True)
class ReducedScattering:
    """Steady-state response of the network seen from the independent ports.

    ``transfer`` maps incoming to outgoing waves when the resonator is at
    rest, ``emission`` is the outgoing wave per unit amplitude ``a+``, and
    ``drive``/``decay`` are the coefficients of the resonator equation.
    Calling the object with ``omega`` returns the full S-matrix.
    """

    transfer: np.ndarray
    emission: np.ndarray
    drive: np.ndarray
    decay: complex
    omega0: float
    _empty: bool = field(default=False, repr=False)

    @property
    def kappa_eff(self):
        return 2 * self.decay.real

    def amplitude(self, omega):
        """Steady-state a+ per unit incident wave at each independent port."""
        return self.drive / (1j * (omega - self.omega0) + self.decay)

    def __call__(self, omega):
        if self._empty:
            return self.transfer.copy()
        omega = np.asarray(omega, dtype=float)
        if omega.ndim == 0:
            return self.transfer + np.outer(self.emission, self.amplitude(omega))
        resp = 1.0 / (1j * (omega - self.omega0) + self.decay)
        rank1 = np.outer(self.emission, self.drive)
        return self.transfer[None] + resp[:, None, None] * rank1[None]


def nport_reduced_scattering(net, omega0):
    if len(net.coupled_ports) == 0:
        n = net.S.shape[0]
        return ReducedScattering(net.S.copy(), np.zeros(n), np.zeros(n),
                                 0.0, omega0, _empty=True)
    drive, decay, transfer, emission = _reduction(net)
    return ReducedScattering(transfer, emission, drive, complex(decay), omega0)


# -- standard loading geometries -----------------------------------------------

def doubly_loaded_network(theta1=0.0, theta2=0.0):
    """Two through-lines of electrical lengths theta1, theta2.

    Ports 0, 1 face the resonator; ports 2, 3 are the far ends of the same
    lines.
    """
    S = np.zeros((4, 4), dtype=complex)
    S[0, 2] = S[2, 0] = np.exp(-1j * theta1)
    S[1, 3] = S[3, 1] = np.exp(-1j * theta2)
    return S


def tjunction_network():
    """Ideal lossless T-junction of three identical lines."""
    return np.full((3, 3), 2 / 3) - np.eye(3)


def doubly_loaded_s43(omega, omega0, kappa1, kappa2, theta1=0.0, theta2=0.0):
    if kappa1 + kappa2 <= 0:
        raise ZeroKappa("total coupling must be positive")
    omega = np.asarray(omega, dtype=float)
    return (-sqrt(kappa1 * kappa2) * np.exp(-1j * (theta1 + theta2))
            / (1j * (omega - omega0) + (kappa1 + kappa2) / 2))


def tjunction_s32(omega, omega0, kappa):
    if kappa <= 0:
        raise ZeroKappa("side-coupled transmission needs kappa > 0")
    x = 1j * (np.asarray(omega, dtype=float) - omega0)
    return x / (x + kappa / 4)
