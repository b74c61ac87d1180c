"""Frequency-domain nodal-admittance solver for small microwave netlists.

Supports lumped R, L, C, uniform lines, symmetric coupled-line four-ports
and open/short stubs. Ports are voltage sources behind their reference
impedance. The time convention is exp(j w t), so a decaying mode sits at a
complex frequency w_r + j kappa/2 with kappa > 0.
"""

from dataclasses import dataclass, field
from math import pi

import numpy as np
from scipy.signal import argrelmin

from .errors import (DuplicateName, ElementSingularAtFrequency, NoConvergence,
                     NoModeInWindow, SingularMatrix, SingularNetwork, UnknownNode)
from .extraction import ResonanceFit, fit_lorentzian_phase
from .numerics import ComplexTrace, refine_root, solve_linear

GROUND = ("0", "gnd", "GND")

# element kind -> (terminal count, required parameters, optional parameters)
ELEMENT_KINDS = {
    "RES": (2, ("R",), ()),
    "CAP": (2, ("C",), ()),
    "IND": (2, ("L",), ()),
    "TLINE": (2, ("Z0", "EL", "F0"), ()),
    "CLINE": (4, ("ZE", "ZO", "EL", "F0"), ("ELO",)),
    "OPENSTUB": (1, ("Z0", "EL", "F0"), ()),
    "SHORTSTUB": (1, ("Z0", "EL", "F0"), ()),
}
POLE_GUARD = 1e-6


@dataclass(frozen=True)
class Element:
    """One circuit element.

    ``CLINE`` terminals are ordered (line 1 left, line 2 left, line 1
    right, line 2 right). Stubs have one terminal and return to ground.
    ``EL`` is the electrical length in degrees at ``F0`` (Hz).
    """

    kind: str
    name: str
    nodes: tuple
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ELEMENT_KINDS:
            raise ValueError(f"unknown element kind {self.kind!r}")
        count, required, optional = ELEMENT_KINDS[self.kind]
        nodes = tuple(str(n) for n in self.nodes)
        if len(nodes) != count:
            raise ValueError(f"{self.kind} {self.name} needs {count} nodes, got {len(nodes)}")
        params = {k: float(v) for k, v in self.params.items()}
        missing = [k for k in required if k not in params]
        if missing:
            raise ValueError(f"{self.kind} {self.name} missing {', '.join(missing)}")
        unknown = set(params) - set(required) - set(optional)
        if unknown:
            raise ValueError(f"{self.kind} {self.name} has unknown keys {sorted(unknown)}")
        if any(v <= 0 for v in params.values()):
            raise ValueError(f"{self.kind} {self.name} parameters must be positive")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "params", params)

    def theta(self, omega, key="EL"):
        p = self.params
        return np.deg2rad(p[key]) * omega / (2 * pi * p["F0"])


@dataclass(frozen=True)
class Port:
    name: str
    node_p: str
    node_n: str = "0"
    Z0: float = 50.0

    def __post_init__(self):
        if self.Z0 <= 0:
            raise ValueError(f"port {self.name} needs a positive Z0")
        object.__setattr__(self, "node_p", str(self.node_p))
        object.__setattr__(self, "node_n", str(self.node_n))


@dataclass(frozen=True)
class Netlist:
    elements: tuple
    ports: tuple = ()

    def __post_init__(self):
        elements, ports = tuple(self.elements), tuple(self.ports)
        seen = set()
        for item in elements + ports:
            if item.name in seen:
                raise DuplicateName(f"name {item.name!r} used twice")
            seen.add(item.name)
        nodes = []
        for el in elements:
            for n in el.nodes:
                if n not in GROUND and n not in nodes:
                    nodes.append(n)
        for p in ports:
            for n in (p.node_p, p.node_n):
                if n not in GROUND and n not in nodes:
                    raise UnknownNode(f"port {p.name} references unused node {n!r}")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "ports", ports)
        object.__setattr__(self, "_nodes", tuple(nodes))

    @property
    def nodes(self):
        """Non-ground node names in order of first appearance."""
        return self._nodes

    def node_index(self):
        return {n: k for k, n in enumerate(self._nodes)}

    def port_index(self, port):
        if isinstance(port, (int, np.integer)):
            return int(port)
        for k, p in enumerate(self.ports):
            if p.name == port:
                return k
        raise KeyError(f"no port named {port!r}")

    def incidence(self):
        """Node-by-port incidence matrix P."""
        idx = self.node_index()
        P = np.zeros((len(self._nodes), len(self.ports)))
        for k, p in enumerate(self.ports):
            if p.node_p in idx:
                P[idx[p.node_p], k] += 1
            if p.node_n in idx:
                P[idx[p.node_n], k] -= 1
        return P

    def port_conductances(self):
        return np.array([1.0 / p.Z0 for p in self.ports])


# -- element stamps -----------------------------------------------------------

def _line_block(Yc, theta, name):
    s = np.sin(theta)
    if abs(s) < 1e-12:
        raise ElementSingularAtFrequency(f"{name}: line is a multiple of half a wavelength")
    c = np.cos(theta) / s
    return Yc * np.array([[-1j * c, 1j / s], [1j / s, -1j * c]])


def element_admittance(el, omega):
    """Local admittance matrix of ``el`` over its own terminals."""
    p = el.params
    if el.kind == "RES":
        y = 1.0 / p["R"]
        return np.array([[y, -y], [-y, y]], dtype=complex)
    if el.kind == "CAP":
        y = 1j * omega * p["C"]
        return np.array([[y, -y], [-y, y]])
    if el.kind == "IND":
        if omega == 0:
            raise ElementSingularAtFrequency(f"{el.name}: inductor at zero frequency")
        y = 1.0 / (1j * omega * p["L"])
        return np.array([[y, -y], [-y, y]])
    if el.kind == "TLINE":
        return _line_block(1.0 / p["Z0"], el.theta(omega), el.name)
    if el.kind == "CLINE":
        t_even = _line_block(1.0 / p["ZE"], el.theta(omega), el.name)
        t_odd = _line_block(1.0 / p["ZO"], el.theta(omega, "ELO" if "ELO" in p else "EL"),
                            el.name)
        same = 0.5 * np.ones((2, 2))
        diff = 0.5 * np.array([[1, -1], [-1, 1]])
        return np.kron(t_even, same) + np.kron(t_odd, diff)
    theta = el.theta(omega)
    if el.kind == "OPENSTUB":
        c = np.cos(theta)
        if abs(c) < 1e-12:
            raise ElementSingularAtFrequency(f"{el.name}: open stub is a quarter wavelength")
        return np.array([[1j / p["Z0"] * np.sin(theta) / c]])
    s = np.sin(theta)
    if abs(s) < 1e-12:
        raise ElementSingularAtFrequency(f"{el.name}: short stub is a half wavelength")
    return np.array([[-1j / p["Z0"] * np.cos(theta) / s]])


def pole_distance(net, omega):
    """Smallest distance (rad) of any distributed element to a stamp pole."""
    d = np.inf
    for el in net.elements:
        if el.kind in ("TLINE", "CLINE", "SHORTSTUB"):
            keys = ("EL", "ELO") if el.kind == "CLINE" and "ELO" in el.params else ("EL",)
            for key in keys:
                t = np.real(el.theta(omega, key))
                d = min(d, abs(t - pi * np.round(t / pi)))
        elif el.kind == "OPENSTUB":
            t = np.real(el.theta(omega)) - pi / 2
            d = min(d, abs(t - pi * np.round(t / pi)))
    return d


def assemble_admittance(net, omega, terminate_ports=False):
    """Nodal admittance matrix at (possibly complex) angular frequency."""
    idx = net.node_index()
    Y = np.zeros((len(idx), len(idx)), dtype=complex)
    for el in net.elements:
        local = element_admittance(el, omega)
        where = [idx.get(n) for n in el.nodes]
        for a, ia in enumerate(where):
            if ia is None:
                continue
            for b, ib in enumerate(where):
                if ib is not None:
                    Y[ia, ib] += local[a, b]
    if terminate_ports:
        P = net.incidence()
        Y = Y + (P * net.port_conductances()) @ P.T
    return Y


def smatrix(net, omega):
    """Port scattering matrix at one real angular frequency."""
    if not net.ports:
        raise ValueError("netlist has no ports")
    Yt = assemble_admittance(net, omega, terminate_ports=True)
    P = net.incidence()
    g = np.sqrt(net.port_conductances())
    try:
        X = solve_linear(Yt, P * g)
    except SingularMatrix as exc:
        raise SingularNetwork(f"singular nodal matrix at w={omega:.6e}") from exc
    return 2 * g[:, None] * (P.T @ X) - np.eye(len(net.ports))


@dataclass(frozen=True)
class Sweep:
    """S-parameters on a frequency grid; flagged samples hold NaN."""

    omega: np.ndarray
    S: np.ndarray
    flagged: np.ndarray
    port_names: tuple

    def trace(self, to_port, from_port):
        """Trace of S[to, from] over the unflagged samples."""
        i = _lookup(self.port_names, to_port)
        j = _lookup(self.port_names, from_port)
        keep = ~self.flagged
        return ComplexTrace(self.omega[keep], self.S[keep, i, j], "rad/s")


def _lookup(names, port):
    if isinstance(port, (int, np.integer)):
        return int(port)
    return names.index(port)


def sparams(net, omegas):
    omegas = np.asarray(omegas, dtype=float)
    n = len(net.ports)
    S = np.full((omegas.size, n, n), np.nan + 0j)
    flagged = np.zeros(omegas.size, dtype=bool)
    for k, w in enumerate(omegas):
        try:
            S[k] = smatrix(net, w)
        except (SingularNetwork, ElementSingularAtFrequency):
            flagged[k] = True
    return Sweep(omegas, S, flagged, tuple(p.name for p in net.ports))


# -- eigenmodes ---------------------------------------------------------------

@dataclass(frozen=True)
class Mode:
    omega_r: float
    kappa: float

    @property
    def root(self):
        return complex(self.omega_r, self.kappa / 2)


def _det_function(net, scale_at):
    scale = np.linalg.det(assemble_admittance(net, scale_at, terminate_ports=True))
    scale = abs(scale) if scale != 0 and np.isfinite(scale) else 1.0

    def f(z):
        return np.linalg.det(assemble_admittance(net, z, terminate_ports=True)) / scale
    return f


def find_modes(net, window, points=2001):
    """Complex natural frequencies of the port-terminated netlist in a window.

    ``window`` is a pair of angular frequencies. Seeds are the local minima
    of |det Y| on a real grid; each is refined with Newton's method.
    """
    w_lo, w_hi = map(float, window)
    if not 0 < w_lo < w_hi:
        raise ValueError("window must be positive and increasing")
    grid = np.linspace(w_lo, w_hi, points)
    f = _det_function(net, 0.5 * (w_lo + w_hi))
    mags = np.empty(points)
    for k, w in enumerate(grid):
        try:
            mags[k] = abs(f(w)) if pole_distance(net, w) > POLE_GUARD else np.inf
        except ElementSingularAtFrequency:
            mags[k] = np.inf
    seeds = argrelmin(mags)[0]
    seeds = [k for k in seeds if 0 < k < points - 1 and np.isfinite(mags[k])]
    roots = []
    for k in seeds:
        try:
            z = refine_root(f, grid[k])
        except (NoConvergence, ElementSingularAtFrequency):
            continue
        if not (w_lo <= z.real <= w_hi):
            continue
        if any(abs(z - r) <= 1e-6 * abs(z) for r in roots):
            continue
        roots.append(z)
    if not roots:
        raise NoModeInWindow(f"no mode between {w_lo:.6e} and {w_hi:.6e} rad/s")
    roots.sort(key=lambda z: z.real)
    return [Mode(z.real, 2 * z.imag) for z in roots]


def ringdown(net, port, omega_center, span, points=801):
    """Decay rate from a Lorentzian fit to the reflection phase at ``port``.

    Equivalent to fitting the exponential ring-down of the stored energy
    for an isolated mode; returns a ResonanceFit in rad/s.
    """
    omegas = np.linspace(omega_center - span / 2, omega_center + span / 2, points)
    sw = sparams(net, omegas)
    k = net.port_index(port)
    return fit_lorentzian_phase(sw.trace(k, k))
