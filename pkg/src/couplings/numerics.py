"""Shared numerical kernel: sampled complex traces, dense solves, phase
unwrapping, complex root refinement and fixed-step RK4 propagation."""

import warnings
from dataclasses import dataclass
from math import factorial

import numpy as np
from scipy import linalg

from .errors import NoConvergence, SingularMatrix, ZeroMagnitudeSample

AXIS_UNITS = ("rad/s", "Hz", "s")


@dataclass(frozen=True)
class ComplexTrace:
    """Complex samples of a function of angular frequency (or time).

    ``unit`` tags the axis: ``"rad/s"`` for frequency sweeps, ``"s"`` for
    trajectories.
    """

    axis: np.ndarray
    values: np.ndarray
    unit: str = "rad/s"

    def __post_init__(self):
        axis = np.asarray(self.axis, dtype=float)
        values = np.asarray(self.values, dtype=complex)
        if axis.ndim != 1 or values.ndim != 1:
            raise ValueError("trace axis and values must be one-dimensional")
        if axis.shape != values.shape:
            raise ValueError(
                f"axis has {axis.size} samples but values has {values.size}")
        if axis.size > 1 and np.any(np.diff(axis) <= 0):
            raise ValueError("trace axis must be strictly increasing")
        if self.unit not in AXIS_UNITS:
            raise ValueError(f"unknown axis unit {self.unit!r}")
        object.__setattr__(self, "axis", axis)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return self.axis.size

    @property
    def magnitude(self):
        return np.abs(self.values)

    def rotated(self, phase):
        """Same trace multiplied by ``exp(-1j*phase)``."""
        return ComplexTrace(self.axis, self.values * np.exp(-1j * phase),
                            self.unit)


def as_matrix(A):
    """Validate and return ``A`` as a finite 2-D complex array."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def solve_linear(A, b):
    """Solve ``A x = b`` by LU with partial pivoting.

    Raises SingularMatrix when a pivot falls below ``1e-13`` times the
    largest entry of ``A``.
    """
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise ValueError(f"matrix must be square, got {A.shape}")
    b = np.asarray(b, dtype=complex)
    scale = np.max(np.abs(A)) if A.size else 0.0
    if scale == 0.0:
        raise SingularMatrix("matrix is identically zero")
    with warnings.catch_warnings():
        # singularity is reported below through the pivot check
        warnings.simplefilter("ignore", linalg.LinAlgWarning)
        lu, piv = linalg.lu_factor(A, check_finite=False)
    pivots = np.abs(np.diag(lu))
    if np.min(pivots) < 1e-13 * scale:
        raise SingularMatrix(
            f"pivot {np.min(pivots):.3e} below 1e-13 x max entry {scale:.3e}")
    return linalg.lu_solve((lu, piv), b, check_finite=False)


def unwrap_phase(trace):
    """Continuous phase of a trace (or plain complex array).

    The first sample stays in (-pi, pi]; successive samples never jump by
    more than pi.
    """
    values = trace.values if isinstance(trace, ComplexTrace) else np.asarray(
        trace, dtype=complex)
    mags = np.abs(values)
    if np.any(mags == 0):
        k = int(np.flatnonzero(mags == 0)[0])
        raise ZeroMagnitudeSample(f"sample {k} has zero magnitude")
    return np.unwrap(np.angle(values))


def refine_root(f, seed, max_iter=100, rel_step=1e-6):
    """Newton iteration for a complex root of ``f`` started at ``seed``.

    The derivative is a central difference with step ``rel_step*|z|``.
    Stops when ``|f| <= 1e-10 |f(seed)|`` or the Newton step is below
    ``1e-12 |z|``.
    """
    z = complex(seed)
    f_seed = f(z)
    if f_seed == 0:
        return z
    target = 1e-10 * abs(f_seed)
    fz = f_seed
    for _ in range(max_iter):
        h = rel_step * max(abs(z), 1.0)
        dfdz = (f(z + h) - f(z - h)) / (2 * h)
        if dfdz == 0 or not np.isfinite(dfdz):
            raise NoConvergence(f"vanishing derivative near {z}")
        step = fz / dfdz
        z = z - step
        fz = f(z)
        if not np.isfinite(fz):
            raise NoConvergence(f"function not finite at {z}")
        if abs(fz) <= target or abs(step) <= 1e-12 * abs(z):
            return z
    raise NoConvergence(f"no convergence after {max_iter} iterations from {seed}")


# -- fixed-step fourth-order Runge-Kutta ----------------------------------------

def rk4(f, y0, t0, dt, n):
    """Classical RK4 for ``dy/dt = f(t, y)``; returns times and states."""
    y = np.array(y0, dtype=complex)
    out = np.empty((n + 1,) + y.shape, dtype=complex)
    out[0] = y
    t = t0
    for k in range(n):
        k1 = f(t, y)
        k2 = f(t + dt / 2, y + dt / 2 * k1)
        k3 = f(t + dt / 2, y + dt / 2 * k2)
        k4 = f(t + dt, y + dt * k3)
        y = y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        out[k + 1] = y
        t = t0 + (k + 1) * dt
    return t0 + dt * np.arange(n + 1), out


def rk4_step_matrix(generator, dt):
    """One RK4 step of ``dy/dt = G y`` is exactly ``sum_{k<=4} (dt G)^k/k!``."""
    G = as_matrix(generator)
    hG = dt * G
    P = np.eye(G.shape[0], dtype=complex)
    term = np.eye(G.shape[0], dtype=complex)
    for k in range(1, 5):
        term = term @ hG
        P = P + term / factorial(k)
    return P


def rk4_linear(generator, y0, dt, n, block=1024):
    """RK4 propagation of a constant linear system, ``n`` steps of ``dt``.

    Produces the same states as stepping ``rk4`` on ``f = G y`` but
    evaluates blocks of steps through precomputed powers of the step
    matrix.
    """
    P = rk4_step_matrix(generator, dt)
    d = P.shape[0]
    y = np.asarray(y0, dtype=complex).reshape(d)
    block = max(1, min(block, n))
    powers = np.empty((block + 1, d, d), dtype=complex)
    powers[0] = np.eye(d)
    for k in range(1, block + 1):
        powers[k] = P @ powers[k - 1]
    out = np.empty((n + 1, d), dtype=complex)
    out[0] = y
    i = 0
    while i < n:
        m = min(block, n - i)
        out[i + 1:i + m + 1] = powers[1:m + 1] @ out[i]
        i += m
    return out
