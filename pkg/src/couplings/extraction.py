"""Resonance location and decay-rate extraction from sampled responses.

All extractors take a ComplexTrace on an angular-frequency axis and are
insensitive to a constant phase rotation of the trace.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares
from scipy.signal import find_peaks

from .coupled import zeta_from_eigenfreqs
from .errors import FeatureNotFound, PoorFit
from .numerics import unwrap_phase

METHODS = ("phase_slope", "phase_width_90", "width_3db", "lorentzian_fit")
MODES = ("reflection_phase_inflection", "transmission_peak", "transmission_null")
TOPOLOGIES = ("doubly_loaded", "side_coupled")


@dataclass(frozen=True)
class ResonanceFit:
    """Located resonance with its coupling rate.

    ``kappa`` is the rate that appears in the model of the chosen method;
    ``decay_rate`` is the resulting energy decay rate of the loaded
    resonator (they differ for the side-coupled geometry).
    """

    omega0: float
    kappa: float
    method: str
    residual: float = 0.0
    decay_rate: float = None
    peak_magnitude: float = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if not self.kappa > 0:
            raise FeatureNotFound(f"non-positive kappa {self.kappa}")
        if self.decay_rate is None:
            object.__setattr__(self, "decay_rate", self.kappa)

    @property
    def Q(self):
        return self.omega0 / self.decay_rate

    @property
    def unity_peak(self):
        return self.peak_magnitude is not None and abs(self.peak_magnitude - 1) < 1e-3


def _vertex(x, y, k):
    """Vertex (x, y) of the parabola through samples k-1, k, k+1."""
    x0, x1, x2 = x[k - 1:k + 2]
    y0, y1, y2 = y[k - 1:k + 2]
    h0, h2 = x0 - x1, x2 - x1
    # y = y1 + b t + a t^2 with t = x - x1
    a = ((y2 - y1) / h2 - (y0 - y1) / h0) / (h2 - h0)
    b = (y2 - y1) / h2 - a * h2
    if a == 0:
        return x1, y1
    t = -b / (2 * a)
    if not h0 <= t <= h2:
        return x1, y1
    return x1 + t, y1 + b * t + a * t * t


def _interior(k, n, what):
    if k <= 0 or k >= n - 1:
        raise FeatureNotFound(f"{what} lies at the edge of the trace")


def _phase_slopes(trace):
    """Midpoint axis and forward-difference phase slope."""
    phi = unwrap_phase(trace)
    w = trace.axis
    return 0.5 * (w[1:] + w[:-1]), np.diff(phi) / np.diff(w), phi


def _inflection(trace):
    mid, slope, phi = _phase_slopes(trace)
    k = int(np.argmax(np.abs(slope)))
    _interior(k, slope.size, "phase inflection")
    if slope[k] == 0:
        raise FeatureNotFound("flat phase")
    w0, inv = _vertex(mid, 1.0 / slope, k)
    return w0, inv, phi


def find_resonance(trace, mode):
    """Resonant angular frequency located on a sampled response."""
    if len(trace) < 5:
        raise FeatureNotFound("trace too short")
    if mode == "reflection_phase_inflection":
        return _inflection(trace)[0]
    mag2 = np.abs(trace.values) ** 2
    if mode == "transmission_peak":
        k = int(np.argmax(mag2))
        _interior(k, mag2.size, "transmission peak")
        if mag2[k] == 0:
            raise FeatureNotFound("no transmission")
        return _vertex(trace.axis, 1.0 / mag2, k)[0]
    if mode == "transmission_null":
        k = int(np.argmin(mag2))
        _interior(k, mag2.size, "transmission null")
        return _vertex(trace.axis, mag2, k)[0]
    raise ValueError(f"mode must be one of {MODES}")


def _phase_model(w, offset, delay, w0, kappa, wc):
    return offset - delay * (w - wc) - 2 * np.arctan(2 * (w - w0) / kappa)


def _rms_residual(trace, w0, kappa):
    phi = unwrap_phase(trace)
    model = _phase_model(trace.axis, 0.0, 0.0, w0, kappa, w0)
    r = phi - model
    r = r - r.mean()
    return float(np.sqrt(np.mean(r ** 2)))


def kappa_from_phase_slope(trace):
    """kappa = -4 / (d arg S11 / d omega) at the phase inflection."""
    w0, inv_slope, _ = _inflection(trace)
    kappa = -4.0 * inv_slope
    if kappa <= 0:
        raise FeatureNotFound("reflection phase increases through resonance")
    return ResonanceFit(w0, kappa, "phase_slope", _rms_residual(trace, w0, kappa))


def _crossings(x, y, level):
    """Linear-interpolated abscissae where ``y`` crosses ``level``."""
    s = y - level
    idx = np.flatnonzero(np.sign(s[:-1]) * np.sign(s[1:]) <= 0)
    out = []
    for k in idx:
        if s[k] == s[k + 1]:
            out.append(x[k])
        else:
            out.append(x[k] - s[k] * (x[k + 1] - x[k]) / (s[k + 1] - s[k]))
    return np.array(out)


def kappa_from_phase_width(trace):
    """kappa as the separation of the +-90 degree points about the inflection."""
    w0, _, phi = _inflection(trace)
    phi0 = np.interp(w0, trace.axis, phi)
    upper = _crossings(trace.axis, phi, phi0 + np.pi / 2)
    lower = _crossings(trace.axis, phi, phi0 - np.pi / 2)
    upper, lower = upper[upper < w0], lower[lower > w0]
    if upper.size == 0 or lower.size == 0:
        raise FeatureNotFound("phase does not swing by +-90 degrees")
    kappa = lower.min() - upper.max()
    return ResonanceFit(w0, kappa, "phase_width_90", _rms_residual(trace, w0, kappa))


def kappa_from_3db(trace, topology):
    """Rate from the half-power width of a transmission peak or dip.

    For the doubly loaded geometry the width is the total rate
    kappa1 + kappa2. For the side-coupled geometry the width is kappa/2,
    where kappa is the rate the resonator would have if it terminated the
    line, and also the energy decay rate of the loaded resonator.
    """
    if topology not in TOPOLOGIES:
        raise ValueError(f"topology must be one of {TOPOLOGIES}")
    w = trace.axis
    mag2 = np.abs(trace.values) ** 2
    if topology == "doubly_loaded":
        w0 = find_resonance(trace, "transmission_peak")
        peak = np.interp(w0, w, mag2)
        k = int(np.argmax(mag2))
        peak = max(peak, _vertex(w, mag2, k)[1]) if 0 < k < mag2.size - 1 else peak
        level = peak / 2
    else:
        w0 = find_resonance(trace, "transmission_null")
        peak = np.sqrt(np.min(mag2))
        level = np.max(mag2) / 2
    cross = _crossings(w, mag2, level)
    left, right = cross[cross < w0], cross[cross > w0]
    if left.size == 0 or right.size == 0:
        raise FeatureNotFound("half-power points not inside the trace")
    width = right.min() - left.max()
    if topology == "doubly_loaded":
        return ResonanceFit(w0, width, "width_3db", peak_magnitude=float(np.sqrt(peak)))
    return ResonanceFit(w0, 2 * width, "width_3db", decay_rate=width,
                        peak_magnitude=float(peak))


def fit_lorentzian_phase(trace, max_rms=1e-2):
    """Least-squares fit of an unwrapped reflection phase.

    The model is a single Lorentzian phase step plus a linear background
    delay; raises PoorFit above ``max_rms`` radians RMS.
    """
    start = kappa_from_phase_slope(trace)
    w = trace.axis
    phi = unwrap_phase(trace)
    wc, scale = start.omega0, start.kappa
    u = (w - wc) / scale

    def resid(x):
        offset, delay, du0, lk = x
        return (offset - delay * u
                - 2 * np.arctan(2 * (u - du0) / np.exp(lk)) - phi)

    offset0 = np.interp(wc, w, phi)
    fit = least_squares(resid, [offset0, 0.0, 0.0, 0.0], method="lm",
                        xtol=1e-15, ftol=1e-15, gtol=1e-15)
    rms = float(np.sqrt(np.mean(fit.fun ** 2)))
    if rms > max_rms:
        raise PoorFit(f"phase fit RMS {rms:.3e} rad exceeds {max_rms:.1e}")
    offset, delay, du0, lk = fit.x
    return ResonanceFit(wc + du0 * scale, np.exp(lk) * scale, "lorentzian_fit", rms)


def transmission_peaks(trace, threshold_db=-40.0):
    """Angular frequencies of the two strongest resolved transmission peaks.

    Peaks must rise above ``threshold_db`` relative to the trace maximum
    and be separated by a dip of at least 3 dB.
    """
    mag2 = np.abs(trace.values) ** 2
    if not np.any(mag2 > 0):
        raise FeatureNotFound("no transmission")
    db = 10 * np.log10(np.maximum(mag2, 1e-300) / mag2.max())
    idx, _ = find_peaks(db, height=threshold_db, prominence=3.0)
    if idx.size < 2:
        raise FeatureNotFound("fewer than two resolved transmission peaks")
    top = np.sort(idx[np.argsort(db[idx])[-2:]])
    w1, w2 = (_vertex(trace.axis, 1.0 / mag2, k)[0] for k in top)
    return w1, w2


def zeta_from_peak_splitting(trace, w01, w02, threshold_db=-40.0):
    """Coupling coefficient from the two normal-mode peaks of a transmission."""
    w1, w2 = transmission_peaks(trace, threshold_db)
    return zeta_from_eigenfreqs(w01, w02, w1, w2)
