"""Command-line front end.

User-facing frequencies are in Hz and decay rates are reported as
kappa/2pi in Hz. Results go to CSV (stdout when ``--out`` is omitted);
``--plot`` also renders a PNG next to the CSV.
"""

import argparse
import io
import os
import sys
import tempfile
from dataclasses import dataclass, field
from math import pi

import numpy as np

from . import extraction, network
from .coupled_lines import backward_coupler_smatrix, forward_coupler_smatrix
from .errors import CouplingError
from .netlist import read_netlist
from .resonator import ResonatorParams, integrate

COMMANDS = ("sweep", "modes", "extract", "timesim", "coupler")
KAPPA_METHODS = ("phase-slope", "phase-width", "lorentzian", "3db-doubly", "3db-side")


@dataclass
class RunConfig:
    command: str
    netlist: str = None
    fmin: float = None
    fmax: float = None
    points: int = 2001
    pairs: tuple = ("21",)
    out: str = None
    method: str = "phase-slope"
    quantity: str = None
    plot: bool = False
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.points < 2:
            raise ValueError("--points must be at least 2")
        if self.fmin is not None and self.fmax is not None:
            if not 0 < self.fmin < self.fmax:
                raise ValueError("need 0 < fmin < fmax")

    def grid_hz(self):
        if self.fmin is None or self.fmax is None:
            raise ValueError("--fmin and --fmax are required")
        return np.linspace(self.fmin, self.fmax, self.points)


def fmt(x):
    return f"{x:.16e}"


def parse_pair(text):
    """'21', 'S21' or '12:3' -> zero-based (to, from)."""
    t = text.strip().upper().lstrip("S")
    if ":" in t:
        a, b = t.split(":", 1)
    elif len(t) == 2 and t.isdigit():
        a, b = t
    else:
        raise ValueError(f"bad S-parameter pair {text!r}")
    return int(a) - 1, int(b) - 1


def pair_label(text):
    i, j = parse_pair(text)
    return f"S{i + 1}{j + 1}" if i < 9 and j < 9 else f"S{i + 1}:{j + 1}"


def csv_text(header, rows):
    buf = io.StringIO(newline="")
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) if not isinstance(v, str) else v for v in row) + "\n")
    return buf.getvalue()


def write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".csv")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(config, text):
    if config.out:
        write_atomic(config.out, text)
    else:
        sys.stdout.write(text)


def _figure_path(config):
    if not config.out:
        raise ValueError("--plot needs --out")
    return os.path.splitext(config.out)[0] + ".png"


def _port_pair(net, text):
    i, j = parse_pair(text)
    n = len(net.ports)
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"pair {text!r} outside the {n}-port netlist")
    return i, j


def _sweep_columns(net, config):
    f = config.grid_hz()
    pairs = [_port_pair(net, p) for p in config.pairs]
    sw = network.sparams(net, 2 * pi * f)
    keep = ~sw.flagged
    labels, cols = [], []
    for p, (i, j) in zip(config.pairs, pairs):
        labels.append(pair_label(p))
        cols.append(sw.S[keep, i, j])
    if np.any(sw.flagged):
        print(f"warning: {int(sw.flagged.sum())} singular sample(s) skipped",
              file=sys.stderr)
    return f[keep], labels, cols


def cmd_sweep(config):
    net = read_netlist(config.netlist)
    f, labels, cols = _sweep_columns(net, config)
    header = ["freq_hz"] + [s for lab in labels for s in (f"re_{lab}", f"im_{lab}")]
    rows = [[fk] + [x for c in cols for x in (c[k].real, c[k].imag)]
            for k, fk in enumerate(f)]
    _emit(config, csv_text(header, rows))
    if config.plot:
        from .plotting import render_sweep
        render_sweep(f, dict(zip(labels, cols)), _figure_path(config))


def cmd_modes(config):
    net = read_netlist(config.netlist)
    modes = network.find_modes(net, (2 * pi * config.fmin, 2 * pi * config.fmax),
                               points=config.points)
    rows = [[m.omega_r / (2 * pi), m.kappa / (2 * pi)] for m in modes]
    _emit(config, csv_text(["f_r_hz", "kappa_over_2pi_hz"], rows))
    if config.plot:
        from .plotting import render_modes
        render_modes(*np.array(rows).T, _figure_path(config))


def _trace(net, config, pair):
    i, j = _port_pair(net, pair)
    sw = network.sparams(net, 2 * pi * config.grid_hz())
    return sw.trace(i, j)


def cmd_extract(config):
    net = read_netlist(config.netlist)
    pair = config.pairs[0]
    trace = _trace(net, config, pair)
    if config.quantity == "kappa":
        m = config.method
        if m == "phase-slope":
            fit = extraction.kappa_from_phase_slope(trace)
        elif m == "phase-width":
            fit = extraction.kappa_from_phase_width(trace)
        elif m == "lorentzian":
            fit = extraction.fit_lorentzian_phase(trace)
        elif m == "3db-doubly":
            fit = extraction.kappa_from_3db(trace, "doubly_loaded")
        elif m == "3db-side":
            fit = extraction.kappa_from_3db(trace, "side_coupled")
        else:
            raise ValueError(f"--method must be one of {KAPPA_METHODS}")
        header = ["f_r_hz", "kappa_over_2pi_hz", "decay_rate_over_2pi_hz", "residual"]
        row = [fit.omega0 / (2 * pi), fit.kappa / (2 * pi),
               fit.decay_rate / (2 * pi), fit.residual]
        _emit(config, csv_text(header, [row]))
    elif config.quantity == "zeta":
        f01, f02 = config.options.get("f01"), config.options.get("f02")
        if f01 is None or f02 is None:
            raise ValueError("extract zeta needs --f01 and --f02")
        z = extraction.zeta_from_peak_splitting(trace, 2 * pi * f01, 2 * pi * f02)
        _emit(config, csv_text(["zeta"], [[z]]))
    else:
        raise ValueError("extract needs 'kappa' or 'zeta'")


def cmd_timesim(config):
    o = config.options
    params = ResonatorParams(o["L"], o["C"], o.get("R", 0.0), o.get("G", 0.0))
    t_end = o.get("periods", 10.0) / params.f0
    dt = 1.0 / (o.get("steps_per_period", 200) * params.f0)
    tr = integrate(o.get("rhs", "exact"), complex(o.get("a0", 1.0)), (0.0, t_end),
                   params, dt=dt)
    rows = [[t, a.real, a.imag, abs(a) ** 2] for t, a in zip(tr.axis, tr.values)]
    _emit(config, csv_text(["time_s", "re_a", "im_a", "energy_j"], rows))
    if config.plot:
        from .plotting import render_trajectory
        render_trajectory(tr.axis, tr.values, _figure_path(config))


def cmd_coupler(config):
    """Ideal coupler S-parameters; theta (deg at f0) scales with frequency."""
    o = config.options
    zeta, theta_deg, kind = o["zeta"], o["theta"], o.get("kind", "backward")
    f0 = o.get("f0", 5e9)
    if config.fmin is None:
        f = np.array([f0])
    else:
        f = config.grid_hz()
    build = backward_coupler_smatrix if kind == "backward" else forward_coupler_smatrix
    mats = [build(zeta, np.deg2rad(theta_deg) * fk / f0) for fk in f]
    labels = [pair_label(p) for p in config.pairs]
    idx = [parse_pair(p) for p in config.pairs]
    header = ["freq_hz"] + [s for lab in labels for s in (f"re_{lab}", f"im_{lab}")]
    rows = [[fk] + [x for (i, j) in idx for x in (S[i, j].real, S[i, j].imag)]
            for fk, S in zip(f, mats)]
    _emit(config, csv_text(header, rows))
    if config.plot:
        from .plotting import render_sweep
        cols = {lab: np.array([S[i, j] for S in mats]) for lab, (i, j) in zip(labels, idx)}
        render_sweep(f, cols, _figure_path(config))


def run(config):
    """Execute one command; returns the process exit status."""
    handlers = {"sweep": cmd_sweep, "modes": cmd_modes, "extract": cmd_extract,
                "timesim": cmd_timesim, "coupler": cmd_coupler}
    try:
        if config.plot:
            _figure_path(config)
        handlers[config.command](config)
    except CouplingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="couplings", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, netlist=True, grid=True):
        if netlist:
            p.add_argument("--netlist", required=True)
        if grid:
            p.add_argument("--fmin", type=float)
            p.add_argument("--fmax", type=float)
            p.add_argument("--points", type=int, default=2001)
        p.add_argument("--out")
        p.add_argument("--format", choices=["csv"], default="csv")
        p.add_argument("--plot", action="store_true")

    p = sub.add_parser("sweep", help="S-parameters over a frequency grid")
    common(p)
    p.add_argument("--pairs", default="21", help="comma-separated list such as 11,21")

    p = sub.add_parser("modes", help="complex natural frequencies in a window")
    common(p)

    p = sub.add_parser("extract", help="kappa or zeta from a swept response")
    p.add_argument("quantity", choices=["kappa", "zeta"])
    common(p)
    p.add_argument("--pairs", default=None, help="S-parameter to analyse, e.g. 11")
    p.add_argument("--method", choices=KAPPA_METHODS, default="phase-slope")
    p.add_argument("--f01", type=float)
    p.add_argument("--f02", type=float)

    p = sub.add_parser("timesim", help="single-resonator mode trajectory")
    common(p, netlist=False, grid=False)
    p.add_argument("--L", type=float, required=True)
    p.add_argument("--C", type=float, required=True)
    p.add_argument("--R", type=float, default=0.0)
    p.add_argument("--G", type=float, default=0.0)
    p.add_argument("--rhs", choices=["exact", "rwa"], default="exact")
    p.add_argument("--periods", type=float, default=10.0)
    p.add_argument("--steps-per-period", type=int, default=200)
    p.add_argument("--a0", type=complex, default=1.0)

    p = sub.add_parser("coupler", help="ideal coupled-line coupler S-parameters")
    common(p, netlist=False)
    p.add_argument("--zeta", type=float, required=True)
    p.add_argument("--theta", type=float, required=True, help="electrical length, deg at f0")
    p.add_argument("--f0", type=float, default=5e9)
    p.add_argument("--kind", choices=["backward", "forward"], default="backward")
    p.add_argument("--pairs", default="11,21,31,41")
    return ap


def config_from_args(ns):
    pairs = getattr(ns, "pairs", None)
    if pairs is None:
        pairs = "11" if ns.command == "extract" and ns.quantity == "kappa" else "21"
    options = {}
    if ns.command == "timesim":
        options = {"L": ns.L, "C": ns.C, "R": ns.R, "G": ns.G, "rhs": ns.rhs,
                   "periods": ns.periods, "steps_per_period": ns.steps_per_period,
                   "a0": ns.a0}
    elif ns.command == "coupler":
        options = {"zeta": ns.zeta, "theta": ns.theta, "f0": ns.f0, "kind": ns.kind}
    elif ns.command == "extract":
        options = {"f01": ns.f01, "f02": ns.f02}
    return RunConfig(command=ns.command, netlist=getattr(ns, "netlist", None),
                     fmin=getattr(ns, "fmin", None), fmax=getattr(ns, "fmax", None),
                     points=getattr(ns, "points", 2001),
                     pairs=tuple(p.strip() for p in pairs.split(",") if p.strip()),
                     out=ns.out, method=getattr(ns, "method", "phase-slope"),
                     quantity=getattr(ns, "quantity", None), plot=ns.plot,
                     options=options)


def main(argv=None):
    ns = build_parser().parse_args(argv)
    try:
        config = config_from_args(ns)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
