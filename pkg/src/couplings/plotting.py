"""Figure rendering for CLI reports. Figures go to files only."""

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

golden_mean = (np.sqrt(5) - 1.0) / 2.0
fig_width = 5.0

params = {
    "axes.labelsize": 10,
    "font.size": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "figure.figsize": [fig_width, fig_width * golden_mean],
    "figure.dpi": 150,
    "lines.linewidth": 1.2,
    "axes.grid": True,
    "grid.alpha": 0.3,
}


def savefig(fig, path):
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def render_sweep(freq_hz, columns, path):
    """Magnitude (dB) and unwrapped phase of each S-parameter column.

    ``columns`` maps a label such as ``"S21"`` to complex samples.
    """
    with matplotlib.rc_context(params):
        fig, (ax_m, ax_p) = plt.subplots(2, 1, sharex=True,
                                         figsize=(fig_width, fig_width * 0.9))
        f_ghz = np.asarray(freq_hz) / 1e9
        for label, values in columns.items():
            values = np.asarray(values)
            mag = np.maximum(np.abs(values), 1e-300)
            ax_m.plot(f_ghz, 20 * np.log10(mag), label=label)
            ax_p.plot(f_ghz, np.unwrap(np.angle(values)), label=label)
        ax_m.set_ylabel("|S| (dB)")
        ax_p.set_ylabel("phase (rad)")
        ax_p.set_xlabel("frequency (GHz)")
        ax_m.legend(loc="best")
        return savefig(fig, path)


def render_modes(f_r_hz, kappa_hz, path):
    with matplotlib.rc_context(params):
        fig, ax = plt.subplots()
        ax.plot(np.asarray(f_r_hz) / 1e9, np.asarray(kappa_hz) / 1e3, "o")
        ax.set_xlabel("mode frequency (GHz)")
        ax.set_ylabel(r"$\kappa/2\pi$ (kHz)")
        return savefig(fig, path)


def render_trajectory(t, a, path):
    """Real part and stored energy of a mode-amplitude trajectory."""
    with matplotlib.rc_context(params):
        fig, (ax_a, ax_w) = plt.subplots(2, 1, sharex=True,
                                         figsize=(fig_width, fig_width * 0.9))
        t_ns = np.asarray(t) * 1e9
        ax_a.plot(t_ns, np.real(a), lw=0.6)
        ax_a.set_ylabel(r"Re $a_+$")
        ax_w.plot(t_ns, np.abs(a) ** 2)
        ax_w.set_ylabel("energy (J)")
        ax_w.set_xlabel("time (ns)")
        return savefig(fig, path)
