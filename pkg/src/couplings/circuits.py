"""Netlist builders for the reference circuits used to cross-check the
closed-form models."""

from .network import Element, Netlist, Port


def _coupler(z_even, z_odd, el_deg, f0, nodes=("f1", "r1", "f2", "r2")):
    return Element("CLINE", "K1", nodes,
                   {"ZE": z_even, "ZO": z_odd, "EL": el_deg, "F0": f0})


def _resonator_arms(position_deg, el_deg, f0, z0):
    """Quarter-wave resonator split around the coupler.

    ``position_deg`` is the electrical distance of the coupler from the
    open end; the shorted arm takes the remainder of the quarter wave.
    """
    short_deg = 90.0 - position_deg - el_deg
    if position_deg <= 0 or short_deg <= 0:
        raise ValueError("coupler does not fit on the quarter-wave resonator")
    return short_deg, [
        Element("SHORTSTUB", "TS", ("r1",), {"Z0": z0, "EL": short_deg, "F0": f0}),
        Element("OPENSTUB", "TO", ("r2",), {"Z0": z0, "EL": position_deg, "F0": f0}),
    ]


def reflective_coupler_circuit(position_deg=45.0, el_deg=1.0, z_even=70.0,
                               z_odd=250 / 7, f0=5e9, z0=50.0, feed_deg=None):
    """Quarter-wave resonator read out in reflection through a backward coupler.

    The feed line continues past the coupler into an open stub of
    ``feed_deg`` degrees; the default is the shorted-arm length plus a
    quarter wave, which phase-matches the two emitted waves.
    """
    short_deg, arms = _resonator_arms(position_deg, el_deg, f0, z0)
    if feed_deg is None:
        feed_deg = short_deg + 90.0
    feed = Element("OPENSTUB", "TF", ("f2",), {"Z0": z0, "EL": feed_deg, "F0": f0})
    return Netlist([_coupler(z_even, z_odd, el_deg, f0), *arms, feed],
                   [Port("P1", "f1", "0", z0)])


def transmissive_coupler_circuit(position_deg=45.0, el_deg=1.0, z_even=70.0,
                                 z_odd=250 / 7, f0=5e9, z0=50.0):
    """Quarter-wave resonator side-coupled to a matched through line."""
    _, arms = _resonator_arms(position_deg, el_deg, f0, z0)
    return Netlist([_coupler(z_even, z_odd, el_deg, f0), *arms],
                   [Port("P1", "f1", "0", z0), Port("P2", "f2", "0", z0)])


def coupled_lc_circuit(L1, C1, L2, C2, Cm, z0=50.0):
    """Two LC resonators sharing a mutual capacitance ``Cm``.

    Each inductor returns to ground through a port, so the ports sense the
    resonator currents. The shunt capacitors are reduced by ``Cm`` so that
    the nodal capacitance matrix is [[C1, -Cm], [-Cm, C2]].
    """
    if not 0 <= Cm < min(C1, C2):
        raise ValueError("Cm must be smaller than both resonator capacitances")
    elements = [
        Element("CAP", "CG1", ("n1", "0"), {"C": C1 - Cm}),
        Element("CAP", "CG2", ("n2", "0"), {"C": C2 - Cm}),
        Element("IND", "L1", ("n1", "p1"), {"L": L1}),
        Element("IND", "L2", ("n2", "p2"), {"L": L2}),
    ]
    if Cm > 0:
        elements.append(Element("CAP", "CM", ("n1", "n2"), {"C": Cm}))
    return Netlist(elements, [Port("P1", "p1", "0", z0), Port("P2", "p2", "0", z0)])


def doubly_loaded_circuit(L, C, Cc1, Cc2=None, z0=50.0):
    """Parallel LC tank coupled to two ports through series capacitors."""
    Cc2 = Cc1 if Cc2 is None else Cc2
    elements = [
        Element("IND", "LR", ("t", "0"), {"L": L}),
        Element("CAP", "CR", ("t", "0"), {"C": C}),
        Element("CAP", "CC1", ("p1", "t"), {"C": Cc1}),
        Element("CAP", "CC2", ("t", "p2"), {"C": Cc2}),
    ]
    return Netlist(elements, [Port("P1", "p1", "0", z0), Port("P2", "p2", "0", z0)])


def side_coupled_circuit(L, C, Cc, z0=50.0):
    """Parallel LC tank hanging off a through line via a coupling capacitor."""
    elements = [
        Element("CAP", "CC", ("line", "t"), {"C": Cc}),
        Element("IND", "LR", ("t", "0"), {"L": L}),
        Element("CAP", "CR", ("t", "0"), {"C": C}),
    ]
    return Netlist(elements, [Port("P1", "line", "0", z0), Port("P2", "line", "0", z0)])
