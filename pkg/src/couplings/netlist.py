"""Line-oriented netlist text format.

Each line is ``KIND name node... KEY=VALUE...``; ``#`` starts a comment.
Kinds: PORT, RES, CAP, IND, TLINE, CLINE, OPENSTUB, SHORTSTUB. Values take
an optional SI suffix (f p n u m k M G). Ports default to ground as the
return node and to Z0=50.

    PORT P1 n1 0 Z0=50
    CAP  C1 n1 0 C=10f
"""

import re
from importlib import resources

from .errors import ParseError
from .network import ELEMENT_KINDS, Element, Netlist, Port

SI_PREFIX = {"f": 1e-15, "p": 1e-12, "n": 1e-9, "u": 1e-6, "m": 1e-3,
             "k": 1e3, "M": 1e6, "G": 1e9}
_NUMBER = re.compile(r"^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)([fpnumkMG]?)$")
_NAME = re.compile(r"^[A-Za-z0-9_.\-]+$")


def parse_value(text):
    m = _NUMBER.match(text)
    if not m:
        raise ValueError(f"bad number {text!r}")
    return float(m.group(1)) * SI_PREFIX.get(m.group(2), 1.0)


def _tokens(line):
    """(column, text) pairs of whitespace-separated tokens, columns 1-based."""
    return [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]


def _parse_line(lineno, line):
    toks = _tokens(line)
    kind = toks[0][1].upper()
    if kind != "PORT" and kind not in ELEMENT_KINDS:
        raise ParseError(lineno, toks[0][0], f"unknown element kind {toks[0][1]!r}", 1)
    end_col = len(line.rstrip()) + 2
    if len(toks) < 2:
        raise ParseError(lineno, end_col, "missing element name", 2)
    name = toks[1][1]
    if "=" in name or not _NAME.match(name):
        raise ParseError(lineno, toks[1][0], f"invalid name {name!r}", 2)
    nodes, params = [], {}
    for pos, (col, text) in enumerate(toks[2:], start=3):
        if "=" in text:
            key, _, raw = text.partition("=")
            key = key.upper()
            if not key or key in params:
                raise ParseError(lineno, col, f"bad or repeated key in {text!r}", pos)
            try:
                params[key] = parse_value(raw)
            except ValueError as exc:
                raise ParseError(lineno, col + len(key) + 1, str(exc), pos) from None
        else:
            if params:
                raise ParseError(lineno, col, "node names must precede KEY=VALUE pairs", pos)
            if not _NAME.match(text):
                raise ParseError(lineno, col, f"invalid node name {text!r}", pos)
            nodes.append(text)

    if kind == "PORT":
        if not 1 <= len(nodes) <= 2:
            raise ParseError(lineno, end_col if not nodes else toks[2][0],
                             "PORT needs one or two nodes", 3)
        unknown = set(params) - {"Z0"}
        if unknown:
            raise ParseError(lineno, toks[0][0], f"unknown PORT keys {sorted(unknown)}")
        z0 = params.get("Z0", 50.0)
        if z0 <= 0:
            raise ParseError(lineno, toks[0][0], "Z0 must be positive")
        return Port(name, nodes[0], nodes[1] if len(nodes) > 1 else "0", z0)

    count, required, optional = ELEMENT_KINDS[kind]
    if len(nodes) != count:
        pos = 3 + min(len(nodes), count)
        col = toks[pos - 1][0] if pos - 1 < len(toks) else end_col
        raise ParseError(lineno, col, f"{kind} needs {count} node(s), got {len(nodes)}", pos)
    try:
        return Element(kind, name, tuple(nodes), params)
    except ValueError as exc:
        raise ParseError(lineno, toks[0][0], str(exc)) from None


def parse_netlist(text):
    """Parse netlist text into a validated :class:`Netlist`."""
    elements, ports = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        item = _parse_line(lineno, line)
        (ports if isinstance(item, Port) else elements).append(item)
    return Netlist(tuple(elements), tuple(ports))


def read_netlist(path):
    with open(path, encoding="utf-8") as fh:
        return parse_netlist(fh.read())


def bundled(name):
    """Path of a reference netlist shipped with the package, e.g.
    ``bundled("reflective_coupler")``."""
    stem = name[:-4] if name.endswith(".net") else name
    path = resources.files("couplings") / "netlists" / f"{stem}.net"
    if not path.is_file():
        raise FileNotFoundError(f"no bundled netlist {name!r}")
    return str(path)


def render(net):
    """Netlist text that parses back to an equal netlist."""
    lines = []
    for p in net.ports:
        lines.append(f"PORT {p.name} {p.node_p} {p.node_n} Z0={p.Z0!r}")
    for el in net.elements:
        kv = " ".join(f"{k}={v!r}" for k, v in el.params.items())
        lines.append(f"{el.kind} {el.name} {' '.join(el.nodes)} {kv}")
    return "\n".join(lines) + "\n"
