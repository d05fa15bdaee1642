"""Parser and writer for the INP-subset network file format.

The accepted grammar is the EPANET INP subset documented in
docs/FORMATS.md: sections [JUNCTIONS], [RESERVOIRS], [TANKS], [PIPES],
[PUMPS], [VALVES], [CURVES] plus optional [PATTERNS], [DEMANDS],
[COORDINATES] and the artifact extensions [REGIONS], [INTEREST].
`;` starts a comment, tokens are whitespace-separated, section names are
case-insensitive. Unknown sections are skipped with a warning.

The declared flow unit is an argument, not read from the file. GPM files
use EPANET US customary units (ft, inches, gpm); everything is converted
to SI at parse time. PBV settings are psi in both modes. The writer
always emits canonical SI, so written files round-trip exactly.
"""

from __future__ import annotations

from .network import (
    Curve,
    FlowUnit,
    Junction,
    Link,
    Network,
    NetworkError,
    Node,
    PbvValve,
    Pipe,
    Pump,
    Reservoir,
    Tank,
)
from .units import FT_TO_M, GPM_TO_M3S, IN_TO_M


class InpError(NetworkError):
    """Syntax or reference error in an INP file, with a line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


_KNOWN_SECTIONS = {
    "JUNCTIONS", "RESERVOIRS", "TANKS", "PIPES", "PUMPS", "VALVES",
    "CURVES", "PATTERNS", "DEMANDS", "COORDINATES", "REGIONS", "INTEREST",
}


def parse_inp(text: str, flow_unit: FlowUnit, warnings: list[str] | None = None) -> Network:
    """Parse INP-subset text into a validated Network.

    `warnings` (if given) collects non-fatal notes: skipped unknown
    sections, ignored patterns, ignored extra columns.
    """
    warn = warnings if warnings is not None else []
    gpm = flow_unit is FlowUnit.GALLONS_PER_MINUTE
    len_f = FT_TO_M if gpm else 1.0
    dia_f = IN_TO_M if gpm else 1.0
    flow_f = GPM_TO_M3S if gpm else 1.0

    nodes: dict[str, Node] = {}
    links: dict[str, Link] = {}
    curve_pts: dict[str, list[tuple[float, float]]] = {}
    regions: dict[str, int] = {}
    interest: list[str] = []
    demand_override: dict[str, float] = {}
    link_lines: dict[str, int] = {}
    pump_curve_lines: dict[str, tuple[str, int]] = {}

    section = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise InpError(line_no, f"malformed section header {line!r}")
            section = line[1:-1].strip().upper()
            if section not in _KNOWN_SECTIONS:
                warn.append(f"line {line_no}: unknown section [{section}] skipped")
                section = "_SKIP"
            elif section == "PATTERNS":
                warn.append(
                    f"line {line_no}: [PATTERNS] parsed but ignored; hourly "
                    "demand comes from the demand CSV"
                )
            continue
        if section is None:
            raise InpError(line_no, "data before any section header")
        if section in ("_SKIP", "PATTERNS", "COORDINATES"):
            continue

        tok = line.split()
        try:
            if section == "JUNCTIONS":
                _check_new_id(tok[0], nodes, "node", line_no)
                demand = float(tok[2]) * flow_f if len(tok) > 2 else 0.0
                nodes[tok[0]] = Junction(tok[0], float(tok[1]) * len_f, demand)
            elif section == "RESERVOIRS":
                _check_new_id(tok[0], nodes, "node", line_no)
                nodes[tok[0]] = Reservoir(tok[0], float(tok[1]) * len_f)
            elif section == "TANKS":
                _check_new_id(tok[0], nodes, "node", line_no)
                elev, init, mn, mx, dia = (float(t) for t in tok[1:6])
                nodes[tok[0]] = Tank(tok[0], elev * len_f, mn * len_f,
                                     mx * len_f, init * len_f, dia * len_f)
                if len(tok) > 6:
                    warn.append(f"line {line_no}: extra tank columns ignored")
            elif section == "PIPES":
                _check_new_id(tok[0], links, "link", line_no)
                status = True
                extra = tok[6:]
                if extra and extra[-1].upper() in ("OPEN", "CLOSED"):
                    status = extra[-1].upper() == "OPEN"
                    extra = extra[:-1]
                if extra:
                    warn.append(f"line {line_no}: pipe minor-loss column ignored")
                links[tok[0]] = Pipe(tok[0], tok[1], tok[2], float(tok[3]) * len_f,
                                     float(tok[4]) * dia_f, float(tok[5]), open=status)
                link_lines[tok[0]] = line_no
            elif section == "PUMPS":
                _check_new_id(tok[0], links, "link", line_no)
                if len(tok) < 5 or tok[3].upper() != "HEAD":
                    raise InpError(line_no,
                                   "pump line must read 'id n1 n2 HEAD curveId "
                                   "[SPEED s] [BOUNDS lo hi]'")
                speed, bounds, rest = 1.0, (0.3, 3.0), tok[5:]
                while rest:
                    if rest[0].upper() == "SPEED":
                        speed, rest = float(rest[1]), rest[2:]
                    elif rest[0].upper() == "BOUNDS":
                        bounds, rest = (float(rest[1]), float(rest[2])), rest[3:]
                    else:
                        raise InpError(line_no, f"unexpected pump token {rest[0]!r}")
                links[tok[0]] = Pump(tok[0], tok[1], tok[2], curve_id=tok[4],
                                     init_speed=speed, speed_min=bounds[0],
                                     speed_max=bounds[1])
                link_lines[tok[0]] = line_no
                pump_curve_lines[tok[0]] = (tok[4], line_no)
            elif section == "VALVES":
                _check_new_id(tok[0], links, "link", line_no)
                vtype = tok[4].upper()
                if vtype != "PBV":
                    raise InpError(line_no, f"valve type {vtype} not supported (only PBV)")
                vbounds = (8.0, 50.0)
                if len(tok) >= 9 and tok[6].upper() == "BOUNDS":
                    vbounds = (float(tok[7]), float(tok[8]))
                links[tok[0]] = PbvValve(tok[0], tok[1], tok[2],
                                         init_setting_psi=float(tok[5]),
                                         setting_min_psi=vbounds[0],
                                         setting_max_psi=vbounds[1])
                link_lines[tok[0]] = line_no
            elif section == "CURVES":
                curve_pts.setdefault(tok[0], []).append(
                    (float(tok[1]) * flow_f, float(tok[2]) * len_f))
            elif section == "DEMANDS":
                demand_override[tok[0]] = float(tok[1]) * flow_f
                if len(tok) > 2:
                    warn.append(f"line {line_no}: demand pattern column ignored")
            elif section == "REGIONS":
                regions[tok[0]] = int(tok[1])
            elif section == "INTEREST":
                interest.append(tok[0])
        except InpError:
            raise
        except (ValueError, IndexError) as exc:
            raise InpError(line_no, f"cannot parse [{section}] entry {line!r}: {exc}") from exc

    for nid, dem in demand_override.items():
        node = nodes.get(nid)
        if not isinstance(node, Junction):
            raise InpError(0, f"[DEMANDS] entry for non-junction {nid!r}")
        nodes[nid] = Junction(nid, node.elevation, dem)

    for lid, link in links.items():
        for end in (link.from_node, link.to_node):
            if end not in nodes:
                raise InpError(link_lines[lid],
                               f"link {lid!r} references missing node {end!r}")
    for pid, (cid, line_no) in pump_curve_lines.items():
        if cid not in curve_pts:
            raise InpError(line_no, f"pump {pid!r} references missing curve {cid!r}")

    curves = {cid: Curve(cid, tuple(pts)) for cid, pts in curve_pts.items()}
    try:
        return Network(nodes=nodes, links=links, curves=curves, flow_unit=flow_unit,
                       regions=regions, interest_nodes=tuple(interest))
    except NetworkError as exc:
        raise InpError(0, f"validation failed: {exc}") from exc


def _check_new_id(entity_id: str, table: dict, kind: str, line_no: int) -> None:
    if entity_id in table:
        raise InpError(line_no, f"duplicate {kind} id {entity_id!r}")


def write_inp(net: Network) -> str:
    """Serialize a network in canonical SI form.

    parse_inp(write_inp(n), CUBIC_METERS_PER_SECOND) reproduces n field
    for field (flow_unit canonicalized to SI).
    """
    out: list[str] = ["; waterops network (SI units; valve settings psi)"]

    out.append("[JUNCTIONS]")
    for j in net.junctions():
        out.append(f"{j.id} {j.elevation!r} {j.base_demand!r}")
    out.append("[RESERVOIRS]")
    for r in net.reservoirs():
        out.append(f"{r.id} {r.head!r}")
    out.append("[TANKS]")
    for t in net.tanks():
        out.append(f"{t.id} {t.elevation!r} {t.init_level!r} {t.min_level!r} "
                   f"{t.max_level!r} {t.diameter!r}")
    out.append("[PIPES]")
    for p in net.pipes():
        status = "Open" if p.open else "Closed"
        out.append(f"{p.id} {p.from_node} {p.to_node} {p.length!r} "
                   f"{p.diameter!r} {p.roughness!r} {status}")
    out.append("[PUMPS]")
    for p in net.pumps():
        out.append(f"{p.id} {p.from_node} {p.to_node} HEAD {p.curve_id} "
                   f"SPEED {p.init_speed!r}")
    out.append("[VALVES]")
    for v in net.valves():
        out.append(f"{v.id} {v.from_node} {v.to_node} 0 PBV {v.init_setting_psi!r}")
    out.append("[CURVES]")
    for c in net.curves.values():
        for q, h in c.points:
            out.append(f"{c.id} {q!r} {h!r}")
    if net.regions:
        out.append("[REGIONS]")
        for nid, rid in net.regions.items():
            out.append(f"{nid} {rid}")
    if net.interest_nodes:
        out.append("[INTEREST]")
        for nid in net.interest_nodes:
            out.append(nid)
    return "\n".join(out) + "\n"
