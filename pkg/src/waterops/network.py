"""Water distribution network data model.

A network is a directed graph of nodes (junctions, reservoirs, tanks) and
links (pipes, pumps, pressure-breaker valves) plus pump head curves. All
stored quantities are SI: meters, m3/s. Valve settings and bounds are the
one exception, kept in psi because that is how operators state them.

Networks are immutable after construction and validated on construction;
they are safe to share across concurrent simulation workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Union


class NetworkError(ValueError):
    """Raised for any structural or value violation in a network."""


class FlowUnit(Enum):
    """Flow unit declared by an input file; storage is always m3/s."""

    CUBIC_METERS_PER_SECOND = "CMS"
    GALLONS_PER_MINUTE = "GPM"


@dataclass(frozen=True)
class Junction:
    id: str
    elevation: float  # m
    base_demand: float = 0.0  # m3/s


@dataclass(frozen=True)
class Reservoir:
    id: str
    head: float  # fixed hydraulic head, m


@dataclass(frozen=True)
class Tank:
    id: str
    elevation: float  # bottom elevation, m
    min_level: float  # m above bottom
    max_level: float
    init_level: float
    diameter: float  # m; tanks are cylindrical


Node = Union[Junction, Reservoir, Tank]


@dataclass(frozen=True)
class Pipe:
    id: str
    from_node: str
    to_node: str
    length: float  # m
    diameter: float  # m
    roughness: float  # Hazen-Williams C
    open: bool = True


@dataclass(frozen=True)
class Pump:
    id: str
    from_node: str
    to_node: str
    curve_id: str
    init_speed: float = 1.0
    speed_min: float = 0.3
    speed_max: float = 3.0
    open: bool = True


@dataclass(frozen=True)
class PbvValve:
    """Pressure-breaker valve: imposes a fixed pressure drop from->to."""

    id: str
    from_node: str
    to_node: str
    init_setting_psi: float = 20.0
    setting_min_psi: float = 8.0
    setting_max_psi: float = 50.0
    open: bool = True


Link = Union[Pipe, Pump, PbvValve]


@dataclass(frozen=True)
class Curve:
    """Head curve: ordered (flow, head) points, flows strictly increasing."""

    id: str
    points: tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class Network:
    nodes: dict[str, Node]
    links: dict[str, Link]
    curves: dict[str, Curve] = field(default_factory=dict)
    flow_unit: FlowUnit = FlowUnit.CUBIC_METERS_PER_SECOND
    regions: dict[str, int] = field(default_factory=dict)  # junction -> 1-based region
    interest_nodes: tuple[str, ...] = ()

    def __post_init__(self):
        _validate(self)

    # -- typed accessors ---------------------------------------------------

    def junctions(self) -> list[Junction]:
        return [n for n in self.nodes.values() if isinstance(n, Junction)]

    def reservoirs(self) -> list[Reservoir]:
        return [n for n in self.nodes.values() if isinstance(n, Reservoir)]

    def tanks(self) -> list[Tank]:
        return [n for n in self.nodes.values() if isinstance(n, Tank)]

    def pipes(self) -> list[Pipe]:
        return [l for l in self.links.values() if isinstance(l, Pipe)]

    def pumps(self) -> list[Pump]:
        return [l for l in self.links.values() if isinstance(l, Pump)]

    def valves(self) -> list[PbvValve]:
        return [l for l in self.links.values() if isinstance(l, PbvValve)]

    def junction_ids(self) -> list[str]:
        return [n.id for n in self.junctions()]

    def region_ids(self) -> list[int]:
        return sorted(set(self.regions.values()))

    def source_pumps(self) -> list[Pump]:
        """Pumps not attached to a tank; these accept external speed control."""
        return [p for p in self.pumps() if not self._touches_tank(p)]

    def tank_pumps(self) -> list[Pump]:
        """Pumps with a tank endpoint; their on/off state is rule-delegated."""
        return [p for p in self.pumps() if self._touches_tank(p)]

    def _touches_tank(self, p: Pump) -> bool:
        return isinstance(self.nodes[p.from_node], Tank) or isinstance(
            self.nodes[p.to_node], Tank
        )

    def with_regions(self, regions: dict[str, int], interest: tuple[str, ...]) -> "Network":
        return replace(self, regions=dict(regions), interest_nodes=tuple(interest))


def _validate(net: Network) -> None:
    for nid, node in net.nodes.items():
        if nid != node.id:
            raise NetworkError(f"node key {nid!r} != node id {node.id!r}")
        if isinstance(node, Junction):
            if not math.isfinite(node.elevation):
                raise NetworkError(f"junction {nid}: elevation not finite")
            if node.base_demand < 0:
                raise NetworkError(f"junction {nid}: base_demand < 0")
        elif isinstance(node, Tank):
            if not (0 <= node.min_level <= node.init_level <= node.max_level):
                raise NetworkError(
                    f"tank {nid}: need 0 <= min <= init <= max level, got "
                    f"{node.min_level}/{node.init_level}/{node.max_level}"
                )
            if node.diameter <= 0:
                raise NetworkError(f"tank {nid}: diameter <= 0")

    for lid, link in net.links.items():
        if lid != link.id:
            raise NetworkError(f"link key {lid!r} != link id {link.id!r}")
        for end in (link.from_node, link.to_node):
            if end not in net.nodes:
                raise NetworkError(f"link {lid}: endpoint {end!r} is not a node")
        if isinstance(link, Pipe):
            if link.length <= 0 or link.diameter <= 0 or link.roughness <= 0:
                raise NetworkError(f"pipe {lid}: length/diameter/roughness must be > 0")
        elif isinstance(link, Pump):
            if link.curve_id not in net.curves:
                raise NetworkError(f"pump {lid}: curve {link.curve_id!r} not defined")
            if len(net.curves[link.curve_id].points) < 1:
                raise NetworkError(f"pump {lid}: curve {link.curve_id!r} has no points")
            if not (link.speed_min < link.speed_max):
                raise NetworkError(f"pump {lid}: speed_min must be < speed_max")
            if not (link.speed_min <= link.init_speed <= link.speed_max):
                raise NetworkError(f"pump {lid}: init_speed outside bounds")
        elif isinstance(link, PbvValve):
            if not (link.setting_min_psi < link.setting_max_psi):
                raise NetworkError(f"valve {lid}: setting_min must be < setting_max")
            if not (link.setting_min_psi <= link.init_setting_psi <= link.setting_max_psi):
                raise NetworkError(f"valve {lid}: init_setting outside bounds")

    for cid, curve in net.curves.items():
        if cid != curve.id:
            raise NetworkError(f"curve key {cid!r} != curve id {curve.id!r}")
        flows = [q for q, _ in curve.points]
        if any(b <= a for a, b in zip(flows, flows[1:])):
            raise NetworkError(f"curve {cid}: flow values must be strictly increasing")
        if any(h < 0 for _, h in curve.points):
            raise NetworkError(f"curve {cid}: heads must be >= 0")

    junction_ids = {n.id for n in net.junctions()}
    if net.regions:
        missing = junction_ids - set(net.regions)
        if missing:
            raise NetworkError(f"regions missing junctions: {sorted(missing)}")
        extra = set(net.regions) - junction_ids
        if extra:
            raise NetworkError(f"regions assigned to non-junctions: {sorted(extra)}")
        rids = sorted(set(net.regions.values()))
        if rids != list(range(1, len(rids) + 1)):
            raise NetworkError(f"region ids must be contiguous from 1, got {rids}")
    bad_interest = [i for i in net.interest_nodes if i not in junction_ids]
    if bad_interest:
        raise NetworkError(f"interest nodes are not junctions: {bad_interest}")


def build_mininet() -> Network:
    """Deterministic desk-scale benchmark network.

    Layout: a low reservoir feeds region 1 (J1..J4) through variable-speed
    pump PU1; a pressure-breaker valve V1 on the J2->J5 trunk feeds region 2
    (J5..J8), which is also supported by elevated tank T1 through booster
    pump PU2. Pipe J4->T1 is the tank fill line. Head curves follow the
    three-point shape (linear head drop, n = 1) of the reference pumps,
    scaled to desk magnitudes. Interest nodes: J2, J3 (region 1) and
    J6, J7 (region 2).
    """
    curves = {
        "C-SRC": Curve("C-SRC", ((0.0, 75.0), (0.10, 45.0), (0.20, 15.0))),
        "C-TNK": Curve("C-TNK", ((0.0, 24.0), (0.05, 15.0), (0.10, 6.0))),
    }
    nodes: dict[str, Node] = {
        "R1": Reservoir("R1", head=5.0),
        "T1": Tank("T1", elevation=34.0, min_level=1.0, max_level=8.0,
                   init_level=4.0, diameter=12.0),
        "J1": Junction("J1", elevation=3.0, base_demand=0.008),
        "J2": Junction("J2", elevation=5.0, base_demand=0.010),
        "J3": Junction("J3", elevation=4.0, base_demand=0.012),
        "J4": Junction("J4", elevation=6.0, base_demand=0.006),
        "J5": Junction("J5", elevation=2.0, base_demand=0.010),
        "J6": Junction("J6", elevation=3.0, base_demand=0.012),
        "J7": Junction("J7", elevation=2.5, base_demand=0.008),
        "J8": Junction("J8", elevation=4.0, base_demand=0.006),
    }
    links: dict[str, Link] = {
        "PU1": Pump("PU1", "R1", "J1", curve_id="C-SRC"),
        "PU2": Pump("PU2", "T1", "J6", curve_id="C-TNK"),
        "V1": PbvValve("V1", "J2", "J5"),
        "P1": Pipe("P1", "J1", "J2", length=400.0, diameter=0.30, roughness=120.0),
        "P2": Pipe("P2", "J2", "J3", length=350.0, diameter=0.25, roughness=120.0),
        "P3": Pipe("P3", "J3", "J4", length=300.0, diameter=0.25, roughness=110.0),
        "P4": Pipe("P4", "J1", "J3", length=500.0, diameter=0.20, roughness=100.0),
        "P5": Pipe("P5", "J5", "J6", length=400.0, diameter=0.25, roughness=120.0),
        "P6": Pipe("P6", "J6", "J7", length=350.0, diameter=0.25, roughness=120.0),
        "P7": Pipe("P7", "J7", "J8", length=300.0, diameter=0.20, roughness=110.0),
        "P8": Pipe("P8", "J5", "J7", length=500.0, diameter=0.20, roughness=100.0),
        "P9": Pipe("P9", "J4", "T1", length=600.0, diameter=0.20, roughness=110.0),
        "P10": Pipe("P10", "J4", "J8", length=700.0, diameter=0.20, roughness=100.0),
    }
    regions = {"J1": 1, "J2": 1, "J3": 1, "J4": 1,
               "J5": 2, "J6": 2, "J7": 2, "J8": 2}
    return Network(
        nodes=nodes,
        links=links,
        curves=curves,
        flow_unit=FlowUnit.CUBIC_METERS_PER_SECOND,
        regions=regions,
        interest_nodes=("J2", "J3", "J6", "J7"),
    )
