"""Exact construction of the 25-balanced-vertex net, plus topology templates
for the relaxer (the prior 16-vertex net and an experimental ring series).

The net family shares one combinatorial pattern, parametrized by the ring
order n (ring of 4n vertices: 4 corners b_i plus n-1 side vertices a_ij per
side).  Each side has a far boundary anchor d_i with legs to all of the
side's a-vertices; at every corner two chords (from the a-vertices flanking
the corner to the opposite anchors) cross in a degree-6 vertex c_i that also
carries the straight line from b_i out to a three-edge vertex e_i; for
n >= 3 a central vertex p is joined to per-side three-edge vertices f_i.
Order 2 reproduces the known 16-vertex net, order 3 the 25-vertex net; the
orders n >= 4 are a pattern extrapolation with no balance claim, emitted for
relaxation experiments only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .angles import AngleSolution, ConstructionParams, params_from_solution
from .errors import (
    ClosureFailure,
    InvariantViolation,
    NoFermatPoint,
    ParallelLines,
    UnsupportedFamily,
)
from .geom import Point, dist, fermat_point, line_intersection
from .net import BOUNDARY, INTERIOR, EmbeddedNet, NetTopology

T3_DODECAGON = "t3_dodecagon"
T2_OCTAGON = "t2_octagon"
RING_EXPERIMENTAL = "ring_experimental"

_FAMILIES = (T3_DODECAGON, T2_OCTAGON, RING_EXPERIMENTAL)

# template seed radii, following the schematic layout of the 16-vertex net
_SEED_RING_RADIUS = 1.0
_SEED_CORNER_RADIUS = 1.12
_SEED_ANCHOR_RADIUS = math.tan(math.radians(76.0))
_SEED_OUTER_RADIUS = 1.19


@dataclass(frozen=True)
class NetFamily:
    family: str
    n: int

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise UnsupportedFamily(f"unknown family {self.family!r}")
        if self.n < 2:
            raise UnsupportedFamily(f"ring order {self.n} < 2")
        if self.family == T3_DODECAGON and self.n != 3:
            raise UnsupportedFamily(f"the dodecagon family is order 3, got {self.n}")
        if self.family == T2_OCTAGON and self.n != 2:
            raise UnsupportedFamily(f"the octagon family is order 2, got {self.n}")


@dataclass(frozen=True)
class ConstructionResult:
    net: EmbeddedNet
    params: ConstructionParams
    # every construction point by name (all of them are net vertices here)
    landmarks: dict[str, Point]


@dataclass(frozen=True)
class Template:
    topology: NetTopology
    positions: dict[str, Point]
    experimental: bool


def _prev(i: int) -> int:
    return 4 if i == 1 else i - 1


def build_dodecagon(params: ConstructionParams) -> list[tuple[str, Point]]:
    """Traverse the 12-gon ring and return (role, point) pairs in ring order
    starting at b1.

    Interior angles are 2*pi/3 at corners and 11*pi/12 at side vertices;
    side lengths alternate 1, side_long, 1 around each side.  Placement is
    canonical: a11 at the origin, a12 on the positive x-axis, interior in
    the upper half-plane.
    """
    if not (math.isfinite(params.side_long) and params.side_long > 0.0):
        raise InvariantViolation(f"side_long {params.side_long!r} must be positive and finite")
    if not (math.isfinite(params.side_short) and params.side_short > 0.0):
        raise InvariantViolation(f"side_short {params.side_short!r} must be positive and finite")
    order = ["a11", "a12", "b2", "a21", "a22", "b3", "a31", "a32", "b4", "a41", "a42", "b1"]
    # outgoing side length from each vertex
    step_len = {
        name: (params.side_long if name.startswith("a") and name.endswith("1") else params.side_short)
        for name in order
    }
    # exterior turn on arriving at a vertex: pi/12 at a's, pi/3 at b's
    turn = {"a": math.pi / 12.0, "b": math.pi / 3.0}
    pos: dict[str, Point] = {"a11": (0.0, 0.0)}
    cur: Point = (0.0, 0.0)
    heading = 0.0
    for j, name in enumerate(order):
        if j:
            pos[name] = cur
        cur = (
            cur[0] + step_len[name] * math.cos(heading),
            cur[1] + step_len[name] * math.sin(heading),
        )
        heading += turn[order[(j + 1) % 12][0]]
    if dist(cur, pos["a11"]) > 1e-9:
        raise ClosureFailure(f"ring failed to close; gap {dist(cur, pos['a11']):.3e}")
    ring_from_b1 = ["b1"] + order[:-1]
    return [(name, pos[name]) for name in ring_from_b1]


def _family_ids(n: int) -> tuple[list[str], list[list[str]], list[str]]:
    """Ring order ids, per-side a ids, and all ids of the order-n family."""
    sides = [[f"a{i}{j}" for j in range(1, n)] for i in range(1, 5)]
    ring: list[str] = []
    for i in range(1, 5):
        ring.append(f"b{i}")
        ring.extend(sides[i - 1])
    extra = [f"c{i}" for i in range(1, 5)] + [f"e{i}" for i in range(1, 5)]
    extra += [f"d{i}" for i in range(1, 5)]
    if n >= 3:
        extra += [f"f{i}" for i in range(1, 5)] + ["p"]
    return ring, sides, ring + extra


def _family_edges(n: int) -> set[tuple[str, str]]:
    ring, sides, _ = _family_ids(n)
    edges: set[tuple[str, str]] = set()

    def add(a: str, b: str):
        edges.add((a, b) if a < b else (b, a))

    for k, v in enumerate(ring):
        add(v, ring[(k + 1) % len(ring)])
    for i in range(1, 5):
        side = sides[i - 1]
        for a in side:
            add(a, f"d{i}")
        add(f"c{i}", sides[_prev(i) - 1][-1])
        add(f"c{i}", side[0])
        add(f"c{i}", f"d{i}")
        add(f"c{i}", f"d{_prev(i)}")
        add(f"c{i}", f"b{i}")
        add(f"c{i}", f"e{i}")
        add(f"e{i}", f"d{i}")
        add(f"e{i}", f"d{_prev(i)}")
        if n >= 3:
            add(f"f{i}", side[0])
            add(f"f{i}", side[-1])
            add(f"f{i}", "p")
    return edges


def _family_topology(n: int) -> NetTopology:
    _, _, ids = _family_ids(n)
    boundary = {f"d{i}" for i in range(1, 5)}
    vertices = tuple((v, BOUNDARY if v in boundary else INTERIOR) for v in sorted(ids))
    return NetTopology(vertices=vertices, edges=frozenset(_family_edges(n)))


def build_net25(sol: AngleSolution) -> ConstructionResult:
    """Exact construction of the irreducible net with 4 boundary and 25
    balanced vertices, in canonical placement."""
    params = params_from_solution(sol)
    pos: dict[str, Point] = dict(build_dodecagon(params))

    pos["p"] = line_intersection(pos["b1"], pos["b3"], pos["b2"], pos["b4"])

    # boundary anchors: isosceles apex over each long side, outside the ring,
    # base angles beta; apex height is (side_long/2) * tan(beta)
    half_h = (params.side_long / 2.0) * math.tan(params.beta)
    for i in range(1, 5):
        a1 = pos[f"a{i}1"]
        a2 = pos[f"a{i}2"]
        mx, my = (a1[0] + a2[0]) / 2.0, (a1[1] + a2[1]) / 2.0
        ux, uy = a2[0] - a1[0], a2[1] - a1[1]
        ln = math.hypot(ux, uy)
        # ring runs counterclockwise, so the right normal points outward
        pos[f"d{i}"] = (mx + (uy / ln) * half_h, my - (ux / ln) * half_h)

    for i in range(1, 5):
        j = _prev(i)
        try:
            pos[f"c{i}"] = line_intersection(
                pos[f"a{j}2"], pos[f"d{i}"], pos[f"a{i}1"], pos[f"d{j}"]
            )
        except ParallelLines as exc:
            raise ParallelLines(f"chords defining c{i}: {exc}") from None
    for i in range(1, 5):
        j = _prev(i)
        try:
            pos[f"f{i}"] = fermat_point((pos[f"a{i}1"], pos[f"a{i}2"], pos["p"]))
        except NoFermatPoint as exc:
            raise NoFermatPoint(f"triangle for f{i}: {exc}") from None
        try:
            pos[f"e{i}"] = fermat_point((pos[f"c{i}"], pos[f"d{i}"], pos[f"d{j}"]))
        except NoFermatPoint as exc:
            raise NoFermatPoint(f"triangle for e{i}: {exc}") from None

    topology = _family_topology(3)
    net = EmbeddedNet(topology=topology, positions=pos)
    return ConstructionResult(net=net, params=params, landmarks=dict(net.positions))


def _polar(angle: float, radius: float) -> Point:
    return (radius * math.cos(angle), radius * math.sin(angle))


def _template_positions(n: int) -> dict[str, Point]:
    """Schematic seed layout for the order-n template (not balanced)."""
    ring, sides, _ = _family_ids(n)
    pos: dict[str, Point] = {}
    m = len(ring)
    # b1 sits one ring slot before a11; put a11 at angle 0
    slot = {v: k for k, v in enumerate(ring)}
    for v, k in slot.items():
        ang = 2.0 * math.pi * (k - 1) / m
        pos[v] = _polar(ang, _SEED_CORNER_RADIUS if v.startswith("b") else _SEED_RING_RADIUS)
    for i in range(1, 5):
        side = sides[i - 1]
        # side a-slots are consecutive in the ring list, so their slot mean
        # gives the outward side direction without wraparound issues
        mid_k = 0.5 * (slot[side[0]] + slot[side[-1]])
        pos[f"d{i}"] = _polar(2.0 * math.pi * (mid_k - 1) / m, _SEED_ANCHOR_RADIUS)
    for i in range(1, 5):
        j = _prev(i)
        pos[f"c{i}"] = line_intersection(
            pos[sides[j - 1][-1]], pos[f"d{i}"], pos[sides[i - 1][0]], pos[f"d{j}"]
        )
        if n == 2:
            # transcribed outer radius of the 16-vertex net's schematic
            bx, by = pos[f"b{i}"]
            ang = math.atan2(by, bx)
            pos[f"e{i}"] = _polar(ang, _SEED_OUTER_RADIUS)
        else:
            try:
                pos[f"e{i}"] = fermat_point((pos[f"c{i}"], pos[f"d{i}"], pos[f"d{j}"]))
            except NoFermatPoint:
                cx = (pos[f"c{i}"][0] + pos[f"d{i}"][0] + pos[f"d{j}"][0]) / 3.0
                cy = (pos[f"c{i}"][1] + pos[f"d{i}"][1] + pos[f"d{j}"][1]) / 3.0
                pos[f"e{i}"] = (cx, cy)
    if n >= 3:
        pos["p"] = (0.0, 0.0)
        for i in range(1, 5):
            side = sides[i - 1]
            try:
                pos[f"f{i}"] = fermat_point((pos[side[0]], pos[side[-1]], pos["p"]))
            except NoFermatPoint:
                cx = (pos[side[0]][0] + pos[side[-1]][0]) / 3.0
                cy = (pos[side[0]][1] + pos[side[-1]][1]) / 3.0
                pos[f"f{i}"] = (cx, cy)
    return pos


def topology_template(fam: NetFamily) -> Template:
    """Topology plus suggested initial positions for a family member.

    The order-3 member comes back with its exact balanced placement; the
    order-2 member with the schematic seed it is known to relax from; ring
    orders >= 4 are emitted as experimental topology with a heuristic seed
    and no claim that a balanced configuration exists.
    """
    if fam.family == T3_DODECAGON:
        from .angles import solve_angles

        result = build_net25(solve_angles())
        return Template(
            topology=result.net.topology, positions=dict(result.net.positions), experimental=False
        )
    if fam.family == T2_OCTAGON:
        return Template(
            topology=_family_topology(2), positions=_template_positions(2), experimental=False
        )
    if fam.n < 4:
        raise UnsupportedFamily(
            f"ring order {fam.n} overlaps the named families; use t2 (n=2) or t3 (n=3)"
        )
    return Template(
        topology=_family_topology(fam.n), positions=_template_positions(fam.n), experimental=True
    )
