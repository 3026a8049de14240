"""Net data model: topology, embedding, imbalance, and overlap detection.

A net is a connected embedded graph with a distinguished set of boundary
vertices.  Interior (non-boundary) vertices are meant to satisfy the balance
condition: the unit vectors along their incident edges sum to zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DegenerateEdge, InvariantViolation, UnknownVertex
from .geom import EPS_DEG, Point, dist

BOUNDARY = "boundary"
INTERIOR = "interior"


def canonical_edge(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class NetTopology:
    """Vertices with kinds plus an undirected edge set.

    Interior vertices must have degree >= 3; degree-2 interior vertices are
    only admitted with allow_degree2=True, which subnet analysis uses for
    straight-line pass-through vertices.
    """

    vertices: tuple[tuple[str, str], ...]
    edges: frozenset[tuple[str, str]]
    allow_degree2: bool = False
    _adj: dict[str, tuple[str, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        verts = tuple(sorted((str(i), str(k)) for i, k in self.vertices))
        ids = [i for i, _ in verts]
        if len(set(ids)) != len(ids):
            raise InvariantViolation("duplicate vertex ids")
        known = set(ids)
        for _, kind in verts:
            if kind not in (BOUNDARY, INTERIOR):
                raise InvariantViolation(f"unknown vertex kind {kind!r}")
        norm_edges = set()
        for a, b in self.edges:
            if a == b:
                raise InvariantViolation(f"self-loop at {a!r}")
            if a not in known or b not in known:
                raise InvariantViolation(f"edge ({a!r}, {b!r}) references unknown vertex")
            e = canonical_edge(a, b)
            if e in norm_edges:
                raise InvariantViolation(f"duplicate edge {e!r}")
            norm_edges.add(e)
        adj: dict[str, list[str]] = {i: [] for i in ids}
        for a, b in norm_edges:
            adj[a].append(b)
            adj[b].append(a)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", frozenset(norm_edges))
        object.__setattr__(self, "_adj", {i: tuple(sorted(ns)) for i, ns in adj.items()})

        min_deg = 2 if self.allow_degree2 else 3
        for i, kind in verts:
            if kind == INTERIOR and len(self._adj[i]) < min_deg:
                raise InvariantViolation(
                    f"interior vertex {i!r} has degree {len(self._adj[i])} < {min_deg}"
                )
        if ids:
            seen = {ids[0]}
            stack = [ids[0]]
            while stack:
                for w in self._adj[stack.pop()]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) != len(ids):
                raise InvariantViolation("graph is not connected")

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(i for i, _ in self.vertices)

    @property
    def boundary_ids(self) -> tuple[str, ...]:
        return tuple(i for i, k in self.vertices if k == BOUNDARY)

    @property
    def interior_ids(self) -> tuple[str, ...]:
        return tuple(i for i, k in self.vertices if k == INTERIOR)

    def is_boundary(self, v: str) -> bool:
        return v in set(self.boundary_ids)

    def neighbors(self, v: str) -> tuple[str, ...]:
        try:
            return self._adj[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))


@dataclass(frozen=True)
class EmbeddedNet:
    topology: NetTopology
    positions: dict[str, Point]

    def __post_init__(self):
        pos = {str(k): (float(x), float(y)) for k, (x, y) in self.positions.items()}
        ids = set(self.topology.ids)
        missing = ids - set(pos)
        if missing:
            raise InvariantViolation(f"missing positions for {sorted(missing)[:6]}")
        for x, y in pos.values():
            if not (math.isfinite(x) and math.isfinite(y)):
                raise InvariantViolation("non-finite coordinate")
        object.__setattr__(self, "positions", pos)
        eps = self.eps_deg
        for a, b in self.topology.edges:
            if dist(pos[a], pos[b]) <= eps:
                raise InvariantViolation(f"edge ({a!r}, {b!r}) has (near-)zero length")

    @property
    def bbox_diagonal(self) -> float:
        xs = [p[0] for p in self.positions.values()]
        ys = [p[1] for p in self.positions.values()]
        return math.hypot(max(xs) - min(xs), max(ys) - min(ys))

    @property
    def eps_deg(self) -> float:
        # scale-aware degeneracy guard; falls back to absolute when scale-free
        return max(EPS_DEG, EPS_DEG * self.bbox_diagonal)

    def with_positions(self, positions: dict[str, Point]) -> "EmbeddedNet":
        return EmbeddedNet(topology=self.topology, positions=positions)


@dataclass(frozen=True)
class ImbalanceReport:
    per_vertex: dict[str, tuple[Point, float]]
    total_loss: float
    max_norm: float


def imbalance(net: EmbeddedNet, v: str) -> tuple[Point, float]:
    """Sum of unit vectors along v's incident edges, and its norm."""
    if v not in net.positions:
        raise UnknownVertex(v)
    x, y = net.positions[v]
    eps = net.eps_deg
    sx = sy = 0.0
    for w in net.topology.neighbors(v):
        wx, wy = net.positions[w]
        dx, dy = wx - x, wy - y
        d = math.sqrt(dx * dx + dy * dy)
        if d <= eps:
            raise DegenerateEdge(f"edge ({v!r}, {w!r}) has length {d:.3e}")
        sx += dx / d
        sy += dy / d
    return (sx, sy), math.hypot(sx, sy)


def total_report(net: EmbeddedNet) -> ImbalanceReport:
    """Imbalance of every interior vertex; boundary vertices are exempt."""
    per: dict[str, tuple[Point, float]] = {}
    total = 0.0
    worst = 0.0
    for v in net.topology.interior_ids:
        try:
            vec, norm = imbalance(net, v)
        except DegenerateEdge as exc:
            raise DegenerateEdge(f"at vertex {v!r}: {exc}") from None
        per[v] = (vec, norm)
        total += norm
        worst = max(worst, norm)
    return ImbalanceReport(per_vertex=per, total_loss=total, max_norm=worst)


@dataclass(frozen=True)
class OverlapFinding:
    kind: str  # "edges" or "vertices"
    items: tuple
    detail: str


def _point_line_dist(p: Point, a: Point, b: Point) -> float:
    ux, uy = b[0] - a[0], b[1] - a[1]
    ln = math.hypot(ux, uy)
    return abs((p[0] - a[0]) * uy - (p[1] - a[1]) * ux) / ln


def _collinear_overlap_length(p1: Point, q1: Point, p2: Point, q2: Point, tol: float) -> float:
    """Overlap length of two segments if they are collinear within tol, else 0."""
    if (
        _point_line_dist(p2, p1, q1) > tol
        or _point_line_dist(q2, p1, q1) > tol
        or _point_line_dist(p1, p2, q2) > tol
        or _point_line_dist(q1, p2, q2) > tol
    ):
        return 0.0
    ux, uy = q1[0] - p1[0], q1[1] - p1[1]
    ln = math.hypot(ux, uy)
    ux, uy = ux / ln, uy / ln
    s = sorted(((p1[0] * ux + p1[1] * uy), (q1[0] * ux + q1[1] * uy)))
    t = sorted(((p2[0] * ux + p2[1] * uy), (q2[0] * ux + q2[1] * uy)))
    return min(s[1], t[1]) - max(s[0], t[0])


def detect_overlaps(net: EmbeddedNet, tol_overlap: float | None = None) -> list[OverlapFinding]:
    """Find coincident or collinear-overlapping edge pairs and near-coincident
    vertex pairs.  An empty list means the embedding is overlap-free.

    tol_overlap defaults to 1e-6 of the bounding-box diagonal.
    """
    tol = 1e-6 * net.bbox_diagonal if tol_overlap is None else tol_overlap
    findings: list[OverlapFinding] = []
    edges = sorted(net.topology.edges)
    pos = net.positions
    for i in range(len(edges)):
        a1, b1 = edges[i]
        for j in range(i + 1, len(edges)):
            a2, b2 = edges[j]
            ov = _collinear_overlap_length(pos[a1], pos[b1], pos[a2], pos[b2], tol)
            if ov > tol:
                findings.append(
                    OverlapFinding(
                        kind="edges",
                        items=(edges[i], edges[j]),
                        detail=f"collinear segments overlap over length {ov:.6e}",
                    )
                )
    ids = sorted(net.positions)
    for i in range(len(ids)):
        for j in range(i + 1, len(ids)):
            d = dist(pos[ids[i]], pos[ids[j]])
            if d < tol:
                findings.append(
                    OverlapFinding(
                        kind="vertices",
                        items=(ids[i], ids[j]),
                        detail=f"vertices {d:.6e} apart",
                    )
                )
    return findings
