"""Exact construction of the 25-net and the topology template families."""

from __future__ import annotations

import math

import pytest

from geonets import (
    ConstructionParams,
    InvariantViolation,
    NetFamily,
    RING_EXPERIMENTAL,
    T2_OCTAGON,
    T3_DODECAGON,
    UnsupportedFamily,
    align_rigid,
    build_dodecagon,
    build_net25,
    dist,
    params_from_solution,
    topology_template,
    total_report,
)

RING_ORDER = ["b1", "a11", "a12", "b2", "a21", "a22", "b3", "a31", "a32", "b4", "a41", "a42"]


def test_dodecagon_ring_order_and_anchor(sol):
    ring = build_dodecagon(params_from_solution(sol))
    assert [name for name, _ in ring] == RING_ORDER
    pos = dict(ring)
    assert pos["a11"] == (0.0, 0.0)
    assert pos["a12"][1] == pytest.approx(0.0, abs=1e-15)
    assert pos["a12"][0] > 0.0
    # interior of the ring sits in the upper half-plane
    assert all(p[1] > -1e-12 for p in pos.values())


def test_dodecagon_side_lengths_alternate(sol):
    params = params_from_solution(sol)
    ring = build_dodecagon(params)
    pos = dict(ring)
    for i, prev_b in (("1", "b1"), ("2", "b2"), ("3", "b3"), ("4", "b4")):
        a1, a2 = pos[f"a{i}1"], pos[f"a{i}2"]
        assert dist(pos[prev_b], a1) == pytest.approx(1.0, abs=1e-12)
        assert dist(a1, a2) == pytest.approx(params.side_long, abs=1e-12)


def test_dodecagon_rejects_nonpositive_side():
    with pytest.raises(InvariantViolation):
        build_dodecagon(
            ConstructionParams(alpha=3.38, beta=1.5, side_short=1.0, side_long=0.0, boundary_leg=1.0)
        )


def test_dodecagon_closure_is_independent_of_side_long(sol):
    # the four-fold turn pattern closes the ring for any positive long side
    params = params_from_solution(sol)
    stretched = ConstructionParams(
        alpha=params.alpha,
        beta=params.beta,
        side_short=1.0,
        side_long=2.5,
        boundary_leg=params.boundary_leg,
    )
    ring = build_dodecagon(stretched)
    assert len(ring) == 12


def test_net25_counts(net25):
    topo = net25.topology
    assert len(topo.ids) == 29
    assert len(topo.edges) == 64
    assert topo.boundary_ids == ("d1", "d2", "d3", "d4")
    assert len(topo.interior_ids) == 25


def test_net25_balance(net25):
    rep = total_report(net25)
    assert rep.max_norm < 1e-12


def test_net25_matches_reference_coordinates(net25, reference_coords):
    assert set(net25.positions) == set(reference_coords)
    worst = max(dist(net25.positions[k], reference_coords[k]) for k in reference_coords)
    assert worst < 1e-9


def test_net25_reference_congruence_via_alignment(net25, reference_coords):
    tf, rmsd = align_rigid(reference_coords, dict(net25.positions))
    assert rmsd < 1e-6
    assert not tf.reflected


def test_net25_quarter_turn_symmetry(net25):
    """Rotating a quarter turn about p advances every index by one."""
    pos = net25.positions
    px, py = pos["p"]

    def rot(q):
        return (px - (q[1] - py), py + (q[0] - px))

    for i in range(1, 5):
        nxt = 1 if i == 4 else i + 1
        for stem in ("a{}1", "a{}2", "b{}", "c{}", "d{}", "e{}", "f{}"):
            src = stem.format(i)
            dst = stem.format(nxt)
            assert dist(rot(pos[src]), pos[dst]) < 1e-9, (src, dst)


def test_net25_mirror_symmetry(net25):
    # reflection across the vertical axis through p swaps the two ring halves
    pos = net25.positions
    px = pos["p"][0]

    def mirror(q):
        return (2.0 * px - q[0], q[1])

    for src, dst in (("a11", "a12"), ("a21", "a42"), ("b2", "b1"), ("f2", "f4"), ("d2", "d4")):
        assert dist(mirror(pos[src]), pos[dst]) < 1e-9


def test_net25_landmarks_cover_all_vertices(construction):
    assert set(construction.landmarks) == set(construction.net.positions)
    assert construction.landmarks["a11"] == (0.0, 0.0)


def test_net25_edge_shape(net25):
    topo = net25.topology
    for i in range(1, 5):
        assert topo.degree(f"a{i}1") == 5
        assert topo.degree(f"a{i}2") == 5
        assert topo.degree(f"b{i}") == 3
        # anchors take two triangle legs, two chord ends, and two e-legs
        assert topo.degree(f"d{i}") == 6
        assert topo.degree(f"c{i}") == 6
        assert topo.degree(f"e{i}") == 3
        assert topo.degree(f"f{i}") == 3
    assert topo.neighbors("p") == ("f1", "f2", "f3", "f4")
    # the crossing vertex c_i joins its corner b_i to both anchor chords
    assert topo.neighbors("c1") == ("a11", "a42", "b1", "d1", "d4", "e1")


def test_family_validation():
    with pytest.raises(UnsupportedFamily):
        NetFamily("hexagon", 3)
    with pytest.raises(UnsupportedFamily):
        NetFamily(T3_DODECAGON, 2)
    with pytest.raises(UnsupportedFamily):
        NetFamily(T2_OCTAGON, 3)
    with pytest.raises(UnsupportedFamily):
        NetFamily(RING_EXPERIMENTAL, 1)


def test_template_order3_is_the_exact_net(net25):
    tpl = topology_template(NetFamily(T3_DODECAGON, 3))
    assert not tpl.experimental
    assert tpl.topology == net25.topology
    assert tpl.positions == net25.positions


def test_template_order2_shape(t2_template):
    assert not t2_template.experimental
    topo = t2_template.topology
    assert len(topo.ids) == 20
    assert len(topo.edges) == 44
    assert len(topo.interior_ids) == 16
    assert topo.boundary_ids == ("d1", "d2", "d3", "d4")
    # order 2 has no central vertex: the ring is b_i and a_i1 only
    assert "p" not in topo.ids
    assert set(topo.ids) == {
        f"{stem}{i}" for stem in ("b", "c", "d", "e") for i in range(1, 5)
    } | {f"a{i}1" for i in range(1, 5)}


def test_template_ring_overlap_orders_rejected():
    with pytest.raises(UnsupportedFamily):
        topology_template(NetFamily(RING_EXPERIMENTAL, 2))
    with pytest.raises(UnsupportedFamily):
        topology_template(NetFamily(RING_EXPERIMENTAL, 3))


def test_template_ring_order4_is_experimental():
    tpl = topology_template(NetFamily(RING_EXPERIMENTAL, 4))
    assert tpl.experimental
    topo = tpl.topology
    # 4n ring vertices + 4 anchors + 4 corners-c + 4 e + 4 f + center
    assert len(topo.ids) == 16 + 4 + 4 + 4 + 4 + 1
    assert topo.boundary_ids == ("d1", "d2", "d3", "d4")
    assert set(tpl.positions) == set(topo.ids)
    assert all(math.isfinite(x) and math.isfinite(y) for x, y in tpl.positions.values())


def test_dodecagon_rejects_nonfinite_sides():
    with pytest.raises(InvariantViolation):
        build_dodecagon(
            ConstructionParams(
                alpha=3.38, beta=1.5, side_short=1.0, side_long=math.inf, boundary_leg=1.0
            )
        )
    with pytest.raises(InvariantViolation):
        build_dodecagon(
            ConstructionParams(
                alpha=3.38, beta=1.5, side_short=math.nan, side_long=0.75, boundary_leg=1.0
            )
        )
