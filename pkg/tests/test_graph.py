from fractions import Fraction

import pytest

from pdgroups.catalog import by_name, cyclic, klein_four
from pdgroups.graph import (Disconnected, Edge, Ends, GraphOfGroups, IncompatibleOrientation, NonInjectiveEdgeMap,
                            OpaqueOneEnded, OrientationCharacter, PositiveEulerNontrivial, UnsupportedOpaqueVertex,
                            Vertex, classify_edges, ends_count, format_fraction, validate, virtual_euler)
from pdgroups.groups import GroupHom
from pdgroups.shipped import (dumbbell, loop_isomorphism, make_edge, s3_amalgam, shipped, theta_graph, z4_amalgam,
                              z4_times_z, z5_semidirect)


def test_theta_invariants():
    g = theta_graph()
    assert virtual_euler(g) == -1
    assert ends_count(g) == Ends.INFINITE
    assert all(g.valence(v) == 3 for v in range(2))
    assert {str(c) for c in classify_edges(g).values()} == {"MCTie"}
    assert all(f.ok for f in validate(g))


def test_euler_of_examples():
    assert virtual_euler(s3_amalgam()) == Fraction(-1, 6)
    for g in (z4_times_z(), z5_semidirect(), z4_amalgam()):
        assert virtual_euler(g) == 0 and ends_count(g) == Ends.TWO
    assert format_fraction(Fraction(-1, 6)) == "-1/6"
    assert format_fraction(Fraction(-1)) == "-1"


def test_edge_classes():
    assert str(classify_edges(z4_times_z())["e"]) == "LoopIsomorphism"
    assert str(classify_edges(z4_amalgam())["e"]) == "MCTie"
    assert str(classify_edges(s3_amalgam())["e"]) == "Proper(3,3)"


def test_finite_vertex_has_zero_ends():
    g = GraphOfGroups([Vertex("v", cyclic(3))], [])
    assert ends_count(g) == Ends.ZERO


def test_positive_euler_with_edges_is_rejected():
    Z4, Z2 = cyclic(4), cyclic(2)
    # Z/4 *_{Z/4} Z/4 style: an isomorphism onto both vertex groups
    g = GraphOfGroups([Vertex("u", Z2), Vertex("v", Z4)], [make_edge("e", 0, 1, Z2, Z2, [1], Z4, [2])])
    assert not validate(g)[1].ok  # not reduced
    with pytest.raises(PositiveEulerNontrivial):
        ends_count(g)


def test_disconnected_and_non_injective():
    Z2 = cyclic(2)
    with pytest.raises(Disconnected):
        GraphOfGroups([Vertex("u", Z2), Vertex("v", Z2)], [])
    Z4 = cyclic(4)
    bad = Edge("e", 0, 0, Z4, GroupHom(Z4, Z4, (0, 1, 2, 3)), GroupHom(Z4, Z4, (0, 2, 0, 2)))
    with pytest.raises(NonInjectiveEdgeMap):
        GraphOfGroups([Vertex("v", Z4)], [bad])


def test_indecomposable_detects_trivial_edges():
    Z1, Z2 = cyclic(1), cyclic(2)
    g = GraphOfGroups([Vertex("v", Z2)], [make_edge("e", 0, 0, Z1, Z2, [], Z2, [])])
    names = {f.name: f.ok for f in validate(g)}
    assert names == {"WellFormed": True, "Reduced": True, "Indecomposable": False}


def test_orientation_character_checks():
    g = z4_amalgam()
    OrientationCharacter.from_generators(g, {"u": {"a": -1}, "v": {"a": -1}}).check(g)
    with pytest.raises(ValueError):
        OrientationCharacter.from_generators(g, {"u": {"a": 2}})
    g2 = theta_graph()
    omega = OrientationCharacter.from_generators(g2, {"v": {"a": -1}})
    with pytest.raises(IncompatibleOrientation):
        omega.check(g2)


def test_opaque_vertices_are_refused_where_finiteness_is_needed():
    Z2 = cyclic(2)
    e = Edge("e", 0, 1, Z2, None, None)
    g = GraphOfGroups([Vertex("u", OpaqueOneEnded("u")), Vertex("v", OpaqueOneEnded("v"))], [e])
    with pytest.raises(UnsupportedOpaqueVertex):
        virtual_euler(g)


def test_shipped_examples_load():
    for name in ["theta", "s3_amalgam", "z4_times_z", "z5_semidirect", "z4_amalgam", "dumbbell"]:
        g, omega = shipped(name)
        omega.check(g)
    assert loop_isomorphism(6, 5).edges[0].into_t.images == (0, 5, 4, 3, 2, 1)
    assert len(dumbbell().edges) == 3
    assert klein_four().order == 4 and by_name("Z/2").order == 2
