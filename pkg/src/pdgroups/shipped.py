"""Small graphs of groups used in the documentation, the tests and the CLI examples."""
from __future__ import annotations

from .catalog import by_name, cyclic, klein_four, symmetric
from .graph import Edge, GraphOfGroups, OrientationCharacter, Vertex
from .groups import FiniteGroup


def make_edge(eid: str, o: int, t: int, Ge: FiniteGroup, Go: FiniteGroup, imgs_o, Gt: FiniteGroup, imgs_t) -> Edge:
    """Edge whose maps send the generators of Ge (in ``generator_list`` order) to the given elements."""
    fo = Ge.hom_from_generators(Go, imgs_o)
    ft = Ge.hom_from_generators(Gt, imgs_t)
    if fo is None or ft is None:
        raise ValueError("edge %s: generator images do not define homomorphisms" % eid)
    return Edge(eid, o, t, Ge, fo, ft)


def theta_graph() -> GraphOfGroups:
    """Two Klein four vertices joined by three order-2 edges through a, b and ab."""
    V = klein_four()
    Z2 = cyclic(2)
    a, b = V.generators["a"], V.generators["b"]
    ab = V.mul(a, b)
    edges = [make_edge(eid, 0, 1, Z2, V, [x], V, [x]) for eid, x in (("a", a), ("b", b), ("c", ab))]
    return GraphOfGroups([Vertex("v", V), Vertex("w", V)], edges, "theta")


def s3_amalgam() -> GraphOfGroups:
    S = symmetric(3)
    s = S.generators["s"]
    return GraphOfGroups([Vertex("u", S), Vertex("v", S)],
                         [make_edge("e", 0, 1, cyclic(2), S, [s], S, [s])], "S3*Z/2S3")


def loop_isomorphism(m: int, j: int = 1) -> GraphOfGroups:
    """Z/m with one loop whose stable letter acts by a -> a^j."""
    G = cyclic(m)
    return GraphOfGroups([Vertex("v", G)], [make_edge("e", 0, 0, G, G, [1 % m], G, [j % m])],
                         "Z/%d:%dZ" % (m, j) if j % m != 1 % m else "Z/%dxZ" % m)


def z4_times_z() -> GraphOfGroups:
    return loop_isomorphism(4, 1)


def z5_semidirect() -> GraphOfGroups:
    return loop_isomorphism(5, 2)


def z4_amalgam() -> GraphOfGroups:
    G = cyclic(4)
    return GraphOfGroups([Vertex("u", G), Vertex("v", G)],
                         [make_edge("e", 0, 1, cyclic(2), G, [2], G, [2])], "Z/4*Z/2Z/4")


def dumbbell() -> GraphOfGroups:
    """Klein four vertices, a loop through a at each, joined by an edge through b."""
    V = klein_four()
    Z2 = cyclic(2)
    a, b = V.generators["a"], V.generators["b"]
    edges = [make_edge("e1", 0, 0, Z2, V, [a], V, [a]),
             make_edge("e2", 0, 1, Z2, V, [b], V, [b]),
             make_edge("e3", 1, 1, Z2, V, [a], V, [a])]
    return GraphOfGroups([Vertex("v", V), Vertex("w", V)], edges, "dumbbell")


def default_omega(name: str, g: GraphOfGroups) -> OrientationCharacter:
    """The orientation character under which each shipped example is realizable."""
    if name == "z5_semidirect":
        return OrientationCharacter({}, {"e": -1})
    if name == "z4_amalgam":
        return OrientationCharacter.from_generators(g, {"u": {"a": -1}, "v": {"a": -1}})
    return OrientationCharacter.trivial()


SHIPPED = {
    "theta": theta_graph,
    "s3_amalgam": s3_amalgam,
    "z4_times_z": z4_times_z,
    "z5_semidirect": z5_semidirect,
    "z4_amalgam": z4_amalgam,
    "z6_loop": lambda: loop_isomorphism(6, 1),
    "z6_loop_inverse": lambda: loop_isomorphism(6, -1),
    "dumbbell": dumbbell,
}


def shipped(name: str) -> tuple[GraphOfGroups, OrientationCharacter]:
    g = SHIPPED[name]()
    return g, default_omega(name, g)
