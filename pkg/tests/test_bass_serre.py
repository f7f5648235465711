import random

import pytest

from pdgroups.bass_serre import BadWord, BassSerreTree, NotFiniteOrder
from pdgroups.shipped import SHIPPED, shipped

NAMES = ["theta", "s3_amalgam", "z4_times_z", "z5_semidirect", "z4_amalgam", "dumbbell"]

EXPECTED = {
    # (graph, vertex, element) -> normalizer class
    ("s3_amalgam", 0, "s"): "FiniteWithWitness",
    ("s3_amalgam", 0, "c"): "FiniteWithWitness",
    ("z4_times_z", 0, "1"): "TwoEnded",
    ("z5_semidirect", 0, "1"): "TwoEnded",
    ("z4_amalgam", 0, "1"): "FiniteWithWitness",
    ("z4_amalgam", 0, "2"): "TwoEnded",
    ("theta", 0, "a"): "TwoEnded",
    ("dumbbell", 0, "a"): "ContainsFreeGroup",
    ("dumbbell", 0, "b"): "TwoEnded",
}


@pytest.mark.parametrize("name", NAMES)
def test_group_axioms_on_random_elements(name):
    T = BassSerreTree(shipped(name)[0])
    rng = random.Random(name)
    e = (0,)
    for _ in range(500):
        x, y, z = (T.random_element(rng, rng.randint(0, 5)) for _ in range(3))
        assert T.mul(T.mul(x, y), z) == T.mul(x, T.mul(y, z))
        assert T.mul(x, T.inv(x)) == e == T.mul(T.inv(x), x)
        assert T.mul(x, e) == x


@pytest.mark.parametrize("name", NAMES)
def test_normal_form_is_idempotent_and_acts(name):
    T = BassSerreTree(shipped(name)[0])
    rng = random.Random(1)
    for _ in range(100):
        x, y = T.random_element(rng, 4), T.random_element(rng, 4)
        assert T.nf(x) == x
        key = T.vertex_of(y)
        assert T.act(T.mul(x, y), ()) == T.act(x, T.act(y, ()))
        assert T.distance(key, ()) == T.distance(T.act(x, key), T.act(x, ()))


@pytest.mark.parametrize("key, cls", sorted(EXPECTED.items()))
def test_normalizer_classes(key, cls):
    name, v, elt = key
    T = BassSerreTree(shipped(name)[0])
    G = T.groups[v]
    x = G.generators[elt] if elt in G.generators else int(elt)
    assert T.normalizer_class(T.vertex_element(v, x))[0] == cls


@pytest.mark.parametrize("name", NAMES)
def test_xi_is_conjugation_invariant(name):
    T = BassSerreTree(shipped(name)[0])
    rng = random.Random(5)
    for v, G in enumerate(T.groups):
        for x in range(1, G.order):
            w = T.vertex_element(v, x)
            base = T.fixed_subtree(w, 6)
            for _ in range(50 // (len(T.groups) * (G.order - 1)) + 1):
                g = T.random_element(rng, 3)
                c = T.mul(g, w, T.inv(g))
                rep = T.fixed_subtree(c, 6)
                assert (rep.classification, rep.xi) == (base.classification, base.xi)
                assert T.element_order(c) == G.element_order(x)


def test_stable_letters_are_hyperbolic():
    T = BassSerreTree(shipped("theta")[0])
    for i in T.g.stable_edges():
        t = T.stable_letter(i)
        assert T.is_hyperbolic(t) and T.translation_length(t) == 2
        with pytest.raises(NotFiniteOrder):
            T.fixed_subtree(t)


def test_tree_ball_sizes():
    T = BassSerreTree(shipped("theta")[0])
    # each theta vertex has six neighbours: three edges, two cosets each
    assert T.tree_ball((), 2).sphere_sizes() == [1, 6, 30]
    T = BassSerreTree(shipped("z4_times_z")[0])
    assert T.tree_ball((), 3).sphere_sizes() == [1, 2, 2, 2]


def test_parse_tokens():
    T = BassSerreTree(shipped("z5_semidirect")[0])
    t = T.parse(["t_e"])
    a = T.parse(["v:1"])
    assert T.mul(t, a, T.inv(t)) in (T.parse(["v:2"]), T.parse(["v:3"]))
    for bad in (["x:1"], ["t_zz"], ["v:9"], ["v"]):
        with pytest.raises(BadWord):
            T.parse(bad)


def test_every_shipped_graph_builds_a_tree():
    for name in SHIPPED:
        T = BassSerreTree(shipped(name)[0])
        assert T.generators()
