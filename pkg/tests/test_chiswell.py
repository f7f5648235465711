import pytest

from pdgroups.bass_serre import BassSerreTree
from pdgroups.chiswell import (OrientationReversing, TrivialElement, chiswell_h1, hchis_obstruction)
from pdgroups.cohomology import cyclic_module_homology
from pdgroups.graph import OrientationCharacter
from pdgroups.groups import conjugate_in
from pdgroups.linalg import AbelianGroupInvariants
from pdgroups.shipped import shipped

Z2 = AbelianGroupInvariants(0, (2,))


def element(name, v, x):
    g, omega = shipped(name)
    T = BassSerreTree(g)
    G = T.groups[v]
    x = G.generators[x] if isinstance(x, str) else x
    return g, omega, T, T.vertex_element(v, x)


def test_loop_isomorphism_order_two():
    g, omega, T, w = element("z4_times_z", 0, 2)
    verdict = hchis_obstruction(g, omega, w, tree=T)
    assert verdict.status == "Consistent" and verdict.data.cokernel == Z2
    assert verdict.data.q == 2 and verdict.matched == 2


def test_amalgam_central_involution():
    g, omega, T, w = element("z4_amalgam", 0, 2)
    verdict = hchis_obstruction(g, omega, w, tree=T)
    assert verdict.status == "Consistent" and verdict.data.cokernel == Z2


def test_s3_order_three_is_obstructed():
    g, omega, T, w = element("s3_amalgam", 0, "c")
    verdict = hchis_obstruction(g, omega, w, tree=T)
    assert verdict.status == "Obstructed"
    d = verdict.data
    assert not d.injective
    assert d.source == AbelianGroupInvariants(0, (3,)) and d.target == AbelianGroupInvariants()
    # the same element is not conjugate into the edge group
    S = T.groups[0]
    edge = g.edges[0].into_o.image()
    assert conjugate_in(S, S.generators["c"], edge) is None


def test_caveat_mode_accepts_half_order():
    g, omega, T, w = element("z4_amalgam", 0, 1)
    with pytest.raises(OrientationReversing):
        chiswell_h1(g, omega, w, tree=T)
    verdict = hchis_obstruction(g, omega, w, caveat=True, tree=T)
    assert verdict.status == "Consistent" and verdict.matched == 2
    assert verdict.data.targets == (4, 2)


def test_trivial_element_rejected():
    g, omega, T, _ = element("z4_times_z", 0, 2)
    with pytest.raises(TrivialElement):
        chiswell_h1(g, omega, (0,), tree=T)


def test_orbit_contributions_ignore_free_orbits():
    for name, x in [("z4_times_z", 2), ("z5_semidirect", 1), ("theta", 1), ("z4_amalgam", 2)]:
        g, omega, T, w = element(name, 0, x)
        d = chiswell_h1(g, omega, w, tree=T)
        q = d.q
        for orbits, term in ((d.vertex_orbits, d.source), (d.edge_orbits, d.target)):
            stabs = [(o.stabilizer, o.sign) for o in orbits if o.sign == 1]
            plain = cyclic_module_homology(q, stabs, 1) if stabs else AbelianGroupInvariants()
            padded = cyclic_module_homology(q, stabs + [(1, 1)] * 3, 1)
            assert plain == padded == term
        for o in d.vertex_orbits + d.edge_orbits:
            if o.size == q:
                assert o.contribution == AbelianGroupInvariants()


def test_line_cokernel_is_independent_of_radius():
    for name, x in [("z4_times_z", 2), ("z4_amalgam", 2), ("z5_semidirect", 1)]:
        g, omega, T, w = element(name, 0, x)
        results = {chiswell_h1(g, omega, w, max_radius=r, tree=T).cokernel for r in (3, 5, 7)}
        assert len(results) == 1


def test_report_serializes():
    g, omega, T, w = element("z4_times_z", 0, 2)
    js = hchis_obstruction(g, omega, w, tree=T).to_json(T)
    assert js["status"] == "Consistent" and js["data"]["cokernel"]
    assert OrientationCharacter.trivial().vertex(g, 0, 1) == 1
