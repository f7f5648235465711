import pytest

from pdgroups.catalog import by_name, cyclic, small_catalog
from pdgroups.cohomology import (BadStabilizer, Unsupported, cyclic_module_homology, cyclic_module_homology_direct,
                                 integral_homology_oracle, period_oracle, periodicity, top_homology_automorphism,
                                 top_homology_oracle)
from pdgroups.groups import GroupHom, elementary_abelian_rank2_subgroup
from pdgroups.linalg import AbelianGroupInvariants


def test_periodicity_matches_subgroup_criterion():
    for G in small_catalog(24):
        assert periodicity(G).periodic == (elementary_abelian_rank2_subgroup(G) is None), G.name


def test_period_values_against_resolution():
    for m in range(2, 9):
        assert periodicity(cyclic(m)).period == 2 == period_oracle(cyclic(m))
    for name, p in [("Q8", 4), ("S3", 4)]:
        assert periodicity(by_name(name)).period == p == period_oracle(by_name(name))


def test_period_for_every_periodic_catalog_group():
    for G in small_catalog(24):
        rep = periodicity(G)
        if rep.periodic:
            assert rep.period == period_oracle(G, 2 * rep.period + 2), G.name


def test_non_periodic_report_names_the_prime():
    rep = periodicity(by_name("V4"))
    assert not rep.periodic and rep.period is None
    assert any(r.period is None and r.prime == 2 for r in rep.reasons)


def test_homology_of_small_groups():
    Z = AbelianGroupInvariants
    assert integral_homology_oracle(by_name("V4"), 3) == [Z(1), Z(0, (2, 2)), Z(0, (2,)), Z(0, (2, 2, 2))]
    assert integral_homology_oracle(by_name("Q8"), 3) == [Z(1), Z(0, (2, 2)), Z(0), Z(0, (8,))]


def test_shapiro_matches_resolution():
    for q in range(1, 9):
        for d in range(1, q + 1):
            if q % d:
                continue
            signs = [1, -1] if d % 2 == 0 else [1]
            for sign in signs:
                for s in range(0, 5):
                    assert cyclic_module_homology(q, [(d, sign)], s) == \
                        cyclic_module_homology_direct(q, [(d, sign)], s), (q, d, sign, s)


def test_shapiro_mixed_orbits():
    orbits = [(4, 1), (2, -1), (1, 1)]
    for s in range(4):
        assert cyclic_module_homology(4, orbits, s) == cyclic_module_homology_direct(4, orbits, s)


def test_bad_stabilizer():
    with pytest.raises(BadStabilizer):
        cyclic_module_homology(6, [(4, 1)], 1)
    with pytest.raises(BadStabilizer):
        cyclic_module_homology(6, [(3, -1)], 1)


def test_top_homology_value_and_oracle():
    F = cyclic(5)
    theta = GroupHom(F, F, tuple(2 * x % 5 for x in F.elements()))
    assert top_homology_automorphism(F, theta, 2) == 4
    assert top_homology_oracle(F, theta, 2) == 4
    with pytest.raises(Unsupported):
        V = by_name("V4")
        top_homology_automorphism(V, GroupHom(V, V, tuple(V.elements())), 2)
