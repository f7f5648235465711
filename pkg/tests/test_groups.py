import random

import pytest

from pdgroups.catalog import by_name, cyclic, dihedral, direct_product, klein_four, random_relabel, small_catalog
from pdgroups.groups import (FiniteGroup, GroupHom, NoIdentity, NoInverse, NotAssociative, NotHomomorphism,
                             classify_structure, conjugate_in, elementary_abelian_rank2_subgroup,
                             has_dihedral_subgroup_gt2, has_klein_four_subgroup, is_metacyclic, sylow_subgroups)


def test_catalog_tables_are_groups():
    for G in small_catalog(24):
        assert G.order <= 24
        # the constructor validates; spot-check associativity of the identity and inverses
        for x in G.elements():
            assert G.mul(x, G.inv(x)) == 0


def test_validation_errors():
    with pytest.raises(NoIdentity):
        FiniteGroup([[1, 0], [0, 1]])
    with pytest.raises(NoInverse):
        FiniteGroup([[0, 1, 2], [1, 1, 1], [2, 1, 0]])
    # a Latin square with identity that is not associative (order 5)
    loop = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NotAssociative):
        FiniteGroup(loop)


def test_homomorphism_checks():
    Z4, Z2 = cyclic(4), cyclic(2)
    assert GroupHom(Z4, Z2, (0, 1, 0, 1)).image() == frozenset({0, 1})
    with pytest.raises(NotHomomorphism):
        GroupHom(Z4, Z2, (0, 1, 1, 0))


def test_automorphism_counts():
    counts = {"Z/5": 4, "Z/8": 4, "V4": 6, "S3": 6, "Q8": 24, "D8": 8, "Z/12": 4}
    for name, n in counts.items():
        assert len(by_name(name).automorphisms) == n, name


def test_structure_tags():
    assert classify_structure(cyclic(6)).kind == "Cyclic"
    assert classify_structure(klein_four()).kind == "KleinFour"
    assert classify_structure(dihedral(8)).kind == "Dihedral"
    assert classify_structure(by_name("S3")).kind == "Dihedral"
    assert classify_structure(by_name("Q8")).kind == "Quaternionic"
    assert classify_structure(by_name("A4")).kind == "Other"


def test_sylow_orders():
    G = by_name("S4")
    syl = sylow_subgroups(G)
    assert {p: len(S) for p, S in syl.items()} == {2: 8, 3: 3}


def test_subgroup_searches():
    assert has_klein_four_subgroup(by_name("Q8")) is None
    assert has_klein_four_subgroup(dihedral(8)) is not None
    assert elementary_abelian_rank2_subgroup(by_name("Z/3xZ/3"))[0] == 3
    assert has_dihedral_subgroup_gt2(by_name("S4"))[0]
    assert not has_dihedral_subgroup_gt2(by_name("Q16"))[0]
    assert is_metacyclic(by_name("Z/7:Z/3(2)"))
    assert not is_metacyclic(by_name("Z/2xZ/2xZ/2xZ/2"))


def test_conjugate_in():
    S = by_name("S3")
    s = S.generators["s"]
    others = [x for x in S.elements() if S.orders[x] == 2]
    for x in others:
        assert conjugate_in(S, x, frozenset({0, s})) is not None
    c = S.generators["c"]
    assert conjugate_in(S, c, frozenset({0, s})) is None


def test_relabelling_preserves_invariants():
    rng = random.Random(11)
    for name in ["S3", "Q8", "D12", "Z/2xZ/4"]:
        G = by_name(name)
        H = random_relabel(G, rng)
        assert sorted(G.orders) == sorted(H.orders)
        assert len(G.automorphisms) == len(H.automorphisms)
        assert len(G.subgroups) == len(H.subgroups)


def test_direct_product_order():
    G = direct_product(cyclic(2), by_name("S3"))
    assert G.order == 12 and not G.is_abelian()
