import pytest

from pdgroups.catalog import by_name, symmetric
from pdgroups.linalg import AbelianGroupInvariants
from pdgroups.presentation import (count_homomorphisms, cyclic_reduce, eliminate, format_word, free_reduce,
                                   fundamental_presentation, group_presentation, inverse, parse_word,
                                   presentation_from_strings)
from pdgroups.shipped import loop_isomorphism, s3_amalgam, theta_graph, z4_amalgam, z4_times_z

S3, S4 = symmetric(3), symmetric(4)

# hand-written presentations of the same groups
THETA = presentation_from_strings(
    "abtu", ["a^2", "b^2", "a b a b", "a t b t^-1 a^-1 t b^-1 t^-1", "t b t^-1 a u b^-1 a^-1 u^-1"])
S3_AMALGAM = presentation_from_strings(["s", "c", "d"], ["s^2", "c^3", "d^3", "s c s c", "s d s d"])
Z4_TIMES_Z = presentation_from_strings(["a", "t"], ["a^4", "t a t^-1 a^-1"])
Z4_AMALGAM = presentation_from_strings(["a", "b"], ["a^4", "b^4", "a^2 b^-2"])


def test_word_helpers():
    w = parse_word("a b b^-1 a^2 c^-1")
    assert free_reduce(w) == parse_word("a^3 c^-1")
    assert cyclic_reduce(parse_word("c a b c^-1")) == parse_word("a b")
    assert format_word(inverse(parse_word("a b^-1"))) == "b a^-1"
    with pytest.raises(ValueError):
        parse_word("a^x")


def test_theta_abelianization():
    for simplify in (True, False):
        pres = fundamental_presentation(theta_graph(), simplify)
        assert pres.abelianization() == AbelianGroupInvariants(2, (2, 2))
    assert THETA.abelianization() == AbelianGroupInvariants(2, (2, 2))


@pytest.mark.parametrize("graph, hand", [
    (theta_graph, THETA),
    (s3_amalgam, S3_AMALGAM),
    (z4_times_z, Z4_TIMES_Z),
    (z4_amalgam, Z4_AMALGAM),
])
def test_homomorphism_counts_match_hand_presentation(graph, hand):
    g = graph()
    for H in (S3, S4):
        want = count_homomorphisms(hand, H)
        assert count_homomorphisms(fundamental_presentation(g), H) == want
        assert count_homomorphisms(fundamental_presentation(g, simplify=False), H) == want


def test_theta_counts():
    assert count_homomorphisms(THETA, S3) == 144
    assert count_homomorphisms(THETA, S4) == 5376


def test_vertex_presentation_elimination_preserves_counts():
    for name in ["S3", "Q8", "Z/6", "V4"]:
        G = by_name(name)
        pres, words = group_presentation(G)
        small = eliminate(pres)
        for H in (S3, S4):
            assert count_homomorphisms(pres, H) == count_homomorphisms(small, H)
        assert small.abelianization() == pres.abelianization()


def test_stable_letters_are_kept():
    pres = fundamental_presentation(loop_isomorphism(5, 2))
    assert "t_e" in pres.generators
    assert pres.abelianization() == AbelianGroupInvariants(1)


def test_bad_relator_rejected():
    with pytest.raises(ValueError):
        presentation_from_strings(["a"], ["b^2"])
