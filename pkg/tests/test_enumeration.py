import random

import pytest

from pdgroups.catalog import by_name, cyclic, klein_four
from pdgroups.enumeration import Catalog, candidates, enumerate_graphs, injective_homs, read_progress
from pdgroups.graph import virtual_euler
from pdgroups.presentation import count_homomorphisms, fundamental_presentation

S3, S4 = by_name("S3"), by_name("S4")


def invariants(g):
    pres = fundamental_presentation(g)
    return str(pres.abelianization()), count_homomorphisms(pres, S3)


def test_injective_homs():
    assert len(injective_homs(cyclic(2), klein_four())) == 3
    assert len(injective_homs(cyclic(4), cyclic(4))) == 2
    assert injective_homs(cyclic(3), cyclic(4)) == []


def test_single_involution_loop():
    out = list(enumerate_graphs(Catalog((cyclic(2),), (cyclic(2),), 1, 1)))
    assert len(out) == 1 and out[0].report.overall == "Candidate"


def test_z3_loops():
    out = list(enumerate_graphs(Catalog((cyclic(3),), (cyclic(3),), 2, 2)))
    assert sorted(invariants(s.graph)[0] for s in out) == ["Z", "Z + Z/3"]


def test_survivors_are_pairwise_distinct_groups():
    out = list(enumerate_graphs(Catalog((cyclic(4),), (cyclic(2), cyclic(4)), 2, 2)))
    assert len(out) == 2
    assert len({invariants(s.graph) for s in out}) == len(out)


def test_keys_are_stable_under_relabelling():
    # every candidate built in the fixed order has a key; the number of distinct
    # keys is at most the number of candidates and at least the survivor count
    cat = Catalog((klein_four(),), (cyclic(2),), 2, 3, loops=False)
    cands = list(candidates(cat))
    keys = {k for _, k, _ in cands}
    assert len(keys) < len(cands)
    # graphs with the same key have the same abelianization and Euler characteristic
    rng = random.Random(3)
    by_key = {}
    for _, k, g in cands:
        by_key.setdefault(k, []).append(g)
    for k in rng.sample(sorted(by_key, key=repr), 10):
        gs = by_key[k]
        assert len({(str(fundamental_presentation(g).abelianization()), virtual_euler(g)) for g in gs}) == 1


def test_survivors_have_nonpositive_euler_and_pass_filters():
    cat = Catalog((klein_four(),), (cyclic(2),), 2, 4, loops=False)
    for s in enumerate_graphs(cat):
        assert virtual_euler(s.graph) <= 0
        assert s.report.overall != "Obstructed"


def test_loop_free_klein_four_search_finds_theta():
    out = list(enumerate_graphs(Catalog((klein_four(),), (cyclic(2),), 2, 4, loops=False)))
    assert len(out) == 1
    g = out[0].graph
    assert len(g.vertices) == 2 and len(g.edges) == 3
    assert all(g.valence(v) == 3 for v in range(2))
    assert count_homomorphisms(fundamental_presentation(g), S4) == 5376


def test_filters_are_monotone():
    cat = Catalog((cyclic(4),), (cyclic(2), cyclic(4)), 2, 2)
    few = {s.key for s in enumerate_graphs(cat, filters="gh")}
    many = {s.key for s in enumerate_graphs(cat)}
    assert many <= few


def test_progress_and_resume(tmp_path):
    cat = Catalog((cyclic(4),), (cyclic(2), cyclic(4)), 2, 2)
    path = str(tmp_path / "progress")
    full = list(enumerate_graphs(cat, progress=path))
    assert read_progress(path) == full[-1].index
    # stop after the first survivor, then resume
    first = next(iter(enumerate_graphs(cat, progress=path)))
    rest = list(enumerate_graphs(cat, progress=path, resume=True))
    assert [s.key for s in [first] + rest] == [s.key for s in full]


def test_catalog_validation():
    with pytest.raises(ValueError):
        Catalog((), (cyclic(2),), 1, 1)
    with pytest.raises(ValueError):
        Catalog((cyclic(2),), (cyclic(2),), 0, 1)
