import json
from pathlib import Path

import pytest

from pdgroups.catalog import by_name
from pdgroups.io import (InputError, dumps, graph_from_json, graph_to_json, group_from_json, group_to_json,
                         load_graph, load_group)
from pdgroups.shipped import SHIPPED, shipped

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.mark.parametrize("name", sorted(SHIPPED))
def test_graph_round_trip_is_byte_identical(name):
    g, omega = shipped(name)
    text = dumps(graph_to_json(g, omega))
    g2, omega2 = graph_from_json(json.loads(text))
    assert dumps(graph_to_json(g2, omega2)) == text
    assert [v.group.table for v in g2.vertices] == [v.group.table for v in g.vertices]


def test_shipped_data_files_load():
    for path in sorted((DATA / "graphs").glob("*.json")):
        g, omega = load_graph(str(path))
        omega.check(g)
    for path in sorted((DATA / "groups").glob("*.json")):
        assert load_group(str(path)).order in (4, 5, 8)


def test_data_files_match_builtin_examples():
    pairs = {"theta": "theta", "s3amalgam": "s3_amalgam", "z4xz": "z4_times_z", "z5semidirect": "z5_semidirect",
             "z4amalgam": "z4_amalgam"}
    for fname, name in pairs.items():
        g, omega = load_graph(str(DATA / "graphs" / (fname + ".json")))
        h, omega_h = shipped(name)
        assert len(g.vertices) == len(h.vertices) and len(g.edges) == len(h.edges)
        assert omega.is_trivial() == omega_h.is_trivial()


def test_group_round_trip():
    for name in ["S3", "Q8", "Z/6"]:
        G = by_name(name)
        H = group_from_json(json.loads(dumps(group_to_json(G))))
        assert H.table == G.table and H.generators == G.generators


@pytest.mark.parametrize("obj", [
    "NoSuchGroup",
    {"order": 2},
    {"table": [[0, 1], [1, 1]]},
    {"table": [[0, 1], [1, 0]], "order": 3},
])
def test_bad_groups(obj):
    with pytest.raises(InputError):
        group_from_json(obj)


def theta_json():
    return graph_to_json(*shipped("theta"))


def test_bad_graphs():
    with pytest.raises(InputError):
        graph_from_json([])
    obj = theta_json()
    obj["edges"][0]["t"] = "nowhere"
    with pytest.raises(InputError):
        graph_from_json(obj)
    obj = theta_json()
    obj["edges"][0]["into_o"] = [0, 0]
    with pytest.raises(InputError):
        graph_from_json(obj)
    obj = theta_json()
    obj["edges"][0]["into_o"] = "a"
    with pytest.raises(InputError):
        graph_from_json(obj)
    obj = theta_json()
    del obj["edges"][1]["o"]
    with pytest.raises(InputError):
        graph_from_json(obj)
    obj = theta_json()
    obj["vertices"].append({"id": "x", "group": "Z/2"})
    with pytest.raises(InputError):
        graph_from_json(obj)


def test_bad_omega():
    obj = theta_json()
    obj["omega"] = {"vertex_chars": {"v": {"a": -1}}}
    with pytest.raises(InputError):
        graph_from_json(obj)
    obj["omega"] = {"vertex_chars": {"zz": {"a": -1}}}
    with pytest.raises(InputError):
        graph_from_json(obj)


def test_missing_file(tmp_path):
    with pytest.raises(InputError):
        load_graph(str(tmp_path / "absent.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InputError):
        load_graph(str(bad))
