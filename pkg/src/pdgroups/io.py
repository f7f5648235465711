"""Reading and writing groups, graphs of groups and reports as JSON.

Group JSON::

    {"name": "Z/4", "order": 4, "table": [[0, 1, 2, 3], ...], "generators": {"a": 1}}

A group reference is either such an object or a catalog name (``"Z/4"``,
``"V4"``, ``"S3"``, ``"Q8"``, ``"D8"``, ...).

Graph JSON::

    {"name": "theta",
     "vertices": [{"id": "v", "group": "V4"}, ...],
     "edges": [{"id": "a", "o": "v", "t": "w", "group": "Z/2",
                "into_o": [0, 1], "into_t": {"a": "a"}}, ...],
     "omega": {"vertex_chars": {"v": {"a": -1}}, "stable_signs": {"b": 1}}}

An edge map is the full list of images, or a mapping from generator names of
the edge group to elements (index or word) of the vertex group.  A vertex
group may be ``"one-ended"``; edges into it then give ``null`` for that map.
"""
from __future__ import annotations

import json
from typing import Any

from .bass_serre import _element
from .catalog import by_name
from .graph import (Edge, GraphError, GraphOfGroups, OpaqueOneEnded, OrientationCharacter, Vertex,
                    character_from_generators)
from .groups import FiniteGroup, GroupError, GroupHom, NotHomomorphism

GROUP_SCHEMA = '{"name": str, "order": n, "table": [[int]], "generators": {"a": index}} or a catalog name'
GRAPH_SCHEMA = ('{"vertices": [{"id", "group"}], "edges": [{"id", "o", "t", "group", "into_o", "into_t"}], '
                '"omega": {"vertex_chars": {...}, "stable_signs": {...}}}')


class InputError(ValueError):
    pass


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _read(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc.strerror)) from exc
    except json.JSONDecodeError as exc:
        raise InputError("%s is not valid JSON: %s" % (path, exc)) from exc


# -- groups --------------------------------------------------------------------------

def group_to_json(G: FiniteGroup) -> dict:
    return {"name": G.name, "order": G.order, "table": [list(r) for r in G.table],
            "generators": dict(sorted(G.generators.items()))}


def group_from_json(obj: Any) -> FiniteGroup:
    if isinstance(obj, str):
        try:
            return by_name(obj)
        except KeyError as exc:
            raise InputError("unknown group name %r (expected %s)" % (obj, GROUP_SCHEMA)) from exc
    if not isinstance(obj, dict) or "table" not in obj:
        raise InputError("bad group: expected %s" % GROUP_SCHEMA)
    table = obj["table"]
    if "order" in obj and obj["order"] != len(table):
        raise InputError("group %s: order %s does not match the table" % (obj.get("name"), obj["order"]))
    try:
        return FiniteGroup(table, obj.get("generators") or {}, obj.get("name"))
    except (GroupError, TypeError, ValueError) as exc:
        raise InputError("group %s: %s" % (obj.get("name", "?"), exc)) from exc


def load_group(path: str) -> FiniteGroup:
    return group_from_json(_read(path))


# -- graphs --------------------------------------------------------------------------

def _edge_map(eid: str, end: str, Ge: FiniteGroup, Gv, spec: Any) -> GroupHom | None:
    if isinstance(Gv, OpaqueOneEnded):
        if spec is not None:
            raise InputError("edge %s: the %s map into a one-ended vertex must be null" % (eid, end))
        return None
    try:
        if isinstance(spec, list):
            return GroupHom(Ge, Gv, tuple(int(x) for x in spec))
        if isinstance(spec, dict):
            gens = Ge.generator_list
            names = Ge.generator_names()
            imgs = []
            for g, nm in zip(gens, names):
                if nm not in spec:
                    raise InputError("edge %s: %s map misses generator %s" % (eid, end, nm))
                imgs.append(_element(Gv, str(spec[nm])))
            f = Ge.hom_from_generators(Gv, imgs)
            if f is None:
                raise InputError("edge %s: %s generator images do not define a homomorphism" % (eid, end))
            return f
    except NotHomomorphism as exc:
        raise InputError("edge %s: %s map is not a homomorphism: %s" % (eid, end, exc)) from exc
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError("edge %s: %s map: %s" % (eid, end, exc)) from exc
    raise InputError("edge %s: %s must be a list of images or a generator mapping" % (eid, end))


def graph_from_json(obj: Any) -> tuple[GraphOfGroups, OrientationCharacter]:
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise InputError("bad graph: expected %s" % GRAPH_SCHEMA)
    try:
        return _graph_from_json(obj)
    except (KeyError, TypeError) as exc:
        raise InputError("bad graph (%s): expected %s" % (exc, GRAPH_SCHEMA)) from exc


def _graph_from_json(obj: dict) -> tuple[GraphOfGroups, OrientationCharacter]:
    vertices = []
    for item in obj["vertices"]:
        vid = str(item["id"])
        grp = item.get("group")
        G = OpaqueOneEnded(vid) if grp == "one-ended" else group_from_json(grp)
        vertices.append(Vertex(vid, G))
    index = {v.id: i for i, v in enumerate(vertices)}
    if len(index) != len(vertices):
        raise InputError("repeated vertex id")
    edges = []
    for item in obj.get("edges", []):
        eid = str(item["id"])
        try:
            o, t = index[str(item["o"])], index[str(item["t"])]
        except KeyError as exc:
            raise InputError("edge %s names an unknown vertex %s" % (eid, exc)) from exc
        Ge = group_from_json(item["group"])
        fo = _edge_map(eid, "into_o", Ge, vertices[o].group, item.get("into_o"))
        ft = _edge_map(eid, "into_t", Ge, vertices[t].group, item.get("into_t"))
        edges.append(Edge(eid, o, t, Ge, fo, ft))
    try:
        g = GraphOfGroups(vertices, edges, obj.get("name"))
    except GraphError as exc:
        raise InputError(str(exc)) from exc
    omega = omega_from_json(g, obj.get("omega") or {})
    return g, omega


def omega_from_json(g: GraphOfGroups, obj: dict) -> OrientationCharacter:
    chars = {}
    for vid, spec in (obj.get("vertex_chars") or {}).items():
        if vid not in g.vertex_index:
            raise InputError("omega names unknown vertex %s" % vid)
        G = g.group(g.vertex_index[vid])
        try:
            chars[vid] = tuple(spec) if isinstance(spec, list) else character_from_generators(G, spec)
        except (GraphError, KeyError, ValueError) as exc:
            raise InputError("omega on %s: %s" % (vid, exc)) from exc
    edge_chars = {eid: tuple(v) for eid, v in (obj.get("edge_chars") or {}).items()}
    omega = OrientationCharacter(chars, dict(obj.get("stable_signs") or {}), edge_chars)
    try:
        omega.check(g)
    except GraphError as exc:
        raise InputError("omega: %s" % exc) from exc
    return omega


def graph_to_json(g: GraphOfGroups, omega: OrientationCharacter | None = None) -> dict:
    def grp(G):
        return "one-ended" if isinstance(G, OpaqueOneEnded) else group_to_json(G)

    out = {
        "name": g.name,
        "vertices": [{"id": v.id, "group": grp(v.group)} for v in g.vertices],
        "edges": [{"id": e.id, "o": g.vertices[e.o].id, "t": g.vertices[e.t].id, "group": group_to_json(e.group),
                   "into_o": list(e.into_o.images) if e.into_o else None,
                   "into_t": list(e.into_t.images) if e.into_t else None} for e in g.edges],
    }
    if omega is not None and not omega.is_trivial():
        out["omega"] = omega.to_json(g)
    return out


def load_graph(path: str) -> tuple[GraphOfGroups, OrientationCharacter]:
    return graph_from_json(_read(path))
