"""Exhaustive search over small graphs of finite groups.

Candidates are generated from a catalog of vertex groups and a whitelist of
edge groups.  Two graphs of groups are identified when they differ by a
relabelling of vertices and edges, reversal of edges, automorphisms of vertex
and edge groups, and conjugation of individual edge maps inside a vertex group.
These moves do not change the fundamental group.  Only graphs with at least one
edge are produced, so every candidate group is infinite.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .checks import CheckReport, run_checks
from .graph import Edge, GraphOfGroups, OrientationCharacter, Vertex, is_reduced_indecomposable
from .groups import FiniteGroup, GroupHom


@dataclass(frozen=True)
class Catalog:
    vertex_groups: tuple[FiniteGroup, ...]
    edge_groups: tuple[FiniteGroup, ...]
    max_vertices: int
    max_edges: int
    n: int = 4
    loops: bool = True  # allow edges whose ends coincide

    def __post_init__(self):
        if self.max_vertices < 1 or self.max_edges < 1:
            raise ValueError("bounds must be at least 1")
        if not self.vertex_groups or not self.edge_groups:
            raise ValueError("the catalog needs vertex groups and edge groups")


@dataclass(frozen=True)
class Survivor:
    index: int
    graph: GraphOfGroups
    report: CheckReport
    key: tuple = field(compare=False, repr=False)


def injective_homs(Ge: FiniteGroup, G: FiniteGroup) -> list[GroupHom]:
    """All injective homomorphisms Ge -> G, found by trying generator images."""
    if G.order % Ge.order:
        return []
    gens = Ge.generator_list
    choices = [[y for y in G.elements() if G.orders[y] == Ge.orders[x]] for x in gens]
    out = {}
    for imgs in itertools.product(*choices):
        f = Ge.hom_from_generators(G, list(imgs))
        if f is not None and f.injective:
            out[f.images] = f
    return [out[k] for k in sorted(out)]


class _Canon:
    """Canonical forms of edges and of whole graphs under the moves above."""

    def __init__(self, groups: Sequence[FiniteGroup], edge_groups: Sequence[FiniteGroup]):
        self.groups = list(groups)
        self.edge_groups = list(edge_groups)
        self.auts = [G.automorphisms for G in self.groups]
        self.inner = [sorted({tuple(G.conj(g, x) for x in G.elements()) for g in G.elements()})
                      for G in self.groups]
        self.eauts = [G.automorphisms for G in self.edge_groups]
        self._edge = {}

    def edge(self, go: int, gt: int, ge: int, fo: tuple, ft: tuple) -> tuple:
        """Least (x, y) over Aut(G_e) and inner twists at both ends."""
        key = (go, gt, ge, fo, ft)
        out = self._edge.get(key)
        if out is None:
            out = min((tuple(ci[fo[a[c]]] for c in range(len(a))), tuple(cj[ft[a[c]]] for c in range(len(a))))
                      for a in self.eauts[ge] for ci in self.inner[go] for cj in self.inner[gt])
            self._edge[key] = out
        return out

    def oriented(self, vgroups, o: int, t: int, ge: int, fo: tuple, ft: tuple) -> tuple:
        """Least form of an edge between vertices o and t, either way round."""
        a = (o, t, ge) + self.edge(vgroups[o], vgroups[t], ge, fo, ft)
        b = (t, o, ge) + self.edge(vgroups[t], vgroups[o], ge, ft, fo)
        return min(a, b)

    def graph(self, vgroups: tuple[int, ...], edges: Sequence[tuple]) -> tuple:
        """edges are (o, t, edge group, images into o, images into t)."""
        nv = len(vgroups)
        best = None
        for perm in itertools.permutations(range(nv)):
            if any(vgroups[perm[i]] != vgroups[i] for i in range(nv)):
                continue
            for phis in itertools.product(*(self.auts[vgroups[v]] for v in range(nv))):
                form = tuple(sorted(
                    self.oriented(vgroups, perm[o], perm[t], ge, tuple(phis[perm[o]][y] for y in fo),
                                  tuple(phis[perm[t]][z] for z in ft))
                    for o, t, ge, fo, ft in edges))
                if best is None or form < best:
                    best = form
        return (vgroups, best)


def _connected(nv: int, edges: Sequence[tuple]) -> bool:
    parent = list(range(nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for o, t, *_ in edges:
        parent[find(o)] = find(t)
    return len({find(v) for v in range(nv)}) == 1


def candidates(cat: Catalog) -> Iterator[tuple[int, tuple, GraphOfGroups]]:
    """(index, canonical key, graph) for every candidate in a fixed order, duplicates included."""
    groups = list(cat.vertex_groups)
    egroups = list(cat.edge_groups)
    canon = _Canon(groups, egroups)
    homs = {(ge, gv): injective_homs(Ge, G) for ge, Ge in enumerate(egroups) for gv, G in enumerate(groups)}
    index = 0
    for nv in range(1, cat.max_vertices + 1):
        for vgroups in itertools.combinations_with_replacement(range(len(groups)), nv):
            # one representative per edge class for each pair of vertices
            types = []
            for o in range(nv):
                for t in range(o if cat.loops else o + 1, nv):
                    for ge, Ge in enumerate(egroups):
                        if Ge.order == 1:
                            continue
                        seen = set()
                        for fo in homs[(ge, vgroups[o])]:
                            for ft in homs[(ge, vgroups[t])]:
                                c = canon.oriented(vgroups, o, t, ge, fo.images, ft.images)
                                if c not in seen:
                                    seen.add(c)
                                    types.append(c)
            for ne in range(1, cat.max_edges + 1):
                for edges in itertools.combinations_with_replacement(types, ne):
                    if not _connected(nv, edges):
                        continue
                    index += 1
                    key = canon.graph(vgroups, edges)
                    yield index, key, _build(groups, egroups, vgroups, edges)


def _build(groups, egroups, vgroups, edges) -> GraphOfGroups:
    vertices = [Vertex("v%d" % (i + 1), groups[g]) for i, g in enumerate(vgroups)]
    es = []
    for i, (o, t, ge, fo, ft) in enumerate(edges):
        Ge = egroups[ge]
        es.append(Edge("e%d" % (i + 1), o, t, Ge, GroupHom(Ge, vertices[o].group, fo),
                       GroupHom(Ge, vertices[t].group, ft)))
    return GraphOfGroups(vertices, es)


def read_progress(path: str | None) -> int:
    if not path or not os.path.exists(path):
        return 0
    with open(path, encoding="utf-8") as fh:
        text = fh.read().strip()
    return int(text) if text else 0


def write_progress(path: str | None, index: int) -> None:
    if not path:
        return
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write("%d\n" % index)
    os.replace(tmp, path)


def enumerate_graphs(cat: Catalog, filters: Sequence[str] | None = None, max_radius: int = 8,
                     progress: str | None = None, resume: bool = False) -> Iterator[Survivor]:
    """Yield one representative per isomorphism class passing validation and the selected checks.

    The full report is computed for survivors.  With ``resume`` the candidates
    up to the index stored in ``progress`` are only deduplicated, not re-checked.
    """
    start = read_progress(progress) if resume else 0
    seen = set()
    omega = OrientationCharacter.trivial()
    for index, key, g in candidates(cat):
        if key in seen:
            continue
        seen.add(key)
        if index <= start:
            continue
        if not is_reduced_indecomposable(g):
            continue
        quick = run_checks(g, omega, cat.n, max_radius, only=filters, fail_fast=True)
        if quick.overall == "Obstructed":
            continue
        report = run_checks(g, omega, cat.n, max_radius, only=filters)
        write_progress(progress, index)
        yield Survivor(index, g, report, key)
