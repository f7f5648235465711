"""Finite graphs of groups with monomorphic edge maps.

Vertices carry a :class:`FiniteGroup` or an :class:`OpaqueOneEnded` label.
Each edge ``e`` carries a finite group ``G_e`` and two injective maps,
``into_o: G_e -> G_{o(e)}`` and ``into_t: G_e -> G_{t(e)}``.  The stable letter
``t_e`` conjugates ``into_o(c)`` to ``into_t(c)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Mapping, Sequence

from .groups import FiniteGroup, GroupHom


class GraphError(ValueError):
    pass


class Disconnected(GraphError):
    pass


class NonInjectiveEdgeMap(GraphError):
    def __init__(self, edge, end, witness=None):
        self.edge, self.end, self.witness = edge, end, witness
        msg = "edge %s: map into %s vertex is not injective" % (edge, end)
        if witness is not None:
            msg += " (elements %d and %d collide)" % witness
        super().__init__(msg)


class UnsupportedOpaqueVertex(GraphError):
    pass


class PositiveEulerNontrivial(GraphError):
    pass


class IncompatibleOrientation(GraphError):
    def __init__(self, edge, element):
        self.edge, self.element = edge, element
        super().__init__("omega disagrees across edge %s at element %d" % (edge, element))


@dataclass(frozen=True)
class OpaqueOneEnded:
    """A one-ended vertex group we only know by name."""
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Vertex:
    id: str
    group: FiniteGroup | OpaqueOneEnded

    @property
    def finite(self) -> bool:
        return isinstance(self.group, FiniteGroup)


@dataclass(frozen=True)
class Edge:
    id: str
    o: int
    t: int
    group: FiniteGroup
    into_o: GroupHom | None
    into_t: GroupHom | None

    def into(self, end: int) -> GroupHom | None:
        """end = +1 for the origin map, -1 for the target map."""
        return self.into_o if end == 1 else self.into_t


def _id_key(s: str):
    return (0, int(s), "") if s.isdigit() else (1, 0, s)


class GraphOfGroups:
    def __init__(self, vertices: Sequence[Vertex], edges: Sequence[Edge], name: str | None = None):
        self.vertices = tuple(vertices)
        self.edges = tuple(edges)
        self.name = name
        self.vertex_index = {v.id: i for i, v in enumerate(self.vertices)}
        self.edge_index = {e.id: i for i, e in enumerate(self.edges)}
        if len(self.vertex_index) != len(self.vertices) or len(self.edge_index) != len(self.edges):
            raise GraphError("vertex and edge ids must be unique")
        if not self.vertices:
            raise GraphError("a graph of groups needs at least one vertex")
        self._check_edges()
        self.tree = self._maximal_tree()
        self.tree_paths = self._tree_paths()

    def __repr__(self):
        return "GraphOfGroups(%s: %d vertices, %d edges)" % (self.name or "?", len(self.vertices), len(self.edges))

    def _check_edges(self):
        for e in self.edges:
            for end, v, f in ((1, e.o, e.into_o), (-1, e.t, e.into_t)):
                if not 0 <= v < len(self.vertices):
                    raise GraphError("edge %s has an unknown endpoint" % e.id)
                label = "origin" if end == 1 else "target"
                G = self.vertices[v].group
                if isinstance(G, OpaqueOneEnded):
                    if f is not None:
                        raise GraphError("edge %s: maps into one-ended vertices are not given" % e.id)
                    continue
                if f is None or f.source != e.group or f.target != G:
                    raise GraphError("edge %s: %s map has the wrong source or target" % (e.id, label))
                if not f.injective:
                    seen = {}
                    for x in e.group.elements():
                        y = f(x)
                        if y in seen:
                            raise NonInjectiveEdgeMap(e.id, label, (seen[y], x))
                        seen[y] = x
        # connectivity
        adj = {i: set() for i in range(len(self.vertices))}
        for e in self.edges:
            adj[e.o].add(e.t)
            adj[e.t].add(e.o)
        seen, stack = {0}, [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(self.vertices):
            missing = min(set(range(len(self.vertices))) - seen)
            raise Disconnected("vertex %s is not reachable from %s" % (self.vertices[missing].id, self.vertices[0].id))

    def _maximal_tree(self) -> frozenset[int]:
        parent = list(range(len(self.vertices)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        tree = set()
        for i in sorted(range(len(self.edges)), key=lambda i: _id_key(self.edges[i].id)):
            e = self.edges[i]
            a, b = find(e.o), find(e.t)
            if a != b:
                parent[a] = b
                tree.add(i)
        return frozenset(tree)

    def _tree_paths(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """For each vertex, the oriented tree edges (edge, +1 forward / -1 backward) from vertex 0."""
        paths = {0: ()}
        stack = [0]
        while stack:
            v = stack.pop()
            for i in sorted(self.tree):
                e = self.edges[i]
                for a, b, s in ((e.o, e.t, 1), (e.t, e.o, -1)):
                    if a == v and b not in paths:
                        paths[b] = paths[v] + ((i, s),)
                        stack.append(b)
        return tuple(paths[v] for v in range(len(self.vertices)))

    # -- basic data -----------------------------------------------------------

    @property
    def all_finite(self) -> bool:
        return all(v.finite for v in self.vertices)

    def require_finite(self, what: str = "this operation"):
        for v in self.vertices:
            if not v.finite:
                raise UnsupportedOpaqueVertex("%s needs finite vertex groups; %s is one-ended" % (what, v.id))

    def group(self, v: int) -> FiniteGroup:
        return self.vertices[v].group

    def valence(self, v: int) -> int:
        return sum((e.o == v) + (e.t == v) for e in self.edges)

    def incident(self, v: int) -> list[tuple[int, int]]:
        """Oriented edges leaving v: (edge index, +1) if v = o(e), (edge index, -1) if v = t(e)."""
        out = []
        for i, e in enumerate(self.edges):
            if e.o == v:
                out.append((i, 1))
            if e.t == v:
                out.append((i, -1))
        return out

    def stable_edges(self) -> list[int]:
        return [i for i in range(len(self.edges)) if i not in self.tree]


# -- orientation characters ---------------------------------------------------

@dataclass(frozen=True)
class OrientationCharacter:
    """omega on vertex groups (a sign per element) plus signs of the stable letters.

    ``vertex_chars`` maps a vertex id to a tuple of signs indexed by element;
    one-ended vertices are absent and instead ``edge_chars`` fixes omega on
    edge groups incident to them.  Missing entries mean trivial.
    """
    vertex_chars: Mapping[str, tuple[int, ...]] = field(default_factory=dict)
    stable_signs: Mapping[str, int] = field(default_factory=dict)
    edge_chars: Mapping[str, tuple[int, ...]] = field(default_factory=dict)

    @classmethod
    def trivial(cls) -> "OrientationCharacter":
        return cls()

    @classmethod
    def from_generators(cls, g: GraphOfGroups, vertex_gens: Mapping[str, Mapping[str, int]],
                        stable_signs: Mapping[str, int] | None = None) -> "OrientationCharacter":
        """Build omega from signs on named generators of each vertex group."""
        chars = {}
        for vid, signs in vertex_gens.items():
            G = g.group(g.vertex_index[vid])
            chars[vid] = character_from_generators(G, signs)
        return cls(chars, dict(stable_signs or {}))

    def vertex(self, g: GraphOfGroups, v: int, x: int) -> int:
        chars = self.vertex_chars.get(g.vertices[v].id)
        return chars[x] if chars else 1

    def edge(self, g: GraphOfGroups, i: int, c: int) -> int:
        e = g.edges[i]
        if e.id in self.edge_chars:
            return self.edge_chars[e.id][c]
        if e.into_o is not None:
            return self.vertex(g, e.o, e.into_o(c))
        if e.into_t is not None:
            return self.vertex(g, e.t, e.into_t(c))
        return 1

    def stable(self, g: GraphOfGroups, i: int) -> int:
        if i in g.tree:
            return 1
        return self.stable_signs.get(g.edges[i].id, 1)

    def is_trivial(self) -> bool:
        return all(s == 1 for ch in self.vertex_chars.values() for s in ch) and \
            all(s == 1 for s in self.stable_signs.values()) and \
            all(s == 1 for ch in self.edge_chars.values() for s in ch)

    def check(self, g: GraphOfGroups) -> None:
        """Raise unless each character is a homomorphism and both ends of every edge agree."""
        for vid, ch in self.vertex_chars.items():
            if vid not in g.vertex_index:
                raise GraphError("omega names unknown vertex %s" % vid)
            G = g.group(g.vertex_index[vid])
            if not isinstance(G, FiniteGroup) or len(ch) != G.order:
                raise GraphError("omega on %s must give one sign per element" % vid)
            _check_character(G, ch, vid)
        for eid, s in self.stable_signs.items():
            if eid not in g.edge_index or s not in (1, -1):
                raise GraphError("bad stable sign for %s" % eid)
        for eid, ch in self.edge_chars.items():
            if eid not in g.edge_index:
                raise GraphError("omega names unknown edge %s" % eid)
            _check_character(g.edges[g.edge_index[eid]].group, ch, eid)
        for i, e in enumerate(g.edges):
            for c in e.group.elements():
                vals = set()
                if e.into_o is not None:
                    vals.add(self.vertex(g, e.o, e.into_o(c)))
                if e.into_t is not None:
                    vals.add(self.vertex(g, e.t, e.into_t(c)))
                if e.id in self.edge_chars:
                    vals.add(self.edge_chars[e.id][c])
                if len(vals) > 1:
                    raise IncompatibleOrientation(e.id, c)

    def to_json(self, g: GraphOfGroups) -> dict:
        return {
            "vertex_chars": {k: list(v) for k, v in sorted(self.vertex_chars.items())},
            "stable_signs": dict(sorted(self.stable_signs.items())),
            "edge_chars": {k: list(v) for k, v in sorted(self.edge_chars.items())},
        }


def _check_character(G: FiniteGroup, ch: Sequence[int], label: str) -> None:
    if len(ch) != G.order or any(s not in (1, -1) for s in ch):
        raise GraphError("omega on %s must be a list of signs, one per element" % label)
    for a in G.elements():
        for b in G.elements():
            if ch[G.mul(a, b)] != ch[a] * ch[b]:
                raise GraphError("omega on %s is not a homomorphism" % label)


def character_from_generators(G: FiniteGroup, signs: Mapping[str, int]) -> tuple[int, ...]:
    unknown = set(signs) - set(G.generator_names())
    if unknown:
        raise GraphError("unknown generators %s" % ", ".join(sorted(unknown)))
    imgs = {g: signs.get(n, 1) for n, g in zip(G.generator_names(), G.generator_list)}
    out = [0] * G.order
    out[0] = 1
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g, s in imgs.items():
            y = G.mul(x, g)
            if not out[y]:
                out[y] = out[x] * s
                frontier.append(y)
    _check_character(G, out, G.name or "vertex")
    return tuple(out)


# -- validation and classification -------------------------------------------

@dataclass(frozen=True)
class Finding:
    name: str
    ok: bool
    witness: str | None = None

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "witness": self.witness}


def validate(g: GraphOfGroups) -> list[Finding]:
    """WellFormed, Reduced and Indecomposable findings.

    Construction already rejects disconnected graphs and non-injective maps,
    so a graph that exists is well formed.
    """
    out = [Finding("WellFormed", True)]
    bad = None
    for e in g.edges:
        if e.o == e.t:
            continue
        for f in (e.into_o, e.into_t):
            if f is not None and f.bijective:
                bad = e.id
                break
        if bad:
            break
    out.append(Finding("Reduced", bad is None, bad))
    triv = next((e.id for e in g.edges if e.group.order == 1), None)
    out.append(Finding("Indecomposable", triv is None, triv))
    return out


def is_reduced_indecomposable(g: GraphOfGroups) -> bool:
    return all(f.ok for f in validate(g))


@dataclass(frozen=True)
class EdgeClass:
    kind: str  # "LoopIsomorphism", "MCTie" or "Proper"
    index_o: int | None
    index_t: int | None

    def __str__(self):
        if self.kind == "Proper":
            return "Proper(%s,%s)" % (self.index_o, self.index_t)
        return self.kind

    def to_json(self) -> dict:
        return {"kind": self.kind, "index_o": self.index_o, "index_t": self.index_t}


def classify_edge(g: GraphOfGroups, i: int) -> EdgeClass:
    e = g.edges[i]
    idx = []
    for v in (e.o, e.t):
        G = g.group(v)
        idx.append(G.order // e.group.order if isinstance(G, FiniteGroup) else None)
    io, it = idx
    if e.o == e.t and io == 1 and it == 1:
        return EdgeClass("LoopIsomorphism", 1, 1)
    if e.o != e.t and io == 2 and it == 2:
        return EdgeClass("MCTie", 2, 2)
    return EdgeClass("Proper", io, it)


def classify_edges(g: GraphOfGroups) -> dict[str, EdgeClass]:
    return {e.id: classify_edge(g, i) for i, e in enumerate(g.edges)}


def virtual_euler(g: GraphOfGroups) -> Fraction:
    """Sum of 1/|G_v| over vertices minus sum of 1/|G_e| over edges."""
    g.require_finite("the virtual Euler characteristic")
    return sum((Fraction(1, v.group.order) for v in g.vertices), Fraction(0)) - \
        sum((Fraction(1, e.group.order) for e in g.edges), Fraction(0))


class Ends(Enum):
    ZERO = 0
    TWO = 2
    INFINITE = "infinity"

    def __str__(self):
        return str(self.value)


def ends_count(g: GraphOfGroups) -> Ends:
    chi = virtual_euler(g)
    if not g.edges:
        if len(g.vertices) == 1:
            return Ends.ZERO
    if chi > 0:
        raise PositiveEulerNontrivial("chi = %s > 0 with edges present; the graph is not reduced and indecomposable"
                                      % chi)
    return Ends.TWO if chi == 0 else Ends.INFINITE


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)
