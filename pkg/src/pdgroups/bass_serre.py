"""Normal forms in the fundamental group of a graph of finite groups and its Bass-Serre tree.

Elements are handled as paths in the fundamental groupoid: alternating
sequences ``(g0, y1, g1, ..., yn, gn)`` where each ``y = (edge, +1 | -1)`` is
an oriented edge of the graph and ``g_i`` lies in the vertex group at the end
of ``y_i``.  For an oriented edge ``y`` from ``a`` to ``b`` with source map
``alpha_y`` and target map ``omega_y`` we have ``alpha_y(c) y = y omega_y(c)``.
Loops at vertex 0 are the elements of pi.  A stable letter is the loop
``gamma_t(e) ybar_e gamma_o(e)^-1`` built from tree paths ``gamma``.

In normal form every ``g_i`` with ``i < n`` is the least element of its left
coset of ``alpha_{y_{i+1}}(G_e)``.  Vertices of the tree are normal-form paths
with the trailing element dropped, so the tree path from the base vertex to
a vertex is its sequence of prefixes.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .graph import GraphOfGroups

Path = tuple  # (g0, y1, g1, ..., yn, gn)
VertexKey = tuple  # (s0, y1, s1, ..., yn)
INFINITE = "infinite"


class NotFiniteOrder(ValueError):
    pass


class BadWord(ValueError):
    pass


def _rev(y):
    return (y[0], -y[1])


@dataclass(frozen=True)
class TreeBall:
    center: VertexKey
    radius: int
    vertices: dict  # VertexKey -> (vertex type, distance from center)
    edges: tuple  # (VertexKey, VertexKey, edge index): origin end first

    def sphere_sizes(self) -> list[int]:
        sizes = [0] * (self.radius + 1)
        for _, d in self.vertices.values():
            sizes[d] += 1
        return sizes


@dataclass(frozen=True)
class FixedSubtreeReport:
    classification: str  # Finite, Line, ManyEnded or Unresolved
    ends: int | None  # 0, 2, or None when infinite or unknown
    inf: int
    xi: int | None  # None means infinite (ManyEnded) or unknown (Unresolved)
    fixed_vertices: int
    radius: int
    base_vertex: VertexKey
    local_element: int
    period: int | None = None
    translation: Path | None = None
    second_translation: Path | None = None
    note: str = ""

    def to_json(self, tree: "BassSerreTree | None" = None) -> dict:
        fmt = tree.format_path if tree else repr
        return {
            "classification": self.classification,
            "ends": "infinity" if self.classification == "ManyEnded" else self.ends,
            "inf": self.inf,
            "xi": "infinity" if self.classification == "ManyEnded" else self.xi,
            "fixed_vertices": self.fixed_vertices,
            "radius": self.radius,
            "base_vertex": fmt(self.base_vertex + (0,)) if tree else repr(self.base_vertex),
            "local_element": self.local_element,
            "period": self.period,
            "translation": fmt(self.translation) if self.translation else None,
            "note": self.note,
        }


class BassSerreTree:
    """Normal forms and the tree for a graph of finite groups (base vertex 0)."""

    def __init__(self, g: GraphOfGroups):
        g.require_finite("normal forms")
        self.g = g
        self.groups = [v.group for v in g.vertices]
        # per oriented edge: source vertex, target vertex, source map, target map
        self.src, self.tgt, self.alpha, self.omega = {}, {}, {}, {}
        for i, e in enumerate(g.edges):
            self.src[(i, 1)], self.tgt[(i, 1)] = e.o, e.t
            self.src[(i, -1)], self.tgt[(i, -1)] = e.t, e.o
            self.alpha[(i, 1)], self.omega[(i, 1)] = e.into_o, e.into_t
            self.alpha[(i, -1)], self.omega[(i, -1)] = e.into_t, e.into_o
        self.oriented = sorted(self.src)
        self.leaving = {v: [y for y in self.oriented if self.src[y] == v] for v in range(len(g.vertices))}
        # left transversals: h = rep * alpha(c)
        self.split = {}
        self.reps = {}
        for y in self.oriented:
            G, a = self.groups[self.src[y]], self.alpha[y]
            A = sorted(a.image())
            table = {}
            for h in G.elements():
                coset = [G.mul(h, x) for x in A]
                r = min(coset)
                table[h] = (r, a.preimage(G.mul(G.inv(r), h)))
            self.split[y] = table
            self.reps[y] = sorted({r for r, _ in table.values()})

    # -- paths ------------------------------------------------------------------

    def reduce(self, path: Iterable, start: int = 0) -> tuple[Path, int]:
        """Normal form of a groupoid path starting at ``start``; returns (path, end vertex)."""
        stack: list = []
        cur = start
        h = 0
        for item in path:
            if isinstance(item, tuple):
                y = item
                if self.src.get(y) != cur:
                    raise BadWord("edge %r does not leave vertex %d" % (y, cur))
                if stack and stack[-1][1] == _rev(y):
                    last = stack[-1][1]
                    om = self.omega[last]
                    if h in om._preimages:
                        s, _ = stack.pop()
                        cur = self.src[last]
                        h = self.groups[cur].mul(s, self.alpha[last](om.preimage(h)))
                        continue
                r, c = self.split[y][h]
                stack.append((r, y))
                cur = self.tgt[y]
                h = self.omega[y](c)
            else:
                h = self.groups[cur].mul(h, item)
        out = []
        for s, y in stack:
            out.extend((s, y))
        out.append(h)
        return tuple(out), cur

    def nf(self, path: Iterable, start: int = 0) -> Path:
        return self.reduce(path, start)[0]

    def path_inverse(self, path: Sequence, start: int = 0) -> Path:
        # walk to find the vertex of each element, then reverse
        verts = [start]
        for item in path:
            if isinstance(item, tuple):
                verts.append(self.tgt[item])
        out = []
        k = len(verts) - 1
        for item in reversed(path):
            if isinstance(item, tuple):
                out.append(_rev(item))
                k -= 1
            else:
                out.append(self.groups[verts[k]].inv(item))
        return tuple(out)

    def mul(self, *elements: Path) -> Path:
        word = []
        for w in elements:
            word.extend(w)
        return self.nf(word)

    def inv(self, w: Path) -> Path:
        return self.nf(self.path_inverse(w))

    def is_identity(self, w: Path) -> bool:
        return self.nf(w) == (0,)

    @cached_property
    def _gamma(self) -> list[Path]:
        out = []
        for p in self.g.tree_paths:
            w = [0]
            for i, s in p:
                w.extend(((i, s), 0))
            out.append(tuple(w))
        return out

    def vertex_element(self, v: int, x: int) -> Path:
        """x in G_v as an element of pi."""
        gam = self._gamma[v]
        return self.nf(gam + (x,) + self.path_inverse(gam))

    def stable_letter(self, i: int) -> Path:
        e = self.g.edges[i]
        if i in self.g.tree:
            return (0,)
        return self.nf(self._gamma[e.t] + ((i, -1),) + self.path_inverse(self._gamma[e.o]))

    def parse(self, tokens: Sequence[str]) -> Path:
        """Tokens ``"v:x"`` (element index x, or a generator name, of vertex v), ``"t_e"`` or ``"t_e^-1"``."""
        word = []
        for tok in tokens:
            tok = tok.strip()
            if tok.startswith("t_"):
                name, _, exp = tok[2:].partition("^")
                if name not in self.g.edge_index:
                    raise BadWord("unknown edge %r" % name)
                k = int(exp or 1)
                t = self.stable_letter(self.g.edge_index[name])
                piece = t if k > 0 else self.inv(t)
                for _ in range(abs(k)):
                    word.extend(piece)
                continue
            vid, sep, elt = tok.partition(":")
            if not sep or vid not in self.g.vertex_index:
                raise BadWord("bad token %r; expected vertex:element or t_edge" % tok)
            v = self.g.vertex_index[vid]
            G = self.groups[v]
            x = _element(G, elt)
            word.extend(self.vertex_element(v, x))
        return self.nf(word)

    def format_path(self, w: Path) -> str:
        parts = []
        for item in w:
            if isinstance(item, tuple):
                parts.append("%s%s" % (self.g.edges[item[0]].id, "" if item[1] == 1 else "'"))
            else:
                parts.append(str(item))
        return " ".join(parts)

    def random_element(self, rng: random.Random, syllables: int) -> Path:
        word = []
        for _ in range(syllables):
            if self.g.stable_edges() and rng.random() < 0.4:
                i = rng.choice(self.g.stable_edges())
                t = self.stable_letter(i)
                word.extend(t if rng.random() < 0.5 else self.inv(t))
            else:
                v = rng.randrange(len(self.groups))
                word.extend(self.vertex_element(v, rng.randrange(self.groups[v].order)))
        return self.nf(word)

    def generators(self) -> list[Path]:
        out = []
        for v, G in enumerate(self.groups):
            out.extend(self.vertex_element(v, x) for x in G.generator_list)
        out.extend(self.stable_letter(i) for i in self.g.stable_edges())
        return out

    # -- the tree -----------------------------------------------------------------

    def vertex_type(self, key: VertexKey) -> int:
        return self.tgt[key[-1]] if key else 0

    def vertex_of(self, path: Path) -> VertexKey:
        """Tree vertex p.G_v for a path p from the base vertex."""
        return self.nf(path)[:-1]

    def act(self, w: Path, key: VertexKey) -> VertexKey:
        return self.nf(w + key + (0,))[:-1]

    @staticmethod
    def distance(a: VertexKey, b: VertexKey) -> int:
        k = 0
        n = min(len(a), len(b))
        while k < n and a[k] == b[k]:
            k += 1
        k -= k % 2
        return (len(a) + len(b)) // 2 - k

    def geodesic(self, a: VertexKey, b: VertexKey) -> list[VertexKey]:
        k = 0
        n = min(len(a), len(b))
        while k < n and a[k] == b[k]:
            k += 1
        k -= k % 2
        down = [a[:m] for m in range(len(a), k - 1, -2)]
        up = [b[:m] for m in range(k + 2, len(b) + 1, 2)]
        return down + up

    def neighbours(self, key: VertexKey) -> list[tuple[VertexKey, int, bool]]:
        """(neighbour, edge index, True if key is the origin end of the joining edge)."""
        v = self.vertex_type(key)
        out = []
        for y in self.leaving[v]:
            for s in self.reps[y]:
                if key and y == _rev(key[-1]) and s == 0:
                    out.append((key[:-2], y[0], y[1] == 1))
                else:
                    out.append((key + (s, y), y[0], y[1] == 1))
        return out

    def tree_ball(self, center: VertexKey = (), radius: int = 2) -> TreeBall:
        seen = {center: (self.vertex_type(center), 0)}
        edges = []
        q = deque([center])
        while q:
            x = q.popleft()
            d = seen[x][1]
            if d == radius:
                continue
            for y, i, origin in self.neighbours(x):
                if y not in seen:
                    seen[y] = (self.vertex_type(y), d + 1)
                    edges.append((x, y, i) if origin else (y, x, i))
                    q.append(y)
        return TreeBall(center, radius, seen, tuple(edges))

    # -- elements -----------------------------------------------------------------

    def translation_length(self, w: Path) -> int:
        root = ()
        d1 = self.distance(root, self.act(w, root))
        d2 = self.distance(root, self.act(self.mul(w, w), root))
        return max(d2 - d1, 0)

    def is_hyperbolic(self, w: Path) -> bool:
        return self.translation_length(w) > 0

    def local_element(self, w: Path, key: VertexKey) -> int | None:
        """If w fixes the vertex, the element P^-1 w P of its vertex group, else None."""
        full = key + (0,)
        p, _ = self.reduce(self.path_inverse(full) + w + full, self.vertex_type(key))
        return p[0] if len(p) == 1 else None

    def fixed_vertex(self, w: Path) -> tuple[VertexKey, int] | None:
        """A vertex fixed by w (the projection of the base vertex), with its local element."""
        if self.is_hyperbolic(w):
            return None
        q = self.act(w, ())
        n = len(q) // 2
        if n % 2:
            return None
        key = q[:n]
        k = self.local_element(w, key)
        return (key, k) if k is not None else None

    def element_order(self, w: Path) -> int | str:
        fv = self.fixed_vertex(w)
        if fv is None:
            return INFINITE
        key, k = fv
        return self.groups[self.vertex_type(key)].element_order(k)

    def power(self, w: Path, k: int) -> Path:
        if k < 0:
            w, k = self.inv(w), -k
        out = (0,)
        for _ in range(k):
            out = self.mul(out, w)
        return out

    # -- fixed subtrees -------------------------------------------------------------

    def fixed_ball(self, w: Path, center: VertexKey, radius: int, avoid=frozenset()) -> dict:
        """Vertices within ``radius`` of ``center`` fixed by w (assumes w fixes center)."""
        return self.fixed_ball_limited(w, center, radius, avoid)[0]

    def fixed_ball_limited(self, w: Path, center: VertexKey, radius: int, avoid=frozenset(),
                           limit: int | None = None) -> tuple[dict, int]:
        """Like :meth:`fixed_ball`, but stop after ``limit`` vertices.

        Returns the fixed vertices and the radius up to which the list is complete.
        """
        seen = {center: 0}
        q = deque([center])
        while q:
            x = q.popleft()
            d = seen[x]
            if d == radius:
                continue
            if limit is not None and len(seen) > limit:
                return {y: e for y, e in seen.items() if e <= d}, d
            for y, _, _ in self.neighbours(x):
                if y in seen or y in avoid:
                    continue
                if self.local_element(w, y) is not None:
                    seen[y] = d + 1
                    q.append(y)
        return seen, radius

    def _normalizing_translations(self, w: Path, x0: VertexKey, k0: int, ball: dict) -> list[Path]:
        v = self.vertex_type(x0)
        G = self.groups[v]
        full0_inv = self.path_inverse(x0 + (0,))
        found = []
        for x, d in sorted(ball.items(), key=lambda kv: (kv[1], kv[0])):
            if d == 0 or self.vertex_type(x) != v:
                continue
            k1 = self.local_element(w, x)
            cyc1 = G.cyclic_subgroup(k1)
            for c in G.elements():
                if G.conj(c, k0) in cyc1:
                    z = self.nf(x + (c,) + full0_inv)
                    if self.is_hyperbolic(z):
                        found.append(z)
                        break
        return found

    def _on_axis(self, z: Path, L: int, key: VertexKey) -> bool:
        return self.distance(key, self.act(z, key)) == L

    def _axis_domain(self, z: Path, L: int, x0: VertexKey) -> list[VertexKey]:
        zx = self.act(z, x0)
        delta = (self.distance(x0, zx) - L) // 2
        geo = self.geodesic(x0, zx)
        p = geo[delta]
        return self.geodesic(p, self.act(z, p))[:-1]

    def _distinct_axes(self, z1: Path, L1: int, z2: Path, L2: int, x0: VertexKey, span: int) -> bool:
        p = self._axis_domain(z1, L1, x0)[0]
        for m in range(-span, span + 1):
            q = self.act(self.power(z1, m), p)
            if not self._on_axis(z2, L2, q):
                return True
        return False

    def fixed_subtree(self, w: Path, max_radius: int = 8) -> FixedSubtreeReport:
        fv = self.fixed_vertex(w)
        if fv is None:
            raise NotFiniteOrder("element has infinite order")
        x0, k0 = fv
        if w == (0,) or self.nf(w) == (0,):
            note = "the identity fixes the whole tree"
        else:
            note = ""
        # a cheap pass at a small radius settles most finite and many-ended cases
        for r in sorted({min(4, max_radius), max_radius}):
            ball = self.fixed_ball(w, x0, r)
            far = max(ball.values())
            if far < r:
                return FixedSubtreeReport("Finite", 0, 0, -1, len(ball), far + 1, x0, k0, note=note or
                                          "stable: radii %d and %d agree" % (far, far + 1))
            zs = self._normalizing_translations(w, x0, k0, ball)
            if not zs:
                continue
            lengths = [self.translation_length(z) for z in zs]
            z, L = min(zip(zs, lengths), key=lambda p: (p[1], len(p[0]), p[0]))
            for z2, L2 in zip(zs, lengths):
                if self._distinct_axes(z, L, z2, L2, x0, max_radius):
                    return FixedSubtreeReport("ManyEnded", None, 0, None, len(ball), r, x0, k0,
                                              period=L, translation=z, second_translation=z2,
                                              note="two normalizing translations with distinct axes")
        if not zs:
            return FixedSubtreeReport("Unresolved", None, 0, None, len(ball), max_radius, x0, k0,
                                      note="fixed set reaches the radius bound; no normalizing translation found")
        # two ends iff every branch off the axis is finite; check one period of the axis
        domain = self._axis_domain(z, L, x0)
        for u in domain:
            for y, _, _ in self.neighbours(u):
                if self._on_axis(z, L, y) or self.local_element(w, y) is None:
                    continue
                branch = self.fixed_ball(w, y, max_radius, avoid=frozenset([u]))
                if max(branch.values()) >= max_radius:
                    return FixedSubtreeReport("Unresolved", None, 0, None, len(ball), max_radius, x0, k0,
                                              period=L, translation=z,
                                              note="a branch off the axis reaches the radius bound")
        return FixedSubtreeReport("Line", 2, 0, 1, len(ball), max_radius, x0, k0, period=L, translation=z,
                                  note="e read as the end count of the fixed subtree, inf as its count of "
                                       "infinite-stabilizer vertices")

    def normalizer_class(self, w: Path, max_radius: int = 8) -> tuple[str, FixedSubtreeReport]:
        rep = self.fixed_subtree(w, max_radius)
        kind = {"Finite": "FiniteWithWitness", "Line": "TwoEnded", "ManyEnded": "ContainsFreeGroup"}
        return kind.get(rep.classification, "Unresolved"), rep


def _element(G, text: str) -> int:
    text = text.strip()
    if text.isdigit():
        x = int(text)
        if x >= G.order:
            raise BadWord("element %d out of range" % x)
        return x
    x = 0
    for tok in text.replace("*", " ").split():
        name, _, exp = tok.partition("^")
        if name not in G.generators:
            raise BadWord("unknown generator %r" % name)
        x = G.mul(x, G.power(G.generators[name], int(exp or 1)))
    return x
