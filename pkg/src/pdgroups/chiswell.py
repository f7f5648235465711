"""H_1 of a finite cyclic subgroup with coefficients in the Chiswell sequence.

For an element h of order q the permutation modules Z[G_v\\pi] and Z[G_e\\pi],
twisted by omega, split into <h>-orbits of tree vertices and edges.  An orbit
X of size r has stabilizer of order d = q / r, and contributes Z/d to H_1 when
its stabilizer acts by +1 (sign omega(h)^r), generated by the twisted orbit sum
sum_i omega(h)^i e_{h^i x}.  Free orbits and sign -1 orbits contribute 0.

The coboundary sends a vertex to the signed sum of its incident edges (+1
where the vertex is the origin).  Orbits that are not free live on fixed sets
of h^{q/p} for primes p | q; these are explored in balls around a vertex fixed
by h.  Balls are <h>-invariant and every edge touching a vertex of the ball is
kept, so a kernel found at some radius is a genuine kernel element, while the
cokernel is trusted only once it stops changing.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .bass_serre import BassSerreTree, Path, VertexKey
from .cohomology import cyclic_module_homology, prime_factors
from .graph import GraphOfGroups, OrientationCharacter
from .linalg import AbelianGroupInvariants, IntMatrix, cokernel_invariants


class UnresolvedSubtree(ValueError):
    pass


class TrivialElement(ValueError):
    pass


class OrientationReversing(ValueError):
    pass


STABLE_RADII = 3
VERTEX_BUDGET = 1500


@dataclass(frozen=True)
class Orbit:
    rep: tuple  # vertex key, or (origin key, target key) for edges
    size: int
    stabilizer: int
    sign: int
    contribution: AbelianGroupInvariants


@dataclass(frozen=True)
class ChiswellH1Data:
    q: int
    omega_h: int
    radius: int
    vertex_orbits: tuple[Orbit, ...]
    edge_orbits: tuple[Orbit, ...]
    delta: IntMatrix  # rows: contributing edge orbits, columns: contributing vertex orbits
    source: AbelianGroupInvariants
    target: AbelianGroupInvariants
    cokernel: AbelianGroupInvariants
    injective: bool
    targets: tuple[int, ...]  # acceptable orders q' of the right-hand term
    stable: bool
    history: tuple[str, ...] = field(default_factory=tuple)

    def to_json(self, tree: BassSerreTree | None = None) -> dict:
        def orb(o: Orbit) -> dict:
            return {"size": o.size, "stabilizer": o.stabilizer, "sign": o.sign,
                    "contribution": str(o.contribution)}
        return {
            "q": self.q, "omega": self.omega_h, "radius": self.radius,
            "vertex_orbits": [orb(o) for o in self.vertex_orbits],
            "edge_orbits": [orb(o) for o in self.edge_orbits],
            "delta": self.delta.tolist(),
            "source": self.source.to_json(), "target": self.target.to_json(),
            "cokernel": self.cokernel.to_json(), "injective": self.injective,
            "expected": ["Z/%d" % t for t in self.targets], "stable": self.stable,
            "cokernel_by_radius": list(self.history),
        }


@dataclass(frozen=True)
class HChisVerdict:
    status: str  # Consistent, Obstructed or Inconclusive
    reason: str
    data: ChiswellH1Data | None
    matched: int | None = None

    def to_json(self, tree: BassSerreTree | None = None) -> dict:
        return {"status": self.status, "reason": self.reason, "matched": self.matched,
                "data": self.data.to_json(tree) if self.data else None}


def element_sign(tree: BassSerreTree, omega: OrientationCharacter, w: Path) -> int:
    """omega(w), read off the normal form: vertex elements and edge crossings."""
    g = tree.g
    sign = 1
    cur = 0
    for item in w:
        if isinstance(item, tuple):
            i, s = item
            sign *= omega.stable(g, i)
            cur = tree.tgt[item]
        else:
            sign *= omega.vertex(g, cur, item)
    return sign


class _Action:
    """The cyclic group <h> acting on a neighbourhood of a fixed vertex."""

    def __init__(self, tree: BassSerreTree, h: Path, q: int, eps: int):
        self.tree, self.h, self.q, self.eps = tree, h, q, eps
        self._img = {}

    def image(self, key: VertexKey) -> VertexKey:
        out = self._img.get(key)
        if out is None:
            out = self._img[key] = self.tree.act(self.h, key)
        return out

    def orbit(self, key: VertexKey) -> list[VertexKey]:
        out = [key]
        x = self.image(key)
        while x != key:
            out.append(x)
            x = self.image(x)
        return out


def _contribution(q: int, size: int, sign: int) -> AbelianGroupInvariants:
    return cyclic_module_homology(q, [(q // size, sign)], 1)


def chiswell_h1(g: GraphOfGroups, omega: OrientationCharacter, w: Path, max_radius: int = 8,
                caveat: bool = False, tree: BassSerreTree | None = None) -> ChiswellH1Data:
    tree = tree or BassSerreTree(g)
    order = tree.element_order(w)
    if not isinstance(order, int):
        from .bass_serre import NotFiniteOrder
        raise NotFiniteOrder("Chiswell data needs an element of finite order")
    q = order
    if q == 1:
        raise TrivialElement("the element is trivial")
    eps = element_sign(tree, omega, w)
    if eps == -1 and not caveat:
        raise OrientationReversing("omega(h) = -1; enable the orientation-reversing mode")
    x0, _ = tree.fixed_vertex(w)
    act = _Action(tree, w, q, eps)
    # vertices fixed by some nontrivial power, by distance from x0
    dist = {x0: 0}
    reach = max_radius
    for p in prime_factors(q):
        hp = tree.power(w, q // p)
        ball, complete = tree.fixed_ball_limited(hp, x0, max_radius, limit=VERTEX_BUDGET)
        reach = min(reach, complete)
        for x, d in ball.items():
            dist[x] = min(d, dist.get(x, d))

    history = []
    results = []
    for r in range(0, reach + 1):
        data = _assemble(tree, act, dist, r, caveat)
        results.append(data)
        history.append(str(data.cokernel) + ("" if data.injective else " (not injective)"))
        if not data.injective:
            break
        # a cokernel that keeps growing will not settle inside the budget
        if len(results) >= STABLE_RADII and all(
                results[-k].cokernel.order > results[-k - 1].cokernel.order for k in range(1, STABLE_RADII)):
            break
    # settle at the first radius after which the cokernel is unchanged for STABLE_RADII radii
    chosen, stable = results[-1], False
    for i in range(len(results) - STABLE_RADII + 1):
        window = results[i:i + STABLE_RADII]
        if all(d.cokernel == window[0].cokernel and d.injective == window[0].injective for d in window):
            chosen, stable = window[-1], True
            break
    bad = next((d for d in results if not d.injective), None)
    if bad is not None:
        chosen = bad
    return ChiswellH1Data(chosen.q, chosen.omega_h, chosen.radius, chosen.vertex_orbits, chosen.edge_orbits,
                          chosen.delta, chosen.source, chosen.target, chosen.cokernel, chosen.injective,
                          chosen.targets, stable or not chosen.injective, tuple(history))


def _assemble(tree: BassSerreTree, act: _Action, dist: dict, r: int, caveat: bool) -> ChiswellH1Data:
    q, eps = act.q, act.eps
    inside = sorted(x for x, d in dist.items() if d <= r)
    vorbits, seen = [], set()
    for x in inside:
        if x in seen:
            continue
        orb = act.orbit(x)
        seen.update(orb)
        sign = eps ** len(orb)
        vorbits.append((min(orb), orb, sign))
    eorbits, eseen = [], set()
    for x in inside:
        for y, _, origin in tree.neighbours(x):
            e = (x, y) if origin else (y, x)
            if e in eseen:
                continue
            orb = [e]
            cur = (act.image(e[0]), act.image(e[1]))
            while cur != e:
                orb.append(cur)
                cur = (act.image(cur[0]), act.image(cur[1]))
            eseen.update(orb)
            if len(orb) == q:
                continue  # free orbit, nothing in H_1
            eorbits.append((min(orb), orb, eps ** len(orb)))
    vkeep = [o for o in vorbits if len(o[1]) < q and o[2] == 1]
    ekeep = [o for o in eorbits if o[2] == 1]
    rows = []
    for erep, _, _ in ekeep:
        row = []
        for xrep, orb, _ in vkeep:
            # coefficient of e_{erep} in the image of the twisted orbit sum
            total = 0
            for i, x in enumerate(orb):
                if x == erep[0]:
                    total += eps ** i
                elif x == erep[1]:
                    total -= eps ** i
            row.append(total)
        rows.append(row)
    dv = [q // len(o[1]) for o in vkeep]
    de = [q // len(o[1]) for o in ekeep]
    A = IntMatrix.from_rows(rows, len(vkeep)) if rows else IntMatrix.zeros(0, len(vkeep))
    full = IntMatrix.from_rows([row + [de[i] if j == i else 0 for j in range(len(de))]
                                for i, row in enumerate(rows)], len(vkeep) + len(de)) if rows \
        else IntMatrix.zeros(0, len(vkeep))
    coker = cokernel_invariants(full)
    source = AbelianGroupInvariants.from_factors(dv)
    target = AbelianGroupInvariants.from_factors(de)
    injective = source.order * coker.order == target.order
    targets = (q,) if eps == 1 else (q, q // 2)
    vorb = tuple(Orbit(rep, len(orb), q // len(orb), s, _contribution(q, len(orb), s)) for rep, orb, s in vorbits)
    eorb = tuple(Orbit(rep, len(orb), q // len(orb), s, _contribution(q, len(orb), s)) for rep, orb, s in eorbits)
    return ChiswellH1Data(q, eps, r, vorb, eorb, A, source, target, coker, injective, targets, False)


def hchis_obstruction(g: GraphOfGroups, omega: OrientationCharacter, w: Path, max_radius: int = 8,
                      caveat: bool = False, tree: BassSerreTree | None = None) -> HChisVerdict:
    """Consistent iff H_1 of the vertex term injects with cokernel Z/q (or Z/q' in the caveat mode)."""
    tree = tree or BassSerreTree(g)
    data = chiswell_h1(g, omega, w, max_radius, caveat, tree)
    if not data.injective:
        return HChisVerdict("Obstructed", "H_1 map from the vertex term is not injective (source %s, target %s, "
                            "cokernel %s at radius %d)" % (data.source, data.target, data.cokernel, data.radius),
                            data)
    if not data.stable:
        return HChisVerdict("Inconclusive", "cokernel not stable up to radius %d: %s"
                            % (max_radius, ", ".join(data.history)), data)
    for t in data.targets:
        if data.cokernel.is_cyclic_of_order(t):
            return HChisVerdict("Consistent", "cokernel %s" % data.cokernel, data, t)
    return HChisVerdict("Obstructed", "cokernel %s is not %s" % (
        data.cokernel, " or ".join("Z/%d" % t for t in data.targets)), data)
