"""Finite groups given by multiplication tables.

Element 0 is always the identity.  Groups are validated on construction and
are immutable afterwards; derived data (inverses, orders, subgroup lattice)
is cached lazily.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from sympy import factorint


class GroupError(ValueError):
    pass


class NotAssociative(GroupError):
    def __init__(self, a, b, c):
        super().__init__("(%d*%d)*%d != %d*(%d*%d)" % (a, b, c, a, b, c))
        self.witness = (a, b, c)


class NoIdentity(GroupError):
    def __init__(self, witness):
        super().__init__("element 0 is not a two-sided identity (fails at %d)" % witness)
        self.witness = witness


class NoInverse(GroupError):
    def __init__(self, witness):
        super().__init__("element %d has no inverse" % witness)
        self.witness = witness


class NotHomomorphism(GroupError):
    pass


class FiniteGroup:
    """A finite group as a validated Cayley table.

    ``table[g][h]`` is the index of ``g*h``.  ``generators`` optionally names
    some elements; it is used for presentations and for reading characters
    given on generators.
    """

    def __init__(self, table: Sequence[Sequence[int]], generators: Mapping[str, int] | None = None,
                 name: str | None = None, check: bool = True):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.order = len(self.table)
        self.generators = dict(generators or {})
        self.name = name or "G%d" % self.order
        if check:
            self._validate()

    def _validate(self):
        n = self.order
        if n < 1:
            raise GroupError("a group has at least one element")
        for row in self.table:
            if len(row) != n or any(not 0 <= x < n for x in row):
                raise GroupError("table must be a square array of element indices")
        T = self.table
        for g in range(n):
            if T[0][g] != g or T[g][0] != g:
                raise NoIdentity(g)
        for g in range(n):
            if 0 not in T[g]:
                raise NoInverse(g)
            h = T[g].index(0)
            if T[h][g] != 0:
                raise NoInverse(g)
        for a in range(n):
            Ta = T[a]
            for b in range(n):
                ab = Ta[b]
                Tab, Tb = T[ab], T[b]
                for c in range(n):
                    if Tab[c] != Ta[Tb[c]]:
                        raise NotAssociative(a, b, c)
        for name, idx in self.generators.items():
            if not 0 <= idx < n:
                raise GroupError("generator %s out of range" % name)

    def __repr__(self):
        return "FiniteGroup(%s, order=%d)" % (self.name, self.order)

    def __len__(self):
        return self.order

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    # -- basic arithmetic ---------------------------------------------------
    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        return tuple(row.index(0) for row in self.table)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.table[self.table[g][x]][self.inverses[g]]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out = 0
        for _ in range(k % self.element_order(a)):
            out = self.table[out][a]
        return out

    @cached_property
    def orders(self) -> tuple[int, ...]:
        out = []
        for a in range(self.order):
            k, x = 1, a
            while x != 0:
                x = self.table[x][a]
                k += 1
            out.append(k)
        return tuple(out)

    def element_order(self, a: int) -> int:
        return self.orders[a]

    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        T = self.table
        return all(T[a][b] == T[b][a] for a in range(self.order) for b in range(a))

    def eval_word(self, word: Sequence[tuple[int, int]]) -> int:
        """Evaluate ``[(element, exponent), ...]``."""
        out = 0
        for a, e in word:
            out = self.table[out][self.power(a, e)]
        return out

    # -- subgroups ------------------------------------------------------------
    def generate(self, gens: Iterable[int]) -> frozenset[int]:
        elems = {0}
        frontier = [0]
        gens = [g for g in set(gens) if g]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(elems)

    def cyclic_subgroup(self, a: int) -> frozenset[int]:
        return self.generate([a])

    @cached_property
    def subgroups(self) -> tuple[frozenset[int], ...]:
        """Every subgroup, sorted by (order, sorted elements).

        Closure of the set of cyclic subgroups under joins; adequate to
        order 48.
        """
        cyclic = {self.cyclic_subgroup(a) for a in range(self.order)}
        found = set(cyclic)
        frontier = set(cyclic)
        cyc = sorted(cyclic, key=len)
        while frontier:
            nxt = set()
            for H in frontier:
                for C in cyc:
                    if C <= H:
                        continue
                    J = self.generate(H | C)
                    if J not in found:
                        found.add(J)
                        nxt.add(J)
            frontier = nxt
        return tuple(sorted(found, key=lambda S: (len(S), sorted(S))))

    def subgroup(self, elements: Iterable[int], name: str | None = None) -> tuple["FiniteGroup", "GroupHom"]:
        """The subgroup on ``elements`` as a standalone group with its inclusion."""
        elems = sorted(set(elements))
        if elems[0] != 0:
            raise GroupError("subgroup must contain the identity")
        index = {g: i for i, g in enumerate(elems)}
        try:
            table = [[index[self.table[a][b]] for b in elems] for a in elems]
        except KeyError:
            raise GroupError("elements are not closed under multiplication") from None
        H = FiniteGroup(table, name=name or "%s_sub%d" % (self.name, len(elems)), check=False)
        return H, GroupHom(H, self, tuple(elems))

    def is_normal(self, H: frozenset[int]) -> bool:
        return all(self.conj(g, h) in H for g in self.elements() for h in H)

    def normalizer(self, H: frozenset[int]) -> frozenset[int]:
        return frozenset(g for g in self.elements() if all(self.conj(g, h) in H for h in H))

    def centralizer(self, H: Iterable[int]) -> frozenset[int]:
        H = list(H)
        T = self.table
        return frozenset(g for g in self.elements() if all(T[g][h] == T[h][g] for h in H))

    def conjugacy_classes(self) -> list[frozenset[int]]:
        seen, out = set(), []
        for a in self.elements():
            if a in seen:
                continue
            cls = frozenset(self.conj(g, a) for g in self.elements())
            seen |= cls
            out.append(cls)
        return out

    def class_representatives(self) -> list[int]:
        return [min(c) for c in self.conjugacy_classes()]

    def cosets(self, H: frozenset[int]) -> list[frozenset[int]]:
        """Left cosets gH."""
        seen, out = set(), []
        for g in self.elements():
            if g in seen:
                continue
            c = frozenset(self.table[g][h] for h in H)
            seen |= c
            out.append(c)
        return out

    def generating_set(self, H: Iterable[int] | None = None) -> list[int]:
        """A small generating set of H (default: the whole group), greedy by element order."""
        H = frozenset(self.elements()) if H is None else frozenset(H)
        gens: list[int] = []
        current = frozenset([0])
        for a in sorted(H, key=lambda x: (-self.orders[x], x)):
            if a not in current:
                gens.append(a)
                current = self.generate(gens)
                if current == H:
                    break
        return gens

    @cached_property
    def automorphisms(self) -> tuple[tuple[int, ...], ...]:
        """All automorphisms as image tuples, by brute force over generator images."""
        gens = self.generating_set()
        words = self._words_in(gens)
        out = []
        candidates = [[b for b in self.elements() if self.orders[b] == self.orders[g]] for g in gens]
        for imgs in itertools.product(*candidates):
            images = self._extend(gens, imgs, words)
            if images is not None and len(set(images)) == self.order:
                out.append(tuple(images))
        return tuple(sorted(out))

    def _words_in(self, gens: Sequence[int]) -> dict[int, list[int]]:
        """Shortest positive word (list of generator positions) for every element."""
        words = {0: []}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for i, g in enumerate(gens):
                    y = self.table[x][g]
                    if y not in words:
                        words[y] = words[x] + [i]
                        nxt.append(y)
            frontier = nxt
        return words

    def _extend(self, gens, imgs, words, target: "FiniteGroup | None" = None):
        """Extend generator images to a map, or None if it is not a homomorphism."""
        target = target or self
        images = [0] * self.order
        for x, w in words.items():
            y = 0
            for i in w:
                y = target.table[y][imgs[i]]
            images[x] = y
        T, U = self.table, target.table
        for a in self.elements():
            for g in gens:
                if images[T[a][g]] != U[images[a]][images[g]]:
                    return None
        return images

    def words(self) -> dict[int, list[int]]:
        """Shortest words in the named generators (positions into ``generator_list``)."""
        return self._words_in(self.generator_list)

    @cached_property
    def generator_list(self) -> list[int]:
        gens = sorted(self.generators.values())
        if not gens or self.generate(gens) != frozenset(self.elements()):
            gens = self.generating_set()
        return gens

    def generator_names(self) -> list[str]:
        by_idx = {v: k for k, v in self.generators.items()}
        names, used = [], set()
        for i, g in enumerate(self.generator_list):
            nm = by_idx.get(g)
            if nm is None or nm in used:
                nm = "x%d" % g
            used.add(nm)
            names.append(nm)
        return names

    def hom_from_generators(self, target: "FiniteGroup", imgs: Sequence[int]) -> "GroupHom | None":
        gens = self.generator_list
        images = self._extend(gens, list(imgs), self._words_in(gens), target)
        return None if images is None else GroupHom(self, target, tuple(images))

    def relabel(self, perm: Sequence[int]) -> "FiniteGroup":
        """Isomorphic copy where old element ``g`` becomes ``perm[g]`` (perm[0] must be 0)."""
        if perm[0] != 0:
            raise GroupError("relabelling must fix the identity")
        inv = [0] * self.order
        for g, p in enumerate(perm):
            inv[p] = g
        table = [[perm[self.table[inv[a]][inv[b]]] for b in range(self.order)] for a in range(self.order)]
        gens = {k: perm[v] for k, v in self.generators.items()}
        return FiniteGroup(table, gens, self.name, check=False)

    def exponent_primes(self) -> dict[int, int]:
        return factorint(self.order)


@dataclass(frozen=True)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]

    def __post_init__(self):
        S, T, im = self.source, self.target, self.images
        if len(im) != S.order or im[0] != 0:
            raise NotHomomorphism("map must send identity to identity and cover the source")
        for a in S.elements():
            for b in S.elements():
                if im[S.table[a][b]] != T.table[im[a]][im[b]]:
                    raise NotHomomorphism("f(%d*%d) != f(%d)*f(%d)" % (a, b, a, b))

    def __call__(self, x: int) -> int:
        return self.images[x]

    @property
    def injective(self) -> bool:
        return len(set(self.images)) == self.source.order

    @property
    def bijective(self) -> bool:
        return self.injective and self.source.order == self.target.order

    def image(self) -> frozenset[int]:
        return frozenset(self.images)

    def preimage(self, y: int) -> int:
        """Unique preimage under an injective map."""
        return self._preimages[y]

    @cached_property
    def _preimages(self) -> dict[int, int]:
        return {y: x for x, y in enumerate(self.images)}

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self o other"""
        return GroupHom(other.source, self.target, tuple(self.images[y] for y in other.images))

    def inverse(self) -> "GroupHom":
        if not self.bijective:
            raise NotHomomorphism("only bijections can be inverted")
        return GroupHom(self.target, self.source, tuple(self.preimage(y) for y in self.target.elements()))


def identity_hom(G: FiniteGroup) -> GroupHom:
    return GroupHom(G, G, tuple(G.elements()))


def validate_group(table, generators: Mapping[str, int] | None = None, name: str | None = None) -> FiniteGroup:
    return FiniteGroup(table, generators, name)


def group_from_generators(gens: Sequence[Hashable], mul: Callable, identity: Hashable,
                          names: Sequence[str] | None = None, name: str | None = None) -> FiniteGroup:
    """Close a set of concrete generators (permutations, matrices, ...) into a table."""
    elems = [identity]
    index = {identity: 0}
    i = 0
    while i < len(elems):
        x = elems[i]
        for g in gens:
            y = mul(x, g)
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
        i += 1
    table = [[index[mul(a, b)] for b in elems] for a in elems]
    gmap = {}
    if names:
        gmap = {nm: index[g] for nm, g in zip(names, gens)}
    return FiniteGroup(table, gmap, name, check=len(elems) <= 64)


def is_cyclic(G: FiniteGroup) -> bool:
    return G.order in G.orders


def cyclic_generator(G: FiniteGroup) -> int:
    for name in sorted(G.generators):
        g = G.generators[name]
        if G.orders[g] == G.order:
            return g
    return G.orders.index(G.order)


def is_quaternionic(G: FiniteGroup, elems: frozenset[int] | None = None) -> bool:
    return _quaternion_witness(G, frozenset(G.elements()) if elems is None else elems) is not None


def _quaternion_witness(G: FiniteGroup, H: frozenset[int]):
    n = len(H)
    if n < 8 or n & (n - 1):
        return None
    half = n // 2
    for x in H:
        if G.orders[x] != half:
            continue
        X = G.cyclic_subgroup(x)
        z = G.power(x, half // 2)
        xinv = G.inv(x)
        for y in H:
            if y in X:
                continue
            if G.mul(y, y) == z and G.conj(y, x) == xinv:
                return x, y
    return None


def _dihedral_witness(G: FiniteGroup, H: frozenset[int]):
    n = len(H)
    if n < 6 or n % 2:
        return None
    m = n // 2
    for a in H:
        if G.orders[a] != m:
            continue
        A = G.cyclic_subgroup(a)
        ainv = G.inv(a)
        for b in H:
            if b not in A and G.orders[b] == 2 and G.conj(b, a) == ainv:
                return a, b
    return None


def is_metacyclic(G: FiniteGroup, H: frozenset[int] | None = None) -> bool:
    """H has a cyclic normal subgroup with cyclic quotient."""
    H = frozenset(G.elements()) if H is None else H
    for a in H:
        N = G.cyclic_subgroup(a)
        if not all(G.conj(h, x) in N for h in H for x in N):
            continue
        # H/N cyclic iff some h has order len(H)/len(N) modulo N
        need = len(H) // len(N)
        for h in H:
            k, x = 1, h
            while x not in N:
                x = G.mul(x, h)
                k += 1
            if k == need:
                return True
    return False


@dataclass(frozen=True)
class SylowInfo:
    prime: int
    order: int
    kind: str  # "cyclic" | "quaternionic" | "other" | "trivial"
    elements: frozenset[int]


@dataclass(frozen=True)
class StructureTag:
    kind: str  # Cyclic | Dihedral | Quaternionic | KleinFour | MetacyclicOther | Other
    order: int
    witness: tuple[int, ...]
    sylow: tuple[SylowInfo, ...]

    def __str__(self):
        if self.kind in ("Cyclic", "Dihedral", "Quaternionic"):
            return "%s(%d)" % (self.kind, self.order)
        return self.kind


def sylow_subgroups(G: FiniteGroup) -> dict[int, frozenset[int]]:
    """One Sylow p-subgroup per prime dividing |G|."""
    out = {}
    for p, e in factorint(G.order).items():
        target = p ** e
        out[p] = next(S for S in G.subgroups if len(S) == target)
    return out


def _subgroup_kind(G: FiniteGroup, S: frozenset[int]) -> str:
    if len(S) == 1:
        return "trivial"
    if any(G.orders[x] == len(S) for x in S):
        return "cyclic"
    if _quaternion_witness(G, S):
        return "quaternionic"
    return "other"


def classify_structure(G: FiniteGroup) -> StructureTag:
    H = frozenset(G.elements())
    sylow = tuple(SylowInfo(p, len(S), _subgroup_kind(G, S), S) for p, S in sorted(sylow_subgroups(G).items()))
    n = G.order
    if n in G.orders:
        return StructureTag("Cyclic", n, (G.orders.index(n),), sylow)
    if n == 4:
        return StructureTag("KleinFour", 4, tuple(x for x in H if x), sylow)
    w = _dihedral_witness(G, H)
    if w:
        return StructureTag("Dihedral", n, w, sylow)
    w = _quaternion_witness(G, H)
    if w:
        return StructureTag("Quaternionic", n, w, sylow)
    if is_metacyclic(G):
        return StructureTag("MetacyclicOther", n, (), sylow)
    return StructureTag("Other", n, (), sylow)


def subgroup_tag(G: FiniteGroup, S: frozenset[int]) -> StructureTag:
    H, _ = G.subgroup(S)
    return classify_structure(H)


def has_dihedral_subgroup_gt2(G: FiniteGroup) -> tuple[bool, frozenset[int] | None]:
    """Is some subgroup dihedral of order >= 6?  Returns a witness subgroup."""
    for S in G.subgroups:
        if len(S) >= 6 and _dihedral_witness(G, S):
            return True, S
    return False, None


def has_klein_four_subgroup(G: FiniteGroup) -> frozenset[int] | None:
    for S in G.subgroups:
        if len(S) == 4 and all(G.orders[x] <= 2 for x in S):
            return S
    return None


def elementary_abelian_rank2_subgroup(G: FiniteGroup) -> tuple[int, frozenset[int]] | None:
    """A subgroup Z/p x Z/p, if there is one."""
    for S in G.subgroups:
        f = factorint(len(S))
        if len(f) == 1:
            (p, e), = f.items()
            if e == 2 and all(G.orders[x] in (1, p) for x in S):
                return p, S
    return None


def conjugate_in(G: FiniteGroup, x: int, S: frozenset[int]) -> int | None:
    """Some g with g x g^-1 in S."""
    for g in G.elements():
        if G.conj(g, x) in S:
            return g
    return None


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)
