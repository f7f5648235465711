"""Words, group presentations, and the presentation of a graph of groups."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .groups import FiniteGroup
from .linalg import AbelianGroupInvariants, IntMatrix, cokernel_invariants

Letter = tuple[str, int]  # (generator, +1 or -1)
Word = tuple[Letter, ...]


def free_reduce(word: Iterable[Letter]) -> Word:
    out: list[Letter] = []
    for x, e in word:
        if out and out[-1][0] == x and out[-1][1] == -e:
            out.pop()
        else:
            out.append((x, e))
    return tuple(out)


def cyclic_reduce(word: Iterable[Letter]) -> Word:
    w = list(free_reduce(word))
    while len(w) > 1 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
        w = w[1:-1]
    return tuple(w)


def inverse(word: Sequence[Letter]) -> Word:
    return tuple((x, -e) for x, e in reversed(word))


def power(x: str, k: int) -> Word:
    return tuple((x, 1 if k > 0 else -1) for _ in range(abs(k)))


def format_word(word: Sequence[Letter]) -> str:
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        x, e = word[i]
        j = i
        while j < len(word) and word[j] == (x, e):
            j += 1
        k = (j - i) * e
        parts.append(x if k == 1 else "%s^%d" % (x, k))
        i = j
    return " ".join(parts)


_TOKEN = re.compile(r"([A-Za-z][\w']*)(?:\^(-?\d+))?$")


def parse_word(text: str) -> Word:
    """Parse ``"a^2 t b t^-1"``; tokens are separated by spaces or ``*``."""
    out: list[Letter] = []
    text = text.strip()
    if text in ("", "1"):
        return ()
    for tok in re.split(r"[\s*]+", text):
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError("bad word token %r" % tok)
        out.extend(power(m.group(1), int(m.group(2) or 1)))
    return tuple(out)


def _canonical_relator(word: Word) -> Word:
    # least rotation of the word or its inverse, fewest inverse letters first, so duplicates collapse
    w = cyclic_reduce(word)
    if not w:
        return w
    cands = []
    for v in (w, inverse(w)):
        for i in range(len(v)):
            cands.append(v[i:] + v[:i])
    return min(cands, key=lambda c: (sum(1 for _, e in c if e < 0), c))


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        gens = set(self.generators)
        if len(gens) != len(self.generators):
            raise ValueError("repeated generator name")
        for r in self.relators:
            for x, e in r:
                if x not in gens or e not in (1, -1):
                    raise ValueError("relator uses unknown letter %r" % (x,))

    def __str__(self):
        return "<%s | %s>" % (", ".join(self.generators), ", ".join(format_word(r) for r in self.relators))

    def relation_matrix(self) -> IntMatrix:
        pos = {x: i for i, x in enumerate(self.generators)}
        rows = [[0] * len(self.relators) for _ in self.generators]
        for j, r in enumerate(self.relators):
            for x, e in r:
                rows[pos[x]][j] += e
        return IntMatrix.from_rows(rows, len(self.relators))

    def abelianization(self) -> AbelianGroupInvariants:
        return cokernel_invariants(self.relation_matrix())

    def to_json(self) -> dict:
        return {"generators": list(self.generators), "relators": [format_word(r) for r in self.relators]}


def presentation_from_strings(generators: Sequence[str], relators: Sequence[str]) -> Presentation:
    return Presentation(tuple(generators), tuple(parse_word(r) for r in relators))


# -- finite groups ------------------------------------------------------------

def element_words(G: FiniteGroup, names: Sequence[str]) -> dict[int, Word]:
    """Shortest words in the named generators for every element of G."""
    return {x: tuple((names[i], 1) for i in w) for x, w in G.words().items()}


def group_presentation(G: FiniteGroup, names: Sequence[str] | None = None) -> tuple[Presentation, dict[int, Word]]:
    """Presentation read off the Cayley graph: one relator per non-tree edge."""
    names = list(names or G.generator_names())
    gens = G.generator_list
    words = element_words(G, names)
    rels = set()
    for x in G.elements():
        for g, nm in zip(gens, names):
            r = _canonical_relator(words[x] + ((nm, 1),) + inverse(words[G.mul(x, g)]))
            if r:
                rels.add(r)
    return Presentation(tuple(names), tuple(sorted(rels, key=lambda r: (len(r), r)))), words


# -- Tietze elimination ----------------------------------------------------------

def eliminate(pres: Presentation, protected: Iterable[str] = (), max_len: int = 4) -> Presentation:
    """Remove generators defined by short relators in which they occur once.

    Later generators are eliminated first; ``protected`` ones are kept.
    """
    gens = list(pres.generators)
    rels = [cyclic_reduce(r) for r in pres.relators]
    keep = set(protected)
    changed = True
    while changed:
        changed = False
        for x in reversed(gens):
            if x in keep:
                continue
            best = None
            for k, r in enumerate(rels):
                occ = [i for i, (y, _) in enumerate(r) if y == x]
                if len(occ) == 1 and len(r) <= max_len and (best is None or len(r) < len(rels[best[0]])):
                    best = (k, occ[0])
            if best is None:
                continue
            k, i = best
            r = rels[k]
            # r = u x^e v  =>  x^e = u^-1 v^-1
            u, (_, e), v = r[:i], r[i], r[i + 1:]
            value = inverse(v + u) if e == 1 else v + u
            new = []
            for j, s in enumerate(rels):
                if j == k:
                    continue
                out = []
                for y, f in s:
                    if y == x:
                        out.extend(value if f == 1 else inverse(value))
                    else:
                        out.append((y, f))
                s2 = _canonical_relator(out)
                if s2:
                    new.append(s2)
            rels = new
            gens.remove(x)
            changed = True
            break
    uniq = sorted(set(_canonical_relator(r) for r in rels if r), key=lambda r: (len(r), r))
    return Presentation(tuple(gens), tuple(uniq))


def rename(pres: Presentation, mapping: dict[str, str]) -> Presentation:
    return Presentation(tuple(mapping.get(x, x) for x in pres.generators),
                        tuple(tuple((mapping.get(x, x), e) for x, e in r) for r in pres.relators))


# -- graphs of groups -------------------------------------------------------------

def fundamental_presentation(g, simplify: bool = True) -> Presentation:
    """Generators of the vertex groups plus a stable letter t_<id> per edge outside the maximal tree.

    Edge relators say ``t_e into_o(c) t_e^-1 = into_t(c)`` for generators c of
    each edge group, with ``t_e = 1`` on tree edges.  With ``simplify`` the
    tree identifications and other short definitions are eliminated.
    """
    g.require_finite("a presentation")
    base = {}
    for v in g.vertices:
        for nm in v.group.generator_names():
            base.setdefault(nm, []).append(v.id)
    gens: list[str] = []
    rels: list[Word] = []
    words = []
    for v in g.vertices:
        names = [nm if len(base[nm]) == 1 else "%s_%s" % (nm, v.id) for nm in v.group.generator_names()]
        p, w = group_presentation(v.group, names)
        gens.extend(p.generators)
        rels.extend(p.relators)
        words.append(w)
    stable = []
    for i, e in enumerate(g.edges):
        t = None
        if i not in g.tree:
            t = "t_%s" % e.id
            stable.append(t)
        for c in e.group.generator_list:
            lhs = words[e.o][e.into_o(c)]
            if t:
                lhs = ((t, 1),) + lhs + ((t, -1),)
            r = _canonical_relator(lhs + inverse(words[e.t][e.into_t(c)]))
            if r:
                rels.append(r)
    pres = Presentation(tuple(gens + stable), tuple(dict.fromkeys(rels)))
    if not simplify:
        return pres
    pres = eliminate(pres, protected=stable)
    # drop vertex suffixes that are no longer needed
    mapping = {}
    for x in pres.generators:
        root = x.rsplit("_", 1)[0] if "_" in x and not x.startswith("t_") else x
        if root != x and sum(1 for y in pres.generators if y.rsplit("_", 1)[0] == root) == 1 \
                and root not in pres.generators:
            mapping[x] = root
    return rename(pres, mapping)


# -- homomorphism counting ------------------------------------------------------

def count_homomorphisms(pres: Presentation, H: FiniteGroup) -> int:
    """Number of homomorphisms from the presented group to H, by backtracking."""
    gens = list(pres.generators)
    pos = {x: i for i, x in enumerate(gens)}
    rels = [r for r in pres.relators if r]
    # check each relator as soon as its last generator is assigned
    by_step: list[list[Word]] = [[] for _ in gens]
    for r in rels:
        by_step[max(pos[x] for x, _ in r)].append(r)
    inv = H.inverses
    table = H.table
    img = [0] * len(gens)

    def ok(r: Word) -> bool:
        y = 0
        for x, e in r:
            z = img[pos[x]]
            y = table[y][z if e == 1 else inv[z]]
        return y == 0

    def go(k: int) -> int:
        if k == len(gens):
            return 1
        total = 0
        for h in H.elements():
            img[k] = h
            if all(ok(r) for r in by_step[k]):
                total += go(k + 1)
        return total

    return go(0)
