"""Constructors for the small groups used in examples, tests and searches."""
from __future__ import annotations

import re
from functools import lru_cache

from .groups import FiniteGroup, group_from_generators


def cyclic(m: int) -> FiniteGroup:
    table = [[(a + b) % m for b in range(m)] for a in range(m)]
    return FiniteGroup(table, {"a": 1 % m} if m > 1 else {}, "Z/%d" % m, check=False)


def _perm_mul(p, q):
    # apply q first, then p: (p*q)(i) = p(q(i))
    return tuple(p[i] for i in q)


def _perm_group(gens, names, name):
    n = len(gens[0])
    return group_from_generators([tuple(g) for g in gens], _perm_mul, tuple(range(n)), names, name)


def dihedral(order: int) -> FiniteGroup:
    """Dihedral group of the given order 2m, generated by rotation a and reflection b."""
    m = order // 2
    if order % 2 or m < 2:
        raise ValueError("dihedral order must be an even number >= 4")

    def mul(x, y):
        (i, s), (j, t) = x, y
        return ((i + (-j if s else j)) % m, s ^ t)

    return group_from_generators([(1, 0), (0, 1)], mul, (0, 0), ["a", "b"], "D%d" % order)


def dicyclic(order: int) -> FiniteGroup:
    """<a, x | a^(2m), x^2 = a^m, x a x^-1 = a^-1> of order 4m; quaternionic for 2-powers."""
    m = order // 4
    if order % 4 or m < 1:
        raise ValueError("dicyclic order must be a multiple of 4")
    n2 = 2 * m

    def mul(x, y):
        (i, s), (j, t) = x, y
        if s == 0:
            return ((i + j) % n2, t)
        # x a^j = a^-j x ; x x = a^m
        k = (i - j) % n2
        if t:
            return ((k + m) % n2, 0)
        return (k, 1)

    name = "Q%d" % order if order & (order - 1) == 0 else "Dic%d" % order
    return group_from_generators([(1, 0), (0, 1)], mul, (0, 0), ["x", "y"], name)


def quaternionic(order: int) -> FiniteGroup:
    if order < 8 or order & (order - 1):
        raise ValueError("quaternionic groups have order 2^i, i >= 3")
    return dicyclic(order)


def metacyclic(m: int, q: int, r: int) -> FiniteGroup:
    """Z/m x| Z/q with the generator b acting by a -> a^r (needs r^q = 1 mod m)."""
    if pow(r, q, m) != 1 % m:
        raise ValueError("r^q must be 1 mod m")

    def mul(x, y):
        (i, s), (j, t) = x, y
        return ((i + j * pow(r, s, m)) % m, (s + t) % q)

    return group_from_generators([(1 % m, 0), (0, 1 % q)], mul, (0, 0), ["a", "b"],
                                 "Z/%d:Z/%d(%d)" % (m, q, r))


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str | None = None) -> FiniteGroup:
    n, k = G.order, H.order
    table = [[G.table[a // k][b // k] * k + H.table[a % k][b % k] for b in range(n * k)] for a in range(n * k)]
    gens = {}
    for nm, g in G.generators.items():
        gens[nm] = g * k
    for nm, h in H.generators.items():
        gens[nm + "'" if nm in gens else nm] = h
    return FiniteGroup(table, gens, name or "%sx%s" % (G.name, H.name), check=False)


def klein_four() -> FiniteGroup:
    G = direct_product(cyclic(2), cyclic(2), "V4")
    return FiniteGroup(G.table, {"a": 2, "b": 1}, "V4", check=False)


def symmetric(n: int) -> FiniteGroup:
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return _perm_group(gens, ["s", "c"], "S%d" % n)


def alternating4() -> FiniteGroup:
    return _perm_group([(1, 2, 0, 3), (1, 0, 3, 2)], ["c", "d"], "A4")


def sl2(p: int) -> FiniteGroup:
    def mul(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)

    return group_from_generators([(1, 1, 0, 1), (0, p - 1, 1, 0)], mul, (1, 0, 0, 1), ["u", "w"],
                                 "SL(2,%d)" % p)


_NAMED = {
    "V4": klein_four,
    "S3": lambda: symmetric(3),
    "S4": lambda: symmetric(4),
    "A4": alternating4,
    "Q8": lambda: quaternionic(8),
    "Q16": lambda: quaternionic(16),
    "SL(2,3)": lambda: sl2(3),
}


@lru_cache(maxsize=None)
def by_name(name: str) -> FiniteGroup:
    """Look up ``Z/m``, ``D2m``, ``Q8``, ``Dic12``, ``V4``, ``S3`` and friends."""
    if name in _NAMED:
        return _NAMED[name]()
    m = re.fullmatch(r"Z/(\d+)", name)
    if m:
        return cyclic(int(m.group(1)))
    m = re.fullmatch(r"D(\d+)", name)
    if m:
        return dihedral(int(m.group(1)))
    m = re.fullmatch(r"(?:Q|Dic)(\d+)", name)
    if m:
        return dicyclic(int(m.group(1)))
    m = re.fullmatch(r"Z/(\d+):Z/(\d+)\((\d+)\)", name)
    if m:
        return metacyclic(*map(int, m.groups()))
    m = re.fullmatch(r"(.+)x(.+)", name)
    if m:
        return direct_product(by_name(m.group(1)), by_name(m.group(2)), name)
    raise KeyError("unknown group name %r" % name)


def small_catalog(max_order: int = 24) -> list[FiniteGroup]:
    """A spread of groups of order <= max_order, covering periodic and non-periodic cases."""
    names = ["Z/%d" % m for m in range(1, max_order + 1)]
    names += ["D%d" % (2 * m) for m in range(2, max_order // 2 + 1)]
    names += ["Dic%d" % n for n in range(12, max_order + 1, 4) if n & (n - 1)]
    names += ["Q8", "Q16", "V4", "A4", "S4", "SL(2,3)"]
    names += ["Z/2xZ/4", "Z/2xV4", "Z/3xZ/3", "Z/2xQ8", "Z/3xS3", "Z/4xZ/4", "Z/2xD8",
              "Z/3xV4", "Z/2xA4", "Z/3xQ8", "Z/3xD8", "Z/4xS3", "Z/2xDic12", "Z/2xZ/2xZ/2xZ/2"]
    names += ["Z/5:Z/4(2)", "Z/7:Z/3(2)", "Z/3:Z/8(2)", "Z/5:Z/4(4)", "Z/3:Z/4(2)"]
    out, seen = [], set()
    for nm in names:
        try:
            G = by_name(nm)
        except (KeyError, ValueError):
            continue
        if G.order <= max_order and nm not in seen:
            seen.add(nm)
            out.append(G)
    return out


def random_relabel(G: FiniteGroup, rng) -> FiniteGroup:
    rest = list(range(1, G.order))
    rng.shuffle(rest)
    return G.relabel([0] + rest)
