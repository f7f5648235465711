"""Periodic cohomology of finite groups and homology of cyclic groups.

Two independent routes are kept side by side on purpose:

* closed-form answers (Sylow-based period, Shapiro's lemma, ``j**k`` for the
  induced map on top homology) which the rest of the package uses, and
* brute-force oracles built from explicit free resolutions, used by the tests
  to confirm the closed forms.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from sympy import ZZ, factorint
from sympy.polys.matrices import DomainMatrix

from .groups import FiniteGroup, GroupHom, cyclic_generator, is_cyclic, lcm, sylow_subgroups, _subgroup_kind
from .linalg import AbelianGroupInvariants, IntMatrix, Lattice, complex_homology, kernel_basis, solve_integer


class BadStabilizer(ValueError):
    pass


class Unsupported(ValueError):
    pass


@dataclass(frozen=True)
class PrimePeriod:
    prime: int
    sylow_order: int
    kind: str
    period: int | None
    detail: str = ""


@dataclass(frozen=True)
class PeriodicityReport:
    periodic: bool
    period: int | None
    reasons: tuple[PrimePeriod, ...]

    def to_json(self) -> dict:
        return {
            "periodic": self.periodic,
            "period": self.period,
            "primes": [{"prime": r.prime, "sylow_order": r.sylow_order, "kind": r.kind,
                        "period": r.period, "detail": r.detail} for r in self.reasons],
        }


def periodicity(G: FiniteGroup) -> PeriodicityReport:
    """Periodic iff every Sylow subgroup is cyclic or quaternionic.

    The period is the lcm of the p-periods: 2 for a cyclic Sylow 2-subgroup,
    4 for a quaternionic one, and ``2 [N(P):C(P)]`` for a cyclic Sylow
    p-subgroup P with p odd.
    """
    reasons = []
    periodic = True
    period = 2
    for p, P in sorted(sylow_subgroups(G).items()):
        kind = _subgroup_kind(G, P)
        if kind == "cyclic":
            if p == 2:
                pp, detail = 2, "cyclic Sylow 2-subgroup"
            else:
                idx = len(G.normalizer(P)) // len(G.centralizer(P))
                pp, detail = 2 * idx, "[N(P):C(P)] = %d" % idx
        elif kind == "quaternionic":
            pp, detail = 4, "quaternionic Sylow 2-subgroup"
        else:
            pp, detail = None, "Sylow %d-subgroup is neither cyclic nor quaternionic" % p
            periodic = False
        reasons.append(PrimePeriod(p, len(P), kind, pp, detail))
        if pp:
            period = lcm(period, pp)
    return PeriodicityReport(periodic, period if periodic else None, tuple(reasons))


# -- free resolution oracle ---------------------------------------------------

def _act(G: FiniteGroup, g: int, v: list[int], rank: int) -> list[int]:
    n = G.order
    out = [0] * (rank * n)
    T = G.table[g]
    for j in range(rank):
        base = j * n
        for h in range(n):
            c = v[base + h]
            if c:
                out[base + T[h]] = c
    return out


def _zmatrix(G: FiniteGroup, gens: list[list[int]], rank_below: int) -> IntMatrix:
    """Z-matrix of the ZG-map sending basis i of F_k to gens[i]; columns indexed (i, g)."""
    cols = []
    for v in gens:
        for g in G.elements():
            cols.append(_act(G, g, v, rank_below))
    return IntMatrix.from_rows([list(r) for r in zip(*cols)], len(cols)) if cols else \
        IntMatrix.zeros(rank_below * G.order, 0)


def _choose_generators(G: FiniteGroup, kernel: list[list[int]], rank: int) -> list[list[int]]:
    lat = Lattice(rank * G.order)
    gens = []
    for v in sorted(kernel, key=lambda x: (sum(abs(c) for c in x), x)):
        if lat.contains(v):
            continue
        gens.append(v)
        for g in G.elements():
            lat.add(_act(G, g, v, rank))
    # drop redundant generators, last chosen first
    for i in range(len(gens) - 1, -1, -1):
        rest = gens[:i] + gens[i + 1:]
        lat = Lattice(rank * G.order)
        for v in rest:
            for g in G.elements():
                lat.add(_act(G, g, v, rank))
        if lat.contains(gens[i]):
            gens = rest
    return gens


def _short_basis(vectors: list[list[int]]) -> list[list[int]]:
    # LLL keeps the resolution's entries small; SNF transforms blow them up
    if len(vectors) < 2:
        return vectors
    M = DomainMatrix([[ZZ(x) for x in v] for v in vectors], (len(vectors), len(vectors[0])), ZZ)
    return [[int(x) for x in row] for row in M.lll().to_list()]


@lru_cache(maxsize=None)
def _resolution(G: FiniteGroup, length: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    n = G.order
    # F_0 = ZG -> Z; kernel is the augmentation ideal
    aug = []
    for h in range(1, n):
        v = [0] * n
        v[h], v[0] = 1, -1
        aug.append(v)
    gens = _choose_generators(G, aug, 1)
    maps = [gens]
    rank_below = 1
    for _ in range(1, length):
        D = _zmatrix(G, gens, rank_below)
        rank_below = len(gens)
        ker = _short_basis(kernel_basis(D))
        gens = _choose_generators(G, ker, rank_below)
        maps.append(gens)
    return tuple(tuple(tuple(v) for v in m) for m in maps)


def integral_homology_oracle(G: FiniteGroup, top: int) -> list[AbelianGroupInvariants]:
    """H_0..H_top(G; Z) from an explicitly computed free ZG-resolution."""
    n = G.order
    maps = _resolution(G, top + 1)
    bounds = []
    rank_below = 1
    for gens in maps:
        rows = [[sum(v[j * n:(j + 1) * n]) for v in gens] for j in range(rank_below)]
        bounds.append(IntMatrix.from_rows(rows, len(gens)))
        rank_below = len(gens)
    return complex_homology(bounds)[:top + 1]


def period_oracle(G: FiniteGroup, max_degree: int = 12) -> int | None:
    """Least d > 0 with H^d(G; Z) cyclic of order |G|, via H^d = H_{d-1} for d >= 2."""
    if G.order == 1:
        return 2
    hs = integral_homology_oracle(G, max_degree - 1)
    for d in range(2, max_degree + 1):
        if hs[d - 1].is_cyclic_of_order(G.order):
            return d
    return None


# -- homology of cyclic groups with permutation coefficients -----------------

def _check_orbits(q, orbits):
    for d, sign in orbits:
        if d < 1 or q % d:
            raise BadStabilizer("stabilizer order %d does not divide %d" % (d, q))
        if sign not in (1, -1) or (sign == -1 and d % 2):
            raise BadStabilizer("sign %r is not a character of Z/%d" % (sign, d))


def cyclic_module_homology(q: int, orbits, s: int) -> AbelianGroupInvariants:
    """H_s(Z/q; sum of induced modules Ind_{Z/d}^{Z/q} Z^sign) by Shapiro's lemma.

    ``orbits`` lists ``(d, sign)`` pairs: stabilizer order and the sign by
    which the stabilizer's generator acts.
    """
    _check_orbits(q, orbits)
    factors, rank = [], 0
    for d, sign in orbits:
        if s == 0:
            if sign == 1:
                rank += 1
            else:
                factors.append(2)
        elif sign == 1:
            if s % 2:
                factors.append(d)
        elif s % 2 == 0:
            factors.append(2)
    return AbelianGroupInvariants.from_factors(factors, rank)


def _orbit_matrices(q, orbits):
    size = sum(q // d for d, _ in orbits)
    H = [[0] * size for _ in range(size)]
    off = 0
    for d, sign in orbits:
        r = q // d
        for i in range(r):
            if i + 1 < r:
                H[off + i + 1][off + i] = 1
            else:
                H[off][off + i] = sign
        off += r
    Hm = IntMatrix.from_rows(H, size)
    eye = IntMatrix.identity(size)
    power, N = eye, IntMatrix.zeros(size, size)
    for _ in range(q):
        N = IntMatrix(size, size, tuple(a + b for a, b in zip(N.entries, power.entries)))
        power = Hm @ power
    hm1 = IntMatrix(size, size, tuple(a - b for a, b in zip(Hm.entries, eye.entries)))
    return hm1, N


def cyclic_module_homology_direct(q: int, orbits, s: int) -> AbelianGroupInvariants:
    """Same as :func:`cyclic_module_homology`, from the 2-periodic resolution of Z/q itself."""
    _check_orbits(q, orbits)
    hm1, N = _orbit_matrices(q, orbits)
    bounds = [hm1 if k % 2 == 0 else N for k in range(s + 1)]
    return complex_homology(bounds)[s]


# -- induced map on top homology ---------------------------------------------

def cyclic_multiplier(theta: GroupHom) -> int:
    F = theta.source
    a = cyclic_generator(F)
    b = theta(a)
    x, j = 0, 0
    while x != b:
        x = F.mul(x, a)
        j += 1
    return j


def top_homology_automorphism(F: FiniteGroup, theta: GroupHom, k: int) -> int:
    """Multiplier by which theta acts on H_{2k-1}(F; Z) = Z/|F| (F cyclic), in [0, |F|)."""
    if not is_cyclic(F):
        raise Unsupported("induced map on top homology is only implemented for cyclic groups")
    if not theta.bijective or theta.source is not theta.target and theta.source != theta.target:
        raise ValueError("theta must be an automorphism of F")
    m = F.order
    return pow(cyclic_multiplier(theta), k, m) if m > 1 else 0


def top_homology_oracle(F: FiniteGroup, theta: GroupHom, k: int) -> int:
    """Lift theta to a chain self-map of the 2-periodic resolution and read off degree 2k-1."""
    m = F.order
    if m == 1:
        return 0
    a = cyclic_generator(F)
    # ZF with basis the elements; right multiplication matrices (ZF is commutative)
    def mult_matrix(x: list[int]) -> IntMatrix:
        rows = [[0] * m for _ in range(m)]
        for g in range(m):
            for h in range(m):
                if x[h]:
                    rows[F.mul(g, h)][g] += x[h]
        return IntMatrix.from_rows(rows, m)

    one = [int(g == 0) for g in range(m)]
    am1 = [0] * m
    am1[a] += 1
    am1[0] -= 1
    norm = [1] * m
    diffs = [None, am1, norm]
    y = one
    for i in range(1, 2 * k):
        d = diffs[1 if i % 2 else 2]
        # target = f_{i-1}(d(1)) = sum_g d_g theta(g) y
        target = [0] * m
        for g in range(m):
            if d[g]:
                tg = theta(g)
                for h in range(m):
                    if y[h]:
                        target[F.mul(tg, h)] += d[g] * y[h]
        sol = solve_integer(mult_matrix(d), target)
        if sol is None:
            raise ArithmeticError("no chain lift in degree %d" % i)
        y = sol
    return sum(y) % m


def prime_factors(n: int) -> list[int]:
    return sorted(factorint(n))
