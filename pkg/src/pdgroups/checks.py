"""Necessary conditions for a graph of finite groups to carry a PD_n fundamental group.

Every finite subgroup of the fundamental group is conjugate into a vertex
group, so the per-element checks run over conjugacy class representatives of
the vertex groups.  The checks only ever rule candidates out: a ``Candidate``
verdict is not a claim of realizability.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .bass_serre import BassSerreTree
from .chiswell import hchis_obstruction
from .cohomology import Unsupported, periodicity, top_homology_automorphism
from .graph import (Ends, GraphOfGroups, OrientationCharacter, classify_edge, ends_count,
                    format_fraction, is_reduced_indecomposable, virtual_euler)
from .groups import (FiniteGroup, GroupHom, classify_structure, conjugate_in, has_klein_four_subgroup,
                     is_metacyclic)

CHECKS = "abcdefghijk"
TITLES = {
    "a": "edge orientability",
    "b": "torsion omega-parity",
    "c": "xi dichotomy",
    "d": "normalizer two-endedness",
    "e": "Chiswell exactness",
    "f": "prime-power conjugation into edges",
    "g": "odd-order metacyclicity",
    "h": "periodic cohomology",
    "i": "no-dihedral two ends",
    "j": "one-ended vertex torsion",
    "k": "Klein-four constraints",
}
# cheap checks first, so a search can stop at the first failure
CHEAP_ORDER = "gfhikjacdbe"

PASS, FAIL, SKIPPED, INCONCLUSIVE = "Pass", "Fail", "Skipped", "Inconclusive"


class BadDimension(ValueError):
    pass


class UnsupportedGroup(ValueError):
    pass


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    witness: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "title": TITLES[self.name], "status": self.status, "witness": self.witness}


@dataclass(frozen=True)
class CheckReport:
    n: int
    checks: tuple[CheckResult, ...]

    @property
    def overall(self) -> str:
        statuses = [c.status for c in self.checks]
        if FAIL in statuses:
            return "Obstructed"
        if all(s in (PASS, SKIPPED) for s in statuses):
            return "Candidate"
        return "Unresolved"

    def failing(self) -> list[str]:
        return [c.name for c in self.checks if c.status == FAIL]

    def get(self, name: str) -> CheckResult:
        return next(c for c in self.checks if c.name == name)

    def to_json(self) -> dict:
        return {"n": self.n, "overall": self.overall, "checks": [c.to_json() for c in self.checks]}


# -- per-element data ------------------------------------------------------------

class _Context:
    def __init__(self, g: GraphOfGroups, omega: OrientationCharacter, n: int, max_radius: int):
        self.g, self.omega, self.n, self.max_radius = g, omega, n, max_radius
        self.finite = g.all_finite
        self.tree = BassSerreTree(g) if self.finite and g.edges else None
        self._fixed = {}
        self._chis = {}

    def elements(self) -> list[tuple[int, int]]:
        """(vertex, element) for each nontrivial conjugacy class of each vertex group."""
        out = []
        for v, vert in enumerate(self.g.vertices):
            G = vert.group
            for x in G.class_representatives():
                if x:
                    out.append((v, x))
        return out

    def label(self, v: int, x: int) -> str:
        G = self.g.group(v)
        return "%s:%s (order %d)" % (self.g.vertices[v].id, _element_name(G, x), G.orders[x])

    def sign(self, v: int, x: int) -> int:
        return self.omega.vertex(self.g, v, x)

    def order(self, v: int, x: int) -> int:
        return self.g.group(v).orders[x]

    def normalizer(self, v: int, x: int):
        """(class, fixed subtree report), or None when the group is finite."""
        if self.tree is None:
            return None
        key = (v, x)
        if key not in self._fixed:
            w = self.tree.vertex_element(v, x)
            self._fixed[key] = self.tree.normalizer_class(w, self.max_radius)
        return self._fixed[key]

    def chiswell(self, v: int, x: int):
        key = (v, x)
        if key not in self._chis:
            w = self.tree.vertex_element(v, x)
            self._chis[key] = hchis_obstruction(self.g, self.omega, w, self.max_radius, caveat=True, tree=self.tree)
        return self._chis[key]


def _element_name(G: FiniteGroup, x: int) -> str:
    words = G.words()
    names = G.generator_names()
    w = words.get(x)
    if w is None or not names:
        return str(x)
    if not w:
        return "1"
    parts = []
    for i in w:
        nm = names[i]
        if parts and parts[-1][0] == nm:
            parts[-1][1] += 1
        else:
            parts.append([nm, 1])
    return "".join(nm if k == 1 else "%s^%d" % (nm, k) for nm, k in parts)


def _summarise(fails: list[str], unresolved: list[str], passed_note: str) -> tuple[str, str]:
    if fails:
        return FAIL, "; ".join(fails)
    if unresolved:
        return INCONCLUSIVE, "; ".join(unresolved)
    return PASS, passed_note


# -- the checks ----------------------------------------------------------------------

def _check_a(ctx: _Context) -> CheckResult:
    # elements of edge groups with infinite centralizer need omega = 1 unless 4 | order
    g = ctx.g
    if not g.edges:
        return CheckResult("a", SKIPPED, "no edges")
    if not ctx.finite:
        return CheckResult("a", SKIPPED, "needs finite vertex groups")
    fails, unresolved, seen = [], [], set()
    for i, e in enumerate(g.edges):
        G = g.group(e.o)
        for c in e.group.elements():
            if not c:
                continue
            x = e.into_o(c)
            cls = min(G.conj(y, x) for y in G.elements())
            if (e.o, cls) in seen:
                continue
            seen.add((e.o, cls))
            s, m = ctx.sign(e.o, x), G.orders[x]
            if s == 1 or m % 4 == 0:
                continue
            kind, _ = ctx.normalizer(e.o, x)
            if kind == "Unresolved":
                unresolved.append("%s in edge %s: centralizer unresolved" % (ctx.label(e.o, x), e.id))
            elif kind != "FiniteWithWitness":
                fails.append("%s in edge %s has omega = -1 and infinite centralizer" % (ctx.label(e.o, x), e.id))
    return CheckResult("a", *_summarise(fails, unresolved, "omega is trivial on edge groups where required"))


def _check_b(ctx: _Context) -> CheckResult:
    if not ctx.finite:
        return CheckResult("b", SKIPPED, "needs finite vertex groups")
    if ctx.tree is None:
        return CheckResult("b", SKIPPED, "finite group")
    fails, unresolved = [], []
    for v, x in ctx.elements():
        kind, rep = ctx.normalizer(v, x)
        m, s = ctx.order(v, x), ctx.sign(v, x)
        if kind == "Unresolved":
            unresolved.append("%s: normalizer unresolved" % ctx.label(v, x))
        elif kind == "ContainsFreeGroup":
            fails.append("%s: centralizer contains a free group of rank 2" % ctx.label(v, x))
        elif kind == "TwoEnded" and s == -1 and m % 4:
            fails.append("%s: omega = -1, infinite centralizer and 4 does not divide %d" % (ctx.label(v, x), m))
    return CheckResult("b", *_summarise(fails, unresolved, "every torsion class passes"))


def _check_c(ctx: _Context) -> CheckResult:
    if not ctx.finite:
        return CheckResult("c", SKIPPED, "needs finite vertex groups")
    if ctx.tree is None:
        return CheckResult("c", SKIPPED, "finite group")
    fails, unresolved, count = [], [], 0
    for v, x in ctx.elements():
        m = ctx.order(v, x)
        if not _is_prime(m):
            continue
        count += 1
        kind, rep = ctx.normalizer(v, x)
        s = ctx.sign(v, x)
        if kind == "Unresolved":
            unresolved.append("%s: fixed subtree unresolved" % ctx.label(v, x))
        elif rep.xi != s:
            fails.append("%s: omega = %+d but xi = %s (%s fixed subtree)"
                         % (ctx.label(v, x), s, "infinite" if rep.xi is None else rep.xi, rep.classification))
    if not count:
        return CheckResult("c", SKIPPED, "no elements of prime order")
    return CheckResult("c", *_summarise(fails, unresolved, "xi = omega for every prime-order class"))


def _check_d(ctx: _Context) -> CheckResult:
    if not ctx.finite:
        return CheckResult("d", SKIPPED, "needs finite vertex groups")
    if ctx.tree is None:
        return CheckResult("d", SKIPPED, "finite group")
    fails, unresolved, count = [], [], 0
    for v, x in ctx.elements():
        if not _is_prime(ctx.order(v, x)) or ctx.sign(v, x) != 1:
            continue
        count += 1
        kind, rep = ctx.normalizer(v, x)
        if kind == "Unresolved":
            unresolved.append("%s: normalizer unresolved" % ctx.label(v, x))
        elif kind == "FiniteWithWitness":
            fails.append("%s: normalizer is finite (%d fixed vertices)" % (ctx.label(v, x), rep.fixed_vertices))
        elif kind == "ContainsFreeGroup":
            fails.append("%s: normalizer has infinitely many ends" % ctx.label(v, x))
    if not count:
        return CheckResult("d", SKIPPED, "no orientation-preserving elements of prime order")
    return CheckResult("d", *_summarise(fails, unresolved, "every such normalizer has two ends"))


def _check_e(ctx: _Context) -> CheckResult:
    if not ctx.finite:
        return CheckResult("e", SKIPPED, "needs finite vertex groups")
    if ctx.tree is None:
        return CheckResult("e", SKIPPED, "finite group")
    fails, unresolved = [], []
    for v, x in ctx.elements():
        verdict = ctx.chiswell(v, x)
        if verdict.status == "Obstructed":
            fails.append("%s: %s" % (ctx.label(v, x), verdict.reason))
        elif verdict.status == "Inconclusive":
            unresolved.append("%s: %s" % (ctx.label(v, x), verdict.reason))
    return CheckResult("e", *_summarise(fails, unresolved, "the Chiswell sequence is exact for every class"))


def _check_f(ctx: _Context) -> CheckResult:
    g = ctx.g
    if not ctx.finite:
        return CheckResult("f", SKIPPED, "needs finite vertex groups")
    if not g.edges:
        return CheckResult("f", SKIPPED, "finite group")
    fails, count = [], 0
    for v, x in ctx.elements():
        if len(_prime_divisors(ctx.order(v, x))) != 1 or ctx.sign(v, x) != 1:
            continue
        count += 1
        G = g.group(v)
        images = [g.edges[i].into(end).image() for i, end in g.incident(v)]
        if not any(conjugate_in(G, x, S) is not None for S in images):
            fails.append("%s is not conjugate into an edge group at %s" % (ctx.label(v, x), g.vertices[v].id))
    if not count:
        return CheckResult("f", SKIPPED, "no orientation-preserving elements of prime-power order")
    return CheckResult("f", *_summarise(fails, [], "every such class meets an incident edge group"))


def _check_g(ctx: _Context) -> CheckResult:
    if not ctx.finite:
        return CheckResult("g", SKIPPED, "needs finite vertex groups")
    fails = []
    for vert in ctx.g.vertices:
        G = vert.group
        for S in G.subgroups:
            if len(S) % 2 and len(S) > 1 and not is_metacyclic(G, S):
                fails.append("%s has a non-metacyclic subgroup of odd order %d" % (vert.id, len(S)))
                break
    return CheckResult("g", *_summarise(fails, [], "odd-order subgroups are metacyclic"))


def _check_h(ctx: _Context) -> CheckResult:
    if not ctx.finite:
        return CheckResult("h", SKIPPED, "needs finite vertex groups")
    klein = [v.id for v in ctx.g.vertices if has_klein_four_subgroup(v.group)]
    if klein:
        return CheckResult("h", INCONCLUSIVE, "Klein four subgroup in %s; periodicity is not forced"
                           % ", ".join(klein))
    fails, notes = [], []
    dihedral = _dihedral_vertices(ctx.g)
    for vert in ctx.g.vertices:
        rep = periodicity(vert.group)
        if not rep.periodic:
            fails.append("%s is not periodic" % vert.id)
        elif not dihedral and ctx.g.edges and ctx.n % rep.period:
            fails.append("%s has period %d, which does not divide %d" % (vert.id, rep.period, ctx.n))
        else:
            notes.append("%s period %d" % (vert.id, rep.period))
    note = ", ".join(notes)
    if dihedral:
        note += "; period | n not required (dihedral vertex group)"
    return CheckResult("h", *_summarise(fails, [], note))


def _check_i(ctx: _Context) -> CheckResult:
    g = ctx.g
    if not ctx.finite:
        return CheckResult("i", SKIPPED, "needs finite vertex groups")
    if not g.edges:
        return CheckResult("i", SKIPPED, "finite group")
    ends = ends_count(g)
    dihedral = _dihedral_vertices(g)
    fails, notes = [], []
    if dihedral:
        notes.append("dihedral vertex groups %s" % ", ".join(dihedral))
    elif ends != Ends.TWO:
        fails.append("no dihedral vertex group but chi = %s, so %s ends"
                     % (format_fraction(virtual_euler(g)), ends))
    else:
        notes.append("two ends")
    if ends == Ends.TWO:
        tor = mapping_torus_extraction(g)
        orientable = ctx.omega.is_trivial()
        if isinstance(tor, NotSemidirect):
            if orientable:
                fails.append("orientable but not a semidirect product with Z: %s" % tor.reason)
            else:
                notes.append("non-orientable; %s" % tor.reason)
        else:
            k = ctx.n // 2
            try:
                verdict = theorem_d_check(MappingTorusInput(tor.F, tor.theta, k))
            except UnsupportedGroup as exc:
                return CheckResult("i", INCONCLUSIVE, "; ".join(notes + [str(exc)]))
            if not verdict.realizable:
                fails.append("mapping torus not realizable: %s" % verdict.reason)
            elif tor.F.order > 2 and verdict.orientable != orientable:
                fails.append("theta acts on top homology by %d, so the mapping torus is %sorientable, "
                             "but omega is %strivial" % (verdict.value, "" if verdict.orientable else "non-",
                                                         "" if orientable else "non"))
            else:
                notes.append("realizable mapping torus (%s)" % verdict.describe())
    if not notes and not fails:
        return CheckResult("i", SKIPPED, "hypotheses do not apply")
    if dihedral and ends != Ends.TWO and not fails:
        return CheckResult("i", SKIPPED, "; ".join(notes))
    return CheckResult("i", *_summarise(fails, [], "; ".join(notes)))


def _check_j(ctx: _Context) -> CheckResult:
    g = ctx.g
    if ctx.finite:
        return CheckResult("j", SKIPPED, "no one-ended vertex groups")
    if any(v.finite for v in g.vertices):
        return CheckResult("j", SKIPPED, "only applies when every vertex group has one end")
    fails = []
    for i, e in enumerate(g.edges):
        for c in e.group.elements():
            if c and ctx.omega.edge(g, i, c) != 1:
                fails.append("element %d of edge %s has omega = -1" % (c, e.id))
    return CheckResult("j", *_summarise(fails, [], "omega is trivial on all edge groups"))


def _check_k(ctx: _Context) -> CheckResult:
    g = ctx.g
    if not ctx.finite:
        return CheckResult("k", SKIPPED, "needs finite vertex groups")
    if not any(has_klein_four_subgroup(v.group) for v in g.vertices):
        return CheckResult("k", SKIPPED, "no Klein four subgroup")
    shape = all(classify_structure(v.group).kind == "KleinFour" for v in g.vertices) and \
        all(e.group.order == 2 for e in g.edges)
    if not shape:
        return CheckResult("k", INCONCLUSIVE, "the constraints hold for a finite-index subgroup "
                                              "with Klein four vertex groups, which is not computed")
    chi = virtual_euler(g)
    r = 1 - 4 * chi
    fails = []
    bad = [v.id for i, v in enumerate(g.vertices) if g.valence(i) != 3]
    if bad:
        fails.append("valence is not 3 at %s" % ", ".join(bad))
    if len(g.vertices) % 2:
        fails.append("|V| = %d is odd" % len(g.vertices))
    if not ctx.omega.is_trivial():
        fails.append("omega is not trivial")
    if r.denominator != 1 or r != 1 + 2 * len(g.vertices) or r % 4 != 1:
        fails.append("r = 1 - 4 chi = %s, expected 1 + 2|V| = %d" % (format_fraction(r), 1 + 2 * len(g.vertices)))
    note = "valence 3, |V| = %d even, orientable, r = %s = 1 mod 4" % (len(g.vertices), format_fraction(r))
    return CheckResult("k", *_summarise(fails, [], note))


_RUNNERS = {"a": _check_a, "b": _check_b, "c": _check_c, "d": _check_d, "e": _check_e, "f": _check_f,
            "g": _check_g, "h": _check_h, "i": _check_i, "j": _check_j, "k": _check_k}


def run_checks(g: GraphOfGroups, omega: OrientationCharacter | None = None, n: int = 4, max_radius: int = 8,
               only: Iterable[str] | None = None, fail_fast: bool = False) -> CheckReport:
    """Run the battery (a)-(k).  Unselected checks, and checks after a failure in
    ``fail_fast`` mode, are reported as Skipped."""
    if n % 2 or n < 4:
        raise BadDimension("n must be even and at least 4, got %d" % n)
    if not is_reduced_indecomposable(g):
        raise ValueError("the graph of groups must be reduced and indecomposable")
    omega = omega or OrientationCharacter.trivial()
    omega.check(g)
    selected = set(CHECKS if only is None else only)
    unknown = selected - set(CHECKS)
    if unknown:
        raise ValueError("unknown checks %s" % ", ".join(sorted(unknown)))
    ctx = _Context(g, omega, n, max_radius)
    results = {}
    stopped = False
    for name in CHEAP_ORDER:
        if name not in selected:
            results[name] = CheckResult(name, SKIPPED, "not selected")
        elif stopped:
            results[name] = CheckResult(name, SKIPPED, "not run after an earlier failure")
        else:
            results[name] = _RUNNERS[name](ctx)
            stopped = fail_fast and results[name].status == FAIL
    return CheckReport(n, tuple(results[c] for c in CHECKS))


def _is_prime(m: int) -> bool:
    return m > 1 and all(m % p for p in range(2, int(m ** 0.5) + 1))


def _prime_divisors(m: int) -> list[int]:
    return [p for p in range(2, m + 1) if m % p == 0 and _is_prime(p)]


def _dihedral_vertices(g: GraphOfGroups) -> list[str]:
    # the Klein four group counts as the dihedral group of order 4
    return [v.id for v in g.vertices if classify_structure(v.group).kind in ("Dihedral", "KleinFour")]


# -- mapping tori ----------------------------------------------------------------------

@dataclass(frozen=True)
class MappingTorusInput:
    F: FiniteGroup
    theta: GroupHom
    k: int | None = None

    def __post_init__(self):
        if not self.theta.bijective or self.theta.source != self.F or self.theta.target != self.F:
            raise ValueError("theta must be an automorphism of F")


@dataclass(frozen=True)
class NotSemidirect:
    reason: str
    quotient: str | None = None  # "D_infinity" for a mapping-cylinder double


@dataclass(frozen=True)
class TorusVerdict:
    realizable: bool
    orientable: bool | None
    value: int | None
    period: int | None
    reason: str = ""

    def describe(self) -> str:
        if not self.realizable:
            return "NotRealizable: %s" % self.reason
        return "Realizable, %s" % ("orientable" if self.orientable else "non-orientable")

    def to_json(self) -> dict:
        return {"realizable": self.realizable, "orientable": self.orientable, "value": self.value,
                "period": self.period, "reason": self.reason, "verdict": self.describe()}


def theorem_d_check(inp: MappingTorusInput) -> TorusVerdict:
    """Is F x|_theta Z the group of a PD_{2k}-complex whose universal cover is S^{2k-1}?

    Needs the period of F to divide 2k and theta to act on H_{2k-1}(F; Z) = Z/|F|
    by +1 or -1; the complex is orientable exactly when the sign is +1.  For
    |F| <= 2 the two signs agree and the answer is reported as orientable.
    """
    F, k = inp.F, inp.k
    if k is None or k < 1:
        raise ValueError("k must be a positive integer")
    rep = periodicity(F)
    if not rep.periodic:
        bad = next(r for r in rep.reasons if r.period is None)
        return TorusVerdict(False, None, None, None, "F does not have periodic cohomology (%s)" % bad.detail)
    if (2 * k) % rep.period:
        return TorusVerdict(False, None, None, rep.period,
                            "period %d does not divide %d" % (rep.period, 2 * k))
    try:
        value = top_homology_automorphism(F, inp.theta, k)
    except Unsupported as exc:
        raise UnsupportedGroup(str(exc)) from exc
    m = F.order
    if m <= 2:
        return TorusVerdict(True, True, value, rep.period)
    if value == 1:
        return TorusVerdict(True, True, 1, rep.period)
    if value == m - 1:
        return TorusVerdict(True, False, -1, rep.period)
    return TorusVerdict(False, None, value, rep.period,
                        "theta acts on H_%d by multiplication by %d, not by 1 or -1" % (2 * k - 1, value))


@dataclass(frozen=True)
class MappingTorusData:
    F: FiniteGroup
    theta: GroupHom
    vertex: str
    edge: str


def mapping_torus_extraction(g: GraphOfGroups) -> MappingTorusData | NotSemidirect:
    """Read F and theta off a single loop isomorphism; conjugation by the stable
    letter acts on F as into_t o into_o^-1."""
    if not g.all_finite:
        return NotSemidirect("one-ended vertex groups")
    if not g.edges:
        return NotSemidirect("finite group, no stable letter")
    chi = virtual_euler(g)
    if chi != 0:
        return NotSemidirect("chi = %s is not 0, so the group does not have two ends" % format_fraction(chi))
    if len(g.edges) == 1:
        cls = classify_edge(g, 0)
        e = g.edges[0]
        if cls.kind == "LoopIsomorphism":
            theta = e.into_t.compose(e.into_o.inverse())
            return MappingTorusData(g.group(e.o), theta, g.vertices[e.o].id, e.id)
        if cls.kind == "MCTie":
            return NotSemidirect("mapping-cylinder double: the quotient by the edge group is the infinite "
                                 "dihedral group", "D_infinity")
    return NotSemidirect("the graph is not a single loop isomorphism")
