"""Command-line interface.

Exit codes: 0 success, Candidate or Consistent; 1 Obstructed; 2 bad input;
3 Inconclusive or Unresolved.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .bass_serre import BadWord, BassSerreTree, NotFiniteOrder
from .checks import CHECKS, MappingTorusInput, NotSemidirect, run_checks, theorem_d_check, mapping_torus_extraction
from .chiswell import OrientationReversing, TrivialElement, hchis_obstruction
from .graph import (GraphError, classify_edges, ends_count, format_fraction, validate, virtual_euler)
from .groups import GroupHom
from .io import GRAPH_SCHEMA, GROUP_SCHEMA, InputError, dumps, graph_to_json, group_from_json, load_graph, load_group
from .presentation import fundamental_presentation
from .shipped import SHIPPED, shipped

OK, OBSTRUCTED, INPUT_ERROR, INCONCLUSIVE = 0, 1, 2, 3

EXIT = {"Candidate": OK, "Consistent": OK, "Obstructed": OBSTRUCTED,
        "Unresolved": INCONCLUSIVE, "Inconclusive": INCONCLUSIVE}


class UsageError(ValueError):
    pass


def _graph(args):
    path = args.graph
    if path is None:
        raise UsageError("--graph is required (a JSON file %s, or one of: %s)"
                         % (GRAPH_SCHEMA, ", ".join(SHIPPED)))
    if not os.path.exists(path) and path in SHIPPED:
        return shipped(path)
    return load_graph(path)


def _group(text: str):
    if os.path.exists(text):
        return load_group(text)
    return group_from_json(text)


def _even(text: str) -> int:
    n = int(text)
    if n < 4 or n % 2:
        raise argparse.ArgumentTypeError("n must be even and at least 4")
    return n


def _radius(text: str) -> int:
    r = int(text)
    if r < 1:
        raise argparse.ArgumentTypeError("radius must be positive")
    return r


def _filters(text: str) -> str:
    items = [x.strip() for x in text.split(",") if x.strip()]
    bad = [x for x in items if x not in CHECKS]
    if bad or not items:
        raise argparse.ArgumentTypeError("filters are check ids among a..k, comma separated")
    return "".join(items)


def _bounds(text: str) -> tuple[int, int]:
    try:
        v, e = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("bounds are V,E, for example 2,4") from None
    if v < 1 or e < 1:
        raise argparse.ArgumentTypeError("bounds must be at least 1")
    return v, e


def _emit(args, text: str, data) -> None:
    print(text)
    if getattr(args, "json", None):
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(dumps(data))


def _element(tree: BassSerreTree, args):
    if not args.element:
        raise UsageError("--element is required, for example --element 'v:a' or --element 'v:1 t_e'")
    return tree.parse(args.element.split())


# -- subcommands ----------------------------------------------------------------------

def cmd_validate(args) -> int:
    g, omega = _graph(args)
    findings = validate(g)
    classes = classify_edges(g)
    lines = ["%s: %s%s" % (f.name, "ok" if f.ok else "fails", "" if f.ok else " (%s)" % f.witness)
             for f in findings]
    lines += ["edge %s: %s" % (eid, c) for eid, c in classes.items()]
    data = {"findings": [f.to_json() for f in findings],
            "edges": {eid: c.to_json() for eid, c in classes.items()}}
    _emit(args, "\n".join(lines), data)
    return OK if all(f.ok for f in findings) else OBSTRUCTED


def cmd_present(args) -> int:
    g, _ = _graph(args)
    pres = fundamental_presentation(g, simplify=not args.raw)
    ab = pres.abelianization()
    _emit(args, "%s\nabelianization: %s" % (pres, ab),
          {"presentation": pres.to_json(), "abelianization": ab.to_json()})
    return OK


def cmd_euler(args) -> int:
    g, _ = _graph(args)
    chi = virtual_euler(g)
    ends = ends_count(g)
    _emit(args, "%s\nends: %s" % (format_fraction(chi), ends),
          {"chi": format_fraction(chi), "ends": str(ends)})
    return OK


def cmd_tree(args) -> int:
    g, _ = _graph(args)
    g.require_finite("the Bass-Serre tree")
    tree = BassSerreTree(g)
    ball = tree.tree_ball((), args.radius)
    sizes = ball.sphere_sizes()
    _emit(args, "sphere sizes: %s\nvertices: %d, edges: %d" % (" ".join(map(str, sizes)), len(ball.vertices),
                                                               len(ball.edges)),
          {"radius": args.radius, "sphere_sizes": sizes, "vertices": len(ball.vertices),
           "edges": len(ball.edges)})
    return OK


def cmd_fixed(args) -> int:
    g, _ = _graph(args)
    g.require_finite("fixed subtrees")
    tree = BassSerreTree(g)
    w = _element(tree, args)
    rep = tree.fixed_subtree(w, args.radius)
    xi = "infinity" if rep.classification == "ManyEnded" else rep.xi
    text = "%s, xi = %s, %d fixed vertices within radius %d\n%s" % (
        rep.classification, xi, rep.fixed_vertices, rep.radius, rep.note)
    _emit(args, text.rstrip(), rep.to_json(tree))
    return INCONCLUSIVE if rep.classification == "Unresolved" else OK


def cmd_chiswell(args) -> int:
    g, omega = _graph(args)
    g.require_finite("the Chiswell sequence")
    tree = BassSerreTree(g)
    w = _element(tree, args)
    verdict = hchis_obstruction(g, omega, w, args.radius, caveat=args.caveat, tree=tree)
    lines = ["%s: %s" % (verdict.status, verdict.reason)]
    if verdict.data:
        d = verdict.data
        lines.append("q = %d, omega = %+d, source %s, target %s, cokernel %s" % (
            d.q, d.omega_h, d.source, d.target, d.cokernel))
    _emit(args, "\n".join(lines), verdict.to_json(tree))
    return EXIT[verdict.status]


def cmd_check(args) -> int:
    g, omega = _graph(args)
    report = run_checks(g, omega, args.n, args.radius, only=args.filters)
    lines = ["(%s) %-13s %s" % (c.name, c.status, c.witness) for c in report.checks]
    lines.append("overall: %s" % report.overall)
    _emit(args, "\n".join(lines), report.to_json())
    return EXIT[report.overall]


def cmd_torus(args) -> int:
    if args.graph:
        g, _ = _graph(args)
        tor = mapping_torus_extraction(g)
        if isinstance(tor, NotSemidirect):
            _emit(args, "NotSemidirect: %s" % tor.reason, {"semidirect": False, "reason": tor.reason,
                                                             "quotient": tor.quotient})
            return OBSTRUCTED
        F, theta = tor.F, tor.theta
    else:
        if not args.group:
            raise UsageError("torus needs --group (%s) or --graph" % GROUP_SCHEMA)
        F = _group(args.group)
        theta = _automorphism(F, args.theta)
    if args.k is None:
        raise UsageError("torus needs --k (the dimension is 2k)")
    verdict = theorem_d_check(MappingTorusInput(F, theta, args.k))
    data = verdict.to_json()
    data["theta"] = list(theta.images)
    _emit(args, verdict.describe(), data)
    return OK if verdict.realizable else OBSTRUCTED


def _automorphism(F, text: Optional[str]) -> GroupHom:
    if text is None:
        return GroupHom(F, F, tuple(F.elements()))
    if "," in text:
        images = tuple(int(x) for x in text.split(","))
        f = GroupHom(F, F, images)
    else:
        # a -> a^j on every element; an automorphism only for abelian F
        j = int(text)
        f = GroupHom(F, F, tuple(F.power(x, j) for x in F.elements()))
    if not f.bijective:
        raise UsageError("theta is not an automorphism")
    return f


def cmd_enumerate(args) -> int:
    from .enumeration import Catalog, enumerate_graphs
    vgroups = tuple(_group(x) for x in args.groups.split(","))
    egroups = tuple(_group(x) for x in (args.edge_groups or args.groups).split(","))
    v, e = args.bounds
    cat = Catalog(vgroups, egroups, v, e, args.n, loops=not args.no_loops)
    out = open(args.output, "a" if args.resume else "w", encoding="utf-8") if args.output else None
    count = 0
    try:
        for s in enumerate_graphs(cat, args.filters, args.radius, args.progress, args.resume):
            count += 1
            line = {"index": s.index, "graph": graph_to_json(s.graph), "report": s.report.to_json()}
            if out:
                out.write(json.dumps(line, sort_keys=True) + "\n")
                out.flush()
            print("#%d %s: %d vertices, %d edges, %s" % (s.index, ", ".join(
                "%s(%s)" % (x.id, x.group.name) for x in s.graph.vertices), len(s.graph.vertices),
                len(s.graph.edges), s.report.overall))
    finally:
        if out:
            out.close()
    print("%d survivors" % count)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pdgroups", description=__doc__.splitlines()[0],
                                formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, graph=True, element=False, radius=False):
        sp = sub.add_parser(name, help=help_text, formatter_class=argparse.ArgumentDefaultsHelpFormatter)
        if graph:
            sp.add_argument("--graph", help="graph JSON file, or a shipped example name")
        if element:
            sp.add_argument("--element", help="word such as 'v:a' or 'v:1 t_e^-1 w:b'")
        if radius:
            sp.add_argument("--radius", type=_radius, default=8, help="search radius in the tree")
        sp.add_argument("--json", metavar="PATH", help="also write the report as canonical JSON")
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "well-formedness, reduced and indecomposable tests, edge classes")
    sp = add("present", cmd_present, "presentation of the fundamental group and its abelianization")
    sp.add_argument("--raw", action="store_true", help="skip Tietze simplification")
    add("euler", cmd_euler, "virtual Euler characteristic and number of ends")
    sp = add("tree", cmd_tree, "ball in the Bass-Serre tree around the base vertex")
    sp.add_argument("--radius", type=_radius, default=3)
    add("fixed", cmd_fixed, "fixed subtree of an element", element=True, radius=True)
    sp = add("chiswell", cmd_chiswell, "Chiswell exactness test for a finite-order element", element=True,
             radius=True)
    sp.add_argument("--caveat", action="store_true", help="allow orientation-reversing elements")
    sp = add("check", cmd_check, "run the necessary conditions (a)-(k)", radius=True)
    sp.add_argument("--n", type=_even, default=4, help="even dimension")
    sp.add_argument("--filters", type=_filters, help="comma separated subset of a..k")
    sp = add("torus", cmd_torus, "mapping torus realizability for F x| Z")
    sp.add_argument("--group", help="group JSON file or catalog name such as Z/5")
    sp.add_argument("--theta", help="a -> a^j as an integer j, or the images of all elements, comma separated")
    sp.add_argument("--k", type=int, help="dimension parameter, n = 2k")
    sp = add("enumerate", cmd_enumerate, "search small graphs of groups", graph=False, radius=True)
    sp.add_argument("--groups", default="V4", help="vertex groups, comma separated names or files")
    sp.add_argument("--edge-groups", help="edge groups (default: the vertex groups)")
    sp.add_argument("--bounds", type=_bounds, default=(2, 4), help="max vertices, max edges")
    sp.add_argument("--n", type=_even, default=4)
    sp.add_argument("--filters", type=_filters, help="comma separated subset of a..k")
    sp.add_argument("--no-loops", action="store_true", help="only edges between distinct vertices")
    sp.add_argument("--output", help="JSON-lines file of survivors")
    sp.add_argument("--progress", help="file holding the last emitted candidate index")
    sp.add_argument("--resume", action="store_true", help="continue after the index in --progress")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, UsageError, BadWord, GraphError, KeyError) as exc:
        print("error: %s" % (exc.args[0] if exc.args else exc), file=sys.stderr)
        return INPUT_ERROR
    except (NotFiniteOrder, TrivialElement, OrientationReversing) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return INPUT_ERROR
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
