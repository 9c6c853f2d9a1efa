"""Command line entry point: ``endscope <subcommand> ...``.

Exit status is 0 on success, 1 when a verification fails, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from .end_structure import closure, enumerate_ends
from .envelope import EnvelopeError, check_envelope, envelope
from .exhaustion import exhaustion
from .graph_core import (
    ZOO,
    Epvs,
    PresentationError,
    Upis,
    emit_presentation,
    example,
    parse_presentation,
    unfold,
    validate,
)
from .spanning_tree import HorizonError, SpanningTreePrefix, build_spanning_tree
from .spanning_tree import to_dot as tree_dot
from .starcomb import StarCombError, certificate_json, check_certificate, external_star_or_comb, star_or_comb
from .envelope import components_of_complement
from .treedecomp import TreeDecompositionPrefix, build_tree_decomposition
from .treedecomp import to_dot as td_dot
from .verify import check_display, check_end_faithful, check_td_axioms, check_upwards_disjoint

SCHEMA = 1


class UsageError(Exception):
    pass


def _default_horizon() -> int:
    raw = os.environ.get("ENDSCOPE_DEPTH_DEFAULT")
    if raw is None:
        return 40
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"ENDSCOPE_DEPTH_DEFAULT must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError("ENDSCOPE_DEPTH_DEFAULT must be positive")
    return value


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group()
    source.add_argument("--graph", metavar="FILE", help="presentation in the text format")
    source.add_argument("--example", metavar="NAME", help="built-in example (see `zoo`)")
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--depth", type=int)
    common.add_argument("--horizon", type=int)
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="endscope", description="Ends, envelopes and decompositions of eventually periodic graphs.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[common], help="summary of a presentation")
    sub.add_parser("ends", parents=[common], help="list ends")
    for name, text in (("closure", "ends in the closure of a set"), ("envelope", "connected envelope of a set")):
        sp = sub.add_parser(name, parents=[common], help=text)
        sp.add_argument("--set", dest="vset", help="vertex set, e.g. '{c0 t0.0=1(01)}'; random if omitted")
    sp = sub.add_parser("dominators", parents=[common], help="dominating vertices per end")
    sp.add_argument("--end", help="restrict to one end id")
    sp = sub.add_parser("starcomb", parents=[common], help="star or comb attached to a set")
    sp.add_argument("--set", dest="vset")
    sp.add_argument("--paths", type=int, default=5)
    sp.add_argument("--external", action="store_true", help="attach to the set from a component of its complement")
    sp = sub.add_parser("exhaustion", parents=[common], help="layered exhaustion")
    sp.add_argument("--layers", type=int, default=8)
    sub.add_parser("treedecomp", parents=[common], help="tree-decomposition prefix")
    sub.add_parser("spanningtree", parents=[common], help="end-faithful spanning tree prefix")
    sp = sub.add_parser("verify", parents=[common], help="check a certificate file")
    sp.add_argument("--what", choices=("td", "display", "tree"), required=True)
    sp.add_argument("--in", dest="infile", required=True)
    sub.add_parser("unfold", parents=[common], help="finite unfolding")
    sub.add_parser("zoo", parents=[common], help="list or emit built-in examples")
    return p


def _load(args, required: bool = True):
    if args.graph:
        try:
            with open(args.graph, encoding="utf-8") as fh:
                return parse_presentation(fh.read())
        except OSError as err:
            raise UsageError(f"cannot read {args.graph}: {err.strerror}") from None
    if args.example:
        if args.example not in ZOO:
            raise UsageError(f"unknown example {args.example!r}; choose from {', '.join(ZOO)}")
        return example(args.example)
    if required:
        raise UsageError("give --graph FILE or --example NAME")
    return None


def _random_set(pres, rng: random.Random) -> Epvs:
    cores = [c for c in range(pres.core_count) if rng.random() < 0.3]
    strands = {}
    for t, spec in enumerate(pres.tails):
        for i in range(spec.period):
            k, p = rng.randint(0, 4), rng.randint(1, 3)
            strands[(t, i)] = Upis.make([rng.random() < 0.5 for _ in range(k)], [rng.random() < 0.5 for _ in range(p)])
    s = Epvs(cores, strands)
    return s if not s.is_empty() else Epvs.of([pres.root()])


def _set_arg(args, pres) -> Epvs:
    if args.vset is None:
        return _random_set(pres, random.Random(args.seed))
    try:
        s = Epvs.from_text(args.vset)
    except ValueError as err:
        raise UsageError(str(err)) from None
    if not pres.owns(s):
        raise UsageError("set mentions vertices outside the presentation")
    return s


def _emit(args, payload: dict, text: str, dot: str | None = None) -> None:
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA, **payload}, indent=2))
    elif args.format == "dot":
        if dot is None:
            raise UsageError(f"`{args.command}` has no DOT output")
        print(dot)
    else:
        print(text)


def _unfold_dot(g) -> str:
    lines = [f"graph {json.dumps(g.graph.get('name', 'G'))} {{"]
    for v in sorted(g):
        lines.append(f'  "{v.label()}";')
    for a, b in sorted(tuple(sorted(e)) for e in g.edges):
        lines.append(f'  "{a.label()}" -- "{b.label()}";')
    lines.append("}")
    return "\n".join(lines)


# subcommands ------------------------------------------------------------------


def cmd_info(args) -> int:
    pres = _load(args)
    report = validate(pres)
    ends = enumerate_ends(pres) if report.ok else []
    payload = {
        "name": pres.name,
        "cores": pres.core_count,
        "tails": [spec.period for spec in pres.tails],
        "hubs": [f"c{h}" for h in sorted(pres.hubs)],
        "valid": report.valid,
        "connected": report.connected,
        "problems": list(report.problems),
        "ends": len(ends),
    }
    text = "\n".join(f"{k}: {v}" for k, v in payload.items())
    _emit(args, payload, text)
    return 0


def cmd_ends(args) -> int:
    pres = _load(args)
    ends = enumerate_ends(pres)
    lines = [
        f"{e.id} tail {e.tail} strands {sorted(e.strands)} "
        + ("topological" if e.topological else f"dominated by {' '.join(v.label() for v in sorted(e.dominators))}")
        for e in ends
    ]
    _emit(args, {"ends": [e.to_json() for e in ends]}, "\n".join(lines) or "no ends")
    return 0


def cmd_closure(args) -> int:
    pres = _load(args)
    s = _set_arg(args, pres)
    ids = [e.id for e in closure(pres, s)]
    _emit(args, {"set": s.to_text(), "closure": ids}, f"{s.to_text()} -> {' '.join(ids) or 'no ends'}")
    return 0


def cmd_dominators(args) -> int:
    pres = _load(args)
    ends = enumerate_ends(pres)
    if args.end is not None:
        ends = [e for e in ends if e.id == args.end]
        if not ends:
            raise UsageError(f"no end {args.end!r}")
    rows = {e.id: [v.label() for v in sorted(e.dominators)] for e in ends}
    _emit(args, {"dominators": rows}, "\n".join(f"{k}: {' '.join(v) or '-'}" for k, v in rows.items()))
    return 0


def cmd_starcomb(args) -> int:
    pres = _load(args)
    s = _set_arg(args, pres)
    interior = None
    if args.external:
        comps = [c.vertices for c in components_of_complement(pres, s) if not c.is_family]
        comps = [c for c in comps if not pres.boundary(c).is_finite()]
        if not comps:
            raise UsageError("no component of the complement has an infinite neighbourhood")
        interior = comps[0]
        cert = external_star_or_comb(pres, s, interior)
    else:
        if s.is_finite():
            raise UsageError("star-comb needs an infinite set")
        cert = star_or_comb(pres, s)
    report = check_certificate(pres, cert, args.paths, attached_to=s, interior=interior)
    data = certificate_json(cert, args.paths)
    text = [f"{data['kind']} ({'external' if cert.external else 'direct'}) attached to {s.to_text()}"]
    text += [" - ".join(p) for p in data["first_n_paths"]]
    _emit(args, {"certificate": data, "checked": report.ok}, "\n".join(text))
    return 0 if report.ok else 1


def cmd_envelope(args) -> int:
    pres = _load(args)
    s = _set_arg(args, pres)
    ustar = envelope(pres, s)
    check = check_envelope(pres, s, ustar)
    flags = {
        "superset": check.superset,
        "connected": check.connected,
        "finite_adhesion": check.finite_adhesion,
        "closure_equal": check.closure_equal,
    }
    _emit(args, {"set": s.to_text(), "envelope": ustar.to_text(), "checks": flags}, f"{s.to_text()} -> {ustar.to_text()}")
    return 0 if check.ok else 1


def cmd_exhaustion(args) -> int:
    pres = _load(args)
    ex = exhaustion(pres, args.layers)
    lines = [f"H{m}: {h.to_text()}" for m, h in enumerate(ex.layers)]
    if ex.fixed_point is not None:
        lines.append(f"fixed point at layer {ex.fixed_point}")
    _emit(args, {"layers": ex.to_json(), "fixed_point": ex.fixed_point, "ok": ex.ok}, "\n".join(lines))
    return 0 if ex.ok else 1


def cmd_treedecomp(args) -> int:
    pres = _load(args)
    td = build_tree_decomposition(pres, args.depth or 6, args.horizon or _default_horizon())
    lines = [f"{n.id} <- {n.parent or '-'}  part {n.part.to_text()}  sep {n.separator.to_text()}" for n in td.nodes]
    lines += [f"{row['end']}: {' '.join(row['ray'])}" for row in td.display_table]
    lines += [f"{row['end']} (dominated) at {row['node']}" for row in td.dominated_homes]
    payload = {"presentation": emit_presentation(pres), **td.to_json()}
    _emit(args, payload, "\n".join(lines), td_dot(td))
    return 0


def cmd_spanningtree(args) -> int:
    pres = _load(args)
    horizon = args.horizon or _default_horizon()
    st = build_spanning_tree(pres, args.depth or min(12, horizon - 2), horizon)
    lines = [f"{a.label()} - {b.label()}" for a, b in st.edges]
    lines += [f"{c['end']}: {' '.join(v.label() for v in c['path'])}" for c in st.ray_certificates]
    payload = {"presentation": emit_presentation(pres), **st.to_json()}
    _emit(args, payload, "\n".join(lines), tree_dot(st))
    return 0


def cmd_verify(args) -> int:
    try:
        with open(args.infile, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as err:
        raise UsageError(f"cannot read certificate {args.infile}: {err}") from None
    pres = _load(args, required=False)
    if pres is None:
        if "presentation" not in data:
            raise UsageError("certificate has no presentation; give --graph or --example")
        pres = parse_presentation(data["presentation"])
    try:
        if args.what == "tree":
            reports = [check_end_faithful(pres, SpanningTreePrefix.from_json(data))]
        else:
            td = TreeDecompositionPrefix.from_json(data)
            if args.what == "td":
                horizon = min(args.horizon or td.horizon, td.horizon)
                reports = [check_td_axioms(pres, td, horizon), check_upwards_disjoint(td)]
            else:
                reports = [check_display(pres, td)]
    except (KeyError, TypeError) as err:
        raise UsageError(f"malformed certificate: missing {err}") from None
    ok = all(r.ok for r in reports)
    text = "\n".join([r.line() for r in reports] + [json.dumps(w) for r in reports for w in r.witnesses])
    _emit(args, {"ok": ok, "reports": [r.to_json() for r in reports]}, text)
    return 0 if ok else 1


def cmd_unfold(args) -> int:
    pres = _load(args)
    depth = args.depth if args.depth is not None else _default_horizon()
    g = unfold(pres, depth)
    nodes = [v.label() for v in sorted(g)]
    edges = sorted([a.label(), b.label()] for a, b in (sorted(e) for e in g.edges))
    text = f"{len(nodes)} vertices, {len(edges)} edges\n" + "\n".join(f"{a} {b}" for a, b in edges)
    _emit(args, {"depth": depth, "nodes": nodes, "edges": edges}, text, _unfold_dot(g))
    return 0


def cmd_zoo(args) -> int:
    if args.example or args.graph:
        pres = _load(args)
        text = emit_presentation(pres)
        _emit(args, {"name": pres.name, "presentation": text}, text.rstrip("\n"))
    else:
        _emit(args, {"examples": list(ZOO)}, "\n".join(ZOO))
    return 0


COMMANDS = {
    "info": cmd_info,
    "ends": cmd_ends,
    "closure": cmd_closure,
    "dominators": cmd_dominators,
    "starcomb": cmd_starcomb,
    "envelope": cmd_envelope,
    "exhaustion": cmd_exhaustion,
    "treedecomp": cmd_treedecomp,
    "spanningtree": cmd_spanningtree,
    "verify": cmd_verify,
    "unfold": cmd_unfold,
    "zoo": cmd_zoo,
}


def run(argv: list[str] | None = None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for flag in ("depth", "horizon"):
        value = getattr(args, flag)
        if value is not None and value < 1:
            print(f"endscope: --{flag} must be positive", file=sys.stderr)
            return 2
    try:
        return COMMANDS[args.command](args)
    except (UsageError, PresentationError, HorizonError) as err:
        print(f"endscope: {err}", file=sys.stderr)
        return 2
    except (EnvelopeError, StarCombError) as err:
        print(f"endscope: {err}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
