"""Command-line surface tying the toolkit together.

Exit codes: 0 on success, 1 on a negative verdict (failed validation, absent
witness, failed certificate check), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys

from . import builders, catalog, classify
from .certificate import decompose_blockwise, verify_certificate
from .codec import CodecError, parse_graph_auto, write_graph6
from .core import Graph
from .exact import exact_cw
from .expr import parse_expr, serialize, validate, width
from .generate import GenSpec, gen_chordal, gen_hfree_chordal, gen_split


def _load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph_auto(fh.read())


def _graph_arg(text: str) -> Graph:
    """A catalog name or a graph6 word."""
    try:
        return catalog.catalog_lookup(text)
    except catalog.CatalogError:
        pass
    return parse_graph_auto(text)


def _cmd_classify(args) -> int:
    h = _graph_arg(args.h)
    fn = {
        "chordal": classify.classify_chordal,
        "weakly-chordal": classify.classify_weakly_chordal,
        "split": classify.classify_split,
    }[args.host]
    verdict = fn(h)
    print(classify.format_verdict(verdict))
    return 0


def _cmd_build(args) -> int:
    g = _load_graph(args.infile)
    method = args.method
    if method == "auto":
        report = builders.build_auto(g)
    elif method == "forest":
        report = builders.build_forest_expr(g)
    elif method == "cograph":
        report = builders.build_cograph_expr(g)
    elif method == "kweb":
        from .recognize import detect_kweb

        w = detect_kweb(g)
        if w is None:
            print("input is not a k-web", file=sys.stderr)
            return 1
        report = builders.build_kweb_expr(w)
    elif method == "spider":
        from .recognize import detect_spider

        s = detect_spider(g)
        if s is None or s.kind != "thick":
            print("input is not a thick spider", file=sys.stderr)
            return 1
        report = builders.build_thick_spider_expr(s)
    elif method == "dh":
        report = builders.build_dh_expr(g)
    elif method == "maxdeg2":
        report = builders.build_maxdeg2_expr(g)
    elif method == "cliquetree":
        report = builders.build_cliquetree_expr(g)
    elif method == "bullfree":
        report = builders.build_bullfree_chordal(g)
    elif method == "cochair":
        report = builders.build_cochair_chordal(g)
    else:  # pragma: no cover - argparse rejects earlier
        raise AssertionError(method)
    text = serialize(report.expression)
    header = [
        f"# bound {report.claimed_bound}",
        f"# rule {report.rule}",
        f"# width {width(report.expression)}",
    ]
    for nid, route in report.dispatch_trace:
        header.append(f"# trace {nid} {route}")
    body = "\n".join(header + [text]) + "\n"
    if args.outfile:
        with open(args.outfile, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    return 0


def _cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    with open(args.expr, "r", encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln and not ln.startswith("#")]
    expr = parse_expr(" ".join(lines))
    ok = validate(expr, g)
    print(f"valid width={width(expr)}" if ok else "invalid")
    return 0 if ok else 1


def _cmd_exactcw(args) -> int:
    g = _load_graph(args.graph)
    value = exact_cw(g, args.max_k)
    if value is None:
        print(f">{args.max_k}")
        return 1
    print(value)
    return 0


def _cmd_gen(args) -> int:
    spec = GenSpec(args.model, args.n, args.density, args.forbidden, args.seed)
    if args.model == "chordal":
        g = gen_chordal(spec)
    elif args.model == "split":
        g = gen_split(spec)
    else:
        maybe = gen_hfree_chordal(spec)
        if maybe is None:
            print("attempt budget exhausted", file=sys.stderr)
            return 1
        g = maybe
    print(write_graph6(g))
    return 0


def _cmd_decompose(args) -> int:
    if args.theorem != "cok13-2p1":
        print(f"unknown decomposition {args.theorem!r}", file=sys.stderr)
        return 2
    g = _load_graph(args.graph)
    pieces = decompose_blockwise(g)
    ok = True
    from .core import induced_subgraph

    for block_vs, cert in pieces:
        sub, _ = induced_subgraph(g, block_vs)
        good = verify_certificate(sub, cert)
        ok = ok and good
        print(f"block {','.join(map(str, block_vs))} verified={str(good).lower()}")
        for line in cert.to_lines():
            print(f"  {line}")
    return 0 if ok else 1


def _cmd_catalog(args) -> int:
    if args.list:
        for name in catalog.catalog_names():
            print(name)
        return 0
    g = catalog.catalog_lookup(args.name)
    print(write_graph6(g))
    try:
        entry = catalog.catalog_entry(args.name)
        print(f"# {entry.description}")
    except catalog.CatalogError:
        pass
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="cwkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="boundedness verdict for an H-free class")
    p.add_argument("--host", choices=["chordal", "weakly-chordal", "split"], required=True)
    p.add_argument("--h", required=True, help="catalog name or graph6 word")
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("build", help="build a certified expression")
    p.add_argument(
        "--method",
        choices=[
            "auto",
            "forest",
            "cograph",
            "kweb",
            "spider",
            "dh",
            "maxdeg2",
            "cliquetree",
            "bullfree",
            "cochair",
        ],
        default="auto",
    )
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile")
    p.set_defaults(fn=_cmd_build)

    p = sub.add_parser("verify", help="validate an expression file against a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--expr", required=True)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("exactcw", help="exact clique-width of a small graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--max-k", dest="max_k", type=int, default=4)
    p.set_defaults(fn=_cmd_exactcw)

    p = sub.add_parser("gen", help="seeded random graph generation")
    p.add_argument("--model", choices=["chordal", "split", "hfree-chordal"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--forbidden")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("decompose", help="emit and check a decomposition certificate")
    p.add_argument("--theorem", default="cok13-2p1")
    p.add_argument("--graph", required=True)
    p.set_defaults(fn=_cmd_decompose)

    p = sub.add_parser("catalog", help="look up named graphs")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--list", action="store_true")
    group.add_argument("--name")
    p.set_defaults(fn=_cmd_catalog)

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (CodecError, catalog.CatalogError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
