"""Command-line interface.

Every subcommand prints one JSON report to stdout.  Exit status: 0 for
success, 2 for a verified negative (a certificate of impossibility was
issued), 1 for errors.  With --report-dir the outcome is also rendered as
delimited summaries and PNG figures.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import report as rpt
from .decompose import (
    NonDecomposability,
    StarDecomposition,
    decide_claw_4regular,
    decide_star_decomposition,
    exact_cover_oracle,
)
from .errors import StardecError, TranscriptionMissing
from .connectivity import (
    edge_connectivity,
    essential_edge_connectivity_check,
    vertex_connectivity,
)
from .families import (
    build_g48n,
    build_product_family,
    load_block,
    load_known_graph,
    list_known_graphs,
    verify_g48n,
    verify_known,
    verify_product_family,
    parse_known_file,
    BlockSpec,
)
from .generate import canonical_form, enumerate_regular, survey_claw
from .graph import (
    Graph,
    parse_edge_list,
    parse_graph6,
    write_edge_list,
    write_graph6,
)
from .orientation import Orientation, hakimi_orient, mod_k_orientation, verify_orientation

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NEGATIVE = 2


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def read_graph_file(path: str) -> Graph:
    """Edge-list files start with an 'n m' header; anything else is graph6."""
    text = _read_text(path)
    stripped = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not stripped:
        raise StardecError(f"{path}: empty graph file")
    head = stripped[0].split()
    if len(head) == 2 and all(t.lstrip("-").isdigit() for t in head):
        return parse_edge_list(text, source=path)
    return parse_graph6(stripped[0])


def _read_budget(path: str, g: Graph):
    vals = {}
    for ln in _read_text(path).splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        v, p = ln.split()
        vals[int(v)] = int(p)
    return [vals.get(v, 0) for v in range(g.n)]


def _emit(payload: dict, status: int, args) -> int:
    print(rpt.dump(payload))
    return status


def _report_dir(args) -> Path | None:
    if getattr(args, "report_dir", None):
        p = Path(args.report_dir)
        p.mkdir(parents=True, exist_ok=True)
        return p
    return None


def cmd_decide(args) -> int:
    started = time.time()
    g = read_graph_file(args.graph)
    k = args.k
    if args.oracle:
        result = exact_cover_oracle(g, k)
        if result is None:
            outcome = {"decision": "not_decomposable", "k": k, "by": "exact_cover"}
            status = EXIT_NEGATIVE
        else:
            outcome = {"decision": "decomposable", "k": k,
                       **rpt.decomposition_json(g, result)}
            status = EXIT_OK
    else:
        if k == 3 and g.is_regular(4) and g.is_simple():
            result = decide_claw_4regular(g)
        else:
            result = decide_star_decomposition(g, k)
        if isinstance(result, StarDecomposition):
            outcome = {"decision": "decomposable", "k": k,
                       **rpt.decomposition_json(g, result)}
            status = EXIT_OK
        else:
            outcome = {"decision": "not_decomposable", "k": k,
                       "certificate": rpt.certificate_json(result)}
            status = EXIT_NEGATIVE
    out = _report_dir(args)
    if out is not None:
        if isinstance(result, StarDecomposition):
            rpt.render_decomposition(g, result, out / "decomposition.png")
            rpt.write_csv(out / "stars.csv", ["star", "center", "edges"],
                          [[i, c, ";".join(f"{g.edges[e][0]}-{g.edges[e][1]}" for e in idx)]
                           for i, (c, idx) in enumerate(result.stars)])
        elif isinstance(result, NonDecomposability):
            rpt.render_certificate(g, result, out / "certificate.png")
        (out / "report.json").write_text(rpt.dump(outcome) + "\n")
    return _emit(rpt.run_report("decide", {"graph": args.graph, "k": k}, outcome, started),
                 status, args)


def cmd_orient(args) -> int:
    started = time.time()
    g = read_graph_file(args.graph)
    if args.mode == "hakimi":
        p = _read_budget(args.p, g) if args.p else [args.default_budget] * g.n
        res = hakimi_orient(g, p)
        if isinstance(res, Orientation):
            ok, _ = verify_orientation(res, in_bound=p)
            outcome = {"result": "orientation", **rpt.orientation_json(res), "verified": ok}
            status = EXIT_OK
        else:
            outcome = {"result": "violating_set", **rpt.violating_set_json(res)}
            status = EXIT_NEGATIVE
    else:
        k = args.k
        p = _read_budget(args.p, g) if args.p else None
        res = mod_k_orientation(g, k, p)
        if res is None:
            outcome = {"result": "not_found", "k": k, "exhaustive": True}
            status = EXIT_NEGATIVE
        else:
            ok, _ = verify_orientation(res, residue=(k, p or [0] * g.n))
            outcome = {"result": "orientation", **rpt.orientation_json(res), "verified": ok}
            status = EXIT_OK
    out = _report_dir(args)
    if out is not None:
        (out / "report.json").write_text(rpt.dump(outcome) + "\n")
    return _emit(rpt.run_report("orient", {"graph": args.graph, "mode": args.mode},
                                outcome, started), status, args)


def cmd_connectivity(args) -> int:
    started = time.time()
    g = read_graph_file(args.graph)
    outcome: dict = {}
    status = EXIT_OK
    lam, cert = edge_connectivity(g)
    outcome["edge_connectivity"] = lam
    outcome["edge_cut"] = rpt.cut_certificate_json(cert)
    if g.is_simple():
        kappa, vcert = vertex_connectivity(g)
        outcome["vertex_connectivity"] = kappa
        outcome["vertex_cut"] = rpt.cut_certificate_json(vcert)
    if args.essential is not None:
        ok, ecert = essential_edge_connectivity_check(g, args.essential)
        outcome["essential_threshold"] = args.essential
        outcome["essentially_connected"] = ok
        if not ok:
            outcome["essential_cut"] = rpt.cut_certificate_json(ecert)
            status = EXIT_NEGATIVE
    out = _report_dir(args)
    if out is not None:
        (out / "report.json").write_text(rpt.dump(outcome) + "\n")
        if status == EXIT_NEGATIVE:
            rpt.render_certificate(g, ecert, out / "essential_cut.png")
    return _emit(rpt.run_report("connectivity", {"graph": args.graph}, outcome, started),
                 status, args)


def cmd_family(args) -> int:
    started = time.time()
    if args.kind == "g48n":
        spec = load_block() if args.block is None else _block_from_file(args.block)
        g, rot = build_g48n(spec, args.n)
        rep = verify_g48n(g, rot, args.n, spec)
        inputs = {"kind": "g48n", "n": args.n}
    else:
        g = build_product_family(args.k, args.kn_cycles)
        rot = None
        rep = verify_product_family(g, args.k, args.kn_cycles)
        inputs = {"kind": "product", "k": args.k, "n": args.kn_cycles}
    outcome = {"graph6": write_graph6(g) if g.n <= 62 else None,
               "order": g.n, "size": g.m,
               "verification": rep.to_json()}
    status = EXIT_OK if rep.passed else EXIT_NEGATIVE
    out = _report_dir(args)
    if out is not None:
        (out / "graph.el").write_text(write_edge_list(g))
        (out / "report.json").write_text(rpt.dump(outcome) + "\n")
        rpt.write_csv(out / "checks.csv", ["check", "ok", "detail"],
                      [[c.name, c.ok, c.detail] for c in rep.checks])
        rpt.draw_graph(g, out / "family.png", rot=rot,
                       title=rep.name, labels=g.n <= 60)
    return _emit(rpt.run_report("family", inputs, outcome, started), status, args)


def _block_from_file(path: str) -> BlockSpec:
    name, g, labels, orders = parse_known_file(_read_text(path), path)
    spec = BlockSpec(graph=g, labels=labels, rotation=orders)
    spec.validate()
    return spec


def cmd_enumerate(args) -> int:
    started = time.time()
    count = 0
    lines = []
    for g in enumerate_regular(args.n, args.d, connected_only=not getattr(args, "all", False)):
        count += 1
        lines.append(write_graph6(g))
    outcome = {"n": args.n, "d": args.d, "connected_only": not getattr(args, "all", False),
               "count": count}
    out = _report_dir(args)
    if out is not None:
        (out / "graphs.g6").write_text("\n".join(lines) + ("\n" if lines else ""))
        outcome["graphs_file"] = str(out / "graphs.g6")
    else:
        for ln in lines:
            print(ln, file=sys.stderr)
    return _emit(rpt.run_report("enumerate", {"n": args.n, "d": args.d}, outcome, started),
                 EXIT_OK, args)


def cmd_survey(args) -> int:
    started = time.time()
    rep = survey_claw(args.n, workers=args.workers, allow_large=args.allow_large,
                      checkpoint_path=args.checkpoint)
    outcome = rep.to_json()
    out = _report_dir(args)
    if out is not None:
        (out / "report.json").write_text(rpt.dump(outcome) + "\n")
        (out / "witnesses.g6").write_text("\n".join(rep.witnesses) + ("\n" if rep.witnesses else ""))
        rows = []
        for i, w in enumerate(rep.witnesses):
            g = parse_graph6(w)
            from .graph import max_independent_set
            alpha = max_independent_set(g).bit_count()
            rows.append([i, w, g.n, alpha, g.n // 3])
            rpt.draw_graph(g, out / f"witness_{i:03d}.png",
                           title=f"witness {i}: alpha={alpha} < {g.n // 3} needed" if alpha < g.n // 3
                           else f"witness {i}")
        rpt.write_csv(out / "witnesses.csv",
                      ["index", "graph6", "order", "alpha", "required_independent"], rows)
    return _emit(rpt.run_report("survey", {"n": args.n}, outcome, started), EXIT_OK, args)


def cmd_verify_known(args) -> int:
    started = time.time()
    if args.name == "all":
        names = list_known_graphs()
    else:
        names = [args.name]
    results = {}
    status = EXIT_OK
    for name in names:
        try:
            rep = verify_known(name)
            results[name] = rep.to_json()
        except TranscriptionMissing as e:
            results[name] = {"skipped": "transcription missing"}
            if args.name != "all":
                status = EXIT_ERROR
    out = _report_dir(args)
    if out is not None:
        (out / "report.json").write_text(rpt.dump(results) + "\n")
        for name in names:
            try:
                kg = load_known_graph(name)
            except TranscriptionMissing:
                continue
            plain = {v: [t for t in kg.orders[v] if not isinstance(t, str)]
                     for v in kg.orders} if kg.orders else None
            rot = None
            if plain:
                from .embedding import rotation_from_edge_orders
                try:
                    rot = rotation_from_edge_orders(kg.graph, plain)
                except StardecError:
                    rot = None
            rpt.draw_graph(kg.graph, out / f"{name}.png", rot=rot, title=name)
    return _emit(rpt.run_report("verify-known", {"name": args.name}, results, started),
                 status, args)


def cmd_convert(args) -> int:
    started = time.time()
    g = read_graph_file(args.input)
    if args.to == "graph6":
        text = write_graph6(g) + "\n"
    elif args.to == "edgelist":
        text = write_edge_list(g)
    else:
        text = rpt.to_dot(g)
    if args.output:
        Path(args.output).write_text(text)
        outcome = {"written": args.output, "format": args.to}
        return _emit(rpt.run_report("convert", {"input": args.input}, outcome, started),
                     EXIT_OK, args)
    sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="stardec",
                                 description="k-star decompositions: decide, certify, enumerate")
    default_workers = int(os.environ.get("STARDEC_WORKERS", "1"))
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide a k-star decomposition")
    p.add_argument("graph")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--oracle", action="store_true",
                   help="use the exact-cover backtracker instead of the criterion")
    p.add_argument("--report-dir")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("orient", help="orientation solvers")
    p.add_argument("graph")
    p.add_argument("--mode", choices=["hakimi", "modk"], default="hakimi")
    p.add_argument("--p", help="budget/residue file with 'vertex value' lines")
    p.add_argument("--k", type=int, default=3, help="modulus for --mode modk")
    p.add_argument("--default-budget", type=int, default=1)
    p.add_argument("--report-dir")
    p.set_defaults(func=cmd_orient)

    p = sub.add_parser("connectivity", help="edge/vertex/essential connectivity")
    p.add_argument("graph")
    p.add_argument("--essential", type=int, default=None,
                   help="check essential edge-connectivity at this threshold")
    p.add_argument("--report-dir")
    p.set_defaults(func=cmd_connectivity)

    p = sub.add_parser("family", help="build and verify a counterexample family member")
    p.add_argument("kind", choices=["g48n", "product"])
    p.add_argument("--n", type=int, default=1, help="ring parameter for g48n")
    p.add_argument("--block", help="block file (default: bundled block)")
    p.add_argument("--k", type=int, default=4, help="star size for the product family")
    p.add_argument("--kn-cycles", type=int, default=1, dest="kn_cycles",
                   help="cycle length multiplier n for the product family")
    p.add_argument("--report-dir")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("enumerate", help="isomorph-free d-regular enumeration")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--all", action="store_true", help="include disconnected graphs")
    p.add_argument("--report-dir")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("survey", help="count 4-regular graphs with no claw-decomposition")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--workers", type=int, default=default_workers)
    p.add_argument("--allow-large", action="store_true",
                   help="permit orders of 18 and beyond (about 1e9 graphs at 18)")
    p.add_argument("--checkpoint", help="subtree checkpoint file (resumable)")
    p.add_argument("--report-dir")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("verify-known", help="re-verify a registry graph's claims")
    p.add_argument("--name", required=True,
                   help="registry name or 'all'; see list in the README")
    p.add_argument("--report-dir")
    p.set_defaults(func=cmd_verify_known)

    p = sub.add_parser("convert", help="convert between graph6, edge list and DOT")
    p.add_argument("input")
    p.add_argument("output", nargs="?")
    p.add_argument("--to", choices=["graph6", "edgelist", "dot"], required=True)
    p.set_defaults(func=cmd_convert)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except StardecError as e:
        print(json.dumps({"error": type(e).__name__, "message": str(e)}), file=sys.stderr)
        return EXIT_ERROR
    except (OSError, ValueError) as e:
        print(json.dumps({"error": type(e).__name__, "message": str(e)}), file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
