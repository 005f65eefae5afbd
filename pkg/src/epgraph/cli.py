"""``epg`` command-line front end.

Exit status: 0 success, 1 computation error, 2 usage error, 3 when
``verify``/``sweep`` finds a mismatching row (skipped rows never fail).
"""

from __future__ import annotations

import argparse
import json
import random
import sys

import numpy as np

from . import __version__
from .errors import EmptyGraphError, EpgError, NotApplicable, SpecSyntaxError
from .families import parse_family
from .graphs import (Graph, commuting_graph_full, enhanced_power_graph, power_graph,
                     proper_enhanced_power_graph, to_dot, to_edge_list, to_json_dict)
from .groups import (DEFAULT_MAX_ORDER, GRAMMAR_HELP, build_group, load_cayley_table,
                     nilpotent_profile, parse_group_spec)
from .metrics import (DEFAULT_FLOW_N, DEFAULT_GAMMA_N, domination_number_exact,
                      dominating_vertices, metric_report, vertex_connectivity)
from .oracle import (MISMATCH, ANOMALY, Caps, alpha_bound, beta_bound, predict,
                     predicted_dom_members, verify)
from .spectrum import DEFAULT_EIGEN_N, spectrum_report

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_MISMATCH = 3

COMMANDS = ("info", "graph", "dom", "proper", "metrics", "gamma", "kappa",
            "bounds", "spectrum", "verify", "sweep")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n{GRAMMAR_HELP}\n")
        raise SystemExit(EXIT_USAGE)


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--group", help="group spec, e.g. Z2xZ4 or Z3xZ3xQ8")
    src.add_argument("--table", help="Cayley-table JSON file")
    common.add_argument("--out", help="write the result here instead of stdout")
    common.add_argument("--format", choices=("json", "dot", "edges", "text"), default="json")
    common.add_argument("--max-order", type=_positive, default=DEFAULT_MAX_ORDER)
    common.add_argument("--check-assoc", action="store_true",
                        help="verify associativity of a Cayley table (O(n^3))")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-flow-n", type=_positive, default=DEFAULT_FLOW_N)
    common.add_argument("--max-gamma-n", type=_positive, default=DEFAULT_GAMMA_N)
    common.add_argument("--eigen-n", type=_positive, default=DEFAULT_EIGEN_N)

    p = _Parser(prog="epg", description="Enhanced power graphs of finite groups.",
                epilog=GRAMMAR_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version", version=f"epg {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("info", parents=[common], help="order, element orders, Sylow profile")
    g = sub.add_parser("graph", parents=[common], help="export a graph on the group")
    g.add_argument("--kind", choices=("enhanced", "power", "commuting"), default="enhanced")
    sub.add_parser("dom", parents=[common], help="dominating vertices (brute force and predicted)")
    sub.add_parser("proper", parents=[common], help="export the proper enhanced power graph")
    m = sub.add_parser("metrics", parents=[common], help="invariants of the proper graph")
    m.add_argument("--whole", action="store_true", help="use the full enhanced power graph")
    sub.add_parser("gamma", parents=[common], help="domination number of the proper graph")
    sub.add_parser("kappa", parents=[common], help="vertex connectivity of the enhanced graph")
    sub.add_parser("bounds", parents=[common], help="alpha/beta connectivity bounds (abelian specs)")
    s = sub.add_parser("spectrum", parents=[common], help="Laplacian spectrum of the enhanced graph")
    s.add_argument("--method", choices=("jacobi", "lapack"), default="jacobi")
    sub.add_parser("verify", parents=[common], help="compare predictions with brute force")
    sw = sub.add_parser("sweep", parents=[common], help="verify every group in a family")
    sw.add_argument("--family", required=True,
                    help="abelian-p:<p>:<N> | abelian:<N> | pool:<atom,...>:<N>")
    sw.add_argument("--sample", type=_positive, help="verify a seeded random subset of this size")
    return p


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _caps(args) -> Caps:
    return Caps(max_order=args.max_order, max_flow_n=args.max_flow_n,
                max_gamma_n=args.max_gamma_n, eigen_n=args.eigen_n)


def _load_group(args):
    if args.table:
        return load_cayley_table(args.table, check_associativity=args.check_assoc,
                                 max_order=args.max_order)
    if args.group:
        return build_group(args.group, max_order=args.max_order)
    raise UsageError("one of --group or --table is required")


def _json_default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, float) and o == float("inf"):
        return "inf"
    raise TypeError(f"cannot serialise {type(o).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, default=_json_default) + "\n"


def _text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not all(
                    isinstance(x, (int, float, str)) for x in (v if isinstance(v, list) else [None])):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return "\n".join(lines)


def _scalar(v) -> str:
    if isinstance(v, list):
        return " ".join(_scalar(x) for x in v)
    if isinstance(v, dict):
        return json.dumps(v, default=_json_default)
    if v is None:
        return "-"
    return str(v)


def _render(obj, fmt: str) -> str:
    if fmt == "text":
        return _text(obj) + "\n"
    if fmt != "json":
        raise UsageError(f"--format {fmt} only applies to graph exports")
    return dumps(obj)


def _render_graph(graph: Graph, fmt: str, name: str, extra: dict | None = None) -> str:
    if fmt == "dot":
        return to_dot(graph, name)
    if fmt == "edges":
        return to_edge_list(graph)
    if fmt == "text":
        lines = [f"{name}: {graph.n} vertices, {graph.edge_count()} edges"]
        lines += [f"{graph.labels[v]}: {' '.join(graph.labels[u] for u in graph.neighbors(v))}"
                  for v in range(graph.n)]
        return "\n".join(lines) + "\n"
    out = {"group": name}
    out.update(extra or {})
    out.update(to_json_dict(graph))
    return dumps(out)


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_info(args):
    G = _load_group(args)
    orders, counts = np.unique(G.order_of, return_counts=True)
    out = {
        "group": G.display_name,
        "order": G.order,
        "is_abelian": G.is_abelian(),
        "element_orders": {str(int(o)): int(c) for o, c in zip(orders, counts)},
        "profile": nilpotent_profile(G).as_dict(),
    }
    return _render(out, args.format), EXIT_OK


def cmd_graph(args):
    G = _load_group(args)
    build = {"enhanced": enhanced_power_graph, "power": power_graph,
             "commuting": commuting_graph_full}[args.kind]
    graph = build(G)
    return _render_graph(graph, args.format, G.display_name, {"kind": args.kind}), EXIT_OK


def cmd_dom(args):
    G = _load_group(args)
    E = enhanced_power_graph(G)
    dom = dominating_vertices(E)
    profile = nilpotent_profile(G)
    out = {"group": G.display_name, "case": profile.as_dict()["case"],
           "dom_size": len(dom), "dom": [E.labels[v] for v in dom]}
    if profile.is_nilpotent:
        pred = predicted_dom_members(G, profile)
        out["predicted_size"] = len(pred)
        out["predicted"] = [E.labels[v] for v in pred]
        out["match"] = pred == dom
    return _render(out, args.format), EXIT_OK


def cmd_proper(args):
    G = _load_group(args)
    P, removed = proper_enhanced_power_graph(G, allow_empty=True)
    extra = {"removed": [G.name(v) for v in removed]}
    return _render_graph(P, args.format, G.display_name, extra), EXIT_OK


def cmd_metrics(args):
    G = _load_group(args)
    if args.whole:
        graph = enhanced_power_graph(G)
    else:
        graph, _ = proper_enhanced_power_graph(G, allow_empty=True)
    rep = metric_report(graph, gamma_n=args.max_gamma_n, flow_n=args.max_flow_n)
    out = {"group": G.display_name, "graph": "enhanced" if args.whole else "proper"}
    out.update(rep.as_dict(graph.labels))
    return _render(out, args.format), EXIT_OK


def cmd_gamma(args):
    G = _load_group(args)
    P, _ = proper_enhanced_power_graph(G, allow_empty=True)
    gamma = domination_number_exact(P, limit=args.max_gamma_n)
    out = {"group": G.display_name, "proper_n": P.n, "domination_number": gamma}
    if P.n == 0:
        out["note"] = "proper graph is empty (cyclic group)"
    pred = predict(nilpotent_profile(G))
    out["predicted"] = pred.domination_number
    return _render(out, args.format), EXIT_OK


def cmd_kappa(args):
    G = _load_group(args)
    E = enhanced_power_graph(G)
    kappa = vertex_connectivity(E, max_n=args.max_flow_n)
    spec = G.spec if G.spec is not None and G.spec.table is None else None
    pred = predict(nilpotent_profile(G), spec).kappa
    out = {"group": G.display_name, "n": E.n, "vertex_connectivity": kappa,
           "predicted": pred.as_json() if pred else None}
    return _render(out, args.format), EXIT_OK


def cmd_bounds(args):
    if not args.group:
        raise UsageError("bounds needs --group with an abelian spec")
    spec = parse_group_spec(args.group)
    out = {"group": str(spec), "alpha": alpha_bound(spec), "beta": beta_bound(spec)}
    return _render(out, args.format), EXIT_OK


def cmd_spectrum(args):
    G = _load_group(args)
    E = enhanced_power_graph(G)
    rep = spectrum_report(E, max_n=args.eigen_n, method=args.method)
    out = {"group": G.display_name}
    out.update(rep.as_dict())
    return _render(out, args.format), EXIT_OK


def cmd_verify(args):
    G = _load_group(args)
    rep = verify(G, _caps(args))
    code = EXIT_OK if rep.all_match else EXIT_MISMATCH
    return _render(rep.as_dict(), args.format), code


def cmd_sweep(args):
    names = parse_family(args.family)
    if args.sample and args.sample < len(names):
        picked = set(random.Random(args.seed).sample(range(len(names)), args.sample))
        names = [s for i, s in enumerate(names) if i in picked]
    caps = _caps(args)
    reports = []
    mismatches = anomalies = errors = 0
    for name in names:
        try:
            rep = verify(build_group(name, max_order=caps.max_order), caps)
        except EpgError as exc:
            errors += 1
            reports.append({"group": name, "error": str(exc)})
            continue
        d = rep.as_dict()
        mismatches += any(r.status == MISMATCH for r in rep.rows)
        anomalies += any(r.status == ANOMALY for r in rep.rows)
        reports.append(d)
    summary = {"family": args.family, "groups": len(names), "mismatched_groups": mismatches,
               "anomalous_groups": anomalies, "errors": errors}
    sys.stderr.write(f"sweep {args.family}: {len(names)} groups, {mismatches} with mismatches, "
                     f"{anomalies} flagged, {errors} errors\n")
    out = {"summary": summary, "reports": reports}
    return _render(out, args.format), EXIT_MISMATCH if mismatches else EXIT_OK


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = HANDLERS[args.command](args)
    except (UsageError, SpecSyntaxError) as exc:
        sys.stderr.write(f"epg: error: {exc}\n{GRAMMAR_HELP}\n")
        return EXIT_USAGE
    except (EpgError, NotApplicable, EmptyGraphError, OSError, ValueError) as exc:
        sys.stderr.write(f"epg: {type(exc).__name__}: {exc}\n")
        return EXIT_ERROR
    _emit(text, args.out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
