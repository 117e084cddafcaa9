"""Command-line driver: ``qlantopo build | merge | apply | restrict | verify | export | orbit``.

State lives in a session file (``--session``, else ``$QW_SESSION``, else
``qlantopo-session.json`` in the working directory). Exit status is 0 on
success, 1 on domain errors (reported as JSON on stderr) and 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from collections.abc import Iterator, Sequence
from pathlib import Path
from typing import Any

from qlantopo.errors import InvalidParamsError, TopologyError
from qlantopo.graph import Graph, QlanLabel
from qlantopo.measurement import MeasurementSpec, PauliBasis
from qlantopo.network import binary_star_labels, build_network, merge_remote_cz
from qlantopo.oracle.certify import CERTIFY_QUBIT_LIMIT, certify_measurement, certify_sequence
from qlantopo.oracle.lc import lc_orbit
from qlantopo.recipes import (
    RecipeKind,
    RecipeParams,
    RecipeReport,
    Side,
    apply,
    base_graph,
    required_params,
    restrict_report,
)
from qlantopo.serialize import dumps, graph_to_dot, graph_to_json
from qlantopo.session import Session, default_session_path, load_session, save_session

EXHAUSTIVE_MAX = 6


def _label(text: str) -> QlanLabel:
    try:
        return QlanLabel.parse(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a vertex label like 1_client_2: {text!r}") from None


def _label_list(text: str) -> list[QlanLabel]:
    return [_label(part.strip()) for part in text.split(",") if part.strip()]


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlantopo",
        description="Shape artificial topologies over two QLANs with Pauli measurements on graph states.",
    )
    parser.add_argument("--session", type=Path, default=None, help="session file (default: $QW_SESSION)")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--seed", type=int, default=None, help="reserved for sampling modes; unused")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("build", help="distribute a star state in each QLAN")
    p.add_argument("--n1", type=_positive, required=True, help="nodes in QLAN 1, super-node included")
    p.add_argument("--n2", type=_positive, required=True, help="nodes in QLAN 2, super-node included")

    sub.add_parser("merge", help="join the two stars with a remote CZ between super-nodes")

    p = sub.add_parser("apply", help="run a topology recipe on the merged network")
    p.add_argument("recipe", choices=[k.value for k in RecipeKind])
    p.add_argument("--side", choices=[s.value for s in Side], default=Side.RIGHT.value)
    p.add_argument("--client-i", type=int, default=None, help="client index in the target QLAN")
    p.add_argument("--client-j", type=int, default=None, help="client index in the source QLAN")
    p.add_argument("--dot", action="store_true", help="also print the graphs before and after as DOT")

    p = sub.add_parser("restrict", help="trim the latest recipe result to a vertex subset")
    p.add_argument("--keep", type=_label_list, required=True, help="comma-separated labels, e.g. 1_client_1,2_client_2")

    p = sub.add_parser("verify", help="check the rewrite rules against the stabilizer simulator")
    scope = p.add_mutually_exclusive_group(required=True)
    scope.add_argument("--exhaustive", type=_positive, metavar="N", help="every graph on up to N vertices")
    scope.add_argument("--recipes", action="store_true", help="every recipe over a grid of QLAN sizes")
    p.add_argument("--nmax", type=int, default=6, help="largest QLAN size for --recipes (default 6)")
    p.add_argument("--frame", choices=("graph", "raw"), default="graph", help="how measurement sequences compose")

    p = sub.add_parser("export", help="write a graph or the whole session")
    p.add_argument("--format", choices=("dot", "json"), required=True)
    p.add_argument("--what", choices=("shared", "result", "session"), default="result")
    p.add_argument("--output", type=Path, default=None, help="file to write (default: stdout)")

    p = sub.add_parser("orbit", help="enumerate the local-complementation orbit of a graph")
    p.add_argument("--what", choices=("shared", "result"), default="result")
    return parser


def _ledger_line(session: Session) -> str:
    led = session.require_network().ledger
    return f"ledger: generated={led.epr_generated} intra={led.epr_consumed_intra} inter={led.epr_consumed_inter}"


def _graph_lines(g: Graph) -> list[str]:
    lines = [f"{len(g)} vertices, {g.number_of_edges()} edges"]
    lines.extend(f"  {u} -- {v}" for u, v in g.sorted_edges())
    return lines


def _report_lines(r: RecipeReport) -> list[str]:
    params = [f"side={r.params.side.value}"]
    params += [f"{name}={getattr(r.params, name)}" for name in required_params(r.kind)]
    lines = [f"recipe: {r.kind.value} ({' '.join(params)})"]
    if r.keep is not None:
        lines.append("keep: " + ", ".join(map(str, r.keep)))
    lines.append("plan:")
    lines.extend(f"  {k}. {spec}" for k, spec in enumerate(r.plan, 1))
    lines.append("result: " + "\n".join(_graph_lines(r.result)))
    lines.append(f"matched: {str(r.matched).lower()}")
    return lines


def _cmd_build(args: argparse.Namespace, session: Session) -> tuple[Session, Any, list[str]]:
    net = build_network(args.n1, args.n2)
    session = Session(net)
    lines = [f"built QLAN 1 with {args.n1} node(s) and QLAN 2 with {args.n2} node(s)", _ledger_line(session)]
    return session, session.to_json(), lines


def _cmd_merge(args: argparse.Namespace, session: Session) -> tuple[Session, Any, list[str]]:
    net = merge_remote_cz(session.require_network())
    session = session.with_network(net)
    part1, part2 = binary_star_labels(net)
    lines = ["merged into a binary star: " + _graph_lines(net.shared_graph)[0]]  # type: ignore[arg-type]
    lines.append("part 1 (hub first): " + ", ".join(map(str, part1)))
    lines.append("part 2 (hub first): " + ", ".join(map(str, part2)))
    lines.append(_ledger_line(session))
    payload = {"shared_graph": graph_to_json(net.shared_graph), "ledger": net.ledger.to_json()}  # type: ignore[arg-type]
    return session, payload, lines


def _cmd_apply(args: argparse.Namespace, session: Session) -> tuple[Session, Any, list[str]]:
    net = session.require_network()
    kind = RecipeKind(args.recipe)
    params = RecipeParams(Side(args.side), args.client_j, args.client_i)
    report = apply(net, kind, params)
    lines = _report_lines(report)
    if args.dot:
        lines.append(graph_to_dot(base_graph(net, kind, params), "before").rstrip("\n"))
        lines.append(graph_to_dot(report.result, "after").rstrip("\n"))
    return session.with_report(report), report.to_json(), lines


def _cmd_restrict(args: argparse.Namespace, session: Session) -> tuple[Session, Any, list[str]]:
    if not args.keep:
        raise InvalidParamsError("keep must not be empty")
    report = restrict_report(session.require_network(), session.last_report(), args.keep)
    return session.with_report(report), report.to_json(), _report_lines(report)


def _all_graphs(n: int) -> Iterator[Graph]:
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(range(1, n + 1), [p for k, p in enumerate(pairs) if mask >> k & 1])


def _recipe_grid(nmax: int) -> Iterator[tuple[int, int, RecipeKind, RecipeParams]]:
    for n1 in range(2, nmax + 1):
        for n2 in range(2, nmax + 1):
            for kind in RecipeKind:
                need = required_params(kind)
                for side in Side:
                    src, dst = (n1, n2) if side is Side.RIGHT else (n2, n1)
                    js = range(1, src) if "client_j" in need else [None]
                    is_ = range(1, dst) if "client_i" in need else [None]
                    for j in js:
                        for i in is_:
                            yield n1, n2, kind, RecipeParams(side, j, i)


def _cmd_verify(args: argparse.Namespace, session: Session) -> tuple[Session, Any, list[str]]:
    cases: list[dict[str, Any]] = []
    total = failed = 0
    if args.exhaustive is not None:
        if args.exhaustive > EXHAUSTIVE_MAX:
            raise InvalidParamsError(f"--exhaustive is limited to {EXHAUSTIVE_MAX} vertices")
        for n in range(1, args.exhaustive + 1):
            for g in _all_graphs(n):
                for v in g.sorted_vertices():
                    for basis in PauliBasis:
                        cert = certify_measurement(g, MeasurementSpec(v, basis), with_orbit=args.json)
                        total += 1
                        failed += not cert
                        if args.json:
                            cases.append(cert.to_json())
        scope = f"every graph on 1..{args.exhaustive} vertices, every vertex, every basis"
    else:
        if args.nmax < 2:
            raise InvalidParamsError("--nmax must be at least 2")
        nets: dict[tuple[int, int], Any] = {}
        for n1, n2, kind, params in _recipe_grid(args.nmax):
            net = nets.get((n1, n2))
            if net is None:
                net = nets[(n1, n2)] = merge_remote_cz(build_network(n1, n2))
            report = apply(net, kind, params)
            case: dict[str, Any] = {"n1": n1, "n2": n2, "recipe": kind.value, "params": params.to_json()}
            case["matched"] = report.matched
            ok = report.matched
            start = base_graph(net, kind, params)
            if len(start) <= CERTIFY_QUBIT_LIMIT:
                cert = certify_sequence(start, report.plan, with_orbit=args.json, frame=args.frame)
                ok = ok and bool(cert)
                case.update(cert.to_json())
            total += 1
            failed += not ok
            if args.json:
                cases.append(case)
        scope = f"every recipe for QLAN sizes 2..{args.nmax} ({args.frame} frame)"
    payload = {"scope": scope, "total": total, "failed": failed, "cases": cases}
    lines = [f"verify: {scope}", f"cases: {total}, failed: {failed}"]
    return session, payload, lines


def _cmd_export(args: argparse.Namespace, session: Session) -> tuple[Session, Any, list[str]]:
    if args.what == "session":
        text = session.dumps() if args.format == "json" else None
        if text is None:
            raise InvalidParamsError("a session can only be exported as json")
    else:
        g = session.graph(args.what)
        text = graph_to_dot(g, args.what) if args.format == "dot" else dumps(graph_to_json(g))
    if args.output is not None:
        args.output.write_text(text, encoding="utf-8")
        return session, {"written": str(args.output)}, [f"wrote {args.output}"]
    return session, None, [text.rstrip("\n")]


def _cmd_orbit(args: argparse.Namespace, session: Session) -> tuple[Session, Any, list[str]]:
    g = session.graph(args.what)
    orbit = lc_orbit(g)
    members = sorted(orbit.graphs, key=lambda h: (h.number_of_edges(), h.sorted_edges()))
    lines = [f"LC orbit of the {args.what} graph: {len(orbit)} graph(s)" + ("" if orbit.complete else " (partial)")]
    for h in members:
        lines.append(f"  [{h.number_of_edges()} edges] " + ", ".join(f"{u}-{v}" for u, v in h.sorted_edges()))
    payload = {"size": len(orbit), "complete": orbit.complete, "graphs": [graph_to_json(h) for h in members]}
    return session, payload, lines


_COMMANDS = {
    "build": _cmd_build,
    "merge": _cmd_merge,
    "apply": _cmd_apply,
    "restrict": _cmd_restrict,
    "verify": _cmd_verify,
    "export": _cmd_export,
    "orbit": _cmd_orbit,
}
_MUTATING = {"build", "merge", "apply", "restrict"}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    path = args.session or default_session_path()
    try:
        session = Session() if args.command in ("build", "verify") else load_session(path)
        session, payload, lines = _COMMANDS[args.command](args, session)
    except TopologyError as exc:
        err = {"error": type(exc).__name__, "message": str(exc), "command": args.command}
        print(json.dumps(err, sort_keys=True), file=sys.stderr)
        return 1
    if args.command in _MUTATING:
        save_session(session, path)
    if args.json and payload is not None:
        sys.stdout.write(dumps(payload))
    else:
        for line in lines:
            print(line)
    failed = args.command == "verify" and payload["failed"]
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
