"""Command line entry point: analyze, generate, serve, export."""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .config import load_config
from .errors import HelgraphError
from .export import export_static
from .interchange import load_graph, run_extractor, save_graph
from .server import SessionServer
from .synthetic import SyntheticParams, generate_synthetic


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="helgraph",
        description="Interactive codebase-diagram engine.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser(
        "analyze", help="run an extractor over a source tree and save the graph"
    )
    analyze.add_argument("source", help="path handed to the extractor")
    analyze.add_argument(
        "--extractor",
        required=True,
        help="executable that prints an interchange document for a source path",
    )
    analyze.add_argument("-o", "--output", required=True, help="output .helgraph.json")

    generate = sub.add_parser("generate", help="generate a synthetic graph")
    generate.add_argument("--seed", type=int, default=0)
    generate.add_argument("--projects", type=int, default=8)
    generate.add_argument("--namespace-depth", type=int, default=2)
    generate.add_argument("--types", type=int, default=3, help="types per namespace")
    generate.add_argument("--members", type=int, default=4, help="members per type")
    generate.add_argument("--diagnostic-rate", type=float, default=0.05)
    generate.add_argument("-o", "--output", required=True, help="output .helgraph.json")

    serve = sub.add_parser("serve", help="serve the session API for a graph")
    serve.add_argument("graph", help="path to a .helgraph.json document")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8473)
    serve.add_argument("--config", help="engine configuration file")

    export = sub.add_parser("export", help="write a self-contained web bundle")
    export.add_argument("graph", help="path to a .helgraph.json document")
    export.add_argument("-o", "--output", required=True, help="output directory")
    export.add_argument("--config", help="engine configuration file")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            graph = run_extractor(args.extractor, args.source)
            save_graph(graph, args.output)
            print(f"wrote {args.output} ({len(graph)} entities)")
        elif args.command == "generate":
            params = SyntheticParams(
                seed=args.seed,
                project_count=args.projects,
                namespace_depth=args.namespace_depth,
                types_per_namespace=args.types,
                members_per_type=args.members,
                diagnostic_rate=args.diagnostic_rate,
            )
            graph = generate_synthetic(params)
            save_graph(graph, args.output)
            print(f"wrote {args.output} ({len(graph)} entities)")
        elif args.command == "serve":
            graph = load_graph(args.graph)
            config = load_config(args.config)
            server = SessionServer(graph, config, host=args.host, port=args.port)
            host, port = server.address
            print(f"serving {args.graph} on http://{host}:{port}", flush=True)
            try:
                server.serve_forever()
            except KeyboardInterrupt:
                server.close()
        elif args.command == "export":
            graph = load_graph(args.graph)
            config = load_config(args.config)
            out = export_static(graph, config, args.output)
            print(f"exported bundle to {out}")
    except HelgraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
