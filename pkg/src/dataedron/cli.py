"""Command-line front door: search, facet export, navigation, service."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import sessions
from .facets import covered_references, facet_to_json, navigate
from .hbgraph import extra_node_layout
from .query import QueryParseError, UnsupportedQueryError
from .sessions import (
    DEFAULT_N,
    DEFAULT_W,
    InvalidSelectionError,
    LiveSource,
    OfflineSource,
    SessionStore,
    UnknownFacetError,
    facet_object,
)
from .service import resolve_data_dir

__all__ = ["main", "entrypoint"]


def _store(args) -> SessionStore:
    return SessionStore(resolve_data_dir(args.data_dir))


def _source(args):
    if args.offline:
        return OfflineSource(args.offline)
    return LiveSource()


def _print_dot(facet) -> str:
    """Graphviz rendering of the extra-node layout; penwidth carries thickness."""
    layout = extra_node_layout(facet.whbgraph.base, 1.0, 8.0)
    lines = ["graph facet {", "  layout=neato;", "  overlap=false;"]
    for v in sorted(layout.vertex_nodes):
        lines.append(f'  "v:{v}" [label="{v}", shape=circle];')
    for e in layout.extra_nodes:
        weight = facet.whbgraph.weight(e)
        lines.append(f'  "e:{e}" [label="{e} (w={weight})", shape=box, style=filled];')
    for link in layout.links:
        lines.append(
            f'  "v:{link.vertex}" -- "e:{link.edge}" [penwidth={link.thickness:.3f}];'
        )
    lines.append("}")
    return "\n".join(lines)


def cmd_search(args) -> int:
    session = sessions.run_search(
        _store(args),
        _source(args),
        query=args.query,
        n=args.max_results,
        w=args.top_words,
        rho=args.rho,
        session_id=args.sid,
    )
    print(f"session {session.id}  query {session.query}  rho {session.rho}")
    print(f"{len(session.entries)} results:")
    for entry in session.entries:
        sentence = entry.get("sentence") or ""
        if len(sentence) > 70:
            sentence = sentence[:67] + "..."
        print(f"  {entry['id']}  {entry['title']}")
        if sentence:
            print(f"      {sentence}")
    return 0


def cmd_facet(args) -> int:
    store = _store(args)
    session = store.load(args.sid)
    facet = facet_object(session, args.alpha)
    if args.format == "dot":
        print(_print_dot(facet))
    else:
        print(json.dumps(facet_to_json(facet), ensure_ascii=False, indent=2))
    return 0


def cmd_navigate(args) -> int:
    store = _store(args)
    session = store.load(args.sid)
    facet = facet_object(session, args.alpha)
    selection = [v for v in args.select.split(",") if v]
    result = navigate(session.corpus, facet, selection, args.target)
    if args.format == "dot":
        print(_print_dot(result))
    else:
        payload = {
            "facet": facet_to_json(result),
            "S_A": sorted(covered_references(result)),
        }
        print(json.dumps(payload, ensure_ascii=False, indent=2))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(data_dir=args.data_dir, offline_dir=args.offline)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dataedron",
        description="Faceted co-occurrence exploration of publication searches.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_search = sub.add_parser("search", help="run a search and open a session")
    p_search.add_argument("query")
    p_search.add_argument("--max-results", type=int, default=DEFAULT_N, metavar="N")
    p_search.add_argument("--top-words", type=int, default=DEFAULT_W, metavar="W")
    p_search.add_argument("--rho", default=None, help="reference type (default pubid)")
    p_search.add_argument("--sid", default=None, help="evolve an existing session")
    p_search.add_argument("--offline", default=None, metavar="DIR")
    p_search.add_argument("--data-dir", default=None)
    p_search.set_defaults(func=cmd_search)

    p_facet = sub.add_parser("facet", help="print a facet of a session")
    p_facet.add_argument("sid")
    p_facet.add_argument("alpha")
    p_facet.add_argument("--format", choices=("json", "dot"), default="json")
    p_facet.add_argument("--data-dir", default=None)
    p_facet.set_defaults(func=cmd_facet)

    p_nav = sub.add_parser("navigate", help="switch facet from a vertex selection")
    p_nav.add_argument("sid")
    p_nav.add_argument("alpha")
    p_nav.add_argument("--select", required=True, help="comma-separated vertex ids")
    p_nav.add_argument("--target", required=True, metavar="ALPHA")
    p_nav.add_argument("--format", choices=("json", "dot"), default="json")
    p_nav.add_argument("--data-dir", default=None)
    p_nav.set_defaults(func=cmd_navigate)

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--data-dir", default=None)
    p_serve.add_argument("--offline", default=None, metavar="DIR")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except QueryParseError as exc:
        print(f"query error at offset {exc.position}: {exc.message}", file=sys.stderr)
        return 2
    except (UnsupportedQueryError, UnknownFacetError, InvalidSelectionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KeyError as exc:
        print(f"error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # runtime failures (network, IO)
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
