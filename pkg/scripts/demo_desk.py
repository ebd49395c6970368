#!/usr/bin/env python3
"""Walk the desk corpus through the full facet pipeline and print each step.

Run from the repository root:

    python scripts/demo_desk.py
"""

import json

from dataedron.facets import (
    Corpus,
    PhysicalEntity,
    SearchResult,
    covered_references,
    facet_to_json,
    navigate,
    raw_facet,
    reduce_facet,
    reference_reduced,
)
from dataedron.hbgraph import extra_node_layout
from dataedron.mset import Multiset


def entity(ref, **attrs):
    return PhysicalEntity(ref, {k: Multiset(v) for k, v in attrs.items()})


CORPUS = Corpus(
    [
        entity("r1", auth={"Alice": 1, "Bob": 1}, kw={"graph": 2, "search": 1}, cat={"cs.DS": 1}),
        entity("r2", auth={"Alice": 1, "Carol": 1}, kw={"graph": 1, "index": 1}, cat={"cs.DS": 1, "cs.IR": 1}),
        entity("r3", auth={"Dave": 1}, kw={"search": 2}, cat={"cs.IR": 1}),
    ],
    types=["auth", "kw", "cat"],
)
SEARCH = SearchResult(("r1", "r2", "r3"), query="demo")


def show(title, payload):
    print(f"\n== {title} ==")
    print(json.dumps(payload, indent=2))


def main():
    print("Desk corpus: 3 publications, types auth / kw / cat, reference cat")

    raw = raw_facet(CORPUS, SEARCH, "auth", "cat")
    show("raw facet auth/cat (one edge per category)", raw.hbgraph.to_json())

    reduced = reduce_facet(raw)
    show("reduced facet auth/cat", facet_to_json(reduced))

    ref = reference_reduced(CORPUS, SEARCH, "cat")
    show("reference facet (cat as its own view)", facet_to_json(ref))

    nav = navigate(CORPUS, reduced, {"Dave"}, "kw")
    show("navigate: select {Dave} on authors, target keywords", facet_to_json(nav))
    print(f"\nreferences behind the selection: {sorted(covered_references(nav))}")

    layout = extra_node_layout(reduced.whbgraph.base, 1.0, 8.0)
    show("extra-node layout of the reduced facet (thickness in [1, 8])", layout.to_json())


if __name__ == "__main__":
    main()
