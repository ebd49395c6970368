#!/usr/bin/env python3
"""Record a live API response as an offline fixture.

Usage:

    python scripts/record_fixture.py "graph search" --max-results 10 --out tests/fixtures

The fixture lands as <slug>.xml in the output directory, where the slug is
derived from the query the same way the offline source derives it. Requires
network access; nothing in the test suite depends on running this.
"""

import argparse
import sys
from pathlib import Path

from dataedron.arxiv import API_URL, ArxivClient, OfflineDirectory
from dataedron.query import parse, to_canonical, to_external_query


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("query")
    parser.add_argument("--max-results", type=int, default=10)
    parser.add_argument("--out", default="tests/fixtures")
    args = parser.parse_args()

    ast = parse(args.query)
    external = to_external_query(ast)
    url = f"{API_URL}?search_query={external.replace(' ', '+')}&start=0&max_results={args.max_results}"
    print(f"GET {url}")

    import requests

    response = requests.get(url, timeout=30)
    response.raise_for_status()

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    slug = OfflineDirectory.slug(to_canonical(ast))
    target = out_dir / f"{slug}.xml"
    target.write_bytes(response.content)
    print(f"wrote {target} ({len(response.content)} bytes)")

    # sanity-check the recording round-trips through the client
    client = ArxivClient(transport=lambda _: response.content)
    entries = client.fetch(external, args.max_results)
    print(f"fixture parses to {len(entries)} entries")
    return 0


if __name__ == "__main__":
    sys.exit(main())
