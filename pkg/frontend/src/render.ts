/** Face renderers: pure functions from service responses to VNode trees.
 *
 * Facet faces draw the extra-node representation: vertices on an outer
 * ring, one extra node per hb-edge on an inner ring, link widths taken
 * verbatim from the service layout response. Placement here is purely
 * cosmetic (deterministic rings); weights, multiplicities and thicknesses
 * all come from the wire.
 */

import {
  EntrySummary,
  FacetJson,
  HistoryJson,
  LayoutJson,
  SessionInfo,
} from "./api.js";
import { HighlightState, highlightedEdges, highlightedRows } from "./highlight.js";
import { FaceModel } from "./faces.js";
import { VNode, h } from "./vnode.js";

const WIDTH = 420;
const HEIGHT = 420;
const CENTER_X = WIDTH / 2;
const CENTER_Y = HEIGHT / 2;
const OUTER_RADIUS = 170;
const INNER_RADIUS = 80;

function emptyState(message: string): VNode {
  return h("div", { class: "empty-state" }, message);
}

function ringPosition(index: number, count: number, radius: number): { x: number; y: number } {
  const angle = (2 * Math.PI * index) / Math.max(count, 1) - Math.PI / 2;
  return {
    x: Math.round((CENTER_X + radius * Math.cos(angle)) * 100) / 100,
    y: Math.round((CENTER_Y + radius * Math.sin(angle)) * 100) / 100,
  };
}

export function renderVerbatim(
  session: SessionInfo,
  highlight: HighlightState,
  onSelectRef?: string,
): VNode {
  if (session.entries.length === 0) {
    return emptyState("no results for this search");
  }
  const lit = new Set(highlightedRows(session.entries, highlight));
  const rows = session.entries.map((entry) => {
    const links: VNode[] = [];
    if (entry.abs_url) {
      links.push(h("a", { href: entry.abs_url, class: "abs-link" }, "abs"));
    }
    if (entry.pdf_url) {
      links.push(h("a", { href: entry.pdf_url, class: "pdf-link" }, "pdf"));
    }
    return h(
      "li",
      {
        class: lit.has(entry.id) ? "result highlighted" : "result",
        "data-ref": entry.id,
        ...(onSelectRef ? { "data-action": onSelectRef } : {}),
      },
      h("span", { class: "title" }, entry.title),
      h("span", { class: "sentence" }, entry.sentence),
      ...links,
    );
  });
  return h("ul", { class: "verbatim" }, ...rows);
}

export function renderFacet(
  facet: FacetJson,
  layout: LayoutJson,
  highlight: HighlightState,
): VNode {
  const extras = layout.nodes.filter((n) => n.kind === "extra").map((n) => n.id);
  if (extras.length === 0) {
    return emptyState(`no ${facet.alpha} co-occurrences`);
  }
  const vertices = layout.nodes.filter((n) => n.kind === "vertex").map((n) => n.id);
  const lit = new Set(highlightedEdges(facet, highlight));

  const vertexPos = new Map(
    vertices.map((v, i) => [v, ringPosition(i, vertices.length, OUTER_RADIUS)]),
  );
  const extraPos = new Map(
    extras.map((e, i) => [e, ringPosition(i, extras.length, INNER_RADIUS)]),
  );

  const links = layout.links.map((link) => {
    const from = vertexPos.get(link.vertex)!;
    const to = extraPos.get(link.edge)!;
    return h("line", {
      class: lit.has(link.edge) ? "link highlighted" : "link",
      x1: String(from.x),
      y1: String(from.y),
      x2: String(to.x),
      y2: String(to.y),
      "stroke-width": String(link.thickness),
      "data-vertex": link.vertex,
      "data-edge": link.edge,
      "data-multiplicity": String(link.multiplicity),
    });
  });

  const vertexNodes = vertices.map((v) => {
    const pos = vertexPos.get(v)!;
    return h(
      "g",
      { class: "vertex", "data-vertex": v },
      h("circle", { cx: String(pos.x), cy: String(pos.y), r: "12" }),
      h("text", { x: String(pos.x), y: String(pos.y - 16) }, v),
    );
  });

  const extraNodes = extras.map((e) => {
    const pos = extraPos.get(e)!;
    const weight = facet.weights[e];
    return h(
      "g",
      {
        class: lit.has(e) ? "extra highlighted" : "extra",
        "data-edge": e,
        "data-weight": String(weight),
      },
      h("rect", {
        x: String(pos.x - 10),
        y: String(pos.y - 10),
        width: "20",
        height: "20",
      }),
      h("text", { x: String(pos.x), y: String(pos.y + 24) }, `${e} (w=${weight})`),
    );
  });

  return h(
    "svg",
    {
      class: "facet",
      viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
      "data-alpha": facet.alpha,
      "data-rho": facet.rho,
    },
    ...links,
    ...vertexNodes,
    ...extraNodes,
  );
}

export function renderHistory(history: HistoryJson): VNode {
  if (history.queries.length === 0) {
    return emptyState("no queries yet");
  }
  const rows = history.queries.map((entry) => {
    const chips = Object.keys(entry.entries)
      .sort()
      .map((term) =>
        h(
          "span",
          { class: "term-chip", "data-term": term },
          `${term}×${entry.entries[term]}`,
        ),
      );
    return h(
      "li",
      { class: "query", "data-id": entry.id },
      h("code", { class: "canonical" }, entry.query),
      ...chips,
    );
  });
  return h("ul", { class: "history" }, ...rows);
}

export function renderDetail(entry: EntrySummary | null): VNode {
  if (!entry) {
    return emptyState("select a result to inspect it");
  }
  const links: VNode[] = [];
  if (entry.abs_url) {
    links.push(h("a", { href: entry.abs_url }, "article page"));
  }
  if (entry.pdf_url) {
    links.push(h("a", { href: entry.pdf_url }, "pdf"));
  }
  return h(
    "div",
    { class: "detail", "data-ref": entry.id },
    h("h2", {}, entry.title),
    h("p", { class: "sentence" }, entry.sentence),
    h("p", { class: "published" }, entry.published),
    ...links,
  );
}

export interface FaceData {
  session?: SessionInfo;
  facet?: FacetJson;
  layout?: LayoutJson;
  history?: HistoryJson;
  detail?: EntrySummary | null;
}

export function renderFace(
  face: FaceModel,
  data: FaceData,
  highlight: HighlightState,
): VNode {
  let body: VNode;
  switch (face.kind) {
    case "verbatim":
      body = data.session
        ? renderVerbatim(data.session, highlight)
        : emptyState("loading");
      break;
    case "facet":
      body =
        data.facet && data.layout
          ? renderFacet(data.facet, data.layout, highlight)
          : emptyState(face.alpha ? "loading" : "no such facet in this corpus");
      break;
    case "history":
      body = data.history ? renderHistory(data.history) : emptyState("loading");
      break;
    case "detail":
      body = renderDetail(data.detail ?? null);
      break;
  }
  return h(
    "section",
    { class: "face", "data-face": String(face.index) },
    h("h1", {}, face.title),
    body,
  );
}
