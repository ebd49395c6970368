/** Face assignment of the DataHbEdron.
 *
 * The six faces are fixed: (1) verbatim result list, (2) co-authors,
 * (3) co-keywords, (4) categories, (5) query history, (6) detail panel.
 * Facet faces resolve their type name against the session's navigable
 * types through small alias tables, so a desk corpus using "auth"/"kw"/
 * "cat" maps the same way as the live "authors"/"keywords"/"categories".
 */

import { SessionInfo } from "./api.js";

export type FaceKind = "verbatim" | "facet" | "history" | "detail";

export interface FaceModel {
  index: 1 | 2 | 3 | 4 | 5 | 6;
  kind: FaceKind;
  title: string;
  /** facet faces only: the metadata type shown */
  alpha?: string;
}

const AUTHOR_ALIASES = ["authors", "auth", "author"];
const KEYWORD_ALIASES = ["keywords", "kw", "keyword"];
const CATEGORY_ALIASES = ["categories", "cat", "category"];

function resolveAlpha(
  aliases: string[],
  available: string[],
  used: Set<string>,
): string | undefined {
  for (const alias of aliases) {
    if (available.includes(alias) && !used.has(alias)) {
      return alias;
    }
  }
  // fall back to the first unused type so unusual schemas still fill the face
  return available.find((a) => !used.has(a));
}

export function assignFaces(session: SessionInfo): FaceModel[] {
  // facet faces may also show the reference type (served as reference facet)
  const available = [...session.alphas];
  if (!available.includes(session.rho)) {
    available.push(session.rho);
  }
  const used = new Set<string>();

  const pick = (aliases: string[]): string | undefined => {
    const alpha = resolveAlpha(aliases, available, used);
    if (alpha !== undefined) {
      used.add(alpha);
    }
    return alpha;
  };

  const authors = pick(AUTHOR_ALIASES);
  const keywords = pick(KEYWORD_ALIASES);
  const categories = pick(CATEGORY_ALIASES);

  return [
    { index: 1, kind: "verbatim", title: "Results" },
    { index: 2, kind: "facet", title: "Co-authors", alpha: authors },
    { index: 3, kind: "facet", title: "Co-keywords", alpha: keywords },
    { index: 4, kind: "facet", title: "Categories", alpha: categories },
    { index: 5, kind: "history", title: "Queries" },
    { index: 6, kind: "detail", title: "Detail" },
  ];
}

/** Facet faces with a resolved type, in face order. */
export function facetFaces(faces: FaceModel[]): FaceModel[] {
  return faces.filter((f) => f.kind === "facet" && f.alpha !== undefined);
}
