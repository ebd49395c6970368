/** Cross-facet highlighting.
 *
 * A vertex selection is resolved by the service (/navigate): the response
 * carries the reference values behind the selected hb-edges (the keys of
 * the target facet's refs map) and the physical references S_A. Faces
 * highlight purely from those fields: an hb-edge lights up when its class
 * meets the selection's reference values, a verbatim row when its id is in
 * S_A. No facet math happens client-side.
 */

import { EntrySummary, FacetJson, NavigateResponse } from "./api.js";

export interface HighlightState {
  /** reference values (of type rho) behind the selection */
  values: ReadonlySet<string>;
  /** physical references behind the selection (S_A) */
  references: ReadonlySet<string>;
}

export function emptyHighlight(): HighlightState {
  return { values: new Set(), references: new Set() };
}

export function highlightFromNavigation(nav: NavigateResponse): HighlightState {
  return {
    values: new Set(Object.keys(nav.facet.refs)),
    references: new Set(nav.S_A),
  };
}

/** Edge ids of `facet` whose class contains a selected reference value. */
export function highlightedEdges(facet: FacetJson, state: HighlightState): string[] {
  return Object.keys(facet.classes)
    .filter((edgeId) => facet.classes[edgeId].some((value) => state.values.has(value)))
    .sort();
}

/** Result rows (by id) belonging to the selection's reference scope. */
export function highlightedRows(entries: EntrySummary[], state: HighlightState): string[] {
  return entries.filter((e) => state.references.has(e.id)).map((e) => e.id);
}
