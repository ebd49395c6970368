/** Application state: one session, six faces, a highlight, a query builder.
 *
 * All data flows through the ServiceClient; the controller only routes
 * responses to faces and tracks the selection. Selecting vertices issues
 * one /navigate per facet target face (the reference type itself cannot be
 * a navigation target) and derives the cross-face highlight from the last
 * response's refs and S_A fields, which are identical across targets.
 */

import {
  EntrySummary,
  FacetJson,
  HistoryJson,
  LayoutJson,
  NavigateResponse,
  ServiceClient,
  SessionInfo,
} from "./api.js";
import { FaceModel, assignFaces, facetFaces } from "./faces.js";
import { HighlightState, emptyHighlight, highlightFromNavigation } from "./highlight.js";
import { Modifier, combineQuery } from "./querybuild.js";

export interface Selection {
  faceIndex: number;
  vertices: string[];
}

export class Controller {
  faces: FaceModel[] = [];
  session: SessionInfo | null = null;
  facets = new Map<string, FacetJson>();
  layouts = new Map<string, LayoutJson>();
  history: HistoryJson = { queries: [] };
  highlight: HighlightState = emptyHighlight();
  selection: Selection | null = null;
  detail: EntrySummary | null = null;
  /** per-face previews of the last navigation (keyed by alpha) */
  navigations = new Map<string, NavigateResponse>();

  constructor(private client: ServiceClient) {}

  async open(sid: string): Promise<void> {
    this.session = await this.client.session(sid);
    this.faces = assignFaces(this.session);
    this.facets.clear();
    this.layouts.clear();
    for (const face of facetFaces(this.faces)) {
      const alpha = face.alpha!;
      this.facets.set(alpha, await this.client.facet(sid, alpha));
      this.layouts.set(alpha, await this.client.layout(sid, alpha));
    }
    this.history = await this.client.history(sid);
    this.highlight = emptyHighlight();
    this.selection = null;
    this.navigations.clear();
  }

  private face(index: number): FaceModel {
    const face = this.faces.find((f) => f.index === index);
    if (!face) {
      throw new Error(`no face ${index}`);
    }
    return face;
  }

  /** Valid navigation targets: facet faces whose type is not the reference. */
  private navigationTargets(): string[] {
    const rho = this.session!.rho;
    return facetFaces(this.faces)
      .map((f) => f.alpha!)
      .filter((alpha) => alpha !== rho);
  }

  async selectVertices(faceIndex: number, vertices: string[]): Promise<void> {
    if (!this.session) {
      throw new Error("no session open");
    }
    if (vertices.length === 0) {
      this.clearSelection();
      return;
    }
    const face = this.face(faceIndex);
    if (face.kind !== "facet" || face.alpha === undefined) {
      throw new Error(`face ${faceIndex} is not selectable`);
    }
    this.selection = { faceIndex, vertices: [...vertices] };
    this.navigations.clear();
    let last: NavigateResponse | null = null;
    for (const target of this.navigationTargets()) {
      const nav = await this.client.navigate(
        this.session.session_id,
        face.alpha,
        vertices,
        target,
      );
      this.navigations.set(target, nav);
      last = nav;
    }
    this.highlight = last ? highlightFromNavigation(last) : emptyHighlight();
  }

  clearSelection(): void {
    this.selection = null;
    this.navigations.clear();
    this.highlight = emptyHighlight();
  }

  showDetail(referenceId: string): void {
    this.detail =
      this.session?.entries.find((e) => e.id === referenceId) ?? null;
  }

  /** Combine a clicked vertex with the current query and run the search
   * in place; the session (and its history face) refreshes. */
  async buildQuery(vertexLabel: string, modifier: Modifier): Promise<string> {
    if (!this.session) {
      throw new Error("no session open");
    }
    const query = combineQuery(this.session.query, modifier, vertexLabel);
    const updated = await this.client.search({
      query,
      sid: this.session.session_id,
      rho: this.session.rho,
      n: this.session.params.n,
      w: this.session.params.w,
    });
    await this.open(updated.session_id);
    return query;
  }
}
