/** Typed client for the dataedron service. The UI never computes facet
 * data itself: everything rendered comes out of these responses. */

export interface MultisetEntries {
  [element: string]: number;
}

export interface HbEdgeJson {
  id: string;
  entries: MultisetEntries;
}

export interface HbGraphJson {
  vertices: string[];
  edges: HbEdgeJson[];
}

export interface FacetJson {
  alpha: string;
  rho: string;
  hbgraph: HbGraphJson;
  weights: { [edgeId: string]: number };
  classes: { [edgeId: string]: string[] };
  refs: { [referenceValue: string]: string[] };
}

export interface LayoutNodeJson {
  id: string;
  kind: "vertex" | "extra";
}

export interface LayoutLinkJson {
  vertex: string;
  edge: string;
  multiplicity: number;
  thickness: number;
}

export interface LayoutJson {
  nodes: LayoutNodeJson[];
  links: LayoutLinkJson[];
}

export interface EntrySummary {
  id: string;
  title: string;
  sentence: string;
  abs_url: string | null;
  pdf_url: string | null;
  published: string;
}

export interface SessionInfo {
  session_id: string;
  query: string;
  rho: string;
  alphas: string[];
  params: { n: number; w: number };
  entries: EntrySummary[];
  created: string;
  updated: string;
}

export interface NavigateResponse {
  facet: FacetJson;
  S_A: string[];
}

export interface HistoryEntryJson {
  id: string;
  ts: string;
  query: string;
  entries: MultisetEntries;
}

export interface HistoryJson {
  queries: HistoryEntryJson[];
}

export interface SearchRequest {
  query: string;
  n?: number;
  w?: number;
  rho?: string;
  sid?: string;
}

/** What the controller needs from a transport; tests substitute a
 * fixture-backed fake. */
export interface ServiceClient {
  search(request: SearchRequest): Promise<SessionInfo>;
  session(sid: string): Promise<SessionInfo>;
  facet(sid: string, alpha: string): Promise<FacetJson>;
  layout(sid: string, alpha: string): Promise<LayoutJson>;
  navigate(
    sid: string,
    alpha: string,
    selection: string[],
    targetAlpha: string,
  ): Promise<NavigateResponse>;
  history(sid: string): Promise<HistoryJson>;
}

export class HttpServiceClient implements ServiceClient {
  constructor(
    private baseUrl: string,
    private fetchFn: typeof fetch = fetch,
  ) {}

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`);
    if (!response.ok) {
      throw new Error(`GET ${path} failed: ${response.status}`);
    }
    return (await response.json()) as T;
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) {
      throw new Error(`POST ${path} failed: ${response.status}`);
    }
    return (await response.json()) as T;
  }

  search(request: SearchRequest): Promise<SessionInfo> {
    return this.post("/search", request);
  }

  session(sid: string): Promise<SessionInfo> {
    return this.get(`/session/${encodeURIComponent(sid)}`);
  }

  facet(sid: string, alpha: string): Promise<FacetJson> {
    return this.get(`/facet/${encodeURIComponent(sid)}/${encodeURIComponent(alpha)}`);
  }

  layout(sid: string, alpha: string): Promise<LayoutJson> {
    return this.get(
      `/facet/${encodeURIComponent(sid)}/${encodeURIComponent(alpha)}/layout`,
    );
  }

  navigate(
    sid: string,
    alpha: string,
    selection: string[],
    targetAlpha: string,
  ): Promise<NavigateResponse> {
    return this.post("/navigate", {
      sid,
      alpha,
      selection,
      target_alpha: targetAlpha,
    });
  }

  history(sid: string): Promise<HistoryJson> {
    return this.get(`/history/${encodeURIComponent(sid)}`);
  }
}
