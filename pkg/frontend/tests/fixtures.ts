/** Recorded service responses (see scripts/record_ui_fixtures.py). */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import {
  FacetJson,
  HistoryJson,
  LayoutJson,
  NavigateResponse,
  SearchRequest,
  ServiceClient,
  SessionInfo,
} from "../src/api.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "..", "fixtures");

export function loadFixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(FIXTURES, `${name}.json`), "utf-8")) as T;
}

export const d0Session = () => loadFixture<SessionInfo>("d0_session");
export const d0Facet = (alpha: string) => loadFixture<FacetJson>(`d0_facet_${alpha}`);
export const d0Layout = (alpha: string) => loadFixture<LayoutJson>(`d0_layout_${alpha}`);
export const d0History = () => loadFixture<HistoryJson>("d0_history");
export const d0NavigateDaveKw = () =>
  loadFixture<NavigateResponse>("d0_navigate_dave_kw");
export const d0NavigateDaveAuth = () =>
  loadFixture<NavigateResponse>("d0_navigate_dave_auth");
export const d0NavigateAllKw = () => loadFixture<NavigateResponse>("d0_navigate_all_kw");
export const graphSession = () => loadFixture<SessionInfo>("graph_session");

/** Replays the recorded responses and records what the controller asked for. */
export class FakeClient implements ServiceClient {
  searchCalls: SearchRequest[] = [];
  navigateCalls: Array<{ alpha: string; selection: string[]; target: string }> = [];
  historyAfterSearch: HistoryJson | null = null;
  private searched = false;

  async search(request: SearchRequest): Promise<SessionInfo> {
    this.searchCalls.push(request);
    this.searched = true;
    const session = d0Session();
    return { ...session, query: request.query };
  }

  async session(sid: string): Promise<SessionInfo> {
    const session = d0Session();
    if (sid !== session.session_id) {
      throw new Error(`unknown session ${sid}`);
    }
    if (this.searched && this.searchCalls.length > 0) {
      return { ...session, query: this.searchCalls[this.searchCalls.length - 1].query };
    }
    return session;
  }

  async facet(_sid: string, alpha: string): Promise<FacetJson> {
    return d0Facet(alpha);
  }

  async layout(_sid: string, alpha: string): Promise<LayoutJson> {
    return d0Layout(alpha);
  }

  async navigate(
    _sid: string,
    alpha: string,
    selection: string[],
    target: string,
  ): Promise<NavigateResponse> {
    this.navigateCalls.push({ alpha, selection: [...selection], target });
    const sortedSelection = [...selection].sort().join(",");
    if (sortedSelection === "Dave") {
      return target === "auth" ? d0NavigateDaveAuth() : d0NavigateDaveKw();
    }
    if (sortedSelection === "Alice,Bob,Carol,Dave" && target === "kw") {
      return d0NavigateAllKw();
    }
    throw new Error(`no recorded navigation for [${sortedSelection}] -> ${target}`);
  }

  async history(_sid: string): Promise<HistoryJson> {
    if (this.searched && this.historyAfterSearch) {
      return this.historyAfterSearch;
    }
    return d0History();
  }
}
