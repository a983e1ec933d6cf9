/** UI state and its URL-fragment encoding.
 *
 * The whole navigation state lives in the fragment (#m=cosine&t=3&d=17) so
 * selections are shareable and the browser back/forward buttons work.
 */

export interface UiState {
  metric: string | null;
  topic: number | null;
  doc: number | null;
  cloudVisible: boolean;
}

export function initialState(): UiState {
  return { metric: null, topic: null, doc: null, cloudVisible: true };
}

export function formatFragment(state: UiState): string {
  const parts: string[] = [];
  if (state.metric !== null) parts.push(`m=${encodeURIComponent(state.metric)}`);
  if (state.topic !== null) parts.push(`t=${state.topic}`);
  if (state.doc !== null) parts.push(`d=${state.doc}`);
  return parts.length ? `#${parts.join("&")}` : "";
}

export function parseFragment(hash: string): Pick<UiState, "metric" | "topic" | "doc"> {
  const out: Pick<UiState, "metric" | "topic" | "doc"> = {
    metric: null,
    topic: null,
    doc: null,
  };
  for (const part of hash.replace(/^#/, "").split("&")) {
    const eq = part.indexOf("=");
    if (eq < 0) continue;
    const key = part.slice(0, eq);
    const value = decodeURIComponent(part.slice(eq + 1));
    if (key === "m" && value) out.metric = value;
    if ((key === "t" || key === "d") && /^\d+$/.test(value)) {
      if (key === "t") out.topic = Number(value);
      else out.doc = Number(value);
    }
  }
  return out;
}
