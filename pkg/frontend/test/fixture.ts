/** In-memory fixture server: a fetch stub implementing the navigator API
 * with the same semantics as the real service (rank ordering, 100-document
 * cap, metric-independent document lists, {error} bodies with 404s). */

export interface FixtureServer {
  fetch: typeof fetch;
  /** await-point injected before a matching request resolves */
  delay: (pattern: RegExp, promise: Promise<void>) => void;
  requests: string[];
  docText: (docId: number) => string;
}

const K = 4;
const D = 120;
const LABELS = ["Alpha", "Beta", "Gamma", "Delta"];
const RANK_ORDER: Record<string, number[]> = {
  cosine: [2, 0, 3, 1],
  pearson: [1, 3, 0, 2],
};
const SCORES = [0.4, 0.3, 0.2, 0.1];
const FONT_SIZES = [48, 35.3, 22.7, 10];
const INTENSITIES = [1.0, 0.66, 0.33, 0.0];

function topWords(topicId: number) {
  return Array.from({ length: 19 }, (_, i) => ({
    word: `topic${topicId}word${i}`,
    probability: 0.1 - i * 0.003,
  }));
}

function docText(docId: number): string {
  return `document ${docId} body ` + `word${docId % 7} `.repeat(40).trim();
}

function docRanking(topicId: number) {
  return Array.from({ length: D }, (_, j) => {
    const docId = (topicId * 13 + j * 7) % D;
    return {
      doc_id: docId,
      author_id: `author${docId}`,
      probability: 0.9 * Math.pow(0.97, j),
      snippet: docText(docId).slice(0, 200),
    };
  });
}

function rankedTopics(metric: string) {
  const order = RANK_ORDER[metric];
  if (!order) return null;
  return order.map((topicId, i) => ({
    topic_id: topicId,
    rank: i + 1,
    score: SCORES[i]!,
    label: LABELS[topicId]!,
    top_words: topWords(topicId),
  }));
}

function cloud(metric: string) {
  const order = RANK_ORDER[metric];
  if (!order) return null;
  return {
    metric,
    font_min: 10,
    font_max: 48,
    topics: order.map((topicId, i) => ({
      topic_id: topicId,
      label: LABELS[topicId]!,
      x: 0.15 + 0.2 * topicId,
      y: 0.2 + 0.15 * i,
      font_size: FONT_SIZES[i]!,
      intensity: INTENSITIES[i]!,
    })),
  };
}

function json(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

function notFound(message: string): Response {
  return json({ error: message }, 404);
}

export function fixtureServer(): FixtureServer {
  const delays: Array<{ pattern: RegExp; promise: Promise<void> }> = [];
  const requests: string[] = [];

  const handler = async (input: RequestInfo | URL): Promise<Response> => {
    const url = String(input);
    requests.push(url);
    for (let i = delays.length - 1; i >= 0; i--) {
      if (delays[i]!.pattern.test(url)) {
        const { promise } = delays.splice(i, 1)[0]!;
        await promise;
      }
    }

    const path = url.split("?")[0]!;
    const query = new URLSearchParams(url.split("?")[1] ?? "");

    if (path === "/api/metrics") return json(Object.keys(RANK_ORDER));

    let match = path.match(/^\/api\/metrics\/([^/]+)\/topics$/);
    if (match) {
      const topics = rankedTopics(match[1]!);
      return topics ? json(topics) : notFound(`unknown metric '${match[1]}'`);
    }

    match = path.match(/^\/api\/metrics\/([^/]+)\/topics\/(\d+)\/documents$/);
    if (match) {
      if (!RANK_ORDER[match[1]!]) return notFound(`unknown metric '${match[1]}'`);
      const topicId = Number(match[2]);
      if (topicId >= K) return notFound(`unknown topic id ${topicId}`);
      const limit = Math.min(Number(query.get("limit") ?? 100), 100);
      // identical under every metric: ranking depends only on theta
      return json(docRanking(topicId).slice(0, limit));
    }

    match = path.match(/^\/api\/documents\/(\d+)$/);
    if (match) {
      const docId = Number(match[1]);
      if (docId >= D) return notFound(`unknown document id ${docId}`);
      return json({ doc_id: docId, author_id: `author${docId}`, text: docText(docId) });
    }

    match = path.match(/^\/api\/metrics\/([^/]+)\/cloud$/);
    if (match) {
      const body = cloud(match[1]!);
      return body ? json(body) : notFound(`unknown metric '${match[1]}'`);
    }

    return notFound(`no route for ${path}`);
  };

  return {
    fetch: handler as typeof fetch,
    delay: (pattern, promise) => delays.push({ pattern, promise }),
    requests,
    docText,
  };
}

export const FIXTURE = { K, D, LABELS, RANK_ORDER, SCORES };
