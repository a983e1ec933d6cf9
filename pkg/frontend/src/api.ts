/** Typed client for the navigator HTTP API. */

export interface TopWord {
  word: string;
  probability: number;
}

export interface RankedTopic {
  topic_id: number;
  rank: number;
  score: number;
  label: string;
  top_words: TopWord[];
}

export interface DocumentEntry {
  doc_id: number;
  author_id: string;
  probability: number;
  snippet: string;
}

export interface DocumentText {
  doc_id: number;
  author_id: string;
  text: string;
}

export interface CloudTopic {
  topic_id: number;
  label: string;
  x: number;
  y: number;
  font_size: number;
  intensity: number;
}

export interface Cloud {
  metric: string;
  font_min: number;
  font_max: number;
  topics: CloudTopic[];
}

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

async function getJson<T>(url: string): Promise<T> {
  const response = await fetch(url);
  if (!response.ok) {
    let detail = `HTTP ${response.status}`;
    try {
      const body = (await response.json()) as { error?: string };
      if (body.error) detail = body.error;
    } catch {
      // non-JSON error body; keep the status line
    }
    throw new ApiError(detail, response.status);
  }
  return (await response.json()) as T;
}

export class NavigatorApi {
  constructor(private readonly base: string = "") {}

  metrics(): Promise<string[]> {
    return getJson(`${this.base}/api/metrics`);
  }

  topics(metric: string): Promise<RankedTopic[]> {
    return getJson(`${this.base}/api/metrics/${encodeURIComponent(metric)}/topics`);
  }

  documents(metric: string, topicId: number, limit = 100): Promise<DocumentEntry[]> {
    return getJson(
      `${this.base}/api/metrics/${encodeURIComponent(metric)}/topics/${topicId}/documents?limit=${limit}`,
    );
  }

  document(docId: number): Promise<DocumentText> {
    return getJson(`${this.base}/api/documents/${docId}`);
  }

  cloud(metric: string): Promise<Cloud> {
    return getJson(`${this.base}/api/metrics/${encodeURIComponent(metric)}/cloud`);
  }
}
