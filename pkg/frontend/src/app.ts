/** The topic navigator single-page app.
 *
 * Select a similarity metric from the drop-down, pick a topic from its
 * ranked, scrollable list, and browse the documents most about that topic:
 * a single click shows the full text in the viewer pane, a double click
 * opens the raw text in a new tab. The topic cloud places labels by network
 * similarity, sized and darkened by PageRank score; clicking a cloud label
 * selects that topic in the list.
 *
 * All navigation state is kept in the URL fragment; responses arriving for
 * a selection the user has already left are discarded (last write wins).
 */

import { Cloud, DocumentEntry, NavigatorApi, RankedTopic } from "./api.js";
import { UiState, formatFragment, initialState, parseFragment } from "./state.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export class NavigatorApp {
  readonly state: UiState = initialState();

  private readonly banner: HTMLDivElement;
  private readonly bannerMessage: HTMLSpanElement;
  private readonly bannerRetry: HTMLButtonElement;
  private readonly metricSelect: HTMLSelectElement;
  private readonly cloudToggle: HTMLButtonElement;
  private readonly cloudPanel: HTMLDivElement;
  private readonly cloudNotice: HTMLDivElement;
  private readonly topicList: HTMLUListElement;
  private readonly docList: HTMLUListElement;
  private readonly docViewer: HTMLDivElement;

  private topicGeneration = 0;
  private documentsGeneration = 0;
  private viewerGeneration = 0;
  private cloudGeneration = 0;
  private lastWrittenHash = "";
  private retryAction: (() => void) | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: NavigatorApi = new NavigatorApi(),
  ) {
    this.banner = el("div", "error-banner hidden");
    this.bannerMessage = el("span", "error-message");
    this.bannerRetry = el("button", "retry", "Retry");
    this.bannerRetry.onclick = () => {
      this.hideBanner();
      this.retryAction?.();
    };
    this.banner.append(this.bannerMessage, this.bannerRetry);

    const controls = el("div", "controls");
    const metricLabel = el("label", undefined, "Similarity metric: ");
    this.metricSelect = el("select", "metric-select");
    this.metricSelect.onchange = () => this.selectMetric(this.metricSelect.value);
    metricLabel.append(this.metricSelect);
    this.cloudToggle = el("button", "cloud-toggle", "Hide cloud");
    this.cloudToggle.onclick = () => this.toggleCloud();
    controls.append(metricLabel, this.cloudToggle);

    this.cloudPanel = el("div", "cloud-panel");
    this.cloudNotice = el("div", "cloud-notice hidden");

    const columns = el("div", "columns");
    const topicsColumn = el("div", "topics-column");
    topicsColumn.append(el("h2", undefined, "Topics"));
    this.topicList = el("ul", "topic-list");
    topicsColumn.append(this.topicList);

    const docsColumn = el("div", "docs-column");
    docsColumn.append(el("h2", undefined, "Documents"));
    this.docList = el("ul", "doc-list");
    docsColumn.append(this.docList);

    const viewerColumn = el("div", "viewer-column");
    viewerColumn.append(el("h2", undefined, "Document"));
    this.docViewer = el("div", "doc-viewer");
    viewerColumn.append(this.docViewer);

    columns.append(topicsColumn, docsColumn, viewerColumn);
    root.replaceChildren(this.banner, controls, this.cloudNotice, this.cloudPanel, columns);

    window.addEventListener("hashchange", () => this.applyFragment(location.hash));
  }

  async start(): Promise<void> {
    let metrics: string[];
    try {
      metrics = await this.api.metrics();
    } catch (error) {
      this.showBanner(`Could not load metrics: ${describe(error)}`, () => void this.start());
      return;
    }
    this.metricSelect.replaceChildren(
      ...metrics.map((m) => {
        const option = el("option", undefined, m);
        option.value = m;
        return option;
      }),
    );
    const wanted = parseFragment(location.hash);
    const metric = wanted.metric && metrics.includes(wanted.metric) ? wanted.metric : metrics[0];
    if (metric === undefined) {
      this.showBanner("Service reports no metrics", () => void this.start());
      return;
    }
    await this.selectMetric(metric, wanted.topic, wanted.doc);
  }

  /** Switch metric; the topic selection is cleared until the new list loads. */
  async selectMetric(metric: string, pendingTopic: number | null = null,
                     pendingDoc: number | null = null): Promise<void> {
    this.state.metric = metric;
    this.state.topic = null;
    this.state.doc = null;
    this.metricSelect.value = metric;
    this.topicList.replaceChildren(el("li", "loading", "Loading topics..."));
    this.docList.replaceChildren();
    this.docViewer.replaceChildren();
    this.syncFragment();

    void this.loadCloud(metric);

    const generation = ++this.topicGeneration;
    let topics: RankedTopic[];
    try {
      topics = await this.api.topics(metric);
    } catch (error) {
      if (generation !== this.topicGeneration) return;
      this.showBanner(`Could not load topics: ${describe(error)}`, () =>
        void this.selectMetric(metric, pendingTopic, pendingDoc),
      );
      this.topicList.replaceChildren();
      return;
    }
    if (generation !== this.topicGeneration) return; // superseded by a newer selection
    this.hideBanner();
    this.renderTopicList(topics);
    if (pendingTopic !== null && topics.some((t) => t.topic_id === pendingTopic)) {
      await this.selectTopic(pendingTopic, pendingDoc);
    }
  }

  async selectTopic(topicId: number, pendingDoc: number | null = null): Promise<void> {
    if (this.state.metric === null) return;
    const metric = this.state.metric;
    this.state.topic = topicId;
    this.state.doc = null;
    this.highlightTopic(topicId);
    this.docList.replaceChildren(el("li", "loading", "Loading documents..."));
    this.docViewer.replaceChildren();
    this.syncFragment();

    const generation = ++this.documentsGeneration;
    let documents: DocumentEntry[];
    try {
      documents = await this.api.documents(metric, topicId);
    } catch (error) {
      if (generation !== this.documentsGeneration) return;
      this.showBanner(`Could not load documents: ${describe(error)}`, () =>
        void this.selectTopic(topicId, pendingDoc),
      );
      this.docList.replaceChildren();
      return;
    }
    if (generation !== this.documentsGeneration) return;
    if (this.state.metric !== metric || this.state.topic !== topicId) return;
    this.hideBanner();
    this.renderDocumentList(documents);
    if (pendingDoc !== null) await this.selectDocument(pendingDoc);
  }

  async selectDocument(docId: number): Promise<void> {
    this.state.doc = docId;
    this.highlightDocument(docId);
    this.docViewer.replaceChildren(el("div", "loading", "Loading document..."));
    this.syncFragment();

    const generation = ++this.viewerGeneration;
    try {
      const doc = await this.api.document(docId);
      if (generation !== this.viewerGeneration) return;
      const header = el("div", "doc-author", `Author ${doc.author_id} (doc ${doc.doc_id})`);
      const body = el("pre", "doc-text", doc.text);
      this.docViewer.replaceChildren(header, body);
    } catch (error) {
      if (generation !== this.viewerGeneration) return;
      this.docViewer.replaceChildren(el("div", "inline-error", describe(error)));
    }
  }

  /** Double click: the raw text in a new browser tab. */
  async openRawText(docId: number): Promise<void> {
    try {
      const doc = await this.api.document(docId);
      const blob = new Blob([doc.text], { type: "text/plain;charset=utf-8" });
      window.open(URL.createObjectURL(blob), "_blank");
    } catch (error) {
      this.showBanner(`Could not open document: ${describe(error)}`, null);
    }
  }

  toggleCloud(): void {
    this.state.cloudVisible = !this.state.cloudVisible;
    this.cloudPanel.classList.toggle("hidden", !this.state.cloudVisible);
    this.cloudToggle.textContent = this.state.cloudVisible ? "Hide cloud" : "Show cloud";
  }

  // --- rendering ------------------------------------------------------------

  private renderTopicList(topics: RankedTopic[]): void {
    // rows appear exactly in API (rank) order
    this.topicList.replaceChildren(
      ...topics.map((topic) => {
        const row = el("li", "topic-row");
        row.dataset.topicId = String(topic.topic_id);
        row.dataset.rank = String(topic.rank);
        const head = el("div", "topic-head");
        head.append(
          el("span", "topic-rank", `#${topic.rank}`),
          el("span", "topic-label", topic.label),
          el("span", "topic-score", topic.score.toPrecision(4)),
        );
        head.onclick = () => void this.selectTopic(topic.topic_id);
        const toggle = el("button", "words-toggle", "words");
        toggle.onclick = (event) => {
          event.stopPropagation();
          words.classList.toggle("hidden");
        };
        head.append(toggle);
        const words = el("ul", "top-words hidden");
        words.append(
          ...topic.top_words.map((w) =>
            el("li", "top-word", `${w.word} ${w.probability.toPrecision(3)}`),
          ),
        );
        row.append(head, words);
        return row;
      }),
    );
  }

  private renderDocumentList(documents: DocumentEntry[]): void {
    this.docList.replaceChildren(
      ...documents.map((doc) => {
        const row = el("li", "doc-row");
        row.dataset.docId = String(doc.doc_id);
        row.append(
          el("span", "doc-author-id", doc.author_id),
          el("span", "doc-prob", doc.probability.toPrecision(4)),
          el("span", "doc-snippet", doc.snippet),
        );
        row.onclick = () => void this.selectDocument(doc.doc_id);
        row.ondblclick = () => void this.openRawText(doc.doc_id);
        return row;
      }),
    );
  }

  private async loadCloud(metric: string): Promise<void> {
    const generation = ++this.cloudGeneration;
    let cloud: Cloud;
    try {
      cloud = await this.api.cloud(metric);
    } catch (error) {
      if (generation !== this.cloudGeneration) return;
      this.cloudPanel.classList.add("hidden");
      this.cloudNotice.classList.remove("hidden");
      this.cloudNotice.textContent = `Topic cloud unavailable: ${describe(error)}`;
      return;
    }
    if (generation !== this.cloudGeneration) return;
    this.cloudNotice.classList.add("hidden");
    this.cloudPanel.classList.toggle("hidden", !this.state.cloudVisible);
    this.cloudPanel.replaceChildren(
      ...cloud.topics.map((topic) => {
        const label = el("span", "cloud-label", topic.label);
        label.dataset.topicId = String(topic.topic_id);
        label.style.left = `${(topic.x * 100).toFixed(2)}%`;
        label.style.top = `${((1 - topic.y) * 100).toFixed(2)}%`;
        label.style.fontSize = `${topic.font_size}px`;
        const grey = Math.round(217 * (1 - topic.intensity));
        label.style.color = `rgb(${grey}, ${grey}, ${grey})`;
        label.title = `PageRank position for ${topic.label}`;
        label.onclick = () => void this.selectTopic(topic.topic_id);
        return label;
      }),
    );
  }

  private highlightTopic(topicId: number): void {
    for (const row of this.topicList.querySelectorAll<HTMLElement>(".topic-row")) {
      row.classList.toggle("selected", row.dataset.topicId === String(topicId));
    }
  }

  private highlightDocument(docId: number): void {
    for (const row of this.docList.querySelectorAll<HTMLElement>(".doc-row")) {
      row.classList.toggle("selected", row.dataset.docId === String(docId));
    }
  }

  // --- routing and errors -----------------------------------------------------

  private syncFragment(): void {
    const hash = formatFragment(this.state);
    if (hash !== location.hash) {
      this.lastWrittenHash = hash;
      location.hash = hash;
    }
  }

  private applyFragment(hash: string): void {
    if (hash === this.lastWrittenHash) return; // our own write echoing back
    const wanted = parseFragment(hash);
    if (wanted.metric !== null && wanted.metric !== this.state.metric) {
      void this.selectMetric(wanted.metric, wanted.topic, wanted.doc);
    } else if (wanted.topic !== null && wanted.topic !== this.state.topic) {
      void this.selectTopic(wanted.topic, wanted.doc);
    } else if (wanted.doc !== null && wanted.doc !== this.state.doc) {
      void this.selectDocument(wanted.doc);
    }
  }

  private showBanner(message: string, retry: (() => void) | null): void {
    this.bannerMessage.textContent = message;
    this.retryAction = retry;
    this.bannerRetry.classList.toggle("hidden", retry === null);
    this.banner.classList.remove("hidden");
  }

  private hideBanner(): void {
    this.banner.classList.add("hidden");
  }
}

function describe(error: unknown): string {
  return error instanceof Error ? error.message : String(error);
}
