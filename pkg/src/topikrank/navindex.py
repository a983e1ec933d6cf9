"""Navigator index: every artifact the topic navigator serves, in one file.

The index joins the trained model (top words), both topic networks (cloud
layouts), both PageRank score sets (topic rankings), the label file, and the
per-topic document rankings. All inputs must carry the same corpus hash;
mixing artifacts from different pipeline runs is the most likely operational
mistake and is rejected outright.

Serialization is canonical JSON (sorted keys, no whitespace), which makes the
file round-trip bit-exactly and makes repeated pipeline runs byte-identical.
Document text itself stays in the corpus file; the index stores each
document's byte offset so the service can read one document on demand.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .cloud import DEFAULT_FONT_RANGE, LAYOUT_ITERATIONS, CloudTopic, TopicCloudLayout, layout_cloud
from .corpus import document_offsets, load_corpus
from .errors import ArtifactMismatchError, ValidationError
from .fileio import atomic_write_text, sha256_file
from .lda import DEFAULT_TOP_WORDS, LdaModel, export_doc_topics, top_words
from .network import METRICS, TopicNetwork
from .pagerank import CentralityScores, rank_topics
from .ranking import DEFAULT_DOC_LIMIT, document_ranking, label_for

FORMAT_NAME = "topikrank-index"
FORMAT_VERSION = 1


@dataclass
class NavigatorIndex:
    corpus_hash: str
    k: int
    d: int
    v: int
    metrics: list[str]
    labels: list[str]  # length K, defaults applied
    top_words: list[list[tuple[str, float]]]  # K lists of (word, probability)
    rankings: dict[str, list[dict[str, Any]]]  # metric -> rank-ordered entries
    doc_rankings: list[list[tuple[int, float]]]  # K lists of (doc_id, probability)
    clouds: dict[str, TopicCloudLayout]
    doc_authors: list[str]
    doc_offsets: list[int]
    font_range: tuple[float, float] = DEFAULT_FONT_RANGE

    def ranked_topics(self, metric: str) -> list[dict[str, Any]]:
        """RankedTopic views for one metric, in rank order."""
        out = []
        for entry in self.rankings[metric]:
            t = entry["topic_id"]
            out.append(
                {
                    "topic_id": t,
                    "rank": entry["rank"],
                    "score": entry["score"],
                    "label": self.labels[t],
                    "top_words": [
                        {"word": w, "probability": p} for w, p in self.top_words[t]
                    ],
                }
            )
        return out


def build_navigator_index(
    model: LdaModel,
    corpus_path: str | Path,
    networks: dict[str, TopicNetwork],
    scores: dict[str, CentralityScores],
    labels: dict[int, str] | None = None,
    top_n: int = DEFAULT_TOP_WORDS,
    doc_limit: int = DEFAULT_DOC_LIMIT,
    layout_seed: int = 42,
    layout_iterations: int = LAYOUT_ITERATIONS,
    font_range: tuple[float, float] = DEFAULT_FONT_RANGE,
) -> NavigatorIndex:
    """Assemble and validate the full navigator index.

    Raises ArtifactMismatchError when any input's corpus hash disagrees with
    the corpus file's actual hash.
    """
    labels = labels or {}
    corpus_hash = sha256_file(corpus_path)
    for name, h in [("model", model.corpus_hash)] + [
        (f"network[{m}]", n.corpus_hash) for m, n in networks.items()
    ] + [(f"scores[{m}]", s.corpus_hash) for m, s in scores.items()]:
        if h != corpus_hash:
            raise ArtifactMismatchError(
                f"{name} was built from corpus {h[:12]}... but the corpus file "
                f"hashes to {corpus_hash[:12]}...; refusing to mix pipeline runs"
            )
    if sorted(networks) != sorted(METRICS) or sorted(scores) != sorted(METRICS):
        raise ValidationError(f"need networks and scores for exactly the metrics {METRICS}")
    k = model.num_topics
    for m in METRICS:
        if networks[m].node_count != k or scores[m].node_count != k:
            raise ValidationError(f"artifact for metric {m!r} disagrees on K={k}")
    if any(t >= k for t in labels):
        raise ValidationError("label file references a topic id >= K")

    corpus = load_corpus(corpus_path)
    if corpus.num_documents != model.num_documents or corpus.num_words != model.num_words:
        raise ValidationError("corpus dimensions do not match the model")
    features = export_doc_topics(model)

    rankings = {}
    clouds = {}
    for m in METRICS:
        rankings[m] = [
            {"topic_id": t, "rank": rank, "score": s}
            for rank, (t, s) in enumerate(rank_topics(scores[m]), start=1)
        ]
        clouds[m] = layout_cloud(
            networks[m], scores[m], labels,
            seed=layout_seed, iterations=layout_iterations, font_range=font_range,
        )

    return NavigatorIndex(
        corpus_hash=corpus_hash,
        k=k,
        d=model.num_documents,
        v=model.num_words,
        metrics=list(METRICS),
        labels=[label_for(labels, t) for t in range(k)],
        top_words=[top_words(model, t, n=min(top_n, model.num_words)) for t in range(k)],
        rankings=rankings,
        doc_rankings=[document_ranking(features, t, doc_limit) for t in range(k)],
        clouds=clouds,
        doc_authors=[doc.author_id for doc in corpus.documents],
        doc_offsets=document_offsets(corpus_path),
        font_range=font_range,
    )


def _index_to_dict(index: NavigatorIndex) -> dict[str, Any]:
    return {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "corpus_hash": index.corpus_hash,
        "k": index.k,
        "d": index.d,
        "v": index.v,
        "metrics": index.metrics,
        "labels": index.labels,
        "top_words": [[[w, p] for w, p in tw] for tw in index.top_words],
        "rankings": index.rankings,
        "doc_rankings": [[[d, p] for d, p in dr] for dr in index.doc_rankings],
        "clouds": {
            m: {
                "seed": c.seed,
                "font_min": c.font_min,
                "font_max": c.font_max,
                "topics": [
                    {
                        "topic_id": t.topic_id,
                        "label": t.label,
                        "x": t.x,
                        "y": t.y,
                        "font_size": t.font_size,
                        "intensity": t.intensity,
                    }
                    for t in c.topics
                ],
            }
            for m, c in index.clouds.items()
        },
        "documents": [
            {"author_id": a, "offset": o}
            for a, o in zip(index.doc_authors, index.doc_offsets)
        ],
        "font_range": list(index.font_range),
    }


def _index_from_dict(data: dict[str, Any]) -> NavigatorIndex:
    if data.get("format") != FORMAT_NAME:
        raise ValidationError(f"not a {FORMAT_NAME} file")
    if data.get("version") != FORMAT_VERSION:
        raise ValidationError(f"unsupported index version {data.get('version')}")
    clouds = {}
    for m, c in data["clouds"].items():
        clouds[m] = TopicCloudLayout(
            metric=m,
            corpus_hash=data["corpus_hash"],
            seed=c["seed"],
            font_min=c["font_min"],
            font_max=c["font_max"],
            topics=[
                CloudTopic(
                    topic_id=t["topic_id"], label=t["label"],
                    x=t["x"], y=t["y"],
                    font_size=t["font_size"], intensity=t["intensity"],
                )
                for t in c["topics"]
            ],
        )
    return NavigatorIndex(
        corpus_hash=data["corpus_hash"],
        k=data["k"],
        d=data["d"],
        v=data["v"],
        metrics=list(data["metrics"]),
        labels=list(data["labels"]),
        top_words=[[(w, p) for w, p in tw] for tw in data["top_words"]],
        rankings=data["rankings"],
        doc_rankings=[[(d, p) for d, p in dr] for dr in data["doc_rankings"]],
        clouds=clouds,
        doc_authors=[doc["author_id"] for doc in data["documents"]],
        doc_offsets=[doc["offset"] for doc in data["documents"]],
        font_range=tuple(data["font_range"]),
    )


def save_index(index: NavigatorIndex, path: str | Path) -> None:
    text = json.dumps(_index_to_dict(index), sort_keys=True, separators=(",", ":"))
    atomic_write_text(path, text + "\n")


def load_index(path: str | Path) -> NavigatorIndex:
    try:
        data = json.loads(Path(path).read_text("utf-8"))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: not valid JSON: {exc}") from exc
    return _index_from_dict(data)
