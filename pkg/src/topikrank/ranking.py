"""Topic labels and per-topic document rankings.

Labels are human input (topics are named by reading their top words); this
module only ingests the label file. Unlabeled topics fall back to
``Topic-<id>``. Document rankings come straight from the topic-document
feature matrix and are independent of the similarity metric.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import ValidationError

DEFAULT_DOC_LIMIT = 100


def default_label(topic_id: int) -> str:
    return f"Topic-{topic_id}"


def load_labels(path: str | Path, k: int) -> dict[int, str]:
    """Read ``topic_id<TAB>label`` lines. Duplicate or out-of-range ids are fatal."""
    labels: dict[int, str] = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t", 1)
            if len(parts) != 2:
                raise ValidationError(f"{path}:{lineno}: expected topic_id<TAB>label")
            try:
                topic_id = int(parts[0])
            except ValueError as exc:
                raise ValidationError(f"{path}:{lineno}: non-integer topic id") from exc
            if not 0 <= topic_id < k:
                raise ValidationError(f"{path}:{lineno}: topic id {topic_id} out of range [0, {k})")
            if topic_id in labels:
                raise ValidationError(f"{path}:{lineno}: duplicate topic id {topic_id}")
            labels[topic_id] = parts[1]
    return labels


def label_for(labels: dict[int, str], topic_id: int) -> str:
    return labels.get(topic_id, default_label(topic_id))


def document_ranking(
    features: np.ndarray, topic: int, limit: int = DEFAULT_DOC_LIMIT
) -> list[tuple[int, float]]:
    """Documents most about ``topic``: descending probability, ties by doc id,
    truncated to min(limit, D)."""
    features = np.asarray(features)
    if not 0 <= topic < features.shape[0]:
        raise ValidationError(f"topic {topic} out of range [0, {features.shape[0]})")
    if limit < 1:
        raise ValidationError(f"limit must be >= 1, got {limit}")
    row = features[topic]
    order = np.argsort(-row, kind="stable")[: min(limit, row.shape[0])]
    return [(int(d), float(row[d])) for d in order]
