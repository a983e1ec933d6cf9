"""Topic cloud: force-directed layout plus score-driven size/intensity.

The cloud places topic labels so that similar topics sit near each other
(positions come from a seeded Fruchterman-Reingold layout of the topic
network, attraction scaled by edge weight) while importance drives font size
and grey intensity: the larger and darker a label, the higher its PageRank.

Rendering goes through matplotlib; ``render_cloud`` writes the figure (SVG by
default) and ``save_layout`` writes the same data as a TSV for other tools.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import networkx as nx
import numpy as np

from .errors import ValidationError
from .fileio import atomic_open, format_float, parse_meta_line
from .network import TopicNetwork, to_networkx
from .pagerank import CentralityScores
from .ranking import label_for

DEFAULT_FONT_RANGE = (10.0, 48.0)
LAYOUT_ITERATIONS = 500


@dataclass
class CloudTopic:
    topic_id: int
    label: str
    x: float
    y: float
    font_size: float
    intensity: float  # in [0, 1], monotone in score


@dataclass
class TopicCloudLayout:
    metric: str
    corpus_hash: str
    seed: int
    font_min: float
    font_max: float
    topics: list[CloudTopic] = field(default_factory=list)


def _minmax_unit(values: np.ndarray) -> np.ndarray:
    """Rescale to [0, 1]; a constant vector maps to all 0.5."""
    lo, hi = float(values.min()), float(values.max())
    if hi == lo:
        return np.full_like(values, 0.5)
    return (values - lo) / (hi - lo)


def layout_cloud(
    network: TopicNetwork,
    scores: CentralityScores,
    labels: dict[int, str] | None = None,
    seed: int = 42,
    iterations: int = LAYOUT_ITERATIONS,
    font_range: tuple[float, float] = DEFAULT_FONT_RANGE,
) -> TopicCloudLayout:
    """Seeded force-directed layout rescaled into the unit square.

    Font size is a linear min-max map of the PageRank score into
    ``font_range``; intensity is the same map into [0, 1]. Equal scores
    degrade to the midpoint size and 0.5 intensity.
    """
    if network.node_count != scores.node_count:
        raise ValidationError(
            f"network has {network.node_count} nodes but scores cover {scores.node_count}"
        )
    font_min, font_max = font_range
    if font_min > font_max:
        raise ValidationError("font range must satisfy min <= max")
    labels = labels or {}
    k = network.node_count

    pos = nx.spring_layout(
        to_networkx(network), weight="weight", iterations=iterations, seed=seed
    )
    xy = np.array([pos[i] for i in range(k)], dtype=np.float64)
    xs = _minmax_unit(xy[:, 0])
    ys = _minmax_unit(xy[:, 1])

    norm = _minmax_unit(scores.scores)
    sizes = font_min + (font_max - font_min) * norm

    topics = [
        CloudTopic(
            topic_id=i,
            label=label_for(labels, i),
            x=float(xs[i]),
            y=float(ys[i]),
            font_size=float(sizes[i]),
            intensity=float(norm[i]),
        )
        for i in range(k)
    ]
    return TopicCloudLayout(
        metric=network.metric,
        corpus_hash=network.corpus_hash,
        seed=seed,
        font_min=font_min,
        font_max=font_max,
        topics=topics,
    )


def save_layout(layout: TopicCloudLayout, path: str | Path) -> None:
    """Layout TSV: ``topic_id label x y font_size intensity`` per topic."""
    with atomic_open(path) as f:
        f.write(
            f"# metric={layout.metric} K={len(layout.topics)} seed={layout.seed} "
            f"font_min={format_float(layout.font_min)} font_max={format_float(layout.font_max)} "
            f"corpus={layout.corpus_hash}\n"
        )
        f.write("topic_id\tlabel\tx\ty\tfont_size\tintensity\n")
        for t in layout.topics:
            f.write(
                f"{t.topic_id}\t{t.label}\t{format_float(t.x)}\t{format_float(t.y)}\t"
                f"{format_float(t.font_size)}\t{format_float(t.intensity)}\n"
            )


def load_layout(path: str | Path) -> TopicCloudLayout:
    meta: dict[str, str] = {}
    topics: list[CloudTopic] = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                meta.update(parse_meta_line(line))
                continue
            if line.startswith("topic_id\t"):
                continue
            parts = line.split("\t")
            if len(parts) != 6:
                raise ValidationError(f"{path}:{lineno}: expected 6 tab-separated fields")
            topics.append(
                CloudTopic(
                    topic_id=int(parts[0]), label=parts[1],
                    x=float(parts[2]), y=float(parts[3]),
                    font_size=float(parts[4]), intensity=float(parts[5]),
                )
            )
    return TopicCloudLayout(
        metric=meta.get("metric", ""),
        corpus_hash=meta.get("corpus", ""),
        seed=int(meta.get("seed", 0)),
        font_min=float(meta.get("font_min", DEFAULT_FONT_RANGE[0])),
        font_max=float(meta.get("font_max", DEFAULT_FONT_RANGE[1])),
        topics=topics,
    )


def render_cloud(layout: TopicCloudLayout, path: str | Path) -> None:
    """Render the cloud to an image file (format from the suffix; SVG default).

    Labels are drawn at their layout positions; intensity 1 is black,
    intensity 0 a light grey, so the most central topics stand out.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    with matplotlib.rc_context({"svg.hashsalt": "topikrank"}):
        fig, ax = plt.subplots(figsize=(10, 10))
        ax.set_xlim(-0.05, 1.05)
        ax.set_ylim(-0.05, 1.05)
        ax.axis("off")
        for t in layout.topics:
            grey = 0.85 * (1.0 - t.intensity)
            ax.text(
                t.x, t.y, t.label,
                fontsize=t.font_size,
                color=(grey, grey, grey),
                ha="center", va="center",
            )
        path = Path(path)
        fmt = path.suffix.lstrip(".") or "svg"
        # Date metadata suppressed so repeated runs emit identical SVG bytes.
        metadata = {"Date": None} if fmt == "svg" else None
        fig.savefig(path, format=fmt, metadata=metadata)
        plt.close(fig)
