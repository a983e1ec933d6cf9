"""Weighted PageRank over topic networks.

Each undirected edge acts as two directed edges; a walker at node j follows
edge (j, i) with probability w_ij / s_j where s_j is j's strength (sum of
incident weights). Nodes isolated by pruning have no outgoing mass and are
treated as dangling: their mass is spread uniformly over all nodes every
iteration, keeping the chain stochastic. The fixed point of

    x_i = (1 - d)/K + d * ( sum_j (w_ij / s_j) x_j  +  dangling_mass / K )

is found by power iteration with an L1 stopping rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConvergenceError, ValidationError
from .fileio import atomic_open, format_float, parse_meta_line
from .network import TopicNetwork


@dataclass
class PagerankConfig:
    damping: float = 0.85
    tolerance: float = 1e-10
    max_iterations: int = 10_000

    def __post_init__(self):
        if not 0.0 < self.damping < 1.0:
            raise ValidationError(f"damping must be in (0, 1), got {self.damping}")
        if not self.tolerance > 0:
            raise ValidationError(f"tolerance must be > 0, got {self.tolerance}")
        if self.max_iterations < 1:
            raise ValidationError("max_iterations must be >= 1")


@dataclass
class CentralityScores:
    scores: np.ndarray  # [K], sums to 1, all entries > 0
    metric: str = ""
    corpus_hash: str = ""
    damping: float = 0.85

    @property
    def node_count(self) -> int:
        return self.scores.shape[0]


def transition_matrix(network: TopicNetwork) -> tuple[np.ndarray, np.ndarray]:
    """Column-stochastic transition matrix and dangling-node indicator."""
    k = network.node_count
    weights = np.zeros((k, k), dtype=np.float64)
    for i, j, w in network.edges:
        weights[i, j] = w
        weights[j, i] = w
    strength = weights.sum(axis=0)
    dangling = strength == 0.0
    trans = np.zeros_like(weights)
    cols = ~dangling
    trans[:, cols] = weights[:, cols] / strength[cols]
    return trans, dangling


def pagerank(
    network: TopicNetwork,
    config: PagerankConfig | None = None,
    progress=None,
) -> CentralityScores:
    """Power-iterate to the stationary scores; raises on non-convergence."""
    config = config or PagerankConfig()
    k = network.node_count
    if k < 1:
        raise ValidationError("network has no nodes")
    trans, dangling = transition_matrix(network)
    d = config.damping
    x = np.full(k, 1.0 / k)
    residual = np.inf
    for iteration in range(config.max_iterations):
        dangling_mass = float(x[dangling].sum())
        x_new = (1.0 - d) / k + d * (trans @ x + dangling_mass / k)
        residual = float(np.abs(x_new - x).sum())
        x = x_new
        if progress is not None:
            progress(iteration + 1, residual)
        if residual < config.tolerance:
            x = x / x.sum()
            return CentralityScores(
                scores=x, metric=network.metric,
                corpus_hash=network.corpus_hash, damping=d,
            )
    raise ConvergenceError(
        f"pagerank did not converge within {config.max_iterations} iterations "
        f"(last L1 residual {residual:.3e})",
        residual=residual,
    )


def rank_topics(scores: CentralityScores) -> list[tuple[int, float]]:
    """Topics ordered by descending score, ties by ascending topic id."""
    s = scores.scores
    order = sorted(range(len(s)), key=lambda i: (-s[i], i))
    return [(i, float(s[i])) for i in order]


def save_scores(scores: CentralityScores, path: str | Path) -> None:
    """Scores TSV in rank order: ``topic_id<TAB>score<TAB>rank``."""
    with atomic_open(path) as f:
        f.write(
            f"# metric={scores.metric} K={scores.node_count} "
            f"damping={format_float(scores.damping)} corpus={scores.corpus_hash}\n"
        )
        for rank, (topic_id, score) in enumerate(rank_topics(scores), start=1):
            f.write(f"{topic_id}\t{format_float(score)}\t{rank}\n")


def load_scores(path: str | Path) -> CentralityScores:
    meta: dict[str, str] = {}
    entries: list[tuple[int, float, int]] = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                meta.update(parse_meta_line(line))
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ValidationError(f"{path}:{lineno}: expected topic_id<TAB>score<TAB>rank")
            try:
                entries.append((int(parts[0]), float(parts[1]), int(parts[2])))
            except ValueError as exc:
                raise ValidationError(f"{path}:{lineno}: non-numeric field") from exc
    if "K" not in meta:
        raise ValidationError(f"{path}: missing '# K=...' header")
    k = int(meta["K"])
    if sorted(t for t, _, _ in entries) != list(range(k)) or sorted(
        r for _, _, r in entries
    ) != list(range(1, k + 1)):
        raise ValidationError(f"{path}: ids/ranks are not a permutation of 0..K-1 / 1..K")
    values = np.zeros(k, dtype=np.float64)
    for topic_id, score, _ in entries:
        values[topic_id] = score
    return CentralityScores(
        scores=values,
        metric=meta.get("metric", ""),
        corpus_hash=meta.get("corpus", ""),
        damping=float(meta.get("damping", 0.85)),
    )
