"""Latent Dirichlet Allocation trained by collapsed Gibbs sampling.

Inference integrates out the document and topic distributions and resamples
one token's topic at a time from the collapsed conditional (see
``topikrank._gibbs``). Hyperparameter defaults are the classical
Griffiths-Steyvers choices: alpha = 50/K, beta = 0.01. The point estimates
after the final sweep are

    theta[d, k] = (n_dk + alpha) / (N_d + K alpha)
    phi[k, w]   = (n_kw + beta)  / (n_k + V beta)

Both are strictly positive and row-stochastic thanks to the smoothing.

Everything is deterministic given (corpus, config): the sampler uses the
SplitMix64 stream documented in ``topikrank.rng`` in a fixed consumption
order, so two runs produce byte-identical model files.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from . import _gibbs
from .corpus import Corpus, Vocabulary
from .errors import ValidationError
from .fileio import atomic_open, format_float, parse_meta_line

log = logging.getLogger(__name__)

DEFAULT_TOP_WORDS = 19


@dataclass
class LdaConfig:
    """Sampler configuration. ``alpha=None`` means the 50/K default."""

    k: int = 100
    alpha: float | None = None
    beta: float = 0.01
    iterations: int = 1000
    seed: int = 42

    def __post_init__(self):
        if self.alpha is None and self.k >= 1:
            self.alpha = 50.0 / self.k
        self.validate()

    def validate(self) -> None:
        if self.k < 1:
            raise ValidationError(f"topic count must be >= 1, got {self.k}")
        if not self.alpha > 0:
            raise ValidationError(f"alpha must be > 0, got {self.alpha}")
        if not self.beta > 0:
            raise ValidationError(f"beta must be > 0, got {self.beta}")
        if self.iterations < 1:
            raise ValidationError(f"iterations must be >= 1, got {self.iterations}")
        if self.seed < 0:
            raise ValidationError(f"seed must be >= 0, got {self.seed}")


@dataclass
class GibbsState:
    """Sampler state: per-token assignments plus the three count tables.

    ``doc_ids``/``word_ids`` are the corpus flattened in (doc, position)
    order; ``z`` is aligned with them. Invariants (checked in tests):
    sum_k n_dk[d] = len(doc d), sum_w n_kw[k] = n_k[k],
    sum_k n_k = total token count.
    """

    config: LdaConfig
    doc_ids: np.ndarray  # int32 [N]
    word_ids: np.ndarray  # int32 [N]
    z: np.ndarray  # int32 [N]
    n_dk: np.ndarray  # int64 [D, K]
    n_kw: np.ndarray  # int64 [K, V]
    n_k: np.ndarray  # int64 [K]
    rng_state: np.ndarray  # uint64 [1]

    @property
    def num_topics(self) -> int:
        return self.n_k.shape[0]

    @property
    def num_documents(self) -> int:
        return self.n_dk.shape[0]

    @property
    def num_words(self) -> int:
        return self.n_kw.shape[1]

    def copy(self) -> "GibbsState":
        return GibbsState(
            config=self.config,
            doc_ids=self.doc_ids,
            word_ids=self.word_ids,
            z=self.z.copy(),
            n_dk=self.n_dk.copy(),
            n_kw=self.n_kw.copy(),
            n_k=self.n_k.copy(),
            rng_state=self.rng_state.copy(),
        )


@dataclass
class LdaModel:
    theta: np.ndarray  # [D, K] row-stochastic
    phi: np.ndarray  # [K, V] row-stochastic
    config: LdaConfig
    corpus_hash: str
    vocabulary: Vocabulary | None = field(default=None, repr=False)

    @property
    def num_topics(self) -> int:
        return self.phi.shape[0]

    @property
    def num_documents(self) -> int:
        return self.theta.shape[0]

    @property
    def num_words(self) -> int:
        return self.phi.shape[1]


def flatten_corpus(corpus: Corpus) -> tuple[np.ndarray, np.ndarray]:
    """Corpus tokens as parallel (doc_id, word_id) arrays in sampler order."""
    n = corpus.num_tokens
    doc_ids = np.empty(n, dtype=np.int32)
    word_ids = np.empty(n, dtype=np.int32)
    pos = 0
    for doc in corpus.documents:
        end = pos + len(doc.tokens)
        doc_ids[pos:end] = doc.doc_id
        word_ids[pos:end] = doc.tokens
        pos = end
    return doc_ids, word_ids


def init_state(corpus: Corpus, config: LdaConfig, engine: str = "auto") -> GibbsState:
    """Seeded uniform topic assignment for every token."""
    if corpus.num_documents == 0:
        raise ValidationError("cannot initialize sampler on an empty corpus")
    doc_ids, word_ids = flatten_corpus(corpus)
    k, v, d = config.k, corpus.num_words, corpus.num_documents
    state = GibbsState(
        config=config,
        doc_ids=doc_ids,
        word_ids=word_ids,
        z=np.zeros(len(doc_ids), dtype=np.int32),
        n_dk=np.zeros((d, k), dtype=np.int64),
        n_kw=np.zeros((k, v), dtype=np.int64),
        n_k=np.zeros(k, dtype=np.int64),
        rng_state=np.array([config.seed], dtype=np.uint64),
    )
    _gibbs.init_assignments(
        state.doc_ids, state.word_ids, state.z,
        state.n_dk, state.n_kw, state.n_k, state.rng_state, engine=engine,
    )
    return state


def gibbs_sweep(state: GibbsState, sweeps: int = 1, engine: str = "auto") -> GibbsState:
    """Resample every token ``sweeps`` times. Mutates and returns ``state``."""
    _gibbs.run_sweeps(
        state.doc_ids, state.word_ids, state.z,
        state.n_dk, state.n_kw, state.n_k,
        state.config.alpha, state.config.beta, sweeps, state.rng_state,
        engine=engine,
    )
    return state


def estimate_theta(state: GibbsState) -> np.ndarray:
    alpha, k = state.config.alpha, state.num_topics
    doc_lengths = state.n_dk.sum(axis=1, keepdims=True)
    return (state.n_dk + alpha) / (doc_lengths + k * alpha)


def estimate_phi(state: GibbsState) -> np.ndarray:
    beta, v = state.config.beta, state.num_words
    return (state.n_kw + beta) / (state.n_k[:, None] + v * beta)


def train(
    corpus: Corpus,
    config: LdaConfig,
    engine: str = "auto",
    progress: Callable[[int, int], None] | None = None,
) -> LdaModel:
    """Run the full chain and estimate theta/phi from the final state."""
    state = init_state(corpus, config, engine=engine)
    for sweep in range(config.iterations):
        gibbs_sweep(state, engine=engine)
        if progress is not None:
            progress(sweep + 1, config.iterations)
    return LdaModel(
        theta=estimate_theta(state),
        phi=estimate_phi(state),
        config=config,
        corpus_hash=corpus.content_hash,
        vocabulary=corpus.vocabulary,
    )


def top_words(model: LdaModel, topic: int, n: int = DEFAULT_TOP_WORDS) -> list[tuple[str, float]]:
    """The ``n`` highest-probability words of a topic, ties by word index."""
    if not 0 <= topic < model.num_topics:
        raise ValidationError(f"topic {topic} out of range [0, {model.num_topics})")
    if n > model.num_words:
        raise ValidationError(f"requested {n} words but vocabulary has {model.num_words}")
    if model.vocabulary is None:
        raise ValidationError("model has no vocabulary attached")
    row = model.phi[topic]
    order = np.argsort(-row, kind="stable")[:n]  # stable sort = ascending index on ties
    return [(model.vocabulary.word(int(w)), float(row[w])) for w in order]


def export_doc_topics(model: LdaModel) -> np.ndarray:
    """Topic-document feature matrix: entry (i, j) = P(topic i | doc j).

    This is the transpose of theta; each column sums to 1.
    """
    return np.ascontiguousarray(model.theta.T)


def save_doc_topics(model: LdaModel, path: str | Path) -> None:
    """Doc-topics TSV: one line per document, ``doc_id<TAB>p_0<TAB>...``."""
    with atomic_open(path) as f:
        f.write(f"# corpus={model.corpus_hash} K={model.num_topics}\n")
        for d in range(model.num_documents):
            probs = "\t".join(format_float(p) for p in model.theta[d])
            f.write(f"{d}\t{probs}\n")


def import_doc_topics(path: str | Path) -> np.ndarray:
    """Read a doc-topics TSV into a K x D feature matrix.

    Accepts output of any topic model in this layout. Columns whose sum
    deviates from 1 by more than 1e-6 are renormalized. Ragged rows, negative
    values or non-numeric fields are fatal, reported with their line number.
    """
    rows: list[list[float]] = []
    k = None
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) < 2:
                raise ValidationError(f"{path}:{lineno}: expected doc_id and probabilities")
            try:
                values = [float(x) for x in parts[1:]]
            except ValueError as exc:
                raise ValidationError(f"{path}:{lineno}: non-numeric field") from exc
            if k is None:
                k = len(values)
            elif len(values) != k:
                raise ValidationError(
                    f"{path}:{lineno}: ragged row ({len(values)} values, expected {k})"
                )
            if any(v < 0 for v in values):
                raise ValidationError(f"{path}:{lineno}: negative probability")
            rows.append(values)
    if not rows:
        raise ValidationError(f"{path}: no document rows")
    features = np.asarray(rows, dtype=np.float64).T  # K x D
    sums = features.sum(axis=0)
    if np.any(sums == 0.0):
        raise ValidationError(f"{path}: document with all-zero topic probabilities")
    off = np.abs(sums - 1.0) > 1e-6
    if np.any(off):
        log.info("renormalizing %d document columns in %s", int(off.sum()), path)
        features[:, off] /= sums[off]
    return features


def save_model(model: LdaModel, path: str | Path) -> None:
    """Model file: comment metadata, ``K V D alpha beta iterations seed``
    header, then K phi rows, then D theta rows (17 significant digits)."""
    cfg = model.config
    with atomic_open(path) as f:
        f.write(f"# corpus={model.corpus_hash}\n")
        f.write(
            f"{model.num_topics} {model.num_words} {model.num_documents} "
            f"{format_float(cfg.alpha)} {format_float(cfg.beta)} {cfg.iterations} {cfg.seed}\n"
        )
        for row in model.phi:
            f.write(" ".join(format_float(x) for x in row) + "\n")
        for row in model.theta:
            f.write(" ".join(format_float(x) for x in row) + "\n")


def load_model(path: str | Path, vocabulary: Vocabulary | None = None) -> LdaModel:
    with open(path, encoding="utf-8") as f:
        meta: dict[str, str] = {}
        header = f.readline()
        while header.startswith("#"):
            meta.update(parse_meta_line(header))
            header = f.readline()
        try:
            k_s, v_s, d_s, alpha_s, beta_s, iters_s, seed_s = header.split()
            k, v, d = int(k_s), int(v_s), int(d_s)
            config = LdaConfig(
                k=k, alpha=float(alpha_s), beta=float(beta_s),
                iterations=int(iters_s), seed=int(seed_s),
            )
        except ValueError as exc:
            raise ValidationError(f"{path}: bad model header {header!r}") from exc
        phi = _read_matrix(f, k, v, path, "phi")
        theta = _read_matrix(f, d, k, path, "theta")
    if "corpus" not in meta:
        raise ValidationError(f"{path}: missing corpus hash metadata")
    if vocabulary is not None and len(vocabulary) != v:
        raise ValidationError(
            f"{path}: vocabulary size {len(vocabulary)} does not match model V={v}"
        )
    return LdaModel(
        theta=theta, phi=phi, config=config,
        corpus_hash=meta["corpus"], vocabulary=vocabulary,
    )


def _read_matrix(f, rows: int, cols: int, path, name: str) -> np.ndarray:
    out = np.empty((rows, cols), dtype=np.float64)
    for r in range(rows):
        line = f.readline()
        if not line:
            raise ValidationError(f"{path}: truncated {name} matrix")
        values = line.split()
        if len(values) != cols:
            raise ValidationError(
                f"{path}: {name} row {r} has {len(values)} values, expected {cols}"
            )
        out[r] = [float(x) for x in values]
    return out
