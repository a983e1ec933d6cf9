"""Command-line entry point: the pipeline stages as subcommands.

Every stage is a pure function of its input files and flags, writes its
outputs atomically, and embeds the corpus hash so later stages can verify
they are combining artifacts from the same run. Progress goes to stderr as
``key=value`` lines; stdout stays clean.

Exit codes: 0 success, 1 validation/usage error, 2 I/O error.

Relative artifact paths resolve into ``$TOPIKRANK_DATA_DIR`` when that
variable is set. Raw inputs (blog directory, stop list, label file, manifest)
are taken as given.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .cloud import layout_cloud, render_cloud, save_layout
from .corpus import build_corpus, load_corpus, load_stoplist, save_corpus
from .errors import ArtifactMismatchError, TopikrankError, ValidationError
from .fileio import artifact_path, atomic_write_text, progress, sha256_file
from .lda import (
    LdaConfig,
    export_doc_topics,
    import_doc_topics,
    load_model,
    save_doc_topics,
    save_model,
    train,
)
from .navindex import build_navigator_index, load_index, save_index
from .network import METRICS, build_network, load_network, save_graphml, save_network
from .pagerank import PagerankConfig, load_scores, pagerank, save_scores
from .ranking import load_labels
from .service import create_app

log = logging.getLogger(__name__)


def _read_meta(path: Path) -> dict[str, str]:
    from .fileio import parse_meta_line

    meta: dict[str, str] = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            if not line.startswith("#"):
                break
            meta.update(parse_meta_line(line))
    return meta


def _sweep_reporter(total: int):
    step = max(1, total // 100)

    def report(done: int, _total: int):
        if done % step == 0 or done == total:
            progress(stage="train", sweep=f"{done}/{total}")

    return report


def _rank_reporter(iteration: int, residual: float):
    if iteration % 10 == 0 or residual == 0.0:
        progress(stage="rank", iteration=iteration, residual=f"{residual:.3e}")


# --- subcommands -----------------------------------------------------------


def cmd_ingest(args) -> int:
    stoplist = load_stoplist(args.stoplist)
    corpus = build_corpus(args.input, stoplist)
    out = artifact_path(args.output)
    save_corpus(corpus, out)
    progress(
        stage="ingest", docs=corpus.num_documents,
        vocab=corpus.num_words, tokens=corpus.num_tokens, output=out,
    )
    return 0


def cmd_train(args) -> int:
    corpus = load_corpus(artifact_path(args.corpus))
    config = LdaConfig(
        k=args.topics, alpha=args.alpha, beta=args.beta,
        iterations=args.iterations, seed=args.seed,
    )
    model = train(corpus, config, progress=_sweep_reporter(config.iterations))
    save_model(model, artifact_path(args.output))
    if args.doc_topics:
        save_doc_topics(model, artifact_path(args.doc_topics))
    progress(stage="train", output=artifact_path(args.output), corpus_hash=model.corpus_hash)
    return 0


def cmd_network(args) -> int:
    if args.metric not in METRICS:
        raise ValidationError(
            f"unknown metric {args.metric!r}; valid metrics: {', '.join(METRICS)}"
        )
    if args.model:
        model = load_model(artifact_path(args.model))
        features = export_doc_topics(model)
        corpus_hash = model.corpus_hash
    else:
        path = artifact_path(args.doc_topics)
        features = import_doc_topics(path)
        corpus_hash = _read_meta(path).get("corpus", sha256_file(path))
    net = build_network(features, args.metric, corpus_hash=corpus_hash)
    save_network(net, artifact_path(args.output))
    if args.graphml:
        save_graphml(net, artifact_path(args.graphml))
    progress(stage="network", metric=args.metric, edges=net.edge_count, nodes=net.node_count)
    return 0


def cmd_rank(args) -> int:
    net = load_network(artifact_path(args.network))
    config = PagerankConfig(
        damping=args.damping, tolerance=args.tolerance, max_iterations=args.max_iterations
    )
    scores = pagerank(net, config, progress=_rank_reporter)
    save_scores(scores, artifact_path(args.output))
    progress(stage="rank", metric=net.metric, output=artifact_path(args.output))
    return 0


def cmd_export_cloud(args) -> int:
    net = load_network(artifact_path(args.network))
    scores = load_scores(artifact_path(args.scores))
    if net.corpus_hash and scores.corpus_hash and net.corpus_hash != scores.corpus_hash:
        raise ArtifactMismatchError("network and scores come from different corpora")
    labels = load_labels(args.labels, net.node_count) if args.labels else {}
    layout = layout_cloud(
        net, scores, labels,
        seed=args.seed, iterations=args.iterations,
        font_range=(args.font_min, args.font_max),
    )
    out = artifact_path(args.output)
    render_cloud(layout, out)
    layout_out = artifact_path(args.layout_output) if args.layout_output else out.with_suffix(".tsv")
    save_layout(layout, layout_out)
    progress(stage="export-cloud", figure=out, layout=layout_out)
    return 0


def cmd_build_index(args) -> int:
    corpus_path = artifact_path(args.corpus)
    corpus = load_corpus(corpus_path)
    model = load_model(artifact_path(args.model), vocabulary=corpus.vocabulary)
    networks = {
        "cosine": load_network(artifact_path(args.cosine_network)),
        "pearson": load_network(artifact_path(args.pearson_network)),
    }
    scores = {
        "cosine": load_scores(artifact_path(args.cosine_scores)),
        "pearson": load_scores(artifact_path(args.pearson_scores)),
    }
    labels = load_labels(args.labels, model.num_topics) if args.labels else {}
    index = build_navigator_index(
        model, corpus_path, networks, scores, labels,
        top_n=args.top_words, doc_limit=args.doc_limit,
        layout_seed=args.layout_seed, layout_iterations=args.layout_iterations,
        font_range=(args.font_min, args.font_max),
    )
    save_index(index, artifact_path(args.output))
    progress(stage="build-index", output=artifact_path(args.output), topics=index.k, docs=index.d)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    app = create_app(
        artifact_path(args.index), artifact_path(args.corpus),
        static_dir=args.static,
    )
    progress(stage="serve", host=args.host, port=args.port)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def cmd_pipeline(args) -> int:
    manifest_path = Path(args.manifest)
    try:
        manifest = json.loads(manifest_path.read_text("utf-8"))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{manifest_path}: manifest is not valid JSON: {exc}") from exc
    return run_pipeline(manifest, manifest_path.parent)


def _manifest_path(base: Path, value: str) -> Path:
    p = Path(value)
    if p.is_absolute():
        return p
    import os

    env = os.environ.get("TOPIKRANK_DATA_DIR")
    return Path(env) / p if env else base / p


def run_pipeline(manifest: dict, base: Path) -> int:
    """Run every stage from a manifest; validate artifact hashes at the end."""
    if "input_dir" not in manifest:
        raise ValidationError("manifest is missing required key 'input_dir'")
    outputs = manifest.get("outputs", {})
    paths = {
        "corpus": _manifest_path(base, outputs.get("corpus", "corpus.txt")),
        "model": _manifest_path(base, outputs.get("model", "model.txt")),
        "index": _manifest_path(base, outputs.get("index", "index.json")),
    }
    net_out = outputs.get("networks", {})
    score_out = outputs.get("scores", {})
    for m in METRICS:
        paths[f"network_{m}"] = _manifest_path(base, net_out.get(m, f"{m}.tsv"))
        paths[f"scores_{m}"] = _manifest_path(base, score_out.get(m, f"{m}_rank.tsv"))

    stoplist_file = manifest.get("stoplist")
    stoplist = load_stoplist(_manifest_path(base, stoplist_file) if stoplist_file else None)
    corpus = build_corpus(_manifest_path(base, manifest["input_dir"]), stoplist)
    save_corpus(corpus, paths["corpus"])
    progress(stage="pipeline", step="ingest", docs=corpus.num_documents, vocab=corpus.num_words)

    config = LdaConfig(
        k=manifest.get("topics", 100),
        alpha=manifest.get("alpha"),
        beta=manifest.get("beta", 0.01),
        iterations=manifest.get("iterations", 1000),
        seed=manifest.get("seed", 42),
    )
    model = train(corpus, config, progress=_sweep_reporter(config.iterations))
    save_model(model, paths["model"])
    if outputs.get("doc_topics"):
        save_doc_topics(model, _manifest_path(base, outputs["doc_topics"]))
    progress(stage="pipeline", step="train", topics=config.k, sweeps=config.iterations)

    labels_file = manifest.get("labels")
    labels = load_labels(_manifest_path(base, labels_file), config.k) if labels_file else {}

    features = export_doc_topics(model)
    pr_config = PagerankConfig(
        damping=manifest.get("damping", 0.85),
        tolerance=manifest.get("tolerance", 1e-10),
        max_iterations=manifest.get("max_iterations", 10_000),
    )
    networks = {}
    scores = {}
    for m in METRICS:
        networks[m] = build_network(features, m, corpus_hash=model.corpus_hash)
        save_network(networks[m], paths[f"network_{m}"])
        scores[m] = pagerank(networks[m], pr_config)
        save_scores(scores[m], paths[f"scores_{m}"])
        progress(stage="pipeline", step="rank", metric=m, edges=networks[m].edge_count)

    layout_seed = manifest.get("layout_seed", 42)
    layout_iterations = manifest.get("layout_iterations", 500)
    font_range = (manifest.get("font_min", 10.0), manifest.get("font_max", 48.0))
    index = build_navigator_index(
        model, paths["corpus"], networks, scores, labels,
        top_n=manifest.get("top_words", 19),
        doc_limit=manifest.get("doc_limit", 100),
        layout_seed=layout_seed, layout_iterations=layout_iterations,
        font_range=font_range,
    )
    save_index(index, paths["index"])
    progress(stage="pipeline", step="build-index", output=paths["index"])

    for m, cloud_file in (outputs.get("clouds") or {}).items():
        if m not in METRICS:
            raise ValidationError(f"manifest clouds: unknown metric {m!r}")
        cloud_path = _manifest_path(base, cloud_file)
        render_cloud(index.clouds[m], cloud_path)
        save_layout(index.clouds[m], cloud_path.with_suffix(".tsv"))
        progress(stage="pipeline", step="export-cloud", metric=m, figure=cloud_path)

    # Final consistency audit over everything just written.
    corpus_hash = sha256_file(paths["corpus"])
    for name, path in paths.items():
        if not path.exists():
            raise ValidationError(f"pipeline output {name} missing at {path}")
        if name == "corpus":
            continue
        if name == "index":
            written = load_index(path).corpus_hash
        else:
            written = _read_meta(path).get("corpus", "")
        if written != corpus_hash:
            raise ArtifactMismatchError(f"artifact {name} carries a stale corpus hash")

    record = {
        "corpus_hash": corpus_hash,
        "paths": {name: str(path) for name, path in sorted(paths.items())},
        "config": {
            "topics": config.k, "alpha": config.alpha, "beta": config.beta,
            "iterations": config.iterations, "seed": config.seed,
            "damping": pr_config.damping, "tolerance": pr_config.tolerance,
            "max_iterations": pr_config.max_iterations,
            "layout_seed": layout_seed, "layout_iterations": layout_iterations,
            "font_min": font_range[0], "font_max": font_range[1],
            "top_words": manifest.get("top_words", 19),
            "doc_limit": manifest.get("doc_limit", 100),
        },
    }
    record_path = _manifest_path(base, outputs.get("record", "pipeline_record.json"))
    atomic_write_text(record_path, json.dumps(record, sort_keys=True, indent=2) + "\n")
    progress(stage="pipeline", step="done", record=record_path)
    return 0


# --- parser ----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="topikrank", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse a blog corpus directory into a corpus file")
    p.add_argument("--input", required=True, help="directory of .xml author files")
    p.add_argument("--output", required=True, help="corpus file to write")
    p.add_argument("--stoplist", default=None, help="stop list file (default: bundled English)")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("train", help="train LDA by collapsed Gibbs sampling")
    p.add_argument("--corpus", required=True)
    p.add_argument("--topics", type=int, default=100)
    p.add_argument("--alpha", type=float, default=None, help="default 50/topics")
    p.add_argument("--beta", type=float, default=0.01)
    p.add_argument("--iterations", type=int, default=1000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--output", required=True, help="model file to write")
    p.add_argument("--doc-topics", default=None, help="also write doc-topics TSV here")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("network", help="build a topic similarity network")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--model", help="model file")
    src.add_argument("--doc-topics", help="doc-topics TSV from any topic model")
    p.add_argument("--metric", required=True, help="cosine or pearson")
    p.add_argument("--output", required=True, help="edge-list TSV to write")
    p.add_argument("--graphml", default=None, help="also write GraphML here")
    p.set_defaults(func=cmd_network)

    p = sub.add_parser("rank", help="weighted PageRank over a topic network")
    p.add_argument("--network", required=True)
    p.add_argument("--damping", type=float, default=0.85)
    p.add_argument("--tolerance", type=float, default=1e-10)
    p.add_argument("--max-iterations", type=int, default=10_000)
    p.add_argument("--output", required=True, help="scores TSV to write")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("export-cloud", help="render the topic cloud figure + layout TSV")
    p.add_argument("--network", required=True)
    p.add_argument("--scores", required=True)
    p.add_argument("--labels", default=None)
    p.add_argument("--output", required=True, help="figure file (.svg/.png)")
    p.add_argument("--layout-output", default=None, help="layout TSV (default: figure path with .tsv)")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--iterations", type=int, default=500)
    p.add_argument("--font-min", type=float, default=10.0)
    p.add_argument("--font-max", type=float, default=48.0)
    p.set_defaults(func=cmd_export_cloud)

    p = sub.add_parser("build-index", help="assemble the navigator index")
    p.add_argument("--corpus", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--cosine-network", required=True)
    p.add_argument("--pearson-network", required=True)
    p.add_argument("--cosine-scores", required=True)
    p.add_argument("--pearson-scores", required=True)
    p.add_argument("--labels", default=None)
    p.add_argument("--top-words", type=int, default=19)
    p.add_argument("--doc-limit", type=int, default=100)
    p.add_argument("--layout-seed", type=int, default=42)
    p.add_argument("--layout-iterations", type=int, default=500)
    p.add_argument("--font-min", type=float, default=10.0)
    p.add_argument("--font-max", type=float, default=48.0)
    p.add_argument("--output", required=True, help="index JSON to write")
    p.set_defaults(func=cmd_build_index)

    p = sub.add_parser("serve", help="serve the navigator API (and optional UI bundle)")
    p.add_argument("--index", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--static", default=None, help="directory of UI assets to serve at /")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("pipeline", help="run every stage from a manifest file")
    p.add_argument("--manifest", required=True)
    p.set_defaults(func=cmd_pipeline)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if (exc.code or 0) == 0 else 1
    try:
        return args.func(args)
    except TopikrankError as exc:
        print(f"topikrank: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"topikrank: i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
