"""Read-only HTTP API over a navigator index.

The whole index is loaded into memory at startup (a K=100 topic run over the
full blog corpus is only a few megabytes); document text is read from the
corpus file on demand via the offsets stored in the index. The service
refuses to start if the corpus file does not hash to the value embedded in
the index.

All endpoints return JSON. Errors are ``{"error": "..."}`` with a 4xx/5xx
status. Document rankings are the same under every metric (they depend only
on the document-topic distributions); the metric in the URL selects the topic
ordering, not the document ordering.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .corpus import Vocabulary, read_document_text
from .errors import ArtifactMismatchError
from .fileio import sha256_file
from .navindex import NavigatorIndex, load_index
from .ranking import DEFAULT_DOC_LIMIT

SNIPPET_CHARS = 200


def _load_vocabulary(corpus_path: Path) -> Vocabulary:
    with open(corpus_path, encoding="utf-8") as f:
        header = f.readline()
        _, v_count = (int(x) for x in header.split())
        words = [f.readline().rstrip("\n") for _ in range(v_count)]
    return Vocabulary(words)


def create_app(
    index: NavigatorIndex | str | Path,
    corpus_path: str | Path,
    static_dir: str | Path | None = None,
) -> FastAPI:
    if not isinstance(index, NavigatorIndex):
        index = load_index(index)
    corpus_path = Path(corpus_path)
    actual = sha256_file(corpus_path)
    if actual != index.corpus_hash:
        raise ArtifactMismatchError(
            f"index was built from corpus {index.corpus_hash[:12]}... but "
            f"{corpus_path} hashes to {actual[:12]}..."
        )
    vocabulary = _load_vocabulary(corpus_path)

    app = FastAPI(title="topikrank navigator", docs_url=None, redoc_url=None)

    @app.exception_handler(HTTPException)
    async def _http_error(request: Request, exc: HTTPException):
        return JSONResponse(status_code=exc.status_code, content={"error": str(exc.detail)})

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    def check_metric(metric: str) -> str:
        if metric not in index.metrics:
            raise HTTPException(
                404, f"unknown metric {metric!r}; valid metrics: {', '.join(index.metrics)}"
            )
        return metric

    def snippet(doc_id: int) -> str:
        _, text = read_document_text(corpus_path, index.doc_offsets[doc_id], vocabulary)
        return text[:SNIPPET_CHARS]

    @app.get("/api/metrics")
    def get_metrics():
        return index.metrics

    @app.get("/api/metrics/{metric}/topics")
    def get_topics(metric: str):
        return index.ranked_topics(check_metric(metric))

    @app.get("/api/metrics/{metric}/topics/{topic_id}/documents")
    def get_documents(
        metric: str, topic_id: int, limit: int = Query(default=DEFAULT_DOC_LIMIT, ge=1)
    ):
        check_metric(metric)
        if not 0 <= topic_id < index.k:
            raise HTTPException(404, f"unknown topic id {topic_id}")
        limit = min(limit, DEFAULT_DOC_LIMIT)
        return [
            {
                "doc_id": doc_id,
                "author_id": index.doc_authors[doc_id],
                "probability": probability,
                "snippet": snippet(doc_id),
            }
            for doc_id, probability in index.doc_rankings[topic_id][:limit]
        ]

    @app.get("/api/documents/{doc_id}")
    def get_document(doc_id: int):
        if not 0 <= doc_id < index.d:
            raise HTTPException(404, f"unknown document id {doc_id}")
        author_id, text = read_document_text(
            corpus_path, index.doc_offsets[doc_id], vocabulary
        )
        return {"doc_id": doc_id, "author_id": author_id, "text": text}

    @app.get("/api/metrics/{metric}/cloud")
    def get_cloud(metric: str):
        cloud = index.clouds[check_metric(metric)]
        return {
            "metric": metric,
            "font_min": cloud.font_min,
            "font_max": cloud.font_max,
            "topics": [
                {
                    "topic_id": t.topic_id,
                    "label": t.label,
                    "x": t.x,
                    "y": t.y,
                    "font_size": t.font_size,
                    "intensity": t.intensity,
                }
                for t in cloud.topics
            ],
        }

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="static")

    return app
