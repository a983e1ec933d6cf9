"""Blog corpus ingestion: parse author files, tokenize, index.

Input is a directory in Blog Authorship Corpus layout: one ``.xml`` file per
author, named ``<id>.<gender>.<age>.<industry>.<sign>.xml``, containing the
author's posts between ``<post>`` and ``</post>`` markers. The real corpus is
full of invalid XML and broken encodings, so extraction is span-based and
decoding is lossy instead of strict.

All posts of one author become one document. Tokens are lowercase ASCII
letter runs of length >= 2; stop words are removed against a bundled English
list (overridable). Documents left empty by filtering are dropped.

The serialized corpus file is the root artifact of a pipeline run; its SHA-256
is embedded in every downstream artifact.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from pathlib import Path

from .errors import ValidationError
from .fileio import atomic_write_text, sha256_bytes

log = logging.getLogger(__name__)

_POST_RE = re.compile(r"<post>(.*?)</post>", re.DOTALL)
_TAG_RE = re.compile(r"<[^>]*>")
_TOKEN_RE = re.compile(r"[a-z]+")

MIN_TOKEN_LEN = 2


@dataclass
class RawBlogFile:
    """One author file reduced to its post texts."""

    author_id: str
    post_texts: list[str]


@dataclass
class AuthorDocument:
    """All posts of one author, tokenized and stop-word filtered."""

    doc_id: int
    author_id: str
    tokens: list[int]  # vocabulary indices


class Vocabulary:
    """Bijective word <-> dense index mapping, index order = sorted words."""

    def __init__(self, words: list[str]):
        self._words = list(words)
        self._index = {w: i for i, w in enumerate(self._words)}
        if len(self._index) != len(self._words):
            raise ValidationError("vocabulary contains duplicate words")

    def __len__(self) -> int:
        return len(self._words)

    def word(self, index: int) -> str:
        return self._words[index]

    def index(self, word: str) -> int:
        return self._index[word]

    def __contains__(self, word: str) -> bool:
        return word in self._index

    @property
    def words(self) -> list[str]:
        return self._words


@dataclass
class Corpus:
    vocabulary: Vocabulary
    documents: list[AuthorDocument] = field(default_factory=list)

    @property
    def num_documents(self) -> int:
        return len(self.documents)

    @property
    def num_words(self) -> int:
        return len(self.vocabulary)

    @property
    def num_tokens(self) -> int:
        return sum(len(d.tokens) for d in self.documents)

    @cached_property
    def content_hash(self) -> str:
        """SHA-256 of the canonical serialization; tags downstream artifacts."""
        return sha256_bytes(serialize_corpus(self).encode("utf-8"))


def parse_blog_file(file_bytes: bytes, filename: str) -> RawBlogFile:
    """Extract post texts from one author file.

    Bytes are decoded as UTF-8 with replacement (the corpus contains invalid
    encodings). Post bodies are the spans between ``<post>`` and ``</post>``;
    residual tags inside a span are removed and whitespace is trimmed. The
    author id is the filename up to the first dot.
    """
    author_id = Path(filename).name.split(".", 1)[0]
    if not author_id:
        raise ValidationError(f"cannot derive author id from filename {filename!r}")
    text = file_bytes.decode("utf-8", errors="replace")
    posts = [_TAG_RE.sub("", span).strip() for span in _POST_RE.findall(text)]
    if not posts:
        log.warning("no <post> markers in %s", filename)
    return RawBlogFile(author_id=author_id, post_texts=posts)


def tokenize(text: str) -> list[str]:
    """Lowercase, split on any non-alphabetic character, drop tokens < 2 chars.

    "Alphabetic" means ASCII a-z; anything else (digits, punctuation,
    accented letters) acts as a separator. Order is preserved.
    """
    return [t for t in _TOKEN_RE.findall(text.lower()) if len(t) >= MIN_TOKEN_LEN]


def remove_stopwords(tokens: list[str], stoplist: set[str]) -> list[str]:
    return [t for t in tokens if t not in stoplist]


def load_stoplist(path: str | Path | None = None) -> set[str]:
    """Load a stop list (one word per line); default is the bundled English list."""
    if path is None:
        text = resources.files("topikrank").joinpath("data/stoplist_en.txt").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    return {line.strip() for line in text.splitlines() if line.strip()}


def build_corpus(directory: str | Path, stoplist: set[str]) -> Corpus:
    """Build an indexed corpus from a directory of author files.

    Files are processed in lexicographic filename order and doc ids are
    assigned in that order, which makes the result (and everything derived
    from it) reproducible. Unreadable files are skipped with a warning;
    documents with no tokens left after filtering are dropped.
    """
    directory = Path(directory)
    files = sorted(p for p in directory.glob("*.xml") if p.is_file())
    if not files:
        raise ValidationError(f"no .xml files found in {directory}")

    token_docs: list[tuple[str, list[str]]] = []
    for path in files:
        try:
            raw = parse_blog_file(path.read_bytes(), path.name)
        except OSError as exc:
            log.warning("skipping unreadable file %s: %s", path.name, exc)
            continue
        tokens = remove_stopwords(tokenize(" ".join(raw.post_texts)), stoplist)
        if not tokens:
            log.info("dropping %s: empty after tokenization/stop-word removal", path.name)
            continue
        token_docs.append((raw.author_id, tokens))

    if not token_docs:
        raise ValidationError(f"no documents survived filtering in {directory}")

    vocab = Vocabulary(sorted({t for _, tokens in token_docs for t in tokens}))
    documents = [
        AuthorDocument(doc_id=i, author_id=author, tokens=[vocab.index(t) for t in tokens])
        for i, (author, tokens) in enumerate(token_docs)
    ]
    return Corpus(vocabulary=vocab, documents=documents)


def serialize_corpus(corpus: Corpus) -> str:
    """Corpus file format: ``D V`` header, V vocabulary lines, then one line
    per document: ``doc_id<TAB>author_id<TAB>space-separated token indices``."""
    lines = [f"{corpus.num_documents} {corpus.num_words}"]
    lines.extend(corpus.vocabulary.words)
    for doc in corpus.documents:
        lines.append(f"{doc.doc_id}\t{doc.author_id}\t{' '.join(map(str, doc.tokens))}")
    return "\n".join(lines) + "\n"


def save_corpus(corpus: Corpus, path: str | Path) -> None:
    atomic_write_text(path, serialize_corpus(corpus))


def load_corpus(path: str | Path) -> Corpus:
    text = Path(path).read_text("utf-8")
    return parse_corpus(text)


def parse_corpus(text: str) -> Corpus:
    lines = text.splitlines()
    if not lines:
        raise ValidationError("empty corpus file")
    try:
        d_count, v_count = (int(x) for x in lines[0].split())
    except ValueError as exc:
        raise ValidationError(f"bad corpus header {lines[0]!r}") from exc
    if len(lines) < 1 + v_count + d_count:
        raise ValidationError("corpus file truncated")
    vocab = Vocabulary(lines[1 : 1 + v_count])
    documents = []
    for n, line in enumerate(lines[1 + v_count : 1 + v_count + d_count]):
        lineno = 2 + v_count + n
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValidationError(f"corpus line {lineno}: expected 3 tab-separated fields")
        try:
            doc_id = int(parts[0])
            tokens = [int(t) for t in parts[2].split()]
        except ValueError as exc:
            raise ValidationError(f"corpus line {lineno}: non-integer field") from exc
        if doc_id != n:
            raise ValidationError(f"corpus line {lineno}: doc_id {doc_id} out of order")
        if not tokens:
            raise ValidationError(f"corpus line {lineno}: empty document")
        if any(t < 0 or t >= v_count for t in tokens):
            raise ValidationError(f"corpus line {lineno}: token index out of range")
        documents.append(AuthorDocument(doc_id=doc_id, author_id=parts[1], tokens=tokens))
    return Corpus(vocabulary=vocab, documents=documents)


def document_offsets(path: str | Path) -> list[int]:
    """Byte offset of each document line in a corpus file.

    Lets the navigator service read one document's text without loading the
    whole corpus.
    """
    offsets = []
    with open(path, "rb") as f:
        header = f.readline()
        try:
            d_count, v_count = (int(x) for x in header.split())
        except ValueError as exc:
            raise ValidationError("bad corpus header") from exc
        for _ in range(v_count):
            f.readline()
        for _ in range(d_count):
            offsets.append(f.tell())
            line = f.readline()
            if not line:
                raise ValidationError("corpus file truncated")
    return offsets


def read_document_text(path: str | Path, offset: int, vocabulary: Vocabulary) -> tuple[str, str]:
    """Read one document line at ``offset`` and reconstruct its text.

    Returns ``(author_id, text)`` where text is the space-joined tokens.
    """
    with open(path, "rb") as f:
        f.seek(offset)
        line = f.readline().decode("utf-8")
    parts = line.rstrip("\n").split("\t")
    if len(parts) != 3:
        raise ValidationError(f"malformed document line at offset {offset}")
    words = " ".join(vocabulary.word(int(t)) for t in parts[2].split())
    return parts[1], words
