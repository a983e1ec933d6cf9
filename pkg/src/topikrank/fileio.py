"""Shared file plumbing: atomic writes, float formatting, hashing, data dir.

Artifact files are plain text. Floats are written with ``format_float`` (17
significant digits, exponent notation) so that a parsed value is bit-identical
to the value written; this is what makes repeated pipeline runs byte-identical.

Every derived artifact starts with one or more ``#`` comment lines carrying
``key=value`` metadata, always including ``corpus=<sha256>`` so stages can
refuse to combine files produced from different corpora.
"""

from __future__ import annotations

import hashlib
import os
import sys
import tempfile
from contextlib import contextmanager
from pathlib import Path

ENV_DATA_DIR = "TOPIKRANK_DATA_DIR"


def artifact_path(path: str | os.PathLike) -> Path:
    """Resolve an artifact path.

    Relative paths land in $TOPIKRANK_DATA_DIR when that variable is set,
    otherwise they are used as given.
    """
    p = Path(path)
    if p.is_absolute():
        return p
    base = os.environ.get(ENV_DATA_DIR)
    return Path(base) / p if base else p


@contextmanager
def atomic_open(path: str | os.PathLike, mode: str = "w"):
    """Open a temp file next to ``path`` and rename over it on success.

    An interrupted run never leaves a truncated file under the final name.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    encoding = None if "b" in mode else "utf-8"
    newline = None if "b" in mode else "\n"
    try:
        with os.fdopen(fd, mode, encoding=encoding, newline=newline) as f:
            yield f
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def atomic_write_text(path: str | os.PathLike, text: str) -> None:
    with atomic_open(path) as f:
        f.write(text)


def atomic_write_bytes(path: str | os.PathLike, data: bytes) -> None:
    with atomic_open(path, "wb") as f:
        f.write(data)


def format_float(x: float) -> str:
    """17 significant digits; round-trips any IEEE double exactly."""
    return format(float(x), ".16e")


def sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def sha256_file(path: str | os.PathLike) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def parse_meta_line(line: str) -> dict[str, str]:
    """Parse ``# key=value key=value`` into a dict."""
    body = line.lstrip("#").strip()
    out: dict[str, str] = {}
    for part in body.split():
        if "=" in part:
            key, _, value = part.partition("=")
            out[key] = value
    return out


def progress(**fields) -> None:
    """Machine-parseable ``key=value`` progress line on stderr."""
    print(" ".join(f"{k}={v}" for k, v in fields.items()), file=sys.stderr, flush=True)
